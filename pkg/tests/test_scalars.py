import pytest
from hypothesis import given, strategies as st
from math import gcd

from schurweyl.scalars import GF, QQ, FieldError, FieldKind, delta_scalar, make_field, parse_field


def test_make_field_prime():
    F = make_field(FieldKind.PRIME_FIELD, 5)
    assert F.p == 5 and F.characteristic == 5


def test_make_field_composite_names_factor():
    with pytest.raises(FieldError, match="6 = 2·3"):
        make_field(FieldKind.PRIME_FIELD, 6)


def test_make_field_rationals():
    F = make_field(FieldKind.RATIONALS)
    assert F.characteristic == 0 and F == QQ


@pytest.mark.parametrize("p", [0, 1, -3])
def test_make_field_rejects_small(p):
    with pytest.raises(FieldError):
        make_field("prime", p)


@pytest.mark.parametrize("m,n,F,expected", [
    (3, 1, QQ, 2),
    (2, 0, GF(2), 0),
    (2, 1, GF(3), 1),
    (1, 2, GF(5), 4),
])
def test_delta_scalar(m, n, F, expected):
    assert delta_scalar(m, n, F) == expected


def test_parse_field():
    assert parse_field("rational") == QQ
    assert parse_field("p:7") == GF(7)
    with pytest.raises(FieldError):
        parse_field("p:9")
    with pytest.raises(FieldError):
        parse_field("reals")


def test_prime_field_coerces_fractions():
    F = GF(7)
    assert F(QQ(1) / 3) == 5  # 3*5 = 15 = 1 mod 7
    with pytest.raises(ZeroDivisionError):
        F(QQ(1) / 7)


small = st.integers(-50, 50)
fracs = st.tuples(small, st.integers(1, 30))


@given(fracs, fracs, fracs)
def test_rational_axioms_and_normalization(a, b, c):
    x, y, z = (QQ(n) / d for n, d in (a, b, c))
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    for v in (x + y, x * y, x - z, x * y * z):
        assert v.denominator > 0 and gcd(int(v.numerator), int(v.denominator)) == 1
    if x:
        assert QQ.mul(x, QQ.inv(x)) == 1


@given(st.sampled_from([2, 3, 5, 7, 101]), small, small, small)
def test_prime_field_axioms(p, a, b, c):
    F = GF(p)
    x, y, z = F(a), F(b), F(c)
    assert F.add(F.add(x, y), z) == F.add(x, F.add(y, z))
    assert F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z))
    assert all(0 <= v < p for v in (x, y, z))
    if x:
        assert F.mul(x, F.inv(x)) == 1
