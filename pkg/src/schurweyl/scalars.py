"""Exact ground fields: the rationals and prime fields.

Elements are plain values so the elimination loops stay cheap:
``gmpy2.mpq`` (always reduced, positive denominator) over Q, and ``int``
residues in ``[0, p)`` over F_p.  A :class:`FieldSpec` carries the
arithmetic; every result is returned in canonical form.

Dimensions computed over F_p agree with those over any infinite field of
characteristic p, since every space computed here is cut out by equations
with coefficients in the prime field.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

import gmpy2
from gmpy2 import mpq

Scalar = Union[int, "mpq"]


class FieldKind(enum.Enum):
    RATIONALS = "rational"
    PRIME_FIELD = "prime"


class FieldError(ValueError):
    pass


def _smallest_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


@dataclass(frozen=True)
class FieldSpec:
    kind: FieldKind
    p: Optional[int] = None

    def __post_init__(self):
        if self.kind is FieldKind.RATIONALS:
            if self.p is not None:
                raise FieldError("the rationals take no modulus")
            return
        if self.p is None or self.p < 2:
            raise FieldError(f"prime field needs p >= 2, got {self.p!r}")
        if not gmpy2.is_prime(self.p):
            f = _smallest_factor(self.p)
            raise FieldError(f"{self.p} is not prime: {self.p} = {f}·{self.p // f}")

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def tag(self) -> str:
        """Short label used in case ids and reports: ``q`` or the prime."""
        return "q" if self.p is None else str(self.p)

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    # -- element constructors -------------------------------------------------

    def __call__(self, x) -> Scalar:
        """Coerce an int, Fraction-like, or mpq into canonical form."""
        if self.p is None:
            return mpq(x)
        q = mpq(x)
        num, den = int(q.numerator), int(q.denominator)
        if den % self.p == 0:
            raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
        return num * pow(den, -1, self.p) % self.p

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    # -- arithmetic -----------------------------------------------------------
    # Callers may also use +, -, * directly followed by ``reduce``.

    def reduce(self, x) -> Scalar:
        return x if self.p is None else x % self.p

    def add(self, a, b) -> Scalar:
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b) -> Scalar:
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b) -> Scalar:
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a) -> Scalar:
        return -a if self.p is None else (-a) % self.p

    def inv(self, a) -> Scalar:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / mpq(a)
        return pow(int(a), -1, self.p)

    def div(self, a, b) -> Scalar:
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int) -> Scalar:
        if self.p is None:
            return mpq(a) ** e
        return pow(int(a), e, self.p)

    def to_str(self, a) -> str:
        if self.p is None:
            q = mpq(a)
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        return str(int(a))


QQ = FieldSpec(FieldKind.RATIONALS)


def make_field(kind: Union[FieldKind, str], p: Optional[int] = None) -> FieldSpec:
    """Build a field, checking primality of ``p``.

    >>> make_field("prime", 5)
    FieldSpec(kind=<FieldKind.PRIME_FIELD: 'prime'>, p=5)
    """
    if isinstance(kind, str):
        kind = {"rational": FieldKind.RATIONALS, "q": FieldKind.RATIONALS,
                "prime": FieldKind.PRIME_FIELD, "p": FieldKind.PRIME_FIELD}[kind.lower()]
    return FieldSpec(kind, p)


def GF(p: int) -> FieldSpec:
    return FieldSpec(FieldKind.PRIME_FIELD, p)


def parse_field(text: str) -> FieldSpec:
    """Parse the CLI spelling ``rational`` / ``q`` / ``p:<prime>``."""
    t = text.strip().lower()
    if t in ("rational", "rationals", "q", "qq"):
        return QQ
    if t.startswith("p:"):
        try:
            p = int(t[2:])
        except ValueError:
            raise FieldError(f"bad prime in field spec {text!r}") from None
        return GF(p)
    raise FieldError(f"unknown field {text!r}; expected 'rational' or 'p:<prime>'")


def delta_scalar(m: int, n: int, field: FieldSpec) -> Scalar:
    """The loop parameter ``m - n`` as an element of ``field``."""
    if m < 1 or n < 0:
        raise ValueError(f"need m >= 1 and n >= 0, got m={m}, n={n}")
    return field(m - n)
