import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import commutant_dim, span_dim, to_sympy
from schurweyl.commutant_engine import (Echelon, algebra_closure, commutant, rref,
                                        subspace_contains, subspace_equal, witness_outside)
from schurweyl.matrices import OperatorMatrix
from schurweyl.oracles import brute_force_commutant_dim
from schurweyl.scalars import GF, QQ
from schurweyl.tensor_action import (TensorSpaceSpec, dist_generators, left_matrix_unit,
                                     right_generators, right_tau)


def unit(N, i, j, F=QQ):
    return OperatorMatrix.from_entries(N, F, [(i, j, 1)])


def rand_matrix(rng, N, F, density=0.3):
    ent = [(i, j, rng.randint(-2, 2)) for i in range(N) for j in range(N) if rng.random() < density]
    return OperatorMatrix.from_entries(N, F, ent)


# -- rref ------------------------------------------------------------------------

def test_rref_small():
    B = rref([{0: 2, 1: 4}, {0: 1, 2: 1}], QQ, 3)
    assert B.as_dicts() == [{0: 1, 2: 1}, {1: 1, 2: QQ.div(-1, 2)}]
    assert B.pivots() == [0, 1]


def test_rref_drops_dependent_and_zero():
    B = rref([{0: 1, 1: 1}, {0: 2, 1: 2}, {}, {0: 3}], GF(3), 2)
    assert B.dim == 1 and B.as_dicts() == [{0: 1, 1: 1}]


def test_rref_rejects_out_of_range():
    with pytest.raises(ValueError):
        rref([{5: 1}], QQ, 3)


def test_echelon_pivot_rules():
    with pytest.raises(ValueError):
        Echelon(QQ, pivot="random")
    vecs = [{0: 1, 1: 1, 2: 1}, {1: 1, 2: 2}, {0: 1, 1: 2, 2: 3}]
    for rule in ("leftmost", "markowitz"):
        E = Echelon(QQ, rule)
        assert [E.add(v) is not None for v in vecs] == [True, True, False]
        assert rref(E.vectors(), QQ, 3) == rref(vecs, QQ, 3)


def test_null_space_solves_system():
    E = Echelon(QQ, "markowitz")
    E.add({0: 1, 1: -1})
    E.add({1: 1, 2: -1})
    (v,) = E.null_space(3)
    assert rref([v], QQ, 3).as_dicts() == [{0: 1, 1: 1, 2: 1}]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([None, 2, 3, 5]))
def test_rref_rank_matches_sympy(seed, p):
    rng = random.Random(seed)
    F = QQ if p is None else GF(p)
    mats = [rand_matrix(rng, 3, F) for _ in range(rng.randint(1, 6))]
    B = rref([M.flatten() for M in mats], F, 9)
    assert B.dim == span_dim([to_sympy(M) for M in mats], p)


# -- commutant -------------------------------------------------------------------

def test_commutant_of_nothing_is_everything():
    assert commutant([], dim=3, field=QQ).dim == 9


def test_commutant_of_all_units_is_scalars():
    N = 3
    B = commutant([unit(N, i, j) for i in range(N) for j in range(N)])
    assert B.dim == 1
    assert B.matrices()[0] == OperatorMatrix.identity(N, QQ)


def test_commutant_of_swap():
    sp = TensorSpaceSpec(2, 0, 2, 0)
    assert commutant([right_tau(1, sp)]).dim == 10 == commutant_dim([to_sympy(right_tau(1, sp))], 4)


def test_commutant_needs_dimension():
    with pytest.raises(ValueError):
        commutant([])
    with pytest.raises(ValueError):
        commutant([unit(2, 0, 0), unit(3, 0, 0)])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([None, 2, 3]))
def test_commutant_dim_matches_oracles(seed, p):
    rng = random.Random(seed)
    F = QQ if p is None else GF(p)
    N = rng.randint(2, 4)
    ops = [rand_matrix(rng, N, F) for _ in range(rng.randint(1, 3))]
    d = commutant(ops).dim
    assert d == commutant_dim([to_sympy(A) for A in ops], N, p)
    assert d == brute_force_commutant_dim(ops)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_commutant_is_a_unital_algebra(seed):
    rng = random.Random(seed)
    N = 3
    ops = [rand_matrix(rng, N, QQ, 0.4) for _ in range(2)]
    B = commutant(ops)
    mats = B.matrices()
    assert B.contains_vector(OperatorMatrix.identity(N, QQ).flatten())
    for X in mats:
        for A in ops:
            assert (X @ A - A @ X).is_zero()
    for X, Y in itertools.product(mats, repeat=2):
        assert B.contains_vector((X @ Y).flatten())


@settings(max_examples=20, deadline=None)
@given(st.permutations(range(4)))
def test_generator_order_does_not_change_basis(order):
    sp = TensorSpaceSpec(1, 1, 2, 1)
    gens = [M for _, M in dist_generators(sp)] + [M for _, M in right_generators(sp)]
    base = commutant(gens[:4])
    assert commutant([gens[k] for k in order]) == base


# -- algebra closure -------------------------------------------------------------

def test_closure_of_nothing():
    assert algebra_closure([], dim=3, field=QQ).dim == 1
    assert algebra_closure([], include_identity=False, dim=3, field=QQ).dim == 0


def test_closure_of_raising_and_lowering():
    sp = TensorSpaceSpec(2, 0, 1, 0)
    gens = [left_matrix_unit(1, 2, sp), left_matrix_unit(2, 1, sp)]
    assert algebra_closure(gens).dim == 4


def test_closure_without_identity_of_nilpotent():
    assert algebra_closure([unit(3, 0, 1)], include_identity=False).dim == 1


def test_closure_of_dist_on_two_tensors():
    sp = TensorSpaceSpec(2, 0, 2, 0)
    assert algebra_closure([M for _, M in dist_generators(sp)]).dim == 10


@pytest.mark.parametrize("m,n,r,s,p,expected", [
    (1, 1, 1, 1, None, 8), (1, 1, 1, 1, 3, 8), (2, 0, 1, 1, None, 10), (1, 1, 2, 0, None, 8)])
def test_closure_matches_sympy_span(m, n, r, s, p, expected):
    """Span of all short words, computed independently, reaches the same dimension."""
    F = QQ if p is None else GF(p)
    sp = TensorSpaceSpec(m, n, r, s, F)
    gens = [to_sympy(M) for _, M in dist_generators(sp)]
    from sympy import eye
    words = [eye(sp.dim)]
    layer = [eye(sp.dim)]
    for _ in range(4):
        layer = [G * W for G in gens for W in layer]
        if p:
            layer = [W.applyfunc(lambda x: x % p) for W in layer]
        words += layer
    assert span_dim(words, p) == expected
    assert algebra_closure([M for _, M in dist_generators(sp)]).dim == expected


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_closure_properties(seed):
    rng = random.Random(seed)
    gens = [rand_matrix(rng, 3, GF(3), 0.3) for _ in range(2)]
    A = algebra_closure(gens)
    mats = A.matrices()
    assert algebra_closure(mats) == A
    for X, Y in itertools.product(mats, repeat=2):
        assert A.contains_vector((X @ Y).flatten())
    assert subspace_contains(commutant(commutant(mats).matrices()), A)


# -- subspace comparison ---------------------------------------------------------

def test_containment_and_equality():
    a = rref([{0: 1}, {1: 1}], QQ, 3)
    b = rref([{0: 1, 1: 1}], QQ, 3)
    c = rref([{0: 2}, {0: 1, 1: 3}], QQ, 3)
    assert subspace_contains(a, b) and not subspace_contains(b, a)
    assert subspace_equal(a, c) and a == c
    assert witness_outside(b, a) is not None and witness_outside(a, b) is None
    with pytest.raises(ValueError):
        subspace_contains(a, rref([], QQ, 4))


def test_dist_image_inside_diagram_commutant():
    for m, n, r, s in [(2, 0, 2, 1), (1, 1, 2, 0), (1, 1, 1, 1)]:
        sp = TensorSpaceSpec(m, n, r, s)
        A = algebra_closure([M for _, M in dist_generators(sp)])
        B = commutant([M for _, M in right_generators(sp)])
        assert subspace_contains(B, A)
