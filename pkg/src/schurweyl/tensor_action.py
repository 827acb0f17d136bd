"""Mixed tensor space ``V^{(x)r} (x) W^{(x)s}`` with its two commuting actions.

Basis vectors ``v_I`` are labelled by multi-indices ``I = (i_1, ..., i_{r+s})``
with entries in ``1..m+n``; slots ``1..r`` carry ``V``, slots ``r+1..r+s``
carry ``W = V*``.  Index ``k`` has parity 0 for ``k <= m`` and 1 otherwise;
``n = 0`` is the classical ``GL(m)`` case where every sign is ``+1``.

Both actions are returned as column-acting :class:`OperatorMatrix` values.
The left action of ``Dist(G)`` is a homomorphism.  The right action of the
diagram algebra is realized by the matrices ``R(x)`` with ``R(x) e_I`` the
coordinates of ``(v_I)x``, so ``R(xy) = R(y) R(x)``: the diagram algebra
lands in ``End(...)^op``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Sequence, Tuple

from .matrices import OperatorMatrix
from .scalars import FieldSpec, QQ, Scalar, delta_scalar
from .walled_brauer import (DiagramAlgebraElement, DiagramError, diagram_words,
                            tau_generator)

MultiIndex = Tuple[int, ...]


class BudgetError(ValueError):
    pass


@dataclass(frozen=True)
class TensorSpaceSpec:
    m: int
    n: int
    r: int
    s: int
    field: FieldSpec = QQ

    def __post_init__(self):
        if self.m < 1 or self.n < 0 or self.r < 0 or self.s < 0:
            raise ValueError(f"invalid tensor space parameters {self}")

    @property
    def rank(self) -> int:
        """``m + n``: dimension of ``V``."""
        return self.m + self.n

    @property
    def length(self) -> int:
        return self.r + self.s

    @property
    def dim(self) -> int:
        return self.rank ** self.length

    @property
    def is_super(self) -> bool:
        return self.n > 0

    @property
    def delta(self) -> Scalar:
        return delta_scalar(self.m, self.n, self.field)

    def check_budget(self, budget: int):
        if self.dim > budget:
            raise BudgetError(f"({self.m}+{self.n})^({self.r}+{self.s}) = {self.dim} "
                              f"exceeds the budget {budget}")

    # -- basis ------------------------------------------------------------------

    def basis(self) -> Iterator[MultiIndex]:
        """Multi-indices in lexicographic order; position equals :meth:`index`."""
        return itertools.product(range(1, self.rank + 1), repeat=self.length)

    def index(self, I: Sequence[int]) -> int:
        k = 0
        for i in I:
            k = k * self.rank + (i - 1)
        return k

    def multi_index(self, k: int) -> MultiIndex:
        out = []
        for _ in range(self.length):
            k, d = divmod(k, self.rank)
            out.append(d + 1)
        return tuple(reversed(out))

    @cached_property
    def _basis_list(self) -> List[MultiIndex]:
        return list(self.basis())

    def parity(self, i: int) -> int:
        return parity(i, self)

    def case_id(self) -> str:
        return f"m{self.m}n{self.n}r{self.r}s{self.s}f{self.field.tag}"


def parity(i: int, spec: TensorSpaceSpec) -> int:
    if not 1 <= i <= spec.rank:
        raise IndexError(f"index {i} outside 1..{spec.rank}")
    return 0 if i <= spec.m else 1


def _check_index(i: int, spec: TensorSpaceSpec):
    if not 1 <= i <= spec.rank:
        raise IndexError(f"index {i} outside 1..{spec.rank}")


# -- left action ---------------------------------------------------------------

def _slot_terms(i: int, j: int, I: MultiIndex, spec: TensorSpaceSpec):
    """Yield ``(slot, new_entry, sign)`` for each slot that ``e_ij`` acts on."""
    pi, pj = spec.parity(i), spec.parity(j)
    pe = (pi + pj) % 2
    w_sign = -1 if (pi * (pi + pj)) % 2 == 0 else 1
    prefix = 0
    for t, k in enumerate(I):
        koszul = -1 if (pe and prefix % 2) else 1
        if t < spec.r:
            if k == j:
                yield t, i, koszul
        elif k == i:
            yield t, j, koszul * w_sign
        prefix += spec.parity(k)


def left_matrix_unit(i: int, j: int, spec: TensorSpaceSpec) -> OperatorMatrix:
    """Matrix of ``e_ij`` acting as a super-derivation on all ``r + s`` slots."""
    _check_index(i, spec)
    _check_index(j, spec)
    cols: Dict[int, Dict[int, int]] = {}
    for col, I in enumerate(spec._basis_list):
        acc: Dict[int, int] = {}
        for t, new, sign in _slot_terms(i, j, I, spec):
            J = I[:t] + (new,) + I[t + 1:]
            row = spec.index(J)
            acc[row] = acc.get(row, 0) + sign
        if acc:
            cols[col] = acc
    return OperatorMatrix(spec.dim, spec.field, cols)


def _generalized_binomial(c: int, k: int) -> int:
    """``c(c-1)...(c-k+1)/k!`` for any integer ``c``."""
    if c >= 0:
        return math.comb(c, k)
    return (-1) ** k * math.comb(-c + k - 1, k)


def divided_power(i: int, j: int, k: int, spec: TensorSpaceSpec) -> OperatorMatrix:
    """``e_ij^(k)`` for ``i != j``, or ``binom(e_ii; k)`` for ``i == j``.

    Both are defined over the integers and then reduced into the field, so
    they survive in characteristic p where ``e_ij^k / k!`` does not make sense.
    """
    _check_index(i, spec)
    _check_index(j, spec)
    if not 0 <= k <= spec.length:
        raise ValueError(f"divided power order {k} outside 0..{spec.length}")
    if k == 0:
        return OperatorMatrix.identity(spec.dim, spec.field)
    odd = spec.parity(i) != spec.parity(j)
    if i != j and odd:
        if k >= 2:
            raise ValueError(f"odd root e_{i}{j} has no divided power of order {k}")
        return left_matrix_unit(i, j, spec)
    cols: Dict[int, Dict[int, int]] = {}
    if i == j:
        for col, I in enumerate(spec._basis_list):
            weight = sum(1 for a in I[:spec.r] if a == i) - sum(1 for a in I[spec.r:] if a == i)
            b = _generalized_binomial(weight, k)
            if b:
                cols[col] = {col: b}
        return OperatorMatrix(spec.dim, spec.field, cols)
    # even root: the slot actions are commuting square-zero operators, so the
    # k-th divided power of their sum is the sum over k-element slot subsets
    for col, I in enumerate(spec._basis_list):
        active = list(_slot_terms(i, j, I, spec))
        acc: Dict[int, int] = {}
        for subset in itertools.combinations(active, k):
            J = list(I)
            sign = 1
            for t, new, sg in subset:
                J[t] = new
                sign *= sg
            row = spec.index(J)
            acc[row] = acc.get(row, 0) + sign
        if acc:
            cols[col] = acc
    return OperatorMatrix(spec.dim, spec.field, cols)


def dist_generators(spec: TensorSpaceSpec) -> List[Tuple[str, OperatorMatrix]]:
    """Images of a generating set of ``Dist(G)``, labelled.

    Characteristic 0: all matrix units ``e_ij``.  Characteristic p: divided
    powers of even root vectors, binomials of the diagonal units (orders up to
    ``r + s``), and the odd root vectors.
    """
    R = spec.rank
    out = []
    if spec.field.characteristic == 0:
        for i in range(1, R + 1):
            for j in range(1, R + 1):
                out.append((f"e{i},{j}", left_matrix_unit(i, j, spec)))
        return out
    for i in range(1, R + 1):
        for j in range(1, R + 1):
            if i != j and spec.parity(i) != spec.parity(j):
                out.append((f"e{i},{j}", left_matrix_unit(i, j, spec)))
                continue
            for k in range(1, spec.length + 1):
                name = f"e{i},{j}^({k})" if i != j else f"binom(e{i},{i};{k})"
                out.append((name, divided_power(i, j, k, spec)))
    return out


# -- right action ----------------------------------------------------------------

def right_tau(j: int, spec: TensorSpaceSpec) -> OperatorMatrix:
    """Matrix of the right action of the generator ``tau_j``.

    For ``j != r`` a signed place permutation of slots ``j, j+1``.  For
    ``j == r`` (needs ``r, s >= 1``) the contraction
    ``v_I -> [i_r = i_{r+1}] (-1)^{|i_r|} sum_k (... v_k (x) v*_k ...)``.
    """
    L = spec.length
    if not 1 <= j <= L - 1:
        raise IndexError(f"generator index {j} outside 1..{L - 1}")
    contraction = spec.r >= 1 and spec.s >= 1 and j == spec.r
    t = j - 1
    cols: Dict[int, Dict[int, int]] = {}
    par = spec.parity
    for col, I in enumerate(spec._basis_list):
        a, b = I[t], I[t + 1]
        if contraction:
            if a != b:
                continue
            sign = -1 if par(a) else 1
            cols[col] = {spec.index(I[:t] + (k, k) + I[t + 2:]): sign
                         for k in range(1, spec.rank + 1)}
        else:
            sign = -1 if par(a) and par(b) else 1
            cols[col] = {spec.index(I[:t] + (b, a) + I[t + 2:]): sign}
    return OperatorMatrix(spec.dim, spec.field, cols)


def right_generators(spec: TensorSpaceSpec) -> List[Tuple[str, OperatorMatrix]]:
    return [(f"tau{j}", right_tau(j, spec)) for j in range(1, spec.length)]


def diagram_operator(x: DiagramAlgebraElement, spec: TensorSpaceSpec) -> OperatorMatrix:
    """``R(x)``: each diagram is written as a loop-free generator word and evaluated.

    Anti-multiplicative: ``diagram_operator(x*y) == diagram_operator(y) @ diagram_operator(x)``.
    """
    if (x.r, x.s) != (spec.r, spec.s):
        raise DiagramError(f"element has shape {(x.r, x.s)}, space has {(spec.r, spec.s)}")
    if x.field != spec.field or x.delta != spec.delta:
        raise DiagramError("element field/delta does not match the tensor space")
    words = diagram_words(spec.r, spec.s)
    gens = {j: right_tau(j, spec) for j in range(1, spec.length)}
    total = OperatorMatrix.zero(spec.dim, spec.field)
    for d, c in x.terms:
        M = OperatorMatrix.identity(spec.dim, spec.field)
        for j in words[d]:
            M = gens[j] @ M
        total = total + M.scale(c)
    return total


def word_operator(word: Sequence[int], spec: TensorSpaceSpec) -> OperatorMatrix:
    """``R(tau_{w1} tau_{w2} ...) = R(tau_wk) ... R(tau_w1)``."""
    M = OperatorMatrix.identity(spec.dim, spec.field)
    for j in word:
        M = right_tau(j, spec) @ M
    return M


# -- invariants ------------------------------------------------------------------

def invariant_element(spec: TensorSpaceSpec) -> Dict[int, Scalar]:
    """Coordinates of ``sum_k v_k (x) v*_k`` in ``V (x) W``."""
    if (spec.r, spec.s) != (1, 1):
        raise ValueError("the coevaluation element lives in V (x) W (r = s = 1)")
    return {spec.index((k, k)): spec.field.one for k in range(1, spec.rank + 1)}


def polarization_check(r: int, dim_u: int, field: FieldSpec = QQ, seed: int = 0) -> bool:
    """Check ``sum_sigma f_sigma(1) (x) ... = sum_I (-1)^(r-|I|) (sum_{i in I} f_i)^(x)r``.

    The vectors are ``f_i = b_(i mod dim_u) + noise`` with seeded random noise.
    """
    if field.characteristic and field.characteristic <= r:
        raise ValueError(f"polarization needs characteristic 0 or > {r}, got {field.characteristic}")
    rng = random.Random(seed)
    F = field
    fs = []
    for i in range(r):
        v = [F(rng.randint(-3, 3)) for _ in range(dim_u)]
        v[i % dim_u] = F.add(v[i % dim_u], 1)
        fs.append(v)

    def tensor(vectors) -> Dict[Tuple[int, ...], Scalar]:
        out = {(): F.one}
        for v in vectors:
            nxt = {}
            for key, c in out.items():
                for a, x in enumerate(v):
                    if x:
                        nxt[key + (a,)] = F.mul(c, x)
            out = nxt
        return out

    def accumulate(acc, t, c):
        for key, v in t.items():
            acc[key] = F.add(acc.get(key, F.zero), F.mul(c, v))

    lhs: Dict[Tuple[int, ...], Scalar] = {}
    for perm in itertools.permutations(range(r)):
        accumulate(lhs, tensor([fs[k] for k in perm]), F.one)
    rhs: Dict[Tuple[int, ...], Scalar] = {}
    for size in range(r + 1):
        for subset in itertools.combinations(range(r), size):
            total = [F.zero] * dim_u
            for k in subset:
                total = [F.add(a, b) for a, b in zip(total, fs[k])]
            accumulate(rhs, tensor([total] * r), F((-1) ** (r - size)))
    strip = lambda d: {k: v for k, v in d.items() if v}
    return strip(lhs) == strip(rhs)
