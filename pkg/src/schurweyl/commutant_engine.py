"""Exact sparse linear algebra for commutants and generated matrix algebras.

Vectors are ``{coordinate: value}`` dicts with no stored zeros.  The workhorse
is :class:`Echelon`, an incremental Gauss-Jordan reducer that keeps its rows
fully reduced against each other (every pivot column is zero in every other
row).  With leftmost pivots this *is* the reduced row echelon form, which is
what makes bases canonical.  Solving a homogeneous system uses a
Markowitz-style pivot choice instead and canonicalizes the null space after.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .matrices import OperatorMatrix
from .scalars import FieldSpec, Scalar

Vector = Dict[int, Scalar]


class Echelon:
    """Incrementally maintained, fully reduced row space.

    ``pivot="leftmost"`` pivots on the smallest column of each new row and
    yields the RREF; ``pivot="markowitz"`` pivots on the column touching the
    fewest existing rows, which limits fill-in on large constraint systems.
    """

    def __init__(self, field: FieldSpec, pivot: str = "leftmost"):
        if pivot not in ("leftmost", "markowitz"):
            raise ValueError(f"unknown pivot rule {pivot!r}")
        self.field = field
        self.pivot_rule = pivot
        self.rows: Dict[int, Vector] = {}  # pivot column -> row with 1 at the pivot
        self.col_rows: Dict[int, set] = {}  # column -> pivots of rows with a nonzero there

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[int, Scalar]) -> Vector:
        """Remainder of ``vec`` after eliminating every pivot column."""
        F = self.field
        red = F.reduce
        v = dict(vec)
        rows = self.rows
        for c in [c for c in v if c in rows]:
            a = v.get(c)
            if not a:
                continue
            for k, x in rows[c].items():
                y = red(v.get(k, 0) - a * x)
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
        return v

    def contains(self, vec: Mapping[int, Scalar]) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping[int, Scalar]) -> Optional[int]:
        """Add ``vec`` to the span; return the new pivot column, or None if dependent."""
        v = self.reduce(vec)
        if not v:
            return None
        F = self.field
        if self.pivot_rule == "leftmost":
            p = min(v)
        else:
            cr = self.col_rows
            p = min(v, key=lambda c: (len(cr.get(c, ())), c))
        inv = F.inv(v[p])
        if inv != 1:
            v = {k: F.mul(x, inv) for k, x in v.items()}
        # clear column p from every other row
        red = F.reduce
        for q in list(self.col_rows.get(p, ())):
            row = self.rows[q]
            a = row[p]
            for k, x in v.items():
                y = red(row.get(k, 0) - a * x)
                if y:
                    if k not in row:
                        self.col_rows.setdefault(k, set()).add(q)
                    row[k] = y
                elif k in row:
                    del row[k]
                    self.col_rows[k].discard(q)
        self.rows[p] = v
        for k in v:
            self.col_rows.setdefault(k, set()).add(p)
        return p

    def null_space(self, ncols: int) -> List[Vector]:
        """Basis of ``{x : row . x = 0 for every row}`` inside ``F^ncols``."""
        F = self.field
        free = [c for c in range(ncols) if c not in self.rows]
        out = []
        for f in free:
            x = {f: F.one}
            for q in self.col_rows.get(f, ()):
                x[q] = F.neg(self.rows[q][f])
            out.append(x)
        return out

    def vectors(self) -> List[Vector]:
        return [dict(self.rows[p]) for p in sorted(self.rows)]


@dataclass(frozen=True)
class SubspaceBasis:
    """Canonical (RREF) basis of a subspace of ``F^ambient``, rows sorted by pivot."""

    ambient: int
    field: FieldSpec
    vectors: Tuple[Tuple[Tuple[int, Scalar], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self):
        return len(self.vectors)

    def pivots(self) -> List[int]:
        return [v[0][0] for v in self.vectors]

    def as_dicts(self) -> List[Vector]:
        return [dict(v) for v in self.vectors]

    def echelon(self) -> Echelon:
        E = Echelon(self.field)
        for v in self.vectors:
            E.rows[v[0][0]] = dict(v)
            for k, _ in v:
                E.col_rows.setdefault(k, set()).add(v[0][0])
        return E

    def matrices(self) -> List[OperatorMatrix]:
        """Interpret each vector as a flattened ``N x N`` matrix (``ambient = N^2``)."""
        N = _isqrt_exact(self.ambient)
        return [OperatorMatrix.from_vector(N, self.field, v) for v in self.as_dicts()]

    def contains_vector(self, vec: Mapping[int, Scalar]) -> bool:
        return self.echelon().contains(vec)

    def dump(self) -> str:
        """Matrix dump of each basis element, separated by ``--`` lines."""
        return "--\n".join(M.dump() for M in self.matrices())


def _isqrt_exact(x: int) -> int:
    import math
    n = math.isqrt(x)
    if n * n != x:
        raise ValueError(f"ambient dimension {x} is not a square")
    return n


def _freeze(E: Echelon, ambient: int) -> SubspaceBasis:
    vecs = tuple(tuple(sorted(v.items())) for v in E.vectors())
    return SubspaceBasis(ambient, E.field, vecs)


def rref(vectors: Iterable[Mapping[int, Scalar]], field: FieldSpec, ambient: int) -> SubspaceBasis:
    """Canonical echelon basis of the span of ``vectors``."""
    E = Echelon(field)
    for v in vectors:
        if any(not 0 <= k < ambient for k in v):
            raise ValueError(f"vector has a coordinate outside 0..{ambient - 1}")
        E.add({k: field.reduce(x) for k, x in v.items() if field.reduce(x)})
    return _freeze(E, ambient)


def _common(ops: Sequence[OperatorMatrix], N: Optional[int], field: Optional[FieldSpec]):
    if ops:
        N = ops[0].dim if N is None else N
        field = ops[0].field if field is None else field
        for A in ops:
            if A.dim != N or A.field != field:
                raise ValueError("operators disagree on dimension or field")
    if N is None or field is None:
        raise ValueError("dimension and field are needed when no operators are given")
    return N, field


def commutation_equations(A: OperatorMatrix) -> Iterable[Vector]:
    """Rows of the linear system ``XA - AX = 0`` in the flattened unknowns ``X``."""
    N = A.dim
    F = A.field
    cols = A.cols
    rows = A.rows()
    for I in range(N):
        arow = rows.get(I, {})
        for J in range(N):
            eq: Dict[int, Scalar] = {}
            # (XA)_{IJ} = sum_K X_{IK} A_{KJ}
            for K, a in cols.get(J, {}).items():
                k = I * N + K
                eq[k] = eq.get(k, 0) + a
            # (AX)_{IJ} = sum_K A_{IK} X_{KJ}
            for K, a in arow.items():
                k = K * N + J
                eq[k] = eq.get(k, 0) - a
            eq = {k: F.reduce(v) for k, v in eq.items()}
            eq = {k: v for k, v in eq.items() if v}
            if eq:
                yield eq


def commutant(ops: Sequence[OperatorMatrix], dim: Optional[int] = None,
              field: Optional[FieldSpec] = None) -> SubspaceBasis:
    """Canonical basis of ``{X : XA = AX for all A in ops}`` (flattened row-major)."""
    N, F = _common(ops, dim, field)
    if N == 0:
        raise ValueError("empty ambient space")
    E = Echelon(F, pivot="markowitz")
    for A in ops:
        for eq in commutation_equations(A):
            E.add(eq)
    return rref(E.null_space(N * N), F, N * N)


def algebra_closure(gens: Sequence[OperatorMatrix], include_identity: bool = True,
                    dim: Optional[int] = None, field: Optional[FieldSpec] = None) -> SubspaceBasis:
    """Span of all products of ``gens`` (plus the identity when requested).

    Breadth-first by word length: each round multiplies the elements found in
    the previous round on the left by every generator and keeps the ones not
    already in the span.  Terminates because the span is at most ``N^2``-dimensional.
    """
    N, F = _common(gens, dim, field)
    E = Echelon(F)
    frontier: List[OperatorMatrix] = []
    seeds = list(gens)
    if include_identity:
        seeds.insert(0, OperatorMatrix.identity(N, F))
    for M in seeds:
        if E.add(M.flatten()) is not None:
            frontier.append(M)
    while frontier:
        nxt = []
        for M in frontier:
            for G in gens:
                P = G @ M
                if E.add(P.flatten()) is not None:
                    nxt.append(P)
        frontier = nxt
    return _freeze(E, N * N)


def subspace_contains(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    """True iff every vector of ``b`` lies in the span of ``a``."""
    if a.ambient != b.ambient or a.field != b.field:
        raise ValueError("subspaces live in different spaces")
    E = a.echelon()
    return all(E.contains(dict(v)) for v in b.vectors)


def subspace_equal(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    if a.ambient != b.ambient or a.field != b.field:
        raise ValueError("subspaces live in different spaces")
    return a.vectors == b.vectors


def witness_outside(a: SubspaceBasis, b: SubspaceBasis) -> Optional[Vector]:
    """A basis vector of ``b`` not in ``a``, if any."""
    E = a.echelon()
    for v in b.vectors:
        if not E.contains(dict(v)):
            return dict(v)
    return None
