"""Independent dimension oracles.

The closed forms count monomials in the coordinate (super)algebra; the
brute-force solver is a plain dense elimination that shares no code with
:mod:`schurweyl.commutant`, so the two can check each other.
"""

from __future__ import annotations

from math import comb
from typing import List, Optional, Sequence

from .matrices import OperatorMatrix
from .scalars import FieldSpec


def a_dim(m: int, r: int) -> int:
    """Degree-``r`` monomials in ``m^2`` commuting variables."""
    return comb(m * m + r - 1, r)


def a_dim_super(m: int, n: int, r: int) -> int:
    """Degree-``r`` supersymmetric monomials: ``m^2 + n^2`` even, ``2mn`` odd variables."""
    even, odd = m * m + n * n, 2 * m * n
    return sum(comb(odd, b) * comb(even + (r - b) - 1, r - b) for b in range(min(r, odd) + 1))


def dim_oracles(m: int, n: int, r: int, s: int) -> dict:
    """Closed-form dimension of the Schur (super)algebra when one exists (``s = 0``)."""
    if s == 0:
        value = a_dim(m, r) if n == 0 else a_dim_super(m, n, r)
        return {"kind": "closed-form", "schur_dim": value}
    return {"kind": "brute-force", "schur_dim": None}


def dense_rank(rows: List[List], field: FieldSpec) -> int:
    """Rank of a dense matrix by textbook Gaussian elimination."""
    F = field
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = F.inv(M[rank][c])
        M[rank] = [F.mul(x, inv) for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank


def brute_force_commutant_dim(ops: Sequence[OperatorMatrix], dim: Optional[int] = None,
                              field: Optional[FieldSpec] = None) -> int:
    """``N^2 - rank`` of the stacked dense system ``XA - AX = 0``."""
    if ops:
        dim, field = ops[0].dim, ops[0].field
    N = dim
    F = field
    rows = []
    for A in ops:
        a = A.to_dense()
        for i in range(N):
            for j in range(N):
                row = [F.zero] * (N * N)
                for k in range(N):
                    # (XA)_ij = sum_k X_ik A_kj ; (AX)_ij = sum_k A_ik X_kj
                    row[i * N + k] = F.add(row[i * N + k], a[k][j])
                    row[k * N + j] = F.sub(row[k * N + j], a[i][k])
                if any(row):
                    rows.append(row)
    return N * N - dense_rank(rows, F)
