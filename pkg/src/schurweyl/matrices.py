"""Exact sparse square matrices stored column-wise."""

from __future__ import annotations

from typing import Dict, Iterable, Iterator, List, Mapping, Tuple

from gmpy2 import mpq

from .scalars import FieldSpec, Scalar


class OperatorMatrix:
    """``N x N`` matrix acting on column vectors; column ``j`` is a ``{row: value}`` map.

    Zero entries are never stored, so two matrices are equal iff their column
    maps are equal.  Treat instances as immutable.
    """

    __slots__ = ("dim", "field", "cols")

    def __init__(self, dim: int, field: FieldSpec, cols: Mapping[int, Mapping[int, Scalar]] = None):
        self.dim = dim
        self.field = field
        clean: Dict[int, Dict[int, Scalar]] = {}
        if cols:
            red = mpq if field.is_rational else field.reduce
            for j, col in cols.items():
                c = {i: red(v) for i, v in col.items()}
                c = {i: v for i, v in c.items() if v}
                if c:
                    clean[j] = c
        self.cols = clean

    @classmethod
    def identity(cls, dim: int, field: FieldSpec) -> "OperatorMatrix":
        return cls(dim, field, {j: {j: field.one} for j in range(dim)})

    @classmethod
    def zero(cls, dim: int, field: FieldSpec) -> "OperatorMatrix":
        return cls(dim, field)

    @classmethod
    def from_entries(cls, dim: int, field: FieldSpec,
                     entries: Iterable[Tuple[int, int, Scalar]]) -> "OperatorMatrix":
        """Build from ``(row, col, value)`` triples; repeated positions are summed."""
        cols: Dict[int, Dict[int, Scalar]] = {}
        for i, j, v in entries:
            col = cols.setdefault(j, {})
            col[i] = col.get(i, 0) + v
        return cls(dim, field, {j: {i: field(v) for i, v in c.items()} for j, c in cols.items()})

    @classmethod
    def from_vector(cls, dim: int, field: FieldSpec, vec: Mapping[int, Scalar]) -> "OperatorMatrix":
        """Inverse of :meth:`flatten` (entry ``(i, j)`` lives at ``i*dim + j``)."""
        cols: Dict[int, Dict[int, Scalar]] = {}
        for k, v in vec.items():
            i, j = divmod(k, dim)
            cols.setdefault(j, {})[i] = v
        return cls(dim, field, cols)

    @classmethod
    def from_dense(cls, rows: List[List[Scalar]], field: FieldSpec) -> "OperatorMatrix":
        n = len(rows)
        return cls.from_entries(n, field, ((i, j, field(v)) for i, row in enumerate(rows)
                                           for j, v in enumerate(row) if v))

    # -- access ---------------------------------------------------------------

    def entries(self) -> Iterator[Tuple[int, int, Scalar]]:
        for j in sorted(self.cols):
            col = self.cols[j]
            for i in sorted(col):
                yield i, j, col[i]

    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        i, j = ij
        return self.cols.get(j, {}).get(i, self.field.zero)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def is_zero(self) -> bool:
        return not self.cols

    def rows(self) -> Dict[int, Dict[int, Scalar]]:
        out: Dict[int, Dict[int, Scalar]] = {}
        for j, col in self.cols.items():
            for i, v in col.items():
                out.setdefault(i, {})[j] = v
        return out

    def flatten(self) -> Dict[int, Scalar]:
        """Row-major coordinates: entry ``(i, j)`` at position ``i*dim + j``."""
        N = self.dim
        return {i * N + j: v for j, col in self.cols.items() for i, v in col.items()}

    def to_dense(self) -> List[List[Scalar]]:
        out = [[self.field.zero] * self.dim for _ in range(self.dim)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    def apply(self, vec: Mapping[int, Scalar]) -> Dict[int, Scalar]:
        F = self.field
        acc: Dict[int, Scalar] = {}
        for j, x in vec.items():
            for i, a in self.cols.get(j, {}).items():
                acc[i] = acc.get(i, 0) + a * x
        out = {i: F.reduce(v) for i, v in acc.items()}
        return {i: v for i, v in out.items() if v}

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: "OperatorMatrix"):
        if self.dim != other.dim or self.field != other.field:
            raise ValueError(f"incompatible matrices: dim {self.dim}/{other.dim}, "
                             f"field {self.field}/{other.field}")

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        A = self.cols
        out: Dict[int, Dict[int, Scalar]] = {}
        for j, bcol in other.cols.items():
            acc: Dict[int, Scalar] = {}
            for k, b in bcol.items():
                acol = A.get(k)
                if acol:
                    for i, a in acol.items():
                        acc[i] = acc.get(i, 0) + a * b
            if acc:
                out[j] = acc
        return OperatorMatrix(self.dim, self.field, out)

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check(other)
        out = {j: dict(c) for j, c in self.cols.items()}
        for j, col in other.cols.items():
            tgt = out.setdefault(j, {})
            for i, v in col.items():
                tgt[i] = tgt.get(i, 0) + v
        return OperatorMatrix(self.dim, self.field, out)

    def scale(self, c) -> "OperatorMatrix":
        c = self.field(c)
        return OperatorMatrix(self.dim, self.field,
                              {j: {i: v * c for i, v in col.items()} for j, col in self.cols.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return self.scale(c)

    def transpose(self) -> "OperatorMatrix":
        return OperatorMatrix(self.dim, self.field, self.rows())

    def commutator(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self @ other - other @ self

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return self.dim == other.dim and self.field == other.field and self.cols == other.cols

    def __hash__(self):
        return hash((self.dim, tuple(self.entries())))

    def __repr__(self):
        return f"OperatorMatrix(dim={self.dim}, field={self.field}, nnz={self.nnz()})"

    # -- golden-file format ------------------------------------------------------

    def dump(self) -> str:
        """``dim N field q|p`` header, then ``row col value`` sorted by (col, row)."""
        lines = [f"dim {self.dim} field {self.field.tag}"]
        lines += [f"{i} {j} {self.field.to_str(v)}" for i, j, v in self.entries()]
        return "\n".join(lines) + "\n"

    @classmethod
    def load(cls, text: str) -> "OperatorMatrix":
        from .scalars import parse_field

        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if len(head) != 4 or head[0] != "dim" or head[2] != "field":
            raise ValueError(f"bad matrix header {lines[0]!r}")
        field = parse_field("q" if head[3] == "q" else f"p:{head[3]}")
        entries = []
        for ln in lines[1:]:
            i, j, v = ln.split()
            entries.append((int(i), int(j), field(mpq(v))))
        return cls.from_entries(int(head[1]), field, entries)
