"""Walled Brauer diagrams and their algebra B_{r,s}(delta).

A diagram on ``r + s`` strands has upper vertices ``U1..U(r+s)`` and lower
vertices ``L1..L(r+s)``; the wall sits between positions ``r`` and ``r+1``.
Internally vertex ``U(k)`` is ``k-1`` and ``L(k)`` is ``r+s+k-1``.

Product convention: in ``multiply_diagrams(a, b)`` the diagram ``a`` is
placed *under* ``b``.  Acting on tensor space from the right, the vector
enters at the bottom, so ``v.(ab) = (v.a).b``.  With ``s = 0`` this gives
``diagram(sigma) * diagram(pi) == diagram(sigma o pi)``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .scalars import FieldSpec, QQ, Scalar


class DiagramError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class WalledDiagram:
    r: int
    s: int
    pairs: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        n = self.r + self.s
        seen = sorted(v for e in self.pairs for v in e)
        if seen != list(range(2 * n)):
            raise DiagramError(f"not a perfect matching on {2 * n} vertices: {self.pairs}")
        canon = tuple(sorted(tuple(sorted(e)) for e in self.pairs))
        object.__setattr__(self, "pairs", canon)
        for a, b in canon:
            if not _edge_is_legal(a, b, self.r, n):
                raise DiagramError(
                    f"edge {_vname(a, n)}-{_vname(b, n)} violates the wall at r={self.r}")

    @property
    def size(self) -> int:
        return self.r + self.s

    @classmethod
    def from_matching(cls, r: int, s: int, partner: Sequence[int]) -> "WalledDiagram":
        return cls(r, s, tuple((v, w) for v, w in enumerate(partner) if v < w))

    @classmethod
    def identity(cls, r: int, s: int) -> "WalledDiagram":
        n = r + s
        return cls(r, s, tuple((k, n + k) for k in range(n)))

    @classmethod
    def parse(cls, text: str, r: int, s: int) -> "WalledDiagram":
        """Inverse of ``str``: ``"U1-L2,U2-L1"``."""
        n = r + s
        pairs = []
        for tok in filter(None, (t.strip() for t in text.split(","))):
            x, y = tok.split("-")
            pairs.append((_vparse(x, n), _vparse(y, n)))
        return cls(r, s, tuple(pairs))

    def partner(self) -> List[int]:
        out = [0] * (2 * self.size)
        for a, b in self.pairs:
            out[a], out[b] = b, a
        return out

    def is_permutation(self) -> bool:
        n = self.size
        return all(a < n <= b for a, b in self.pairs)

    def __str__(self):
        n = self.size
        return ",".join(f"{_vname(a, n)}-{_vname(b, n)}" for a, b in self.pairs)


def _vname(v: int, n: int) -> str:
    return f"U{v + 1}" if v < n else f"L{v - n + 1}"


def _vparse(tok: str, n: int) -> int:
    tok = tok.strip().upper()
    k = int(tok[1:])
    if not 1 <= k <= n or tok[0] not in "UL":
        raise DiagramError(f"bad vertex {tok!r}")
    return k - 1 if tok[0] == "U" else n + k - 1


def _edge_is_legal(a: int, b: int, r: int, n: int) -> bool:
    ua, ub = a < n, b < n
    pa, pb = a % n, b % n
    left_a, left_b = pa < r, pb < r
    if ua != ub:
        # vertical: stays on one side
        return left_a == left_b
    # horizontal: crosses the wall
    return left_a != left_b


# -- permutations and flip -----------------------------------------------------

Permutation = Tuple[int, ...]  # 1-based images


def permutation_diagram(perm: Sequence[int], r: int = None, s: int = 0) -> WalledDiagram:
    """Diagram joining upper ``j`` to lower ``perm[j]``; needs ``s = 0`` walls."""
    n = len(perm)
    if r is None:
        r = n - s
    return WalledDiagram(r, s, tuple((j, n + perm[j] - 1) for j in range(n)))


def flip(perm: Sequence[int], r: int, s: int) -> WalledDiagram:
    """Bend the strands right of the wall: swap ``U(k)`` and ``L(k)`` for ``k > r``.

    On operators this is partial transposition in the last ``s`` tensor slots.
    """
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)) or n != r + s:
        raise DiagramError(f"{perm} is not a permutation of 1..{r + s}")

    def swap(v):
        if v % n >= r:
            return v + n if v < n else v - n
        return v

    return WalledDiagram(r, s, tuple((swap(j), swap(n + perm[j] - 1)) for j in range(n)))


def all_diagrams(r: int, s: int) -> List[WalledDiagram]:
    """All ``(r+s)!`` walled diagrams, in sorted order."""
    n = r + s
    return sorted({flip(p, r, s) for p in itertools.permutations(range(1, n + 1))})


# -- generators and products ---------------------------------------------------

def tau_generator(i: int, r: int, s: int) -> WalledDiagram:
    """``tau_i``: the transposition diagram for ``i != r``, the contraction for ``i == r``."""
    n = r + s
    if not 1 <= i <= n - 1:
        raise DiagramError(f"generator index {i} outside 1..{n - 1}")
    if i == r:
        pairs = [(k, n + k) for k in range(n) if k not in (r - 1, r)]
        pairs += [(r - 1, r), (n + r - 1, n + r)]
        return WalledDiagram(r, s, tuple(pairs))
    perm = list(range(1, n + 1))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return permutation_diagram(perm, r, s)


def multiply_diagrams(a: WalledDiagram, b: WalledDiagram) -> Tuple[WalledDiagram, int]:
    """Stack ``a`` under ``b``; return the reduced diagram and the number of closed loops."""
    if (a.r, a.s) != (b.r, b.s):
        raise DiagramError(f"shape mismatch: {(a.r, a.s)} vs {(b.r, b.s)}")
    n = a.size
    pa, pb = a.partner(), b.partner()
    # middle row: upper vertex k of a is glued to lower vertex k of b
    seen_mid = [False] * n
    out = [-1] * (2 * n)

    def walk(in_b: bool, v: int) -> int:
        # follow the strand from vertex v of the given layer until it leaves the stack
        while True:
            w = (pb if in_b else pa)[v]
            if in_b:
                if w < n:
                    return w
                k = w - n
                seen_mid[k] = True
                in_b, v = False, k
            else:
                if w >= n:
                    return w
                seen_mid[w] = True
                in_b, v = True, n + w

    for k in range(n):
        if out[k] < 0:
            w = walk(True, k)
            out[k], out[w] = w, k
        if out[n + k] < 0:
            w = walk(False, n + k)
            out[n + k], out[w] = w, n + k

    loops = 0
    for k in range(n):
        if seen_mid[k]:
            continue
        loops += 1
        v = k
        while not seen_mid[v]:
            seen_mid[v] = True
            # up through b from its lower vertex v, then down through a
            w = pb[n + v] - n
            seen_mid[w] = True
            v = pa[w]
    return WalledDiagram.from_matching(a.r, a.s, out), loops


# -- the algebra -----------------------------------------------------------------

@dataclass(frozen=True)
class DiagramAlgebraElement:
    """Finite linear combination of diagrams with the loop value folded in."""

    r: int
    s: int
    terms: Tuple[Tuple[WalledDiagram, Scalar], ...]
    field: FieldSpec = QQ
    delta: Scalar = None

    def __post_init__(self):
        clean: Dict[WalledDiagram, Scalar] = {}
        for d, c in self.terms:
            if (d.r, d.s) != (self.r, self.s):
                raise DiagramError("all diagrams must share (r, s)")
            clean[d] = self.field.add(clean.get(d, self.field.zero), self.field(c))
        object.__setattr__(self, "terms",
                           tuple(sorted((d, c) for d, c in clean.items() if c)))
        if self.delta is None:
            raise DiagramError("an algebra element needs its loop value delta")
        object.__setattr__(self, "delta", self.field(self.delta))

    @classmethod
    def from_diagram(cls, d: WalledDiagram, field: FieldSpec, delta, coeff=1):
        return cls(d.r, d.s, ((d, coeff),), field, delta)

    @classmethod
    def zero(cls, r, s, field, delta):
        return cls(r, s, (), field, delta)

    def as_dict(self) -> Dict[WalledDiagram, Scalar]:
        return dict(self.terms)

    def _like(self, terms):
        return DiagramAlgebraElement(self.r, self.s, tuple(terms), self.field, self.delta)

    def _check(self, other: "DiagramAlgebraElement"):
        if (self.r, self.s) != (other.r, other.s):
            raise DiagramError("shape mismatch")
        if self.field != other.field:
            raise DiagramError(f"field mismatch: {self.field} vs {other.field}")
        if self.delta != other.delta:
            raise DiagramError("loop value mismatch")

    def __add__(self, other):
        self._check(other)
        return self._like(self.terms + other.terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "DiagramAlgebraElement":
        c = self.field(c)
        return self._like((d, self.field.mul(c, v)) for d, v in self.terms)

    def __mul__(self, other):
        if isinstance(other, DiagramAlgebraElement):
            return algebra_multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other):
        if not isinstance(other, DiagramAlgebraElement):
            return NotImplemented
        return (self.r, self.s, self.field, self.delta, self.terms) == \
            (other.r, other.s, other.field, other.delta, other.terms)

    def __hash__(self):
        return hash((self.r, self.s, self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{self.field.to_str(c)}*[{d}]" for d, c in self.terms)


def algebra_multiply(x: DiagramAlgebraElement, y: DiagramAlgebraElement,
                     delta: Optional[Scalar] = None) -> DiagramAlgebraElement:
    """Bilinear extension of :func:`multiply_diagrams`; each loop contributes ``delta``."""
    x._check(y)
    F = x.field
    if delta is not None and F(delta) != x.delta:
        raise DiagramError("delta differs from the one the elements were built with")
    d = x.delta
    terms = []
    for a, ca in x.terms:
        for b, cb in y.terms:
            prod, loops = multiply_diagrams(a, b)
            c = F.mul(ca, cb)
            if loops:
                c = F.mul(c, F.pow(d, loops))
            terms.append((prod, c))
    return x._like(terms)


def word_product(word: Sequence[int], r: int, s: int, field: FieldSpec, delta) -> DiagramAlgebraElement:
    """``tau_{w1} tau_{w2} ...`` as an algebra element; the empty word is the identity."""
    out = DiagramAlgebraElement.from_diagram(WalledDiagram.identity(r, s), field, delta)
    for i in word:
        out = out * DiagramAlgebraElement.from_diagram(tau_generator(i, r, s), field, delta)
    return out


@lru_cache(maxsize=None)
def diagram_words(r: int, s: int) -> Dict[WalledDiagram, Tuple[int, ...]]:
    """A shortest loop-free generator word for every diagram (breadth-first search)."""
    n = r + s
    gens = [tau_generator(i, r, s) for i in range(1, n)]
    start = WalledDiagram.identity(r, s)
    words = {start: ()}
    queue = deque([start])
    while queue:
        d = queue.popleft()
        for i, g in enumerate(gens, start=1):
            prod, loops = multiply_diagrams(d, g)
            if loops == 0 and prod not in words:
                words[prod] = words[d] + (i,)
                queue.append(prod)
    return words


# -- relations -------------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    """``lhs == delta**delta_power * rhs`` as generator words."""

    name: str
    lhs: Tuple[int, ...]
    rhs: Tuple[int, ...]
    delta_power: int = 0


@dataclass
class RelationReport:
    r: int
    s: int
    results: List[Tuple[Relation, bool]] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.results)

    def failures(self) -> List[Relation]:
        return [rel for rel, ok in self.results if not ok]

    def lines(self) -> List[str]:
        return [f"{'PASS' if ok else 'FAIL'} {rel.name}" for rel, ok in self.results]


def generator_relations(r: int, s: int) -> List[Relation]:
    """The walled Brauer presentation relations that make sense for ``(r, s)``.

    The contraction ``tau_r`` exists only when ``r >= 1`` and ``s >= 1``.
    """
    n = r + s
    idx = range(1, n)
    has_e = r >= 1 and s >= 1
    is_e = (lambda i: has_e and i == r)
    rels: List[Relation] = []
    for i in idx:
        if is_e(i):
            rels.append(Relation(f"t{i}^2 = delta*t{i}", (i, i), (i,), 1))
        else:
            rels.append(Relation(f"t{i}^2 = 1", (i, i), ()))
    for i in idx:
        j = i + 1
        if j < n and not is_e(i) and not is_e(j):
            rels.append(Relation(f"t{i}t{j}t{i} = t{j}t{i}t{j}", (i, j, i), (j, i, j)))
    for i, j in itertools.combinations(idx, 2):
        if j - i >= 2:
            rels.append(Relation(f"t{i}t{j} = t{j}t{i}", (i, j), (j, i)))
    if has_e:
        for k in (r - 1, r + 1):
            if 1 <= k <= n - 1:
                rels.append(Relation(f"t{r}t{k}t{r} = t{r}", (r, k, r), (r,)))
        if r >= 2 and s >= 2:
            rels.append(Relation(
                f"t{r}t{r+1}t{r-1}t{r} = t{r}t{r-1}t{r+1}t{r}",
                (r, r + 1, r - 1, r), (r, r - 1, r + 1, r)))
    return rels


def verify_generator_relations(r: int, s: int, delta, field: FieldSpec = QQ) -> RelationReport:
    if r + s < 2:
        raise DiagramError("relations need at least two strands")
    report = RelationReport(r, s)
    for rel in generator_relations(r, s):
        lhs = word_product(rel.lhs, r, s, field, delta)
        rhs = word_product(rel.rhs, r, s, field, delta).scale(field.pow(field(delta), rel.delta_power))
        report.results.append((rel, lhs == rhs))
    return report
