"""Case orchestration: the duality checks and the JSON/CSV report.

A case fixes ``(m, n, r, s)`` and a field.  The second duality compares the
image of ``Dist(G)`` with the commutant of the diagram action; the first
compares the image of the diagram algebra with the commutant of ``Dist(G)``.
Both are equalities of subspaces of ``End(V^r (x) W^s)``, which do not
depend on whether that algebra is read with its opposite multiplication.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import FrozenSet, Sequence

from . import commutant_engine as ce
from .matrices import OperatorMatrix
from .oracles import brute_force_commutant_dim, dim_oracles
from .scalars import FieldSpec, QQ
from .tensor_action import (TensorSpaceSpec, diagram_operator, dist_generators,
                            invariant_element, left_matrix_unit, right_generators, word_operator)
from .walled_brauer import (DiagramAlgebraElement, all_diagrams, algebra_multiply,
                            generator_relations, verify_generator_relations)

log = logging.getLogger(__name__)

CHECKS = ("second", "first", "relations", "invariant", "coefficients")
DEFAULT_BUDGET = 256
# dense brute-force oracle is quadratic in N^2; only run it on small spaces
BRUTE_FORCE_MAX_DIM = 16


@dataclass(frozen=True)
class CaseSpec:
    m: int
    n: int
    r: int
    s: int
    field: FieldSpec = QQ
    checks: FrozenSet[str] = frozenset(("second", "first"))

    def __post_init__(self):
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise ValueError(f"unknown checks {sorted(bad)}; choose from {CHECKS}")
        object.__setattr__(self, "checks", frozenset(self.checks))
        self.tensor_spec()  # validates parameters

    @property
    def case_id(self) -> str:
        return f"m{self.m}n{self.n}r{self.r}s{self.s}f{self.field.tag}"

    def tensor_spec(self) -> TensorSpaceSpec:
        return TensorSpaceSpec(self.m, self.n, self.r, self.s, self.field)


def _mats(named):
    return [M for _, M in named]


def check_second_duality(case: CaseSpec) -> dict:
    """Image of ``Dist(G)`` versus the commutant of ``tau_1..tau_{r+s-1}``."""
    sp = case.tensor_spec()
    t0 = time.perf_counter()
    dist = _mats(dist_generators(sp))
    right = _mats(right_generators(sp))
    A = ce.algebra_closure(dist, include_identity=True, dim=sp.dim, field=sp.field)
    B = ce.commutant(right, dim=sp.dim, field=sp.field)
    contained = ce.subspace_contains(B, A)
    equal = contained and A.dim == B.dim
    oracle = dim_oracles(case.m, case.n, case.r, case.s)
    if oracle["schur_dim"] is None and sp.dim <= BRUTE_FORCE_MAX_DIM:
        oracle = {"kind": "brute-force",
                  "schur_dim": brute_force_commutant_dim(right, sp.dim, sp.field)}
    oracle_ok = oracle["schur_dim"] is None or oracle["schur_dim"] == B.dim
    entry = {
        "dim_dist_image": A.dim,
        "dim_diagram_commutant": B.dim,
        "oracle": oracle,
        "containment": contained,
        "pass": bool(equal and oracle_ok),
    }
    if not equal:
        w = ce.witness_outside(A, B)
        entry["witness"] = OperatorMatrix.from_vector(sp.dim, sp.field, w).dump() if w else None
    entry["seconds"] = round(time.perf_counter() - t0, 4)
    return entry


def check_first_duality(case: CaseSpec) -> dict:
    """Image of the diagram algebra versus ``End_G``; injectivity data alongside."""
    sp = case.tensor_spec()
    t0 = time.perf_counter()
    dist = _mats(dist_generators(sp))
    right = _mats(right_generators(sp))
    C = ce.algebra_closure(right, include_identity=True, dim=sp.dim, field=sp.field)
    D = ce.commutant(dist, dim=sp.dim, field=sp.field)
    contained = ce.subspace_contains(D, C)
    surjective = contained and C.dim == D.dim
    abstract = math.factorial(case.r + case.s)
    entry = {
        "dim_diagram_image": C.dim,
        "dim_dist_commutant": D.dim,
        "containment": contained,
        "surjective": surjective,
        "abstract_dim": abstract,
        "kernel_dim": abstract - C.dim,
        "injective": C.dim == abstract,
    }
    char0 = sp.field.characteristic == 0
    entry["mode"] = "assert" if char0 else "report-only"
    ok = contained and (surjective or not char0)
    if case.n == 0 and case.s == 0:
        predicted = case.r <= case.m
        entry["predicted_injective"] = predicted
        if char0:
            ok = ok and predicted == entry["injective"]
    entry["pass"] = bool(ok)
    entry["seconds"] = round(time.perf_counter() - t0, 4)
    return entry


def check_relations(case: CaseSpec) -> dict:
    """Presentation relations in the diagram algebra and in the representation,
    plus (for ``r + s <= 3``) exhaustive anti-multiplicativity on basis diagrams."""
    sp = case.tensor_spec()
    t0 = time.perf_counter()
    if sp.length < 2:
        return {"skipped": "fewer than two strands", "pass": True, "seconds": 0.0}
    abstract = verify_generator_relations(case.r, case.s, sp.delta, sp.field)
    failed = [rel.name for rel in abstract.failures()]
    rep_failed = []
    for rel in generator_relations(case.r, case.s):
        lhs = word_operator(rel.lhs, sp)
        rhs = word_operator(rel.rhs, sp).scale(sp.field.pow(sp.delta, rel.delta_power))
        if lhs != rhs:
            rep_failed.append(rel.name)
    entry = {"relations": len(abstract.results),
             "abstract_failures": failed,
             "representation_failures": rep_failed}
    ok = not failed and not rep_failed
    if sp.length <= 3:
        bad = product_map_failures(sp)
        entry["product_map_failures"] = bad
        ok = ok and bad == 0
    entry["pass"] = ok
    entry["seconds"] = round(time.perf_counter() - t0, 4)
    return entry


def product_map_failures(sp: TensorSpaceSpec) -> int:
    """Count basis pairs ``(a, b)`` with ``R(ab) != R(b) R(a)``."""
    F, d = sp.field, sp.delta
    basis = [DiagramAlgebraElement.from_diagram(x, F, d) for x in all_diagrams(sp.r, sp.s)]
    mats = {x: diagram_operator(x, sp) for x in basis}
    bad = 0
    for a in basis:
        for b in basis:
            if diagram_operator(algebra_multiply(a, b), sp) != mats[b] @ mats[a]:
                bad += 1
    return bad


def check_invariant(case: CaseSpec) -> dict:
    """``e_ij`` kills ``sum_k v_k (x) v*_k`` in ``V (x) W`` for every ``i, j``."""
    sp = TensorSpaceSpec(case.m, case.n, 1, 1, case.field)
    t0 = time.perf_counter()
    tau = invariant_element(sp)
    nonzero = []
    for i in range(1, sp.rank + 1):
        for j in range(1, sp.rank + 1):
            if left_matrix_unit(i, j, sp).apply(tau):
                nonzero.append(f"e{i},{j}")
    return {"nonzero": nonzero, "pass": not nonzero,
            "seconds": round(time.perf_counter() - t0, 4)}


def coefficient_violations(sp: TensorSpaceSpec, basis: ce.SubspaceBasis) -> int:
    """Entries breaking ``(-1)^{|i_j||i_j+1|} a_{I.(j,j+1),L} = (-1)^{|l_j||l_j+1|} a_{I,L.(j,j+1)}``.

    Checked for every place transposition (``j != r`` when ``s > 0``).
    """
    N = sp.dim
    par = sp.parity
    basis_idx = list(sp.basis())
    swaps = [j for j in range(1, sp.length) if not (sp.r >= 1 and sp.s >= 1 and j == sp.r)]
    bad = 0
    zero = sp.field.zero
    for X in basis.matrices():
        for j in swaps:
            t = j - 1
            perm, sign = [], []
            for I in basis_idx:
                perm.append(sp.index(I[:t] + (I[t + 1], I[t]) + I[t + 2:]))
                sign.append(-1 if par(I[t]) and par(I[t + 1]) else 1)
            for I in range(N):
                for L in range(N):
                    lhs = sp.field(sign[I]) * X[perm[I], L]
                    rhs = sp.field(sign[L]) * X[I, perm[L]]
                    if sp.field.reduce(lhs - rhs) != zero:
                        bad += 1
    return bad


def check_coefficients(case: CaseSpec) -> dict:
    sp = case.tensor_spec()
    t0 = time.perf_counter()
    B = ce.commutant(_mats(right_generators(sp)), dim=sp.dim, field=sp.field)
    bad = coefficient_violations(sp, B)
    return {"basis_size": B.dim, "violations": bad, "pass": bad == 0,
            "seconds": round(time.perf_counter() - t0, 4)}


_RUNNERS = {
    "second": check_second_duality,
    "first": check_first_duality,
    "relations": check_relations,
    "invariant": check_invariant,
    "coefficients": check_coefficients,
}


def run_case(case: CaseSpec, budget: int = DEFAULT_BUDGET) -> dict:
    sp = case.tensor_spec()
    sp.check_budget(budget)
    entry = {"m": case.m, "n": case.n, "r": case.r, "s": case.s,
             "field": case.field.tag, "dim": sp.dim}
    for name in CHECKS:
        if name in case.checks:
            log.info("%s: running %s", case.case_id, name)
            entry[name] = _RUNNERS[name](case)
    entry["pass"] = all(entry[c]["pass"] for c in CHECKS if c in entry)
    return entry


def run_suite(cases: Sequence[CaseSpec], budget: int = DEFAULT_BUDGET, jobs: int = 1) -> dict:
    """Run every case (in parallel when ``jobs > 1``); keys are case ids."""
    for c in cases:
        c.tensor_spec().check_budget(budget)
    if jobs > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run_case, cases, [budget] * len(cases)))
    else:
        results = [run_case(c, budget) for c in cases]
    report = {"cases": {c.case_id: res for c, res in zip(cases, results)}}
    report["pass"] = all(res["pass"] for res in results)
    return report


def strip_timings(obj):
    """Copy of a report without the ``seconds`` fields."""
    if isinstance(obj, dict):
        return {k: strip_timings(v) for k, v in obj.items() if k != "seconds"}
    if isinstance(obj, list):
        return [strip_timings(v) for v in obj]
    return obj


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)


CSV_COLUMNS = ["case", "m", "n", "r", "s", "field", "dim",
               "dim_dist_image", "dim_diagram_commutant", "oracle",
               "dim_diagram_image", "dim_dist_commutant", "abstract_dim",
               "second", "first", "pass"]


def report_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for cid, e in report["cases"].items():
        sec, fst = e.get("second", {}), e.get("first", {})
        w.writerow([cid, e["m"], e["n"], e["r"], e["s"], e["field"], e["dim"],
                    sec.get("dim_dist_image", ""), sec.get("dim_diagram_commutant", ""),
                    (sec.get("oracle") or {}).get("schur_dim", "") if sec else "",
                    fst.get("dim_diagram_image", ""), fst.get("dim_dist_commutant", ""),
                    fst.get("abstract_dim", ""),
                    _flag(sec), _flag(fst), "PASS" if e["pass"] else "FAIL"])
    return buf.getvalue()


def _flag(entry: dict) -> str:
    if not entry:
        return ""
    return "PASS" if entry["pass"] else "FAIL"
