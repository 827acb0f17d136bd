import pytest

from schurweyl.duality import (CaseSpec, check_coefficients, check_first_duality,
                               check_invariant, check_relations, check_second_duality,
                               coefficient_violations, report_csv, run_case, run_suite,
                               strip_timings)
from schurweyl.oracles import a_dim, a_dim_super, dim_oracles
from schurweyl.commutant_engine import commutant
from schurweyl.scalars import GF, QQ
from schurweyl.tensor_action import BudgetError, TensorSpaceSpec, right_generators


def test_closed_forms():
    assert a_dim(2, 2) == 10
    assert a_dim(3, 3) == 165
    assert a_dim(4, 0) == 1
    assert a_dim_super(1, 1, 2) == 8
    assert a_dim_super(2, 0, 3) == a_dim(2, 3)
    assert dim_oracles(2, 0, 2, 0) == {"kind": "closed-form", "schur_dim": 10}
    assert dim_oracles(2, 0, 1, 1)["schur_dim"] is None


@pytest.mark.parametrize("m,r,F,expected", [(2, 2, QQ, 10), (2, 3, GF(2), 20), (3, 2, GF(3), 45)])
def test_second_duality_classical(m, r, F, expected):
    e = check_second_duality(CaseSpec(m, 0, r, 0, F))
    assert e["pass"] and e["dim_dist_image"] == e["dim_diagram_commutant"] == expected
    assert "witness" not in e


def test_second_duality_mixed_uses_brute_force():
    e = check_second_duality(CaseSpec(2, 0, 1, 1))
    assert e["pass"] and e["oracle"] == {"kind": "brute-force", "schur_dim": 10}


def test_failing_case_reports_witness():
    e = check_second_duality(CaseSpec(1, 1, 1, 1))
    assert not e["pass"] and e["containment"]
    assert (e["dim_dist_image"], e["dim_diagram_commutant"]) == (8, 10)
    assert e["witness"].startswith("dim 4 field q")


@pytest.mark.parametrize("m,r,expected_image,injective", [(2, 2, 2, True), (2, 3, 5, False),
                                                          (3, 3, 6, True)])
def test_first_duality_classical(m, r, expected_image, injective):
    e = check_first_duality(CaseSpec(m, 0, r, 0))
    assert e["pass"] and e["dim_diagram_image"] == expected_image
    assert e["injective"] is injective and e["predicted_injective"] is injective
    assert e["kernel_dim"] == e["abstract_dim"] - expected_image


def test_first_duality_char_p_is_report_only():
    e = check_first_duality(CaseSpec(2, 0, 2, 0, GF(2)))
    assert e["mode"] == "report-only" and e["containment"] and e["pass"]


def test_first_duality_mixed():
    e = check_first_duality(CaseSpec(2, 0, 1, 1))
    assert e["pass"] and e["dim_diagram_image"] == 2 and e["injective"]


def test_relation_check():
    e = check_relations(CaseSpec(1, 1, 2, 1))
    assert e["pass"] and e["product_map_failures"] == 0 and not e["abstract_failures"]
    assert check_relations(CaseSpec(2, 0, 1, 0))["skipped"]


def test_invariant_check():
    assert check_invariant(CaseSpec(2, 1, 2, 0))["pass"]


@pytest.mark.parametrize("m,n,r,s", [(2, 0, 2, 0), (1, 1, 2, 0), (2, 1, 2, 0), (2, 0, 2, 1)])
def test_coefficient_rule(m, n, r, s):
    e = check_coefficients(CaseSpec(m, n, r, s))
    assert e["pass"] and e["violations"] == 0


def test_coefficient_rule_detects_plain_matrices():
    from schurweyl.commutant_engine import rref
    from schurweyl.matrices import OperatorMatrix
    sp = TensorSpaceSpec(2, 0, 2, 0)
    E = OperatorMatrix.from_entries(4, QQ, [(0, 1, 1)])
    assert coefficient_violations(sp, rref([E.flatten()], QQ, 16)) > 0
    B = commutant([M for _, M in right_generators(sp)])
    assert coefficient_violations(sp, B) == 0


def test_case_validation():
    with pytest.raises(ValueError):
        CaseSpec(2, 0, 2, 0, QQ, frozenset({"bogus"}))
    assert CaseSpec(1, 1, 1, 1, GF(3)).case_id == "m1n1r1s1f3"


def test_budget():
    with pytest.raises(BudgetError):
        run_case(CaseSpec(3, 1, 2, 1), budget=16)
    with pytest.raises(BudgetError):
        run_suite([CaseSpec(2, 0, 2, 0), CaseSpec(3, 1, 2, 1)], budget=16)


def test_suite_determinism_and_parallelism():
    cases = [CaseSpec(2, 0, 2, 0), CaseSpec(1, 1, 2, 0, GF(3)), CaseSpec(2, 0, 1, 1)]
    a = strip_timings(run_suite(cases))
    b = strip_timings(run_suite(cases))
    c = strip_timings(run_suite(cases, jobs=2))
    assert a == b == c and a["pass"]
    assert list(a["cases"]) == ["m2n0r2s0fq", "m1n1r2s0f3", "m2n0r1s1fq"]


def test_empty_suite():
    assert run_suite([]) == {"cases": {}, "pass": True}


def test_csv_report():
    rep = run_suite([CaseSpec(2, 0, 2, 0), CaseSpec(1, 1, 1, 1, checks=frozenset({"second"}))])
    lines = report_csv(rep).splitlines()
    assert lines[0].startswith("case,m,n,r,s")
    assert lines[1].split(",")[-1] == "PASS" and lines[2].split(",")[-1] == "FAIL"
    assert not rep["pass"]
