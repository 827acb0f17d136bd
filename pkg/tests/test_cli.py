import json

import pytest

from schurweyl.cli import ConfigError, main, parse_config
from schurweyl.scalars import GF


def test_parse_config():
    cases, settings = parse_config(
        "# comment\nbudget = 64\njobs=2\n\ncase m=2 r=2  # trailing\ncase m=1 n=1 r=1 s=1 field=p:3 checks=all\n")
    assert settings == {"budget": 64, "jobs": 2}
    assert [c.case_id for c in cases] == ["m2n0r2s0fq", "m1n1r1s1f3"]
    assert cases[1].field == GF(3) and len(cases[1].checks) == 5


@pytest.mark.parametrize("text,line,fragment", [
    ("case m=2 r=2\nfoo", 2, "expected 'case'"),
    ("case m=2 r=x", 1, "non-integer"),
    ("case m=2", 1, "at least m and r"),
    ("\n\ncase m=2 r=2 field=p:6", 3, "not prime"),
    ("case m=2 r=2 checks=second,bogus", 1, "unknown check"),
    ("case m=2 r=2 colour=red", 1, "unknown field"),
    ("budget = -1", 1, "positive"),
    ("case m=2 r", 1, "key=value"),
])
def test_config_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.lineno == line and fragment in str(exc.value)


def test_single_case_pass(capsys):
    assert main(["--m", "2", "--r", "2"]) == 0
    out = capsys.readouterr()
    rep = json.loads(out.out)
    assert rep["cases"]["m2n0r2s0fq"]["second"]["dim_diagram_commutant"] == 10
    assert "PASS m2n0r2s0fq" in out.err


def test_single_case_fail(capsys):
    assert main(["--m", "1", "--n", "1", "--r", "1", "--s", "1", "--check", "second"]) == 1
    assert "FAIL m1n1r1s1fq" in capsys.readouterr().err


def test_budget_exceeded(capsys, tmp_path):
    cfg = tmp_path / "c.txt"
    cfg.write_text("budget = 16\ncase m=3 n=1 r=2 s=1\n")
    assert main(["--config", str(cfg)]) == 2
    assert "budget" in capsys.readouterr().err.lower()


def test_bad_config_exit_code(capsys, tmp_path):
    cfg = tmp_path / "c.txt"
    cfg.write_text("case m=2 r=2\nnonsense\n")
    assert main(["--config", str(cfg)]) == 2
    assert "line 2" in capsys.readouterr().err
    assert main(["--config", str(tmp_path / "missing.txt")]) == 2


def test_bad_field_flag(capsys):
    assert main(["--m", "2", "--r", "2", "--field", "p:4"]) == 2


def test_empty_config(tmp_path, capsys):
    cfg = tmp_path / "empty.txt"
    cfg.write_text("# nothing here\n")
    assert main(["--config", str(cfg)]) == 0
    assert json.loads(capsys.readouterr().out) == {"cases": {}, "pass": True}


def test_out_files(tmp_path, capsys):
    out = tmp_path / "rep.json"
    assert main(["--m", "2", "--r", "1", "--s", "1", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["pass"] is True
    assert out.with_suffix(".csv").read_text().startswith("case,")
    assert capsys.readouterr().out == ""


def test_default_suite(capsys):
    # every default case passes except the unbalanced gl(1|1) mixed case
    assert main([]) == 1
    err = capsys.readouterr().err.splitlines()
    fails = [l for l in err if l.startswith("FAIL")]
    assert fails == ["FAIL m1n1r1s1fq"]
    assert len(err) == 16
