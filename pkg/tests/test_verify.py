import json

import pytest

import superbbw.verify as V
from superbbw.series import Poly
from superbbw.superalg import lookup
from superbbw.verify import (
    PROVENANCE, STATUSES, CheckReport, VerifyConfig, check_collapse, check_embeddings, check_exceptional, check_phiw,
    check_pn, check_poincare_w1, exit_code, reports_to_json, reports_to_markdown, run_all,
)


@pytest.mark.parametrize("name,expected", [("gl(3|3)", "1 + 2t^2 + 2t^4 + t^6"), ("q(3)", "1 + 2t + 2t^2 + t^3"),
                                           ("osp(3|2)", "1 + t^2")])
def test_poincare_w1_passes(name, expected):
    r = check_poincare_w1(lookup(name))
    assert r.status == "pass" and r.expected == r.computed == expected
    assert r.provenance in PROVENANCE


def test_poincare_w1_even_osp_fails():
    r = check_poincare_w1(lookup("osp(4|2)"))
    assert r.status == "fail" and r.computed == "1 + t + 2t^2"


@pytest.mark.parametrize("name", ["D(2,1,a)", "G(3)", "F(4)"])
def test_exceptional(name):
    r = check_exceptional(lookup(name))
    assert r.status == "fixture-only"
    assert "overcount" in r.note


@pytest.mark.parametrize("n,status", [(2, "pass"), (3, "pass"), (4, "pass"), (5, "flagged"), (6, "flagged")])
def test_pn(n, status):
    assert check_pn(lookup(f"p({n})")).status == status


def test_pn_negative_assertion_guards_regression(monkeypatch):
    """A census equal to some p_W1(t^r) must fail the p(4) check."""
    real = V.census

    class Fake:
        def __init__(self, r):
            self.poincare = Poly((1, 0, 3, 0, 3, 0, 1))
            self.__dict__.update({k: getattr(r, k) for k in ("nontrivial_found", "euler_per_lambda_degree")})

    monkeypatch.setattr(V, "poincare_poly", lambda g: Poly((1, 0, 3, 0, 3, 0, 1)) if g.n == 2 else Poly.one())
    monkeypatch.setattr(V, "census", lambda s, w=1: Fake(real(s, w)))
    assert check_pn(lookup("p(4)")).status == "fail"


def test_collapse_examples():
    assert check_collapse(lookup("q(2)")).status == "pass"
    assert check_collapse(lookup("gl(2|2)")).status == "pass"
    r = check_collapse(lookup("G(3)"))
    assert r.status == "pass" and r.provenance == "paper-theorem"
    assert check_collapse(lookup("p(5)")).status == "flagged"


def test_phiw_and_embeddings():
    assert check_phiw(lookup("osp(5|4)")).status == "pass"
    reps = check_embeddings(lookup("gl(2|3)"))
    assert [r.status for r in reps] == ["pass"]
    reps = {r.check_id: r for r in check_embeddings(lookup("osp(4|2)"))}
    assert reps["osp-parabolic-quotient"].status == "pass"


def test_report_validation():
    with pytest.raises(ValueError):
        CheckReport("x", "q(2)", "1", "paper-table", "1", "maybe")
    with pytest.raises(ValueError):
        CheckReport("x", "q(2)", "1", "folklore", "1", "pass")


def test_empty_grid():
    assert run_all([], VerifyConfig()) == []
    assert exit_code([]) == 0


def test_determinism_and_schema():
    cfg = VerifyConfig(families=("q", "gl"), max_rank=4)
    a, b = run_all(None, cfg), run_all(None, VerifyConfig(families=("q", "gl"), max_rank=4, workers=3))
    assert reports_to_json(a) == reports_to_json(b)
    rows = json.loads(reports_to_json(a))
    assert rows and all(set(r) == {"check_id", "algebra", "expected", "provenance", "computed", "status", "note"}
                        for r in rows)
    assert all(r["status"] in STATUSES and r["provenance"] in PROVENANCE for r in rows)
    assert exit_code(a) == 0
    assert "pass:" in reports_to_markdown(a)


def test_osp_square_grid_reports():
    reps = run_all([lookup(f"osp({2 * n}|{2 * n})") for n in (1, 2)], VerifyConfig())
    by = {(r.check_id, r.algebra): r for r in reps}
    assert by[("gl-parabolic-vs-table", "osp(4|4)")].status in ("pass", "flagged")
    assert by[("gl-parabolic-quotient", "osp(4|4)")].computed == "1 + t^2"
    assert exit_code(reps) == 1
