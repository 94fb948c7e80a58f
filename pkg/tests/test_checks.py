from fractions import Fraction

import pytest

from splitgrass import checks
from splitgrass.checks import (
    SCENARIOS,
    ScenarioResult,
    check_appendix_secancy,
    check_binary_disguise,
    check_cubic_line,
    check_five_lines,
    check_identification,
    check_lemma_witness,
    check_minors_table,
    check_osculating_membership,
    check_secant_locus_containment,
    check_tangent_pencils,
    check_xn1_component,
    five_line,
    run_scenario,
    skew_to_symmetric,
    xn1_element,
)
from splitgrass.grassmann import Subspace
from splitgrass.polyalg import parse_poly


def test_result_requires_witness_on_fail():
    with pytest.raises(ValueError):
        ScenarioResult("x", {}, "fail")
    with pytest.raises(ValueError):
        ScenarioResult("x", {}, "maybe")
    assert ScenarioResult("x", {}, "pass").passed


def test_xn1_reference_instance():
    ex = xn1_element(2, [], checks.REF_Y)
    assert ex.subspace == Subspace(checks.REF_LINE_EQUATIONS)
    assert ex.cone_dim == 2
    target = parse_poly(checks.REF_LINE_POLY, 3)
    ratio = Fraction(ex.poly.coeff((0, 3, 0))) / target.coeff((0, 3, 0))
    assert ex.poly == target * ratio


def test_five_line_subspaces():
    for case in range(1, 5):
        s, cdim = five_line(case)
        assert cdim == 2 and s == Subspace(checks.five_lines_reference(2)[case][0])
    s, _ = five_line(5, 3)
    assert s == Subspace(checks.five_lines_reference(3)[5][0])


def test_five_lines_scenario():
    r = check_five_lines()
    assert r.passed and len(r.details["cases"]) == 6
    with pytest.raises(ValueError):
        check_five_lines([1])


def test_skew_to_symmetric():
    A = [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
    assert skew_to_symmetric(A).tolist() == [[1, 0], [0, 0]]
    with pytest.raises(ValueError):
        skew_to_symmetric([[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    with pytest.raises(ValueError):
        skew_to_symmetric([[0] * 4 for _ in range(4)])


@pytest.mark.parametrize(
    "fn,kw",
    [
        (check_minors_table, {}),
        (check_identification, {"samples": 5}),
        (check_cubic_line, {}),
        (check_secant_locus_containment, {"n": 2, "d": 3, "samples": 5}),
        (check_xn1_component, {"n": 3, "samples": 3}),
        (check_tangent_pencils, {"n": 2, "d": 2, "samples": 2}),
        (check_osculating_membership, {"n": 2, "samples": 3}),
        (check_appendix_secancy, {"n": 3, "samples": 10}),
        (check_binary_disguise, {"n": 2, "samples": 5}),
        (check_lemma_witness, {"samples": 3}),
    ],
)
def test_scenarios_pass_small(fn, kw):
    r = fn(**kw)
    assert r.passed, r.witnesses
    assert r.to_dict()["verdict"] == "pass"


def test_negative_controls_recorded():
    for r in (
        check_secant_locus_containment(2, 3, samples=3),
        check_tangent_pencils(2, 3, samples=1),
        check_osculating_membership(2, samples=2),
        check_binary_disguise(2, samples=2),
        check_lemma_witness(samples=1),
    ):
        assert "negative_control" in r.details, r.id


def test_registry():
    assert {"five-lines", "ehrenborg", "codim-formula", "skew-symmetric"} <= set(SCENARIOS)
    out = run_scenario("minors-table")
    assert [r.id for r in out] == ["minors-table"]
    with pytest.raises(KeyError):
        run_scenario("nope")
    # irrelevant overrides are ignored
    assert run_scenario("cubic-line", samples=3)[0].passed


def test_codim_override_runs_small_grid():
    (r,) = run_scenario("codim-formula", n=4, trials=3)
    assert r.passed
