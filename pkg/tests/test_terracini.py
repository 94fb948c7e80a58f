from math import comb

import pytest

from splitgrass.exactla import GF, QQ, rank_of_rows
from splitgrass.polyalg import HomPoly
from splitgrass.terracini import (
    SecantReport,
    VarietySpec,
    grassmann_tangent_span,
    lemma_forme_details,
    lemma_forme_witness,
    secant_dimension,
    split2_codim_formula,
    split_degeneracy,
    split_tangent_span,
    trial_matrix,
    veronese_osc_span,
    veronese_tangent_span,
)


def rand_forms(rng, count, n, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(n + 1)] for _ in range(count)]


def test_spec_dimensions():
    g = VarietySpec.grassmann(2, 6)
    assert (g.dim, g.ambient_proj_dim, g.expected_proj_dim(3)) == (12, 34, 34)
    sp = VarietySpec.split(3, 4)
    assert (sp.dim, sp.ambient_proj_dim) == (12, 34)
    assert VarietySpec.veronese(2, 3).ambient_proj_dim == 9
    with pytest.raises(ValueError):
        VarietySpec("conic", 1, 1)
    with pytest.raises(ValueError):
        VarietySpec.grassmann(3, 3)


def test_split_tangent_span_dims(rng):
    assert split_tangent_span([[1, 2, 3]]).dim == 3
    assert split_tangent_span(rand_forms(rng, 2, 2)).dim == 5
    assert split_tangent_span(rand_forms(rng, 4, 3)).dim == 13
    degenerate = [[1, 0, 0], [1, 0, 0]]
    assert split_tangent_span(degenerate).dim < 5
    assert split_degeneracy(degenerate) == [(0, 1)]
    assert split_degeneracy(rand_forms(rng, 3, 3)) == []


def test_split_tangent_accepts_hompoly():
    forms = [HomPoly.linear([1, 1, 0]), HomPoly.linear([0, 1, -1])]
    assert split_tangent_span(forms) == split_tangent_span([[1, 1, 0], [0, 1, -1]])


def test_veronese_osc_span():
    assert veronese_osc_span([1, 0, 0], 3, 0).vectors() == [[1] + [0] * 9]
    t = veronese_tangent_span([1, 0, 0], 3)
    expected = [[1 if j == i else 0 for j in range(10)] for i in range(3)]
    assert t.dim == 3 and all(t.contains(v) for v in expected)
    assert veronese_osc_span([2, -1, 3, 1], 4, 2).dim == comb(5, 2)


def test_grassmann_tangent_span(rng):
    e = [[1 if j == i else 0 for j in range(4)] for i in range(4)]
    t = grassmann_tangent_span(e[:2])
    # coordinates (01, 02, 03, 12, 13, 23)
    for i in range(5):
        assert t.contains([1 if j == i else 0 for j in range(6)])
    assert not t.contains([0, 0, 0, 0, 0, 1])
    basis = rand_forms(rng, 3, 6)
    assert grassmann_tangent_span(basis).dim == 13
    e7 = [[1 if j == i else 0 for j in range(7)] for i in range(7)]
    assert grassmann_tangent_span(e7[:3]).dim == 3 * 4 + 1
    with pytest.raises(ValueError):
        grassmann_tangent_span([[1, 0, 0], [2, 0, 0]])


def test_report_invariants():
    spec = VarietySpec.split(2, 2)
    with pytest.raises(AssertionError):
        SecantReport(spec, 1, 5, 4, 5, -1, 1, "q", 0)
    with pytest.raises(AssertionError):
        SecantReport(spec, 1, 5, 3, 3, 0, 1, "q", 0)


def test_secant_single_point_is_variety():
    for spec in (VarietySpec.split(3, 3), VarietySpec.veronese(2, 4), VarietySpec.grassmann(1, 4)):
        r = secant_dimension(spec, 1, trials=3)
        assert r.computed_proj_dim == spec.dim


def test_grassmann_26_defective():
    r = secant_dimension(VarietySpec.grassmann(2, 6), 3, trials=5)
    assert (r.computed_proj_dim, r.expected_proj_dim, r.defect_observed) == (33, 34, 1)
    assert r.status == "defective (observed)"
    assert r.prime_le_rational


def test_split_34_fills():
    r = secant_dimension(VarietySpec.split(3, 4), 3, trials=5)
    assert r.computed_proj_dim == 34 and r.fills
    assert r.status == "non-defective (certified)"


def test_rational_mode():
    r = secant_dimension(VarietySpec.split(2, 3), 2, trials=2, field=QQ)
    assert r.field == "q" and len(r.rational_ranks) == 2 and r.computed_proj_dim == 9


def test_monotone_in_s_and_trials():
    spec = VarietySpec.split(3, 2)
    dims = [secant_dimension(spec, s, trials=4).computed_proj_dim for s in range(1, 4)]
    assert dims == sorted(dims)
    a = secant_dimension(spec, 2, trials=2).computed_proj_dim
    b = secant_dimension(spec, 2, trials=6).computed_proj_dim
    assert a <= b


def test_deterministic_given_seed():
    spec = VarietySpec.veronese(2, 3)
    assert trial_matrix(spec, 2, 7, 1, 50) == trial_matrix(spec, 2, 7, 1, 50)
    assert secant_dimension(spec, 2, seed=3, trials=3) == secant_dimension(spec, 2, seed=3, trials=3)


def test_prime_rank_below_rational():
    spec = VarietySpec.split(3, 3)
    rows = trial_matrix(spec, 2, 0, 0, 50)
    assert rank_of_rows(rows, GF(1048583)) <= rank_of_rows(rows, QQ)


def test_secant_errors():
    with pytest.raises(ValueError):
        secant_dimension(VarietySpec.split(2, 2), 0)
    with pytest.raises(ValueError):
        secant_dimension(VarietySpec.split(2, 2), 1, trials=0)


def test_codim_formula():
    assert split2_codim_formula(5, 2) == 3
    assert split2_codim_formula(3, 2) == 0
    assert split2_codim_formula(8, 2) == 15
    with pytest.raises(ValueError):
        split2_codim_formula(3, 3)


@pytest.mark.parametrize("n", [3, 5])
def test_codim_formula_matches_engine(n):
    for s in range(1, (n + 2) // 2 + 1):
        for spec in (VarietySpec.split(n, 2), VarietySpec.grassmann(1, n + 1)):
            r = secant_dimension(spec, s, trials=4)
            assert r.ambient_proj_dim - r.computed_proj_dim == split2_codim_formula(n, s)


def test_lemma_witness_examples(rng):
    n, d = 2, 3
    Q = rand_forms(rng, d, n)
    P = rand_forms(rng, n, n)
    assert lemma_forme_witness(Q, P)
    det = lemma_forme_details(rand_forms(rng, 3, 3), rand_forms(rng, 3, 3))
    assert det.holds and det.rank == det.expected_rank == 10


def test_lemma_witness_collinear_fails():
    Q = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    # P points coincide, so no unique line passes through them
    det = lemma_forme_details(Q, [[1, 1, 1], [2, 2, 2]])
    assert not det.holds and det.failed == "(i)"
    # a Q point on the line through P
    det = lemma_forme_details([[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0]])
    assert not det.holds and det.failed == "(i)"
