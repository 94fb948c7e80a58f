import threading
from fractions import Fraction

import pytest

from splitgrass.exactla import Mat, VecSubspace, inverse, span_sum
from splitgrass.grassmann import PlueckerVec, Subspace, is_decomposable, pluecker_of, proj_equal
from splitgrass.polyalg import HomPoly, coeff_vector, parse_poly, power
from splitgrass import verograss as vg
from splitgrass.verograss import (
    CurveDivisor,
    binary_gcd,
    banded_matrix,
    curve_intersection,
    curve_intersection_degree,
    identification,
    osc_frame,
    reparametrize,
    rnc_point,
    span_of_divisor,
    veronese_jet_span,
    veronese_minor_polys,
    veronese_subspace,
    veronese_to_pluecker,
)


def U(text):
    return parse_poly(text.replace("u", "x"), 3)


def test_banded_matrix():
    assert banded_matrix([1, 2, 3], 2).tolist() == [[1, 2, 3, 0], [0, 1, 2, 3]]


def test_minor_polys_examples():
    polys = veronese_minor_polys(2, 3)
    assert polys[(0, 1, 2)] == U("u0^3")
    assert polys[(0, 2, 3)] == U("u0*u1^2 - u0^2*u2")
    assert polys[(1, 2, 3)] == U("u1^3 - 2*u0*u1*u2")
    assert polys[(2, 3, 4)] == U("u2^3")
    small = veronese_minor_polys(1, 2)
    assert small == {(0, 1): parse_poly("x0^2", 2), (0, 2): parse_poly("x0*x1", 2), (1, 2): parse_poly("x1^2", 2)}


def test_minors_of_first_variable():
    v = veronese_to_pluecker([1, 0, 0, 0], 3)
    assert v.coords == {(0, 1, 2): 1}


def test_minors_match_subspace():
    L = [3, -1, 4]
    v = veronese_to_pluecker(L, 3)
    assert v == pluecker_of(veronese_subspace(L, 3))
    assert is_decomposable(v)
    with pytest.raises(ValueError):
        veronese_to_pluecker([0, 0, 0], 3)


def test_identification_reference_coefficients():
    f = identification(2, 3).apply(
        PlueckerVec.from_list([Fraction(1)] * 10, 5, 3)
    )
    # all p_I = 1: x1^3 -> p123 + 2 p024 = 3, x0 x1^2 -> 3 (p023 + p014) = 6
    assert f.coeff((0, 3, 0)) == 3
    assert f.coeff((1, 2, 0)) == 6


@pytest.mark.parametrize("n,d", [(1, 1), (1, 4), (2, 2), (2, 3), (3, 3), (4, 2), (3, 4)])
def test_identification_power_map(n, d, rng):
    ident = identification(n, d)
    for _ in range(5):
        u = [rng.randint(-9, 9) for _ in range(n + 1)]
        if not any(u):
            continue
        assert ident.apply(veronese_to_pluecker(u, d)) == power(HomPoly.linear(u), d)
        f = power(HomPoly.linear(u), d)
        assert proj_equal(ident.inverse(f), veronese_to_pluecker(u, d))


def test_identification_reference_line():
    ident = identification(2, 3)
    f = ident.apply(PlueckerVec.from_list([0, 0, 0, 2, -1, 0, -4, 2, 0, 0], 5, 3))
    target = parse_poly("x1*(x0-x1)*(x1-x2)", 3)
    ratio = Fraction(f.coeff((0, 3, 0))) / target.coeff((0, 3, 0))
    assert f == target * ratio


def test_identification_size_limit():
    with pytest.raises(ValueError):
        identification(7, 2)
    with pytest.raises(ValueError):
        identification(0, 2)


def test_concurrent_first_access():
    vg._ident_cache.pop((3, 2), None)
    out = []
    threads = [threading.Thread(target=lambda: out.append(identification(3, 2))) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(out) == 8 and all(x is out[0] for x in out)


def test_rnc_and_osc_frame():
    assert rnc_point([1, 0], 4) == [1, 0, 0, 0, 0]
    assert rnc_point([1, 2], 3) == [1, 2, 4, 8]
    e = [[1 if j == i else 0 for j in range(5)] for i in range(5)]
    assert osc_frame([1, 0], 1, 4) == VecSubspace.span(e[:2], 5)
    assert osc_frame([0, 1], 1, 4) == VecSubspace.span(e[3:], 5)
    both = span_sum(osc_frame([1, 0], 1, 4), osc_frame([0, 1], 1, 4))
    assert Subspace.from_cone(both) == Subspace([[0, 0, 1, 0, 0]])
    assert osc_frame([2, 3], 4, 4).dim == 5
    with pytest.raises(ValueError):
        osc_frame([1, 1], 5, 4)
    with pytest.raises(ValueError):
        rnc_point([0, 0], 3)


def test_osc_frame_chart_independent():
    # [2:4] and [1:2] are the same point
    assert osc_frame([2, 4], 2, 5) == osc_frame([1, 2], 2, 5)


def test_span_of_divisor():
    D = CurveDivisor.of([((1, 1), 3)], 5)
    s = span_of_divisor(D)
    assert s.proj_dim == 2 and curve_intersection_degree(s) == 3
    D = CurveDivisor.of([((1, 0), 1), ((1, 1), 1), ((1, 2), 1)], 4)
    assert span_of_divisor(D).proj_dim == 2
    with pytest.raises(ValueError):
        span_of_divisor(CurveDivisor.of([], 4))
    with pytest.raises(ValueError):
        CurveDivisor.of([((1, 1), 1), ((2, 2), 1)], 4)


def test_reference_line_from_fat_points():
    # with n = 2 and Z empty, intersect the spans of two of the three double points
    y = [(1, 0), (0, 1), (1, 1)]
    cones = []
    for i in range(3):
        for j in range(i + 1, 3):
            cones.append(span_of_divisor(CurveDivisor.of([(y[i], 2), (y[j], 2)], 4)).cone())
    from splitgrass.exactla import span_intersect

    line = cones[0]
    for c in cones[1:]:
        line = span_intersect(line, c)
    assert Subspace.from_cone(line) == Subspace([[1, -2, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, -2, 1]])


def test_curve_intersection_degrees():
    assert curve_intersection_degree(Subspace([[1, -2, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, -2, 1]])) == 0
    ci = curve_intersection(Subspace([[0, 1, 0, 0], [0, 0, 1, 0]]))
    assert ci.degree == 2
    assert ci.gcd == (0, 1, 0)  # t0*t1
    assert binary_gcd([[0, 0, 0], [0, 0, 0]]) == []


def test_binary_gcd_with_t0_factors():
    # t0^2 t1 and t0 t1^2 share t0 t1
    assert binary_gcd([[0, 1, 0, 0], [0, 0, 1, 0]]) == [0, 1, 0]


def test_reparametrization_invariance(rng):
    A = [[2, 1], [1, 1]]
    N = 4
    M = reparametrize(A, N)
    assert M.apply(rnc_point([1, 3], N)) == rnc_point([5, 4], N)
    Minv = inverse(M)
    D = CurveDivisor.of([((1, 2), 2), ((3, 1), 1)], N)
    s = span_of_divisor(D)
    moved = Subspace(s.equations @ Minv)
    assert curve_intersection_degree(moved) == curve_intersection_degree(s) == 3


@pytest.mark.parametrize("n,d,k", [(2, 3, 0), (2, 3, 1), (2, 3, 2), (3, 4, 2), (1, 2, 1)])
def test_jet_span_matches_polynomial_side(n, d, k, rng):
    from math import comb

    from splitgrass.terracini import veronese_osc_span

    u = [rng.randint(-5, 5) for _ in range(n + 1)]
    u[0] = u[0] or 1
    jet = veronese_jet_span(u, d, k)
    assert jet.dim == comb(n + k, k)
    ident = identification(n, d)
    assert ident.apply_span(jet) == veronese_osc_span(u, d, k)
    if k:
        assert veronese_jet_span(u, d, k - 1).dim < jet.dim
