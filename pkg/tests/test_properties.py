"""Randomized property suites; each property runs at least 200 derandomized examples."""

from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from splitgrass.exactla import GF, QQ, Mat, VecSubspace, rank, rank_naive, rank_of_rows, span_intersect, span_sum
from splitgrass.grassmann import PlueckerVec, Subspace, is_decomposable, parse_pluecker, format_pluecker, pluecker_of, proj_equal, subspace_of
from splitgrass.polyalg import (
    HomPoly,
    divide_exact,
    essential_vars_rank,
    from_coeff_vector,
    multiply,
    num_monomials,
    partial,
    product,
    splits_ternary_cubic,
)

PROPS = settings(max_examples=200, derandomize=True, deadline=None, database=None)

small = st.integers(-6, 6)


def int_matrix(max_rows=6, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    )


def hom_poly(n_vars, degree):
    size = num_monomials(n_vars - 1, degree)
    return st.lists(small, min_size=size, max_size=size).map(lambda v: from_coeff_vector(v, n_vars - 1, degree))


def linear_form(n_vars):
    return st.lists(small, min_size=n_vars, max_size=n_vars).filter(any).map(HomPoly.linear)


def full_rank(rows):
    return rank_of_rows(rows) == len(rows)


# ------------------------------------------------------------------ exactla


@PROPS
@given(int_matrix())
def test_rank_transpose(rows):
    m = Mat(rows)
    assert rank(m) == rank(m.transpose())


@PROPS
@given(int_matrix())
def test_bareiss_matches_naive(rows):
    assert rank(Mat(rows)) == rank_naive(Mat(rows))


@PROPS
@given(int_matrix(), st.sampled_from([1048583, 2147483647]))
def test_prime_rank_bounded_by_rational(rows, p):
    assert rank_of_rows(rows, GF(p)) <= rank_of_rows(rows, QQ)


@PROPS
@given(st.integers(1, 6).flatmap(lambda m: st.tuples(st.just(m), st.lists(st.lists(small, min_size=m, max_size=m), max_size=5), st.lists(st.lists(small, min_size=m, max_size=m), max_size=5))))
def test_grassmann_identity(case):
    m, a_rows, b_rows = case
    a, b = VecSubspace.span(a_rows, m), VecSubspace.span(b_rows, m)
    assert span_sum(a, b).dim + span_intersect(a, b).dim == a.dim + b.dim


# ------------------------------------------------------------------ polyalg


@PROPS
@given(st.integers(1, 4).flatmap(lambda d: hom_poly(3, d)), st.integers(1, 3).flatmap(lambda e: hom_poly(3, e)))
def test_divide_inverts_multiply(f, g):
    assume(not g.is_zero())
    assert divide_exact(multiply(f, g), g) == f


@PROPS
@given(st.integers(1, 3).flatmap(lambda m: st.integers(1, 4).flatmap(lambda d: hom_poly(m, d))))
def test_euler_identity(f):
    m = f.num_vars
    total = HomPoly.zero(m, f.degree)
    for i in range(m):
        total = total + HomPoly.variable(i, m) * partial(f, i)
    assert total == f.scale(f.degree)


@PROPS
@given(st.lists(linear_form(3), min_size=3, max_size=3), st.booleans(), st.booleans())
def test_product_of_lines_splits(forms, repeat, concurrent):
    if repeat:
        forms[1] = forms[0].scale(2)
    if concurrent:
        # third line through the meet of the first two
        forms[2] = forms[0] + forms[1].scale(3)
        assume(not forms[2].is_zero())
    assert splits_ternary_cubic(product(forms))


@PROPS
@given(hom_poly(3, 3), st.lists(small, min_size=9, max_size=9))
def test_essential_rank_invariant(f, entries):
    assume(not f.is_zero())
    A = [entries[0:3], entries[3:6], entries[6:9]]
    assume(rank_of_rows(A) == 3)
    g = f.substitute([HomPoly.linear(row) for row in A])
    assert essential_vars_rank(g) == essential_vars_rank(f)


@PROPS
@given(hom_poly(2, 3), linear_form(3), linear_form(3))
def test_binary_cubics_split(b, l0, l1):
    assume(not b.is_zero())
    assume(rank_of_rows([l0.linear_coeffs(), l1.linear_coeffs()]) == 2)
    f = b.substitute([l0, l1])
    assert essential_vars_rank(f) <= 2
    assert splits_ternary_cubic(f)


# ------------------------------------------------------------------ grassmann


def equations(n_ambient_min=3, n_ambient_max=6):
    def build(m):
        return st.integers(1, m - 1).flatmap(lambda d: st.lists(st.lists(small, min_size=m, max_size=m), min_size=d, max_size=d))

    return st.integers(n_ambient_min, n_ambient_max).flatmap(build)


@PROPS
@given(equations())
def test_round_trip_subspace(rows):
    assume(full_rank(rows))
    s = Subspace(rows)
    v = pluecker_of(s)
    assert is_decomposable(v)
    assert subspace_of(v) == s
    assert parse_pluecker(format_pluecker(v), v.n_ambient, v.codim) == v


@PROPS
@given(equations(), st.lists(small, min_size=36, max_size=36))
def test_row_operation_invariance(rows, entries):
    assume(full_rank(rows))
    d = len(rows)
    g = [entries[i * 6 : i * 6 + d] for i in range(d)]
    assume(rank_of_rows(g) == d)
    s = Subspace(rows)
    t = Subspace(Mat(g) @ s.equations)
    assert proj_equal(pluecker_of(s), pluecker_of(t))


@PROPS
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=2, max_size=2), st.integers(1, 5))
def test_perturbation_breaks_relation(rows, eps):
    assume(full_rank(rows))
    v = pluecker_of(Subspace(rows))
    assume(v.coords.get((0, 1), 0) != 0)
    coords = dict(v.coords)
    coords[(2, 3)] = coords.get((2, 3), 0) + eps
    # p01 p23 - p02 p13 + p03 p12 moves by eps * p01
    assert not is_decomposable(PlueckerVec(4, 2, coords))
