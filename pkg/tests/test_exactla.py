from fractions import Fraction

import pytest

from splitgrass.exactla import (
    DEFAULT_PRIME,
    GF,
    QQ,
    Field,
    FieldMismatchError,
    Mat,
    VecSubspace,
    contains,
    det,
    inverse,
    nullspace,
    rank,
    rank_naive,
    rank_of_rows,
    rref,
    span_intersect,
    span_sum,
)
from splitgrass.terracini import VarietySpec, split_tangent_span, trial_points


def test_field_validation():
    assert GF().prime == DEFAULT_PRIME
    with pytest.raises(ValueError):
        Field(15)
    with pytest.raises(ValueError):
        Field(101)  # below the minimum size
    with pytest.raises(TypeError):
        QQ(0.5)


def test_field_parse_and_descriptor():
    assert Field.parse("q") == QQ
    assert Field.parse(f"p:{DEFAULT_PRIME}") == GF()
    assert GF().descriptor == f"p:{DEFAULT_PRIME}"
    assert QQ("3/6") == Fraction(1, 2)
    assert GF()(-1) == DEFAULT_PRIME - 1


def test_rank_examples():
    assert rank(Mat.identity(3)) == 3
    assert rank(Mat([[1, 2, 3], [2, 4, 6]])) == 1
    assert rank(Mat([[1, 2, 3], [2, 4, 6]], GF())) == 1


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        Mat.identity(2) @ Mat.identity(2, GF())
    with pytest.raises(FieldMismatchError):
        span_sum(VecSubspace.full(2), VecSubspace.full(2, GF()))


def test_split_condition_matrix_rank():
    # three double points on Split_4(P^3): 3 x 13 tangent conditions in 35 coordinates
    spec = VarietySpec.split(3, 4)
    rows = []
    for forms in trial_points(spec, 3, seed=0, trial=0, bound=50):
        rows.extend(split_tangent_span(forms).vectors())
    assert (len(rows), len(rows[0])) == (39, 35)
    assert rank(Mat(rows)) == 35


def test_nullspace_examples():
    assert nullspace(Mat.identity(3)).dim == 0
    ns = nullspace(Mat([[1, 1]]))
    assert ns == VecSubspace.span([[1, -1]], 2)
    line = nullspace(Mat([[1, -2, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, -2, 1]]))
    assert line == VecSubspace.span([[2, 1, 0, 0, 0], [0, 0, 0, 1, 2]], 5)


def test_sum_and_intersection_examples():
    a = VecSubspace.span([[1, 0, 0]], 3)
    b = VecSubspace.span([[0, 1, 0]], 3)
    assert span_sum(a, b).dim == 2
    assert span_intersect(a, b).dim == 0
    assert span_sum(a, a) == a and span_intersect(a, a) == a
    with pytest.raises(ValueError):
        span_sum(a, VecSubspace.full(4))


def test_contains():
    s = VecSubspace.span([[1, 1, 0], [0, 1, 1]], 3)
    assert contains(s, [1, 2, 1])
    assert not contains(s, [1, 0, 0])
    assert [2, 2, 0] in s


def test_rref_det_inverse():
    m = Mat([[2, 1], [4, 3]])
    red, piv = rref(m)
    assert piv == [0, 1] and red == Mat.identity(2)
    assert det(m) == 2
    assert inverse(m) @ m == Mat.identity(2)
    with pytest.raises(ZeroDivisionError):
        inverse(Mat([[1, 2], [2, 4]]))
    assert det(Mat([[Fraction(1, 2), 1], [1, 4]])) == 1
    assert det(Mat([[2, 1], [4, 3]], GF())) == 2


def test_fraction_free_matches_naive(rng):
    for _ in range(30):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        m = Mat([[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)])
        assert rank(m) == rank_naive(m)


def test_rank_of_rows_empty():
    assert rank_of_rows([]) == 0
    assert rank(Mat.zeros(3, 4)) == 0
