"""Sampled verifications of containment statements about ``Split_d`` and the Grassmannian.

Each ``check_*`` function is a pure function of its parameters and seed and
returns a :class:`ScenarioResult`.  Randomness for sample ``i`` comes from a
generator seeded by ``(seed, i, stream)`` so that any recorded witness can be
replayed on its own.  Only containment directions are tested; reverse
inclusions of the classification results are not decidable by sampling.
"""

from __future__ import annotations

import inspect
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

import numpy as np

from .exactla import QQ, Mat, VecSubspace, rank, rank_of_rows, span_intersect, span_sum
from .grassmann import PlueckerVec, Subspace, is_decomposable, pluecker_of, proj_equal, subspace_of
from .polyalg import (
    HomPoly,
    conic_rank,
    divide_exact,
    essential_vars_rank,
    format_poly,
    parse_poly,
    power,
    product,
    restrict,
    splits_ternary_cubic,
)
from .terracini import VarietySpec, lemma_forme_details, secant_dimension, split2_codim_formula
from .verograss import (
    CurveDivisor,
    binary_gcd,
    binary_multiply,
    curve_intersection,
    identification,
    osc_frame,
    root_form,
    veronese_jet_span,
    veronese_minor_polys,
    veronese_subspace,
    veronese_to_pluecker,
)


@dataclass
class ScenarioResult:
    id: str
    params: dict
    verdict: str
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in ("pass", "fail"):
            raise ValueError("verdict must be 'pass' or 'fail'")
        if self.verdict == "fail" and not self.witnesses:
            raise ValueError("a failing scenario must record a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {"id": self.id, "params": self.params, "verdict": self.verdict, "witnesses": self.witnesses, "details": self.details}


def _result(sid: str, params: dict, witnesses: list, **details) -> ScenarioResult:
    return ScenarioResult(sid, params, "fail" if witnesses else "pass", witnesses, details)


# ----------------------------------------------------------------- sampling


def _rng(seed: int, i: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng([seed, i, stream])


def _ints(rng, size: int, bound: int) -> list[int]:
    return [int(x) for x in rng.integers(-bound, bound + 1, size=size)]


def _rand_vec(rng, size: int, bound: int = 20) -> list[int]:
    while True:
        v = _ints(rng, size, bound)
        if any(v):
            return v


def _distinct(p, q) -> bool:
    return p[0] * q[1] != p[1] * q[0]


def _rand_curve_points(rng, count: int, avoid: Sequence = (), bound: int = 20) -> list[tuple[int, int]]:
    """``count`` pairwise distinct points of ``P^1``, also distinct from ``avoid``."""
    pts: list = []
    while len(pts) < count:
        t = tuple(_rand_vec(rng, 2, bound))
        if all(_distinct(t, q) for q in list(avoid) + pts):
            pts.append(t)
    return pts


def _rand_composition(rng, total: int) -> list[int]:
    """Random ordered composition of ``total`` into positive parts."""
    if total == 0:
        return []
    cuts = sorted(set(int(x) for x in rng.integers(1, total, size=int(rng.integers(0, total)))) if total > 1 else set())
    bounds = [0] + list(cuts) + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def _rand_divisor(rng, length: int, N: int, avoid: Sequence = ()) -> CurveDivisor:
    mults = _rand_composition(rng, length)
    pts = _rand_curve_points(rng, len(mults), avoid)
    return CurveDivisor.of(list(zip(pts, mults)), N)


def _rand_points_cone(rng, base: VecSubspace, target_dim: int) -> VecSubspace:
    """Enlarge ``base`` with random vectors until it has dimension ``target_dim``."""
    out = base
    while out.dim < target_dim:
        out = span_sum(out, VecSubspace.span([_rand_vec(rng, base.ambient_dim)], base.ambient_dim))
    return out


def _divisor_form(D: CurveDivisor) -> list:
    return D.binary_form()


def _linear_of_binary(coeffs: Sequence) -> HomPoly:
    return HomPoly.linear(list(coeffs))


def _binary_divides(g: Sequence, f: Sequence) -> bool:
    """Whether the binary form ``g`` divides ``f`` (degrees read off list lengths)."""
    if not any(f):
        return True
    common = binary_gcd([list(g), list(f)])
    gg = binary_gcd([list(g)])
    return len(common) == len(gg)


def _fmt(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vec(v) -> list[str]:
    return [_fmt(x) for x in v]


# --------------------------------------------------- secant spaces of the curve


def check_secant_locus_containment(n: int, d: int, samples: int = 50, seed: int = 0) -> ScenarioResult:
    """Planes ``(n-1)``-secant to the curve give split forms and Grassmannian points."""
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    N = n + d - 1
    params = {"n": n, "d": d, "samples": samples, "seed": seed}
    witnesses = []
    for i in range(samples):
        rng = _rng(seed, i)
        Z = _rand_divisor(rng, n - 1, N)
        cone = _rand_points_cone(rng, Z.cone(), n)
        lam = Subspace.from_cone(cone)
        pv = pluecker_of(lam)
        f = identification(n, d).apply(pv)
        ess = essential_vars_rank(f)
        deg = curve_intersection(lam).degree
        if not (is_decomposable(pv) and ess <= 2 and deg >= n - 1):
            witnesses.append({"sample": i, "divisor": _div_payload(Z), "equations": _mat(lam), "essential_rank": ess, "degree": deg})
    control = _negative_essential_control(n, d, samples, seed)
    if not control["behaved"]:
        witnesses.append({"negative_control": control})
    return _result("secant-locus", params, witnesses, negative_control=control)


def _negative_essential_control(n: int, d: int, samples: int, seed: int) -> dict:
    """Random planes: at least one must need three or more essential variables."""
    N = n + d - 1
    ranks = []
    for i in range(max(samples, 1)):
        rng = _rng(seed, i, 1)
        cone = _rand_points_cone(rng, VecSubspace.zero(N + 1), n)
        f = identification(n, d).apply(pluecker_of(Subspace.from_cone(cone)))
        ranks.append(essential_vars_rank(f))
        if ranks[-1] >= 3:
            break
    return {"max_essential_rank": max(ranks), "samples_used": len(ranks), "behaved": max(ranks) >= 3}


def _div_payload(D: CurveDivisor) -> list:
    return [[_vec(t), m] for t, m in D.points]


def _mat(s: Subspace) -> list:
    return [_vec(r) for r in s.equations]


# ------------------------------------------------------------- the X_(n+1) family


@dataclass
class Xn1Sample:
    subspace: Subspace
    cone_dim: int
    pluecker: PlueckerVec
    poly: HomPoly
    factors: tuple[HomPoly, HomPoly, HomPoly]
    points: tuple
    Z: CurveDivisor | None


def xn1_element(n: int, Z_items: Sequence, y: Sequence) -> Xn1Sample:
    """``<Z+2y1+2y2> & <Z+2y1+2y3> & <Z+2y2+2y3>`` together with its three linear factors.

    The factor for the pair ``(a, b)`` is the linear form whose coefficients
    are those of the binary form vanishing on ``Z + ya + yb``.
    """
    N = n + 2
    y1, y2, y3 = y
    pz = [Fraction(1)]
    for t, m in Z_items:
        for _ in range(m):
            pz = binary_multiply(pz, root_form(t))
    cones, factors = [], []
    for a, b in ((y1, y2), (y1, y3), (y2, y3)):
        D = CurveDivisor.of(list(Z_items) + [(a, 2), (b, 2)], N)
        cones.append(D.cone())
        factors.append(_linear_of_binary(binary_multiply(binary_multiply(pz, root_form(a)), root_form(b))))
    cone = span_intersect(span_intersect(cones[0], cones[1]), cones[2])
    lam = Subspace.from_cone(cone)
    pv = pluecker_of(lam)
    f = identification(n, 3).apply(pv)
    Z = CurveDivisor.of(list(Z_items), N) if Z_items else None
    return Xn1Sample(lam, cone.dim, pv, f, tuple(factors), tuple(y), Z)


def _certify_split_by_factors(f: HomPoly, factors: Sequence[HomPoly]) -> bool:
    rest = f
    for L in factors:
        rest = divide_exact(rest, L)
        if rest is None:
            return False
    return rest.degree == 0 and not rest.is_zero()


REF_LINE_EQUATIONS = [[1, -2, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, -2, 1]]
REF_LINE_PLUECKER = [0, 0, 0, 2, -1, 0, -4, 2, 0, 0]
REF_LINE_POLY = "x1*(x0-x1)*(x1-x2)"
REF_Y = ((1, 0), (0, 1), (1, 1))


def _sample_xn1(n: int, rng) -> Xn1Sample:
    y = _rand_curve_points(rng, 3)
    Z = _rand_divisor(rng, n - 2, n + 2, avoid=y)
    return xn1_element(n, list(Z.points), y)


def check_xn1_component(n: int, samples: int = 10, seed: int = 0) -> ScenarioResult:
    """Triple intersections of bitangent spans are split cubics in the Grassmannian."""
    if n < 2:
        raise ValueError("need n >= 2")
    params = {"n": n, "d": 3, "samples": samples, "seed": seed}
    witnesses = []
    details: dict = {}
    if n == 2:
        ex = xn1_element(2, [], REF_Y)
        target = Subspace(REF_LINE_EQUATIONS)
        ok = (
            ex.subspace == target
            and proj_equal(ex.pluecker, PlueckerVec.from_list(REF_LINE_PLUECKER, 5, 3))
            and rank_of_rows([_cv(ex.poly), _cv(parse_poly(REF_LINE_POLY, 3))]) == 1
            and splits_ternary_cubic(ex.poly)
            and curve_intersection(ex.subspace).degree == 0
        )
        details["reference_instance"] = {"reproduced": ok, "poly": format_poly(ex.poly), "pluecker": _vec(ex.pluecker.as_list())}
        if not ok:
            witnesses.append({"reference_instance": details["reference_instance"]})
    for i in range(samples):
        ex = _sample_xn1(n, _rng(seed, i))
        ok = ex.cone_dim == n and is_decomposable(ex.pluecker) and _certify_split_by_factors(ex.poly, ex.factors)
        if n == 2:
            ok = ok and splits_ternary_cubic(ex.poly)
        if not ok:
            witnesses.append({"sample": i, "points": [_vec(t) for t in ex.points], "equations": _mat(ex.subspace), "poly": format_poly(ex.poly)})
    return _result("xn1-component", params, witnesses, **details)


def _cv(f: HomPoly) -> list:
    from .polyalg import coeff_vector

    return coeff_vector(f)


# ------------------------------------------------------------------- five lines

FIVE_LINE_DIVISORS = {
    1: [[(0, 4)], [(0, 2), (1, 2)], [(1, 4)]],
    2: [[(0, 4)], [(0, 2), (1, 1), (2, 1)], [(1, 3), (2, 1)]],
    3: [[(0, 4)], [(0, 2), (1, 2)], [(1, 3), (2, 1)]],
    4: [[(0, 3), (1, 1)], [(0, 1), (1, 3)], [(2, 4)]],
    5: [[(0, 3), (1, 1)], [(0, 1), (1, 3)], [(2, 3), (3, 1)]],
}


def five_lines_reference(lam) -> dict:
    """Equations, Plücker vectors and polynomials listed for the five lines."""
    lam = Fraction(lam)
    return {
        1: ([[0, 0, 0, 0, 1], [0, 0, 1, 0, 0], [1, 0, 0, 0, 0]], [0, 0, 0, 0, -1, 0, 0, 0, 0, 0], "-2*x1*(3*x0*x2+x1^2)"),
        2: (
            [[0, 0, 0, 0, 1], [0, 0, 1, -1, 0], [1, -1, 0, 0, 0]],
            [0, 0, 0, 0, -1, 1, 0, 1, -1, 0],
            "-6*x0*x1*x2+3*x0*x2^2-2*x1^3+6*x1^2*x2-3*x1*x2^2",
        ),
        3: ([[0, 0, 0, 0, 1], [0, 0, 1, 0, 0], [1, -1, 0, 0, 0]], [0, 0, 0, 0, -1, 0, 0, 1, 0, 0], "-x1*(6*x0*x2+2*x1^2-3*x1*x2)"),
        4: ([[0, 0, 0, 1, 0], [0, 1, 0, 0, 0], [1, -4, 6, -4, 1]], [0, -1, 0, 0, 0, 0, 6, 0, -1, 0], "-3*x1*(x0^2-2*x1^2+x2^2)"),
        5: (
            [[0, 0, 0, 1, 0], [0, 1, 0, 0, 0], [lam, -3 * lam - 1, 3 * lam + 3, -lam - 3, 1]],
            [0, -lam, 0, 0, 0, 0, 3 * lam + 3, 0, -1, 0],
            f"-3*x1*({_fmt(lam)}*x0^2-{_fmt(lam + 1)}*x1^2+x2^2)",
        ),
    }


def five_line(case: int, lam=2) -> tuple[Subspace, int]:
    """Construct one of the five lines; returns the subspace and the cone dimension."""
    y = [(1, 0), (0, 1), (1, 1), (1, Fraction(lam))]
    cones = [CurveDivisor.of([(y[p], m) for p, m in spec], 4).cone() for spec in FIVE_LINE_DIVISORS[case]]
    cone = span_intersect(span_intersect(cones[0], cones[1]), cones[2])
    return Subspace.from_cone(cone), cone.dim


def check_five_lines(lambda_values: Sequence = (2, 3)) -> ScenarioResult:
    """The five lines whose cubics do not split, checked item by item."""
    lams = [Fraction(x) for x in lambda_values]
    if not lams:
        raise ValueError("at least one lambda value is needed")
    if any(x in (0, 1) for x in lams):
        raise ValueError("lambda must differ from 0 and 1")
    params = {"lambda_values": [_fmt(x) for x in lams]}
    ident = identification(2, 3)
    witnesses, rows = [], []
    cases = [(c, lams[0]) for c in range(1, 5)] + [(5, x) for x in lams]
    for case, lam in cases:
        ref_eq, ref_p, ref_f = five_lines_reference(lam)[case]
        s, cdim = five_line(case, lam)
        pv = pluecker_of(s)
        f = ident.apply(pv)
        g = parse_poly(ref_f, 3)
        checks = {
            "line": cdim == 2,
            "equations": s == Subspace(ref_eq),
            "pluecker": proj_equal(pv, PlueckerVec.from_list(ref_p, 5, 3)),
            "polynomial": rank_of_rows([_cv(f), _cv(g)]) == 1,
            "not_split": not splits_ternary_cubic(f),
        }
        row = {"case": case, "lambda": _fmt(lam), **checks, "poly": format_poly(f)}
        rows.append(row)
        if not all(checks.values()):
            witnesses.append(row)
    return _result("five-lines", params, witnesses, cases=rows)


# ---------------------------------------------------------------- tangent pencils


def check_tangent_pencils(n: int, d: int, samples: int = 5, seed: int = 0, members: int = 5) -> ScenarioResult:
    """Members of the pencils ``F(A_i, B_i)`` lie in ``T_(L0) V`` and in the Grassmannian.

    ``L0`` corresponds to ``Lambda0 = <r1 y1, ..., rk yk>`` with ``sum r = n``;
    ``A_i`` lowers ``r_i`` by one and ``B_i`` adds the next osculating
    direction at ``y_i``.  Each member also passes the containment of its
    curve intersection in ``Lambda0`` and, after dividing by ``L0^(d-1)``, the
    sharing of a length ``n-1`` subscheme with ``Lambda0``.
    """
    if n < 2 or d < 2:
        raise ValueError("need n >= 2 and d >= 2")
    N = n + d - 1
    params = {"n": n, "d": d, "samples": samples, "seed": seed, "members": members}
    ident = identification(n, d)
    witnesses = []
    checked = 0
    configs = []
    for i in range(samples):
        rng = _rng(seed, i)
        if i == 0:
            mults = [n]  # a single point of full multiplicity
        elif i == 1:
            mults = [1] * n  # n distinct points
        else:
            mults = _rand_composition(rng, n)
        pts = _rand_curve_points(rng, len(mults))
        D0 = CurveDivisor.of(list(zip(pts, mults)), N)
        L0 = _linear_of_binary(D0.binary_form())
        lam0 = veronese_subspace(L0, d)
        configs.append(mults)
        if lam0 != Subspace.from_cone(D0.cone()):
            witnesses.append({"sample": i, "reason": "Lambda0 is not the span of its divisor", "divisor": _div_payload(D0)})
            continue
        jet = veronese_jet_span(L0, d, 1)
        L0_bin = D0.binary_form()
        L0_pow = power(L0, d - 1)
        for idx, (t, r) in enumerate(D0.points):
            A_items = [(q, m - 1 if j == idx else m) for j, (q, m) in enumerate(D0.points)]
            A = CurveDivisor.of(A_items, N).cone() if n > 1 else VecSubspace.zero(N + 1)
            B = span_sum(lam0.cone(), osc_frame(t, r, N))
            for m in range(members):
                mrng = _rng(seed, i, 10 + idx * members + m)
                coeffs = _rand_vec(mrng, B.dim)
                extra = [sum(c * x for c, x in zip(coeffs, col)) for col in zip(*B.vectors())]
                cone = span_sum(A, VecSubspace.span([extra], N + 1))
                if cone.dim != n:
                    continue
                lam = Subspace.from_cone(cone)
                pv = pluecker_of(lam)
                f = ident.apply(pv)
                info = curve_intersection(lam)
                L1 = divide_exact(f, L0_pow)
                shared = len(binary_gcd([list(L1.linear_coeffs()), L0_bin])) - 1 if L1 is not None and L1.degree == 1 else -1
                ok = {
                    "in_tangent_span": jet.contains(pv.as_list()),
                    "decomposable": is_decomposable(pv),
                    "meets_inside_lambda0": _binary_divides(info.gcd, L0_bin),
                    "quotient_shares": shared >= n - 1,
                }
                if d == 2:
                    ok["rank_two_quadric"] = conic_rank(f) <= 2
                checked += 1
                if not all(ok.values()):
                    witnesses.append({"sample": i, "pencil": idx, "member": m, "divisor": _div_payload(D0), "equations": _mat(lam), **ok})
    control = _tangent_negative_control(n, d, seed)
    if not control["behaved"]:
        witnesses.append({"negative_control": control})
    return _result("tangent-pencils", params, witnesses, members_checked=checked, multiplicities=configs, negative_control=control)


def _tangent_negative_control(n: int, d: int, seed: int) -> dict:
    """A random plane is not in the tangent space at a random Veronese point."""
    rng = _rng(seed, 0, 99)
    N = n + d - 1
    L0 = HomPoly.linear(_rand_vec(rng, n + 1))
    cone = _rand_points_cone(rng, VecSubspace.zero(N + 1), n)
    pv = pluecker_of(Subspace.from_cone(cone))
    inside = veronese_jet_span(L0, d, 1).contains(pv.as_list())
    return {"random_member_in_tangent": inside, "behaved": not inside}


# ---------------------------------------------------- second osculating spaces


def _not_split_certificate(f: HomPoly, rng) -> bool:
    """True if ``f`` is certified not to be a product of linear forms (cubics only)."""
    if f.num_vars == 3:
        return not splits_ternary_cubic(f)
    basis = [_rand_vec(rng, f.num_vars) for _ in range(3)]
    if rank_of_rows(basis) < 3:
        return False
    g = restrict(f, basis)
    return not g.is_zero() and not splits_ternary_cubic(g)


def check_osculating_membership(n: int, samples: int = 10, seed: int = 0) -> ScenarioResult:
    """Elements of the ``X_(n+1)`` family lie in ``O^2`` at each of their three factors."""
    if n < 2:
        raise ValueError("need n >= 2")
    params = {"n": n, "d": 3, "samples": samples, "seed": seed}
    witnesses = []
    sampled = []
    if n == 2:
        sampled.append(("reference", xn1_element(2, [], REF_Y)))
    for i in range(samples):
        sampled.append((i, _sample_xn1(n, _rng(seed, i))))
    factors = []
    for label, ex in sampled:
        flags = [veronese_jet_span(L, 3, 2).contains(ex.pluecker.as_list()) for L in ex.factors]
        factors.extend(ex.factors)
        if not all(flags):
            witnesses.append({"sample": label, "equations": _mat(ex.subspace), "memberships": flags})
    control = _osculating_negative_control(n, seed, factors)
    if not control["behaved"]:
        witnesses.append({"negative_control": control})
    return _result("osculating", params, witnesses, negative_control=control)


def _osculating_negative_control(n: int, seed: int, factors: Sequence[HomPoly]) -> dict:
    """A random plane missing the curve, with a certified non-split cubic, lies in no sampled ``O^2``."""
    N = n + 2
    for attempt in range(50):
        rng = _rng(seed, attempt, 77)
        cone = _rand_points_cone(rng, VecSubspace.zero(N + 1), n)
        lam = Subspace.from_cone(cone)
        if curve_intersection(lam).degree != 0:
            continue
        pv = pluecker_of(lam)
        f = identification(n, 3).apply(pv)
        if not _not_split_certificate(f, rng):
            continue
        hits = [veronese_jet_span(L, 3, 2).contains(pv.as_list()) for L in factors]
        return {"attempt": attempt, "decomposable": is_decomposable(pv), "hits": sum(hits), "behaved": not any(hits)}
    return {"behaved": False, "reason": "no certified non-split sample found"}


# ------------------------------------------------- skew and symmetric matrices


def skew_to_symmetric(A: Sequence[Sequence]) -> Mat:
    """Symmetric ``(n+1)x(n+1)`` matrix attached to a rank two skew ``(n+2)x(n+2)`` matrix.

    Entry ``(a, b)`` with ``a <= b`` is ``sum_t p(a-t, b+1+t)`` over the
    admissible ``t >= 0``, where ``p(i, j) = A[i][j]``.
    """
    M = Mat(A, QQ)
    m = M.rows
    if M.cols != m or m < 3:
        raise ValueError("expected a square matrix of size at least 3")
    if any(M[i, j] != -M[j, i] for i in range(m) for j in range(m)):
        raise ValueError("matrix is not skew-symmetric")
    if rank(M) != 2:
        raise ValueError("skew matrix must have rank two (a point of the Grassmannian)")
    size = m - 1
    Q = [[Fraction(0)] * size for _ in range(size)]
    for a in range(size):
        for b in range(a, size):
            total = Fraction(0)
            t = 0
            while a - t >= 0 and b + 1 + t < m:
                total += M[a - t, b + 1 + t]
                t += 1
            Q[a][b] = Q[b][a] = total
    return Mat(Q, QQ)


def _skew_of(s: Subspace) -> list[list]:
    a, b = s.equations[0], s.equations[1]
    return [[a[i] * b[j] - a[j] * b[i] for j in range(len(a))] for i in range(len(a))]


def check_appendix_secancy(n: int, samples: int = 100, seed: int = 0) -> ScenarioResult:
    """``rank Q <= r`` iff the plane meets the curve in length at least ``n-r+1``."""
    if n < 2:
        raise ValueError("need n >= 2")
    N = n + 1
    params = {"n": n, "samples": samples, "seed": seed}
    witnesses = []
    seen_degrees = set()
    for i in range(samples):
        rng = _rng(seed, i)
        length = int(rng.integers(0, n + 1))
        base = _rand_divisor(rng, length, N).cone() if length else VecSubspace.zero(N + 1)
        cone = _rand_points_cone(rng, base, n)
        lam = Subspace.from_cone(cone)
        A = _skew_of(lam)
        Q = skew_to_symmetric(A)
        g = binary_gcd(A)
        deg = len(g) - 1
        rq = rank(Q)
        seen_degrees.add(deg)
        bad = [r for r in range(n + 2) if (rq <= r) != (deg >= n - r + 1)]
        if bad:
            witnesses.append({"sample": i, "equations": _mat(lam), "rank_Q": rq, "degree": deg, "failing_r": bad})
    return _result("skew-symmetric", params, witnesses, degrees_seen=sorted(seen_degrees))


# ---------------------------------------------------------- binary disguises


def check_binary_disguise(n: int, samples: int = 20, seed: int = 0) -> ScenarioResult:
    """Planes meeting the curve in length ``>= n-1`` versus cubics in two linear forms."""
    if n < 2:
        raise ValueError("need n >= 2")
    N = n + 2
    ident = identification(n, 3)
    params = {"n": n, "d": 3, "samples": samples, "seed": seed}
    witnesses = []
    for i in range(samples):
        # (a) length >= n-1 forces at most two essential variables
        rng = _rng(seed, i)
        Z = _rand_divisor(rng, n - 1 + int(rng.integers(0, 2)), N)
        lam = Subspace.from_cone(_rand_points_cone(rng, Z.cone(), n))
        f = ident.apply(pluecker_of(lam))
        ess = essential_vars_rank(f)
        if ess > 2:
            witnesses.append({"direction": "a", "sample": i, "equations": _mat(lam), "essential_rank": ess})
        # (b) cubics in N0, N1 sharing n-1 roots come from planes meeting the curve in length >= n-1
        rng = _rng(seed, i, 1)
        N0, N1 = _special_pair(rng, n)
        F = _random_binary_cubic(rng, N0, N1)
        pv = ident.inverse(F)
        dec = is_decomposable(pv)
        deg = curve_intersection(subspace_of(pv)).degree if dec else -1
        if not dec or deg < n - 1:
            witnesses.append({"direction": "b", "sample": i, "N0": _vec(N0.linear_coeffs()), "N1": _vec(N1.linear_coeffs()), "decomposable": dec, "degree": deg})
    control = _disguise_negative_control(n, seed)
    if not control["behaved"]:
        witnesses.append({"negative_control": control})
    return _result("binary-disguise", params, witnesses, negative_control=control)


def _special_pair(rng, n: int) -> tuple[HomPoly, HomPoly]:
    """Linear forms ``N0, N1`` whose binary forms share the roots of a common factor of degree ``n-1``."""
    pz = [Fraction(1)]
    for t in _rand_curve_points(rng, n - 1):
        pz = binary_multiply(pz, root_form(t))
    while True:
        l0, l1 = _rand_vec(rng, 2), _rand_vec(rng, 2)
        if rank_of_rows([l0, l1]) == 2:
            return _linear_of_binary(binary_multiply(pz, l0)), _linear_of_binary(binary_multiply(pz, l1))


def _random_binary_cubic(rng, N0: HomPoly, N1: HomPoly) -> HomPoly:
    while True:
        c = _ints(rng, 4, 9)
        if any(c):
            break
    terms = [power(N0, 3 - j) * power(N1, j) * c[j] for j in range(4)]
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    if out.is_zero():
        return power(N0, 3)
    return out


def _disguise_negative_control(n: int, seed: int) -> dict:
    """Generic ``N0, N1``: a random cubic in them is off the Grassmannian, a cube is on it."""
    ident = identification(n, 3)
    rng = _rng(seed, 0, 55)
    while True:
        N0, N1 = HomPoly.linear(_rand_vec(rng, n + 1)), HomPoly.linear(_rand_vec(rng, n + 1))
        if len(binary_gcd([N0.linear_coeffs(), N1.linear_coeffs()])) == 1:
            break
    F = _random_binary_cubic(rng, N0, N1)
    random_off = not is_decomposable(ident.inverse(F))
    cube_on = is_decomposable(ident.inverse(power(N0, 3)))
    return {"random_cubic_off_grassmannian": random_off, "cube_on_grassmannian": cube_on, "behaved": random_off and cube_on}


# ----------------------------------------------------- table-driven scenarios


MINORS_TABLE = {
    (0, 1, 2): "u0^3",
    (0, 1, 3): "u0^2*u1",
    (0, 1, 4): "u0^2*u2",
    (0, 2, 3): "u0*u1^2-u0^2*u2",
    (0, 2, 4): "u0*u1*u2",
    (0, 3, 4): "u0*u2^2",
    (1, 2, 3): "u1^3-2*u0*u1*u2",
    (1, 2, 4): "u1^2*u2-u0*u2^2",
    (1, 3, 4): "u1*u2^2",
    (2, 3, 4): "u2^3",
}

# coefficient of each monomial of the identified cubic, as {Plücker index: multiplier}
IDENTIFIED_CUBIC = {
    (3, 0, 0): {(0, 1, 2): 1},
    (2, 1, 0): {(0, 1, 3): 3},
    (2, 0, 1): {(0, 1, 4): 3},
    (1, 2, 0): {(0, 2, 3): 3, (0, 1, 4): 3},
    (1, 1, 1): {(0, 2, 4): 6},
    (1, 0, 2): {(0, 3, 4): 3},
    (0, 3, 0): {(1, 2, 3): 1, (0, 2, 4): 2},
    (0, 2, 1): {(0, 3, 4): 3, (1, 2, 4): 3},
    (0, 1, 2): {(1, 3, 4): 3},
    (0, 0, 3): {(2, 3, 4): 1},
}


def _u_poly(text: str) -> HomPoly:
    return parse_poly(text.replace("u", "x"), 3)


def check_minors_table() -> ScenarioResult:
    polys = veronese_minor_polys(2, 3)
    witnesses = [{"index": list(I), "got": format_poly(polys[I])} for I, ref in MINORS_TABLE.items() if polys[I] != _u_poly(ref)]
    return _result("minors-table", {"n": 2, "d": 3}, witnesses)


def check_identification(samples: int = 20, seed: int = 0) -> ScenarioResult:
    ident = identification(2, 3)
    witnesses = []
    from .grassmann import index_tuples

    tuples = index_tuples(5, 3)
    for mono, combo in IDENTIFIED_CUBIC.items():
        row = ident.mon.position(mono)
        got = {I: ident.matrix[row, j] for j, I in enumerate(tuples) if ident.matrix[row, j]}
        if got != combo:
            witnesses.append({"monomial": list(mono), "got": {"".join(map(str, k)): _fmt(v) for k, v in got.items()}})
    for i in range(samples):
        L = HomPoly.linear(_rand_vec(_rng(seed, i), 3, 50))
        if ident.apply(veronese_to_pluecker(L, 3)) != power(L, 3):
            witnesses.append({"sample": i, "L": _vec(L.linear_coeffs())})
    return _result("identification", {"n": 2, "d": 3, "samples": samples, "seed": seed}, witnesses)


def check_cubic_line() -> ScenarioResult:
    """The split cubic ``x1(x0-x1)(x1-x2)`` and its line missing the curve."""
    ident = identification(2, 3)
    pv = ident.inverse(parse_poly(REF_LINE_POLY, 3))
    ref = PlueckerVec.from_list(REF_LINE_PLUECKER, 5, 3)
    dec = is_decomposable(pv)
    line = subspace_of(pv) if dec else None
    flags = {
        "pluecker": proj_equal(pv, ref),
        "decomposable": dec,
        "misses_curve": line is not None and curve_intersection(line).degree == 0,
        "equations": line is not None and line == Subspace(REF_LINE_EQUATIONS),
    }
    w = [] if all(flags.values()) else [{**flags, "pluecker_vector": _vec(pv.as_list())}]
    return _result("cubic-line", {"n": 2, "d": 3}, w, **flags)


def _secant_rows(cases, trials: int, seed: int) -> list:
    from .exactla import GF

    out = []
    for spec, s in cases:
        out.append(secant_dimension(spec, s, trials=trials, field=GF(), seed=seed, confirm=3))
    return out


EHRENBORG_CASES = [
    (VarietySpec.grassmann(2, 6), 3, 33),
    (VarietySpec.split(3, 4), 3, 34),
    (VarietySpec.split(4, 3), 3, 34),
    (VarietySpec.split(4, 4), 3, 50),
    (VarietySpec.split(4, 4), 4, 67),
    (VarietySpec.split(3, 6), 4, 75),
    (VarietySpec.split(6, 3), 4, 75),
]
DEFECTIVE_GRASSMANN = [(VarietySpec.grassmann(3, 7), 3), (VarietySpec.grassmann(3, 7), 4), (VarietySpec.grassmann(2, 8), 4)]


def check_ehrenborg(trials: int = 20, seed: int = 0) -> ScenarioResult:
    witnesses, rows = [], []
    for spec, s, value in EHRENBORG_CASES:
        rep = secant_dimension(spec, s, trials=trials, seed=seed)
        row = rep.to_dict()
        rows.append(row)
        if rep.computed_proj_dim != value or not rep.prime_le_rational:
            witnesses.append({"target": value, **row})
        elif spec.kind == "grassmann" and rep.defect_observed != 1:
            witnesses.append({"target_defect": 1, **row})
    for spec, s in DEFECTIVE_GRASSMANN:
        rep = secant_dimension(spec, s, trials=trials, seed=seed)
        rows.append(rep.to_dict())
        if rep.computed_proj_dim >= rep.expected_proj_dim:
            witnesses.append({"expected_defective": True, **rep.to_dict()})
    return _result("ehrenborg", {"trials": trials, "seed": seed}, witnesses, reports=rows)


def check_codim_formula(n_values: Sequence[int] = (3, 4, 5, 6, 7, 8), trials: int = 20, seed: int = 0, rational_up_to: int = 6) -> ScenarioResult:
    witnesses, cells = [], []
    for n in n_values:
        for s in range(1, (n + 2) // 2 + 1):
            target = split2_codim_formula(n, s)
            for spec in (VarietySpec.grassmann(1, n + 1), VarietySpec.split(n, 2)):
                rep = secant_dimension(spec, s, trials=trials, seed=seed, confirm=3 if n <= rational_up_to else 0)
                codim = rep.ambient_proj_dim - rep.computed_proj_dim
                cells.append({"n": n, "s": s, "variety": spec.label(), "codim": codim, "formula": target})
                if codim != target:
                    witnesses.append({**cells[-1], **rep.to_dict()})
    return _result("codim-formula", {"n_values": list(n_values), "trials": trials, "seed": seed}, witnesses, cells=cells)


SMALL_SECANT_CASES = [(3, 3, 2), (4, 5, 2), (6, 3, 3), (7, 4, 3)]


def check_small_secants(trials: int = 20, seed: int = 0) -> ScenarioResult:
    witnesses, rows = [], []
    for n, d, s in SMALL_SECANT_CASES:
        rep = secant_dimension(VarietySpec.split(n, d), s, trials=trials, seed=seed)
        rows.append(rep.to_dict())
        if rep.computed_proj_dim != rep.expected_proj_dim:
            witnesses.append(rep.to_dict())
    return _result("small-secants", {"trials": trials, "seed": seed}, witnesses, reports=rows)


def check_jet_spans(max_n: int = 3, max_d: int = 4, max_k: int = 2, samples: int = 5, seed: int = 0) -> ScenarioResult:
    from .terracini import veronese_osc_span

    witnesses, count = [], 0
    for n in range(1, max_n + 1):
        for d in range(1, max_d + 1):
            ident = identification(n, d)
            for k in range(0, min(max_k, d) + 1):
                for i in range(samples):
                    L = HomPoly.linear(_rand_vec(_rng(seed, i, 1000 * n + 10 * d + k), n + 1))
                    lhs = ident.apply_span(veronese_jet_span(L, d, k))
                    rhs = veronese_osc_span(L, d, k)
                    count += 1
                    if lhs != rhs or lhs.dim != comb(n + k, k):
                        witnesses.append({"n": n, "d": d, "k": k, "L": _vec(L.linear_coeffs()), "dims": [lhs.dim, rhs.dim]})
    return _result("jet-spans", {"max_n": max_n, "max_d": max_d, "max_k": max_k, "samples": samples, "seed": seed}, witnesses, cases=count)


def check_lemma_witness(samples: int = 10, seed: int = 0) -> ScenarioResult:
    witnesses = []
    for n, d in ((2, 3), (3, 3)):
        for i in range(samples):
            rng = _rng(seed, i, 10 * n + d)
            Q = [_rand_vec(rng, n + 1) for _ in range(d)]
            P = [_rand_vec(rng, n + 1) for _ in range(n)]
            det = lemma_forme_details(Q, P)
            if not det.holds:
                witnesses.append({"n": n, "d": d, "sample": i, "Q": Q, "P": P, "failed": det.failed})
    # collinear P points violate general position; property (i) must fail
    Pc = [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]]
    Qc = [[1, 2, 3, 5], [2, -1, 4, 1], [3, 1, -2, 7]]
    neg = lemma_forme_details(Qc, Pc)
    control = {"holds": neg.holds, "failed": neg.failed, "behaved": (not neg.holds) and neg.failed == "(i)"}
    if not control["behaved"]:
        witnesses.append({"negative_control": control})
    return _result("lemma-witness", {"samples": samples, "seed": seed}, witnesses, negative_control=control)


# ------------------------------------------------------------------ registry


def _accepted(fn: Callable, kw: dict) -> dict:
    names = inspect.signature(fn).parameters
    return {k: v for k, v in kw.items() if k in names}


def _suite(fn: Callable, grid: Sequence[dict]) -> Callable[..., list[ScenarioResult]]:
    """Run ``fn`` over a parameter grid; overrides replace grid values, duplicates collapse."""

    def run(**overrides):
        kw = _accepted(fn, overrides)
        seen, out = [], []
        for g in grid:
            params = {**g, **kw}
            if params not in seen:
                seen.append(params)
                out.append(fn(**params))
        return out

    return run


def _single(fn: Callable) -> Callable[..., list[ScenarioResult]]:
    return lambda **overrides: [fn(**_accepted(fn, overrides))]


def _codim_from_n(**kw) -> ScenarioResult:
    """``--n N`` selects the grid ``3..N``."""
    n = kw.pop("n", None)
    if n is not None:
        kw["n_values"] = tuple(range(3, n + 1)) if n >= 3 else (n,)
    return check_codim_formula(**_accepted(check_codim_formula, kw))


SCENARIOS: dict[str, Callable[..., list[ScenarioResult]]] = {
    "binary-disguise": _suite(check_binary_disguise, [{"n": 2, "samples": 20, "seed": 0}, {"n": 3, "samples": 20, "seed": 0}]),
    "codim-formula": lambda **kw: [_codim_from_n(**kw)],
    "cubic-line": _single(check_cubic_line),
    "ehrenborg": _single(check_ehrenborg),
    "five-lines": _single(check_five_lines),
    "identification": _single(check_identification),
    "jet-spans": _single(check_jet_spans),
    "lemma-witness": _single(check_lemma_witness),
    "minors-table": _single(check_minors_table),
    "osculating": _suite(check_osculating_membership, [{"n": 2, "samples": 10, "seed": 0}, {"n": 3, "samples": 10, "seed": 0}]),
    "secant-locus": _suite(
        check_secant_locus_containment,
        [{"n": 2, "d": 3, "samples": 50, "seed": 0}, {"n": 3, "d": 3, "samples": 50, "seed": 0}],
    ),
    "skew-symmetric": _suite(check_appendix_secancy, [{"n": n, "samples": 100, "seed": 0} for n in range(2, 6)]),
    "small-secants": _single(check_small_secants),
    "tangent-pencils": _suite(
        check_tangent_pencils,
        [{"n": n, "d": d, "samples": 5, "seed": 0} for n in (2, 3) for d in (2, 3)],
    ),
    "xn1-component": _suite(
        check_xn1_component,
        [{"n": 2, "samples": 10, "seed": 0}, {"n": 3, "samples": 25, "seed": 0}, {"n": 4, "samples": 10, "seed": 0}],
    ),
}


def run_scenario(sid: str, **overrides) -> list[ScenarioResult]:
    """Run one registered scenario (or ``all``), results sorted by id then parameters."""
    if sid == "all":
        out = []
        for key in sorted(SCENARIOS):
            out.extend(SCENARIOS[key](**overrides))
        return out
    if sid not in SCENARIOS:
        raise KeyError(sid)
    return SCENARIOS[sid](**overrides)
