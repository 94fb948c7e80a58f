"""Secant dimensions through tangent spans (Terracini's lemma).

For ``s`` general points of a variety ``X`` the affine cone over
``Sec_(s-1)(X)`` has tangent space equal to the sum of the affine tangent
spaces at the points.  Sampling random points and computing the rank of the
stacked tangent vectors therefore gives a lower bound for the secant
dimension; reaching the expected value certifies non-defectivity.

Points are random integer data in ``[-bound, bound]``.  Each trial draws its
own generator from ``(seed, trial)`` and samples points one after the other,
so the first ``s`` points of a trial do not depend on how many are requested.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb, prod
from typing import Sequence

import numpy as np

from .exactla import QQ, Field, GF, Mat, VecSubspace, det, rank_of_rows
from .polyalg import HomPoly, coeff_vector, monomial_index

log = logging.getLogger(__name__)

KINDS = ("split", "veronese", "grassmann")


@dataclass(frozen=True)
class VarietySpec:
    """``split(n, d)``, ``veronese(n, d)`` or ``grassmann(k, N)`` (k-planes of ``P^N``)."""

    kind: str
    a: int
    b: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown variety kind {self.kind!r}")
        if self.kind == "grassmann":
            if not 0 <= self.a < self.b:
                raise ValueError("Grassmann(k, N) needs 0 <= k < N")
        elif self.a < 1 or self.b < 1:
            raise ValueError("n and d must be positive")

    @classmethod
    def split(cls, n: int, d: int) -> "VarietySpec":
        return cls("split", n, d)

    @classmethod
    def veronese(cls, n: int, d: int) -> "VarietySpec":
        return cls("veronese", n, d)

    @classmethod
    def grassmann(cls, k: int, N: int) -> "VarietySpec":
        return cls("grassmann", k, N)

    @property
    def dim(self) -> int:
        if self.kind == "split":
            return self.a * self.b
        if self.kind == "veronese":
            return self.a
        return (self.a + 1) * (self.b - self.a)

    @property
    def ambient_proj_dim(self) -> int:
        if self.kind == "grassmann":
            return comb(self.b + 1, self.a + 1) - 1
        return comb(self.a + self.b, self.b) - 1

    def expected_proj_dim(self, s: int) -> int:
        return min(self.ambient_proj_dim, s * self.dim + s - 1)

    def label(self) -> str:
        name = {"split": "Split", "veronese": "Veronese", "grassmann": "Grassmann"}[self.kind]
        return f"{name}({self.a},{self.b})"

    def params(self) -> dict:
        if self.kind == "grassmann":
            return {"variety": self.kind, "k": self.a, "N": self.b}
        return {"variety": self.kind, "n": self.a, "d": self.b}


@dataclass(frozen=True)
class SecantReport:
    spec: VarietySpec
    s: int
    ambient_proj_dim: int
    expected_proj_dim: int
    computed_proj_dim: int
    defect_observed: int
    trials: int
    field: str
    seed: int
    bound: int = 50
    confirm_trials: int = 0
    prime_ranks: tuple[int, ...] = ()
    rational_ranks: tuple[int, ...] = ()
    prime_le_rational: bool = True

    def __post_init__(self):
        if self.expected_proj_dim != min(self.ambient_proj_dim, self.s * self.spec.dim + self.s - 1):
            raise AssertionError("expected dimension inconsistent with the variety")
        if not self.computed_proj_dim <= self.expected_proj_dim <= self.ambient_proj_dim:
            raise AssertionError(
                f"dimension bounds violated: computed {self.computed_proj_dim}, "
                f"expected {self.expected_proj_dim}, ambient {self.ambient_proj_dim}"
            )
        if self.defect_observed != self.expected_proj_dim - self.computed_proj_dim:
            raise AssertionError("defect does not match expected - computed")

    @property
    def status(self) -> str:
        return "non-defective (certified)" if self.defect_observed == 0 else "defective (observed)"

    @property
    def fills(self) -> bool:
        return self.computed_proj_dim == self.ambient_proj_dim

    def to_dict(self) -> dict:
        return {
            **self.spec.params(),
            "s": self.s,
            "ambient_proj_dim": self.ambient_proj_dim,
            "expected_proj_dim": self.expected_proj_dim,
            "computed_proj_dim": self.computed_proj_dim,
            "defect_observed": self.defect_observed,
            "status": self.status,
            "trials": self.trials,
            "confirm_trials": self.confirm_trials,
            "field": self.field,
            "seed": self.seed,
            "bound": self.bound,
            "prime_ranks": list(self.prime_ranks),
            "rational_ranks": list(self.rational_ranks),
            "prime_le_rational": self.prime_le_rational,
        }


# ------------------------------------------------------------- tangent vectors


def _lin_product(forms: Sequence[Sequence[int]]) -> dict[tuple[int, ...], int]:
    """Product of linear forms (coefficient lists) as a sparse exponent dict."""
    m = len(forms[0])
    out = {(0,) * m: 1}
    for f in forms:
        nxt: dict = {}
        for e, c in out.items():
            for i, a in enumerate(f):
                if a:
                    ne = e[:i] + (e[i] + 1,) + e[i + 1 :]
                    nxt[ne] = nxt.get(ne, 0) + c * a
        out = nxt
    return out


def _times_monomials(poly: dict, n: int, k: int, idx) -> list[list]:
    """Coefficient vectors of ``poly * m`` for every monomial ``m`` of degree ``k``."""
    rows = []
    for mexp in monomial_index(n, k):
        v = [0] * len(idx)
        for e, c in poly.items():
            v[idx.position(tuple(a + b for a, b in zip(e, mexp)))] += c
        rows.append(v)
    return rows


def _as_coeffs(L) -> list:
    u = L.linear_coeffs() if isinstance(L, HomPoly) else list(L)
    if not any(u):
        raise ValueError("zero linear form")
    return u


def split_tangent_vectors(forms: Sequence) -> list[list]:
    """The ``(n+1) d`` vectors ``x_i * prod_(k != j) L_k`` spanning the tangent cone."""
    lins = [_as_coeffs(L) for L in forms]
    n, d = len(lins[0]) - 1, len(lins)
    idx = monomial_index(n, d)
    rows = []
    for j in range(d):
        rest = lins[:j] + lins[j + 1 :]
        poly = _lin_product(rest) if rest else {(0,) * (n + 1): 1}
        rows.extend(_times_monomials(poly, n, 1, idx))
    return rows


def split_tangent_span(forms: Sequence) -> VecSubspace:
    """Affine tangent space to ``Split_d(P^n)`` at the product of ``forms``."""
    rows = split_tangent_vectors(forms)
    n, d = len(_as_coeffs(forms[0])) - 1, len(forms)
    span = VecSubspace.span(rows, comb(n + d, d))
    if span.dim < n * d + 1:
        log.info("split tangent span drops to %d (< %d); degeneracy: %s", span.dim, n * d + 1, split_degeneracy(forms))
    return span


def split_degeneracy(forms: Sequence) -> list[tuple[int, int]]:
    """Pairs of proportional factors (the source of tangent-dimension drops)."""
    lins = [_as_coeffs(L) for L in forms]
    return [(i, j) for i, j in combinations(range(len(lins)), 2) if rank_of_rows([lins[i], lins[j]]) < 2]


def veronese_osc_vectors(L, d: int, k: int) -> list[list]:
    u = _as_coeffs(L)
    n = len(u) - 1
    if not 0 <= k <= d:
        raise ValueError("need 0 <= k <= d")
    idx = monomial_index(n, d)
    poly = _lin_product([u] * (d - k)) if d > k else {(0,) * (n + 1): 1}
    return _times_monomials(poly, n, k, idx)


def veronese_osc_span(L, d: int, k: int) -> VecSubspace:
    """Coefficient span of ``L^(d-k) * m`` over the monomials ``m`` of degree ``k``."""
    n = len(_as_coeffs(L)) - 1
    return VecSubspace.span(veronese_osc_vectors(L, d, k), comb(n + d, d))


def veronese_tangent_span(L, d: int) -> VecSubspace:
    return veronese_osc_span(L, d, 1)


def grassmann_tangent_vectors(basis: Sequence[Sequence[int]]) -> list[list]:
    """Basis-minor coordinates of ``v_0 ^ .. ^ e_j ^ .. ^ v_k`` for every slot and ``j``."""
    k1 = len(basis)
    m = len(basis[0])
    tuples = list(combinations(range(m), k1))
    pos = {J: i for i, J in enumerate(tuples)}
    rows = []
    for i in range(k1):
        others = [basis[r] for r in range(k1) if r != i]
        minors = {}
        for K in combinations(range(m), k1 - 1):
            minors[K] = _int_det([[row[c] for c in K] for row in others]) if K else 1
        for j in range(m):
            v = [0] * len(tuples)
            for K, val in minors.items():
                if not val or j in K:
                    continue
                J = tuple(sorted(K + (j,)))
                p = J.index(j)
                v[pos[J]] = val if (i + p) % 2 == 0 else -val
            rows.append(v)
    return rows


def grassmann_tangent_span(basis: Sequence[Sequence[int]]) -> VecSubspace:
    """Affine tangent space to the Grassmannian (standard coordinates) at ``span(basis)``."""
    if rank_of_rows([list(b) for b in basis]) < len(basis):
        raise ValueError("basis vectors are dependent")
    rows = grassmann_tangent_vectors(basis)
    return VecSubspace.span(rows, comb(len(basis[0]), len(basis)))


def _int_det(rows: list[list[int]]) -> int:
    """Fraction-free determinant of a small integer matrix."""
    n = len(rows)
    a = [list(r) for r in rows]
    sign, prev = 1, 1
    for c in range(n - 1):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


# ------------------------------------------------------------- sampling engine


def _rng(seed: int, trial: int, stream: int = 0) -> np.random.Generator:
    return np.random.default_rng([seed, trial, stream])


def _rand_vec(rng, size: int, bound: int) -> list[int]:
    while True:
        v = [int(x) for x in rng.integers(-bound, bound + 1, size=size)]
        if any(v):
            return v


def sample_point(spec: VarietySpec, rng, bound: int) -> list[list[int]]:
    """Random data of one point: ``d`` linear forms, one linear form, or a basis."""
    if spec.kind == "split":
        return [_rand_vec(rng, spec.a + 1, bound) for _ in range(spec.b)]
    if spec.kind == "veronese":
        return [_rand_vec(rng, spec.a + 1, bound)]
    k1, m = spec.a + 1, spec.b + 1
    while True:
        basis = [_rand_vec(rng, m, bound) for _ in range(k1)]
        if rank_of_rows(basis) == k1:
            return basis


def tangent_vectors(spec: VarietySpec, point: list[list[int]]) -> list[list]:
    if spec.kind == "split":
        return split_tangent_vectors(point)
    if spec.kind == "veronese":
        return veronese_osc_vectors(point[0], spec.b, 1)
    return grassmann_tangent_vectors(point)


def trial_points(spec: VarietySpec, s: int, seed: int, trial: int, bound: int) -> list:
    rng = _rng(seed, trial)
    return [sample_point(spec, rng, bound) for _ in range(s)]


def trial_matrix(spec: VarietySpec, s: int, seed: int, trial: int, bound: int) -> list[list[int]]:
    rows = []
    for pt in trial_points(spec, s, seed, trial, bound):
        rows.extend(tangent_vectors(spec, pt))
    return rows


def secant_dimension(
    spec: VarietySpec,
    s: int,
    trials: int = 20,
    field: Field | None = None,
    seed: int = 0,
    bound: int = 50,
    confirm: int = 3,
) -> SecantReport:
    """Lower bound for ``dim Sec_(s-1)(X)`` from random tangent spans.

    With a prime ``field`` (the default) all ``trials`` are run modulo ``p``
    and the first ``confirm`` trial matrices are re-ranked over the
    rationals.  With ``field = QQ`` every trial is rational.
    """
    if s < 1 or trials < 1:
        raise ValueError("need s >= 1 and trials >= 1")
    if bound < 1:
        raise ValueError("bound must be positive")
    if field is None:
        field = GF()
    prime_ranks: list[int] = []
    rational_ranks: list[int] = []
    ok = True
    if field.is_rational:
        for t in range(trials):
            rational_ranks.append(rank_of_rows(trial_matrix(spec, s, seed, t, bound), QQ))
        confirm = trials
    else:
        confirm = min(confirm, trials)
        for t in range(trials):
            rows = trial_matrix(spec, s, seed, t, bound)
            rp = rank_of_rows(rows, field)
            prime_ranks.append(rp)
            if t < confirm:
                rq = rank_of_rows(rows, QQ)
                rational_ranks.append(rq)
                if rp > rq:
                    ok = False
                log.debug("%s s=%d trial %d: rank mod p %d, over Q %d", spec.label(), s, t, rp, rq)
    best = max(prime_ranks + rational_ranks)
    expected = spec.expected_proj_dim(s)
    computed = best - 1
    return SecantReport(
        spec=spec,
        s=s,
        ambient_proj_dim=spec.ambient_proj_dim,
        expected_proj_dim=expected,
        computed_proj_dim=computed,
        defect_observed=expected - computed,
        trials=trials,
        field=field.descriptor,
        seed=seed,
        bound=bound,
        confirm_trials=confirm,
        prime_ranks=tuple(prime_ranks),
        rational_ranks=tuple(rational_ranks),
        prime_le_rational=ok,
    )


def split2_codim_formula(n: int, s: int) -> int:
    """Codimension ``C(n+2-2s, 2)`` of ``Sec_(s-1)`` of quadrics of rank two."""
    if s < 1 or 2 * s > n + 2:
        raise ValueError("formula needs 1 <= s and 2s <= n+2")
    return comb(n + 2 - 2 * s, 2)


# ---------------------------------------------- witnesses for independent conditions


@dataclass
class WitnessDetails:
    holds: bool
    failed: str | None = None
    rank: int | None = None
    expected_rank: int | None = None
    forms: dict = dc_field(default_factory=dict)


def _hyperplane_through(points: Sequence[Sequence], m: int) -> list | None:
    """The unique linear form vanishing on ``points`` (``m-1`` of them in ``P^(m-1)``), else None."""
    if len(points) != m - 1 or rank_of_rows([list(p) for p in points]) != m - 1:
        return None
    ns = VecSubspace.span([list(p) for p in points], m).annihilator()
    return ns.vectors()[0]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def lemma_forme_details(Q: Sequence[Sequence], P: Sequence[Sequence]) -> WitnessDetails:
    """Build the symmetrized product forms and test properties (i)-(iii).

    ``Q`` holds ``d`` points and ``P`` holds ``n`` points of ``P^n``.  The form
    ``F`` is the symmetrization of the hyperplane through ``P``; ``F_ij`` that
    of the hyperplane through ``Q_j`` and the ``P_k`` with ``k != i``.
    Independence modulo the square of the ideal of ``(Q_1..Q_d)`` is tested
    by the rank of the stacked value-and-gradient rows.
    """
    d, n = len(Q), len(P)
    m = n + 1
    if any(len(q) != m for q in Q) or any(len(p) != m for p in P):
        return WitnessDetails(False, "(i)")
    L = _hyperplane_through(P, m)
    if L is None or any(_dot(L, q) == 0 for q in Q):
        return WitnessDetails(False, "(i)")
    forms = {"F": L}
    for i in range(n):
        for j in range(d):
            pts = [P[k] for k in range(n) if k != i] + [Q[j]]
            Lij = _hyperplane_through(pts, m)
            if Lij is None or any(_dot(Lij, P[k]) != 0 for k in range(n) if k != i):
                return WitnessDetails(False, "(ii)", forms=forms)
            forms[(i, j)] = Lij
    rows = []
    for lin in forms.values():
        vals = [_dot(lin, q) for q in Q]
        row = [prod(vals)]
        for j in range(d):
            rest = prod(vals[:j] + vals[j + 1 :])
            row.extend(c * rest for c in lin)
        rows.append(row)
    r = rank_of_rows(rows)
    expected = d * n + 1
    return WitnessDetails(r == expected, None if r == expected else "(iii)", r, expected, forms)


def lemma_forme_witness(Q: Sequence[Sequence], P: Sequence[Sequence]) -> bool:
    return lemma_forme_details(Q, P).holds
