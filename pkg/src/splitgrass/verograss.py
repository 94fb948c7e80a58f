"""Veronese varieties as spaces of secant planes to a rational normal curve.

A linear form ``L = u0*x0 + ... + un*xn`` is sent to the ``(n-1)``-plane of
``P^(n+d-1)`` cut out by the ``d`` shifted equations

    u0*z_j + u1*z_(j+1) + ... + un*z_(j+n) = 0,   j = 0..d-1

(the rows of the banded matrix).  Its Plücker coordinates are degree ``d``
forms in ``u`` and they form a basis of ``K[u]_d``; expressing ``L^d`` in that
basis gives a linear identification of the Plücker space with ``P(R_d)``.

The same plane meets the moment curve ``(t0^N : t0^(N-1) t1 : ... : t1^N)``,
``N = n+d-1``, exactly in the zeros of the binary form
``u0*t0^n + u1*t0^(n-1)*t1 + ... + un*t1^n``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .exactla import QQ, Mat, Scalar, VecSubspace, inverse, span_sum
from .grassmann import PlueckerVec, Subspace, index_tuples, pluecker_of
from .polyalg import HomPoly, coeff_vector, from_coeff_vector, monomial_index, multinomial

MAX_SIZE = 6

Point1 = tuple[Scalar, Scalar]


def _check_size(n: int, d: int, allow_large: bool) -> None:
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    if not allow_large and (n > MAX_SIZE or d > MAX_SIZE):
        raise ValueError(f"(n, d) = ({n}, {d}) exceeds the default limit {MAX_SIZE}; pass allow_large=True")


def banded_matrix(u: Sequence[Scalar], d: int) -> Mat:
    """The ``d x (n+d)`` matrix whose row ``j`` holds ``u`` in columns ``j..j+n``."""
    n = len(u) - 1
    rows = [[0] * j + list(u) + [0] * (d - 1 - j) for j in range(d)]
    return Mat(rows, QQ, n + d)


# ------------------------------------------------------------- symbolic minors

_minor_cache: dict[tuple[int, int], dict] = {}
_cache_lock = threading.RLock()


def _minor_table(n: int, d: int) -> dict[tuple[int, ...], dict[tuple[int, ...], int]]:
    """Symbolic maximal minors of the banded matrix, as sparse integer polynomials in u."""
    memo: dict[tuple[int, tuple[int, ...]], dict] = {}
    zero_exp = (0,) * (n + 1)

    def minor(j: int, cols: tuple[int, ...]) -> dict:
        # rows j..d-1 against the given columns, Laplace expansion along row j
        if j == d:
            return {zero_exp: 1}
        key = (j, cols)
        if key in memo:
            return memo[key]
        out: dict = {}
        for pos, c in enumerate(cols):
            i = c - j
            if not 0 <= i <= n:
                continue
            sub = minor(j + 1, cols[:pos] + cols[pos + 1 :])
            sign = -1 if pos % 2 else 1
            for e, v in sub.items():
                ne = list(e)
                ne[i] += 1
                ne = tuple(ne)
                out[ne] = out.get(ne, 0) + sign * v
        out = {e: v for e, v in out.items() if v}
        memo[key] = out
        return out

    return {I: minor(0, I) for I in index_tuples(n + d, d)}


def minor_table(n: int, d: int) -> dict[tuple[int, ...], dict[tuple[int, ...], int]]:
    """Cached :func:`_minor_table`."""
    key = (n, d)
    table = _minor_cache.get(key)
    if table is None:
        with _cache_lock:
            table = _minor_cache.get(key)
            if table is None:
                table = _minor_table(n, d)
                _minor_cache[key] = table
    return table


def veronese_minor_polys(n: int, d: int) -> dict[tuple[int, ...], HomPoly]:
    """The minors ``p_I(u)`` as forms of degree ``d`` in ``u0..un``."""
    table = minor_table(n, d)
    return {I: HomPoly(n + 1, d, poly) for I, poly in table.items()}


def veronese_to_pluecker(L: HomPoly | Sequence[Scalar], d: int) -> PlueckerVec:
    """Plücker vector of the plane attached to the linear form ``L``."""
    u = _linear_coeffs(L)
    n = len(u) - 1
    table = minor_table(n, d)
    coords = {}
    for I, poly in table.items():
        total = 0
        for e, c in poly.items():
            term = c
            for x, k in zip(u, e):
                if k:
                    term *= x**k
            total += term
        coords[I] = total
    return PlueckerVec(n + d, d, coords)


def veronese_subspace(L: HomPoly | Sequence[Scalar], d: int) -> Subspace:
    """The plane cut out by the banded equations of ``L``."""
    return Subspace(banded_matrix(_linear_coeffs(L), d))


def _linear_coeffs(L) -> list[Scalar]:
    u = L.linear_coeffs() if isinstance(L, HomPoly) else [QQ(x) for x in L]
    if not any(u):
        raise ValueError("the zero form has no image")
    return u


class Identification:
    """Linear isomorphism between the Plücker space of ``G(n-1, n+d-1)`` and ``R_d``.

    Scaled so that ``apply(veronese_to_pluecker(L)) == L**d`` exactly.
    """

    def __init__(self, n: int, d: int):
        self.n, self.d = n, d
        self.minors = minor_table(n, d)
        self.mon = monomial_index(n, d)
        self.tuples = index_tuples(n + d, d)
        # E[alpha][I]: coefficient of u^alpha in p_I
        E = [[self.minors[I].get(a, 0) for I in self.tuples] for a in self.mon]
        self.E = Mat(E, QQ)
        self.weights = [multinomial(a) for a in self.mon]
        Et_inv = inverse(self.E.T)  # raises if the minors were not a basis
        self.matrix = Mat([[w * x for x in row] for w, row in zip(self.weights, Et_inv)], QQ)

    @property
    def size(self) -> int:
        return len(self.tuples)

    def apply_vector(self, p: Sequence[Scalar]) -> list[Scalar]:
        return self.matrix.apply(p)

    def inverse_vector(self, c: Sequence[Scalar]) -> list[Scalar]:
        scaled = [Fraction(x) / w for x, w in zip(c, self.weights)]
        return self.E.T.apply(scaled)

    def apply(self, p: PlueckerVec | Sequence[Scalar]) -> HomPoly:
        vec = p.as_list() if isinstance(p, PlueckerVec) else list(p)
        if len(vec) != self.size:
            raise ValueError(f"expected {self.size} Plücker coordinates")
        return from_coeff_vector(self.apply_vector(vec), self.n, self.d)

    def inverse(self, f: HomPoly) -> PlueckerVec:
        if f.num_vars != self.n + 1 or (f.degree != self.d and not f.is_zero()):
            raise ValueError(f"expected a form of degree {self.d} in {self.n + 1} variables")
        return PlueckerVec.from_list(self.inverse_vector(coeff_vector(f, self.mon)), self.n + self.d, self.d)

    def apply_span(self, span: VecSubspace) -> VecSubspace:
        return VecSubspace.span([self.apply_vector(v) for v in span.vectors()], len(self.mon))

    def inverse_span(self, span: VecSubspace) -> VecSubspace:
        return VecSubspace.span([self.inverse_vector(v) for v in span.vectors()], self.size)


_ident_cache: dict[tuple[int, int], Identification] = {}


def identification(n: int, d: int, allow_large: bool = False) -> Identification:
    """Cached :class:`Identification` for ``(n, d)``; safe under concurrent first access."""
    _check_size(n, d, allow_large)
    key = (n, d)
    ident = _ident_cache.get(key)
    if ident is None:
        with _cache_lock:
            ident = _ident_cache.get(key)
            if ident is None:
                ident = Identification(n, d)
                _ident_cache[key] = ident
    return ident


def polynomial_of(s: Subspace, n: int, d: int) -> HomPoly:
    """The form attached to a codimension ``d`` subspace of ``P^(n+d-1)``."""
    if s.ambient != n + d - 1 or s.codim != d:
        raise ValueError("subspace does not live in G(n-1, n+d-1)")
    return identification(n, d).apply(pluecker_of(s))


# ------------------------------------------------------------------- jet spans


def veronese_jet_span(L: HomPoly | Sequence[Scalar], d: int, k: int) -> VecSubspace:
    """Span of the partial derivatives of order ``<= k`` of the minors map at ``L``.

    ``k = 0`` is the point itself, ``k = 1`` the affine tangent space to the
    Veronese inside the Plücker space.
    """
    u = _linear_coeffs(L)
    n = len(u) - 1
    if not 0 <= k <= d:
        raise ValueError("jet order must satisfy 0 <= k <= d")
    ident = identification(n, d, allow_large=True)
    Et = ident.E.T
    vectors = []
    for order in range(k + 1):
        for beta in monomial_index(n, order):
            w = [_eval_derivative(alpha, beta, u) for alpha in ident.mon]
            vectors.append(Et.apply(w))
    return VecSubspace.span(vectors, ident.size)


def _eval_derivative(alpha, beta, u) -> Scalar:
    """Value at ``u`` of the ``beta`` partial derivative of the monomial ``u^alpha``."""
    out = 1
    for a, b, x in zip(alpha, beta, u):
        if b > a:
            return 0
        for t in range(b):
            out *= a - t
        if a - b:
            out *= x ** (a - b)
    return out


# -------------------------------------------------------- rational normal curve


def _proj1(t: Sequence[Scalar]) -> Point1:
    t0, t1 = QQ(t[0]), QQ(t[1])
    if t0 == 0 and t1 == 0:
        raise ValueError("[0:0] is not a point of P^1")
    return t0, t1


def rnc_point(t: Sequence[Scalar], N: int) -> list[Scalar]:
    t0, t1 = _proj1(t)
    return [t0 ** (N - j) * t1**j for j in range(N + 1)]


def osc_frame(t: Sequence[Scalar], r: int, N: int) -> VecSubspace:
    """Cone over the ``r``-th osculating space of the moment curve at ``t``."""
    if r > N:
        raise ValueError("osculation order exceeds the ambient dimension")
    if r < 0:
        return VecSubspace.zero(N + 1)
    t0, t1 = _proj1(t)
    vecs = []
    if t0 != 0:
        s = Fraction(t1) / t0
        for k in range(r + 1):
            v = []
            for j in range(N + 1):
                if j < k:
                    v.append(0)
                else:
                    ff = 1
                    for x in range(k):
                        ff *= j - x
                    v.append(ff * s ** (j - k))
            vecs.append(v)
    else:
        # chart w = t0/t1 at w = 0: the curve is (w^N, ..., w, 1)
        for k in range(r + 1):
            v = [0] * (N + 1)
            v[N - k] = 1
            vecs.append(v)
    return VecSubspace.span(vecs, N + 1)


@dataclass(frozen=True)
class CurveDivisor:
    """A finite subscheme ``r1*y1 + ... + rk*yk`` of the moment curve in ``P^N``."""

    points: tuple[tuple[Point1, int], ...]
    ambient: int

    def __post_init__(self):
        pts = []
        for t, m in self.points:
            if int(m) != m or m < 1:
                raise ValueError("multiplicities must be positive integers")
            pts.append((_proj1(t), int(m)))
        for i in range(len(pts)):
            for j in range(i):
                (a0, a1), (b0, b1) = pts[i][0], pts[j][0]
                if a0 * b1 == a1 * b0:
                    raise ValueError("divisor points must be distinct")
        object.__setattr__(self, "points", tuple(pts))

    @classmethod
    def of(cls, items: Sequence[tuple[Sequence[Scalar], int]], ambient: int) -> "CurveDivisor":
        """Build from ``(point, multiplicity)`` pairs, dropping zero multiplicities."""
        return cls(tuple((tuple(t), m) for t, m in items if m), ambient)

    @property
    def length(self) -> int:
        return sum(m for _, m in self.points)

    def cone(self) -> VecSubspace:
        if self.length > self.ambient + 1:
            raise ValueError("divisor is longer than N+1")
        out = VecSubspace.zero(self.ambient + 1)
        for t, m in self.points:
            out = span_sum(out, osc_frame(t, m - 1, self.ambient))
        return out

    def binary_form(self) -> list[Scalar]:
        """Coefficients (of ``t0^(L-j) t1^j``) of the binary form vanishing on the divisor."""
        out = [Fraction(1)]
        for (a0, a1), m in self.points:
            for _ in range(m):
                out = binary_multiply(out, [a1, -a0])
        return out


def span_of_divisor(D: CurveDivisor) -> Subspace:
    """The linear span of the scheme ``D`` in ``P^N``."""
    if not D.points:
        raise ValueError("empty divisor")
    return Subspace.from_cone(D.cone())


# ------------------------------------------------------------------ binary forms


def binary_multiply(f: Sequence[Scalar], g: Sequence[Scalar]) -> list[Scalar]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def _strip(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_gcd(a: list, b: list) -> list:
    """Monic gcd of univariate polynomials (coefficient lists, low degree first)."""
    a, b = _strip([Fraction(x) for x in a]), _strip([Fraction(x) for x in b])
    while b:
        # remainder of a by b
        while len(a) >= len(b) and a:
            c = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, x in enumerate(b):
                a[shift + i] -= c * x
            _strip(a)
        a, b = b, a
    if not a:
        return []
    lead = a[-1]
    return [x / lead for x in a]


def binary_gcd(forms: Sequence[Sequence[Scalar]]) -> list[Scalar]:
    """Gcd of homogeneous binary forms given as coefficient lists of ``t0^(N-j) t1^j``.

    Zero forms are skipped; the result is normalized with leading coefficient 1
    on its affine part.  Returns ``[]`` when every form is zero.
    """
    nonzero = [list(f) for f in forms if any(f)]
    if not nonzero:
        return []
    g: list | None = None
    t0_power = None
    for f in nonzero:
        deg_total = len(f) - 1
        aff = _strip([Fraction(x) for x in f])
        # f = t0^(deg_total - deg aff) * homogenized(aff)
        m = deg_total - (len(aff) - 1)
        t0_power = m if t0_power is None else min(t0_power, m)
        g = aff if g is None else _poly_gcd(g, aff)
    g = [x / g[-1] for x in g]
    return g + [0] * t0_power


@dataclass(frozen=True)
class CurveIntersection:
    degree: int
    gcd: tuple[Scalar, ...]
    contains_curve: bool


def curve_intersection(s: Subspace) -> CurveIntersection:
    """Length of the scheme ``s`` meets the moment curve in, with the gcd form."""
    forms = [list(row) for row in s.equations]
    if not forms or not any(any(f) for f in forms):
        return CurveIntersection(s.ambient + 1, (), True)
    g = binary_gcd(forms)
    return CurveIntersection(len(g) - 1, tuple(g), False)


def curve_intersection_degree(s: Subspace) -> int:
    return curve_intersection(s).degree


def linear_to_binary(L: HomPoly | Sequence[Scalar]) -> list[Scalar]:
    """``sum u_i x_i`` corresponds to ``sum u_i t0^(n-i) t1^i``; coefficients are shared."""
    return _linear_coeffs(L) if not isinstance(L, HomPoly) else L.linear_coeffs()


def binary_to_linear(coeffs: Sequence[Scalar]) -> HomPoly:
    return HomPoly.linear(list(coeffs))


def root_form(t: Sequence[Scalar]) -> list[Scalar]:
    """The linear binary form vanishing at ``[t0:t1]``."""
    t0, t1 = _proj1(t)
    return [t1, -t0]


def reparametrize(A: Sequence[Sequence[Scalar]], N: int) -> Mat:
    """Matrix of the projectivity of ``P^N`` induced by ``t -> A t`` on the moment curve.

    Row ``j`` is the expansion of ``(a t0 + b t1)^(N-j) (c t0 + e t1)^j``,
    so ``M @ rnc_point(t) == rnc_point(A t)``.
    """
    (a, b), (c, e) = A
    rows = []
    for j in range(N + 1):
        f = [Fraction(1)]
        for _ in range(N - j):
            f = binary_multiply(f, [a, b])
        for _ in range(j):
            f = binary_multiply(f, [c, e])
        rows.append(f)
    return Mat(rows, QQ)


def num_pluecker(n: int, d: int) -> int:
    return comb(n + d, d)
