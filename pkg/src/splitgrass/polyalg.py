"""Homogeneous polynomials with exact rational coefficients.

Monomials of degree ``d`` in ``x0..xn`` are ordered lexicographically with
``x0 > x1 > ... > xn`` (graded lex, since the degree is fixed), so the
coefficient vector of a form starts ``x0^d, x0^(d-1) x1, x0^(d-1) x2, ...``.

Besides arithmetic the module provides the small decision procedures used to
recognise completely decomposable forms: exact division, the number of
essential variables, the rank of a quadric and the Hessian test for ternary
cubics.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb, factorial
from typing import Iterator, Mapping, Sequence

from .exactla import QQ, Mat, Scalar, det, rank_of_rows

Exponent = tuple[int, ...]


class MonomialIndex:
    """Bijection between exponent tuples of degree ``d`` in ``n+1`` variables and positions."""

    def __init__(self, n: int, d: int):
        if n < 0 or d < 0:
            raise ValueError("n and d must be non-negative")
        self.n = n
        self.d = d
        exps = []
        # combinations_with_replacement yields the variable multisets in lex order
        for combo in combinations_with_replacement(range(n + 1), d):
            e = [0] * (n + 1)
            for i in combo:
                e[i] += 1
            exps.append(tuple(e))
        self.exponents: tuple[Exponent, ...] = tuple(exps)
        self._pos = {e: i for i, e in enumerate(exps)}

    def __len__(self) -> int:
        return len(self.exponents)

    def position(self, exp: Exponent) -> int:
        return self._pos[tuple(exp)]

    def __getitem__(self, i: int) -> Exponent:
        return self.exponents[i]

    def __iter__(self) -> Iterator[Exponent]:
        return iter(self.exponents)


@lru_cache(maxsize=None)
def monomial_index(n: int, d: int) -> MonomialIndex:
    return MonomialIndex(n, d)


def multinomial(exp: Exponent) -> int:
    out = factorial(sum(exp))
    for e in exp:
        out //= factorial(e)
    return out


class HomPoly:
    """A homogeneous polynomial in ``num_vars`` variables; immutable by convention."""

    __slots__ = ("num_vars", "degree", "_coeffs")

    def __init__(self, num_vars: int, degree: int, coeffs: Mapping[Exponent, Scalar] | None = None):
        if num_vars < 1:
            raise ValueError("at least one variable required")
        self.num_vars = num_vars
        self.degree = degree
        clean: dict[Exponent, Scalar] = {}
        for e, c in (coeffs or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != num_vars or sum(e) != degree or min(e) < 0:
                raise ValueError(f"exponent {e} does not have degree {degree} in {num_vars} variables")
            c = QQ(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._coeffs = clean

    # construction helpers
    @classmethod
    def zero(cls, num_vars: int, degree: int) -> "HomPoly":
        return cls(num_vars, degree)

    @classmethod
    def linear(cls, coeffs: Sequence[Scalar]) -> "HomPoly":
        n = len(coeffs)
        return cls(n, 1, {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def variable(cls, i: int, num_vars: int) -> "HomPoly":
        return cls.linear([int(i == j) for j in range(num_vars)])

    @classmethod
    def monomial(cls, exp: Exponent, coeff: Scalar = 1) -> "HomPoly":
        return cls(len(exp), sum(exp), {tuple(exp): coeff})

    @classmethod
    def constant(cls, c: Scalar, num_vars: int) -> "HomPoly":
        return cls(num_vars, 0, {(0,) * num_vars: c})

    @property
    def coeffs(self) -> dict[Exponent, Scalar]:
        return dict(self._coeffs)

    def coeff(self, exp: Exponent) -> Scalar:
        return self._coeffs.get(tuple(exp), 0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def terms(self) -> list[tuple[Exponent, Scalar]]:
        """Nonzero terms, leading (lex-largest) monomial first."""
        return sorted(self._coeffs.items(), reverse=True)

    def leading_term(self) -> tuple[Exponent, Scalar]:
        e = max(self._coeffs)
        return e, self._coeffs[e]

    def linear_coeffs(self) -> list[Scalar]:
        if self.degree != 1:
            raise ValueError("not a linear form")
        return [self.coeff(tuple(int(i == j) for j in range(self.num_vars))) for i in range(self.num_vars)]

    # arithmetic
    def _check(self, other: "HomPoly") -> None:
        if self.num_vars != other.num_vars:
            raise ValueError(f"variable count mismatch: {self.num_vars} vs {other.num_vars}")

    def __add__(self, other: "HomPoly") -> "HomPoly":
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("sum of forms of different degrees is not homogeneous")
        out = dict(self._coeffs)
        for e, c in other._coeffs.items():
            out[e] = out.get(e, 0) + c
        return HomPoly(self.num_vars, self.degree, out)

    def __neg__(self) -> "HomPoly":
        return HomPoly(self.num_vars, self.degree, {e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        return self + (-other)

    def scale(self, c: Scalar) -> "HomPoly":
        return HomPoly(self.num_vars, self.degree, {e: c * v for e, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, HomPoly):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int) -> "HomPoly":
        return power(self, k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomPoly):
            return NotImplemented
        if self.num_vars != other.num_vars:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.num_vars, self.degree, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"HomPoly({format_poly(self)!r}, num_vars={self.num_vars})"

    def __str__(self) -> str:
        return format_poly(self)

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        total: Scalar = 0
        pt = [QQ(x) for x in point]
        for e, c in self._coeffs.items():
            term = c
            for x, k in zip(pt, e):
                if k:
                    term *= x**k
            total += term
        return QQ(total)

    def substitute(self, forms: Sequence["HomPoly"]) -> "HomPoly":
        """Compose with the linear substitution ``x_i -> forms[i]``."""
        if len(forms) != self.num_vars:
            raise ValueError("one substitution per variable required")
        m = forms[0].num_vars
        if any(f.degree != 1 or f.num_vars != m for f in forms):
            raise ValueError("substitutions must be linear forms in a common set of variables")
        result = HomPoly.zero(m, self.degree)
        cache: dict[tuple[int, int], HomPoly] = {}
        for e, c in self._coeffs.items():
            term = HomPoly.constant(c, m)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = power(forms[i], k)
                    term = multiply(term, cache[key])
            result = result + term
        return result


def multiply(f: HomPoly, g: HomPoly) -> HomPoly:
    f._check(g)
    out: dict[Exponent, Scalar] = {}
    for e1, c1 in f._coeffs.items():
        for e2, c2 in g._coeffs.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return HomPoly(f.num_vars, f.degree + g.degree, out)


def power(f: HomPoly, k: int) -> HomPoly:
    if k < 0:
        raise ValueError("negative power")
    result = HomPoly.constant(1, f.num_vars)
    base = f
    while k:
        if k & 1:
            result = multiply(result, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return result


def product(forms: Sequence[HomPoly]) -> HomPoly:
    if not forms:
        raise ValueError("empty product")
    out = HomPoly.constant(1, forms[0].num_vars)
    for f in forms:
        out = multiply(out, f)
    return out


def partial(f: HomPoly, i: int) -> HomPoly:
    if not 0 <= i < f.num_vars:
        raise IndexError(f"variable index {i} out of range")
    out = {}
    for e, c in f._coeffs.items():
        if e[i]:
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
    return HomPoly(f.num_vars, max(f.degree - 1, 0), out)


def coeff_vector(f: HomPoly, idx: MonomialIndex | None = None) -> list[Scalar]:
    """Coefficients of ``f`` in the fixed monomial order."""
    if idx is None:
        idx = monomial_index(f.num_vars - 1, f.degree)
    if idx.n != f.num_vars - 1 or (idx.d != f.degree and not f.is_zero()):
        raise ValueError("monomial index does not match the form")
    return [f._coeffs.get(e, 0) for e in idx.exponents]


def from_coeff_vector(vec: Sequence[Scalar], n: int, d: int) -> HomPoly:
    idx = monomial_index(n, d)
    if len(vec) != len(idx):
        raise ValueError(f"expected {len(idx)} coefficients, got {len(vec)}")
    return HomPoly(n + 1, d, dict(zip(idx.exponents, vec)))


def divide_exact(f: HomPoly, g: HomPoly) -> HomPoly | None:
    """Return ``q`` with ``f == g * q``, or ``None`` when ``g`` does not divide ``f``."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero form")
    if f.is_zero():
        return HomPoly.zero(f.num_vars, max(f.degree - g.degree, 0))
    if g.degree > f.degree:
        return None
    ge, gc = g.leading_term()
    rem = dict(f._coeffs)
    quot: dict[Exponent, Scalar] = {}
    gterms = list(g._coeffs.items())
    while rem:
        re_, rc = max(rem.items())
        qe = tuple(a - b for a, b in zip(re_, ge))
        if min(qe) < 0:
            return None
        qc = rc / Fraction(gc)
        quot[qe] = qc
        for e, c in gterms:
            k = tuple(a + b for a, b in zip(e, qe))
            v = rem.get(k, 0) - qc * c
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    q = HomPoly(f.num_vars, f.degree - g.degree, quot)
    if multiply(g, q) != f:  # guards the invariant; exact division cannot fail here
        return None
    return q


def essential_vars_rank(f: HomPoly) -> int:
    """Minimal number of linear forms needed to write ``f``.

    Computed as the rank of the coefficient vectors of the first partials.
    """
    if f.is_zero():
        raise ValueError("the zero form has no essential variables")
    if f.degree == 0:
        return 0
    idx = monomial_index(f.num_vars - 1, f.degree - 1)
    rows = [coeff_vector(partial(f, i), idx) for i in range(f.num_vars)]
    return rank_of_rows(rows)


def hessian(f: HomPoly) -> HomPoly:
    """Determinant of the matrix of second partial derivatives."""
    m = f.num_vars
    second = [[partial(partial(f, i), j) for j in range(m)] for i in range(m)]
    return _poly_det(second)


def _poly_det(mat: list[list[HomPoly]]) -> HomPoly:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        term = multiply(mat[0][j], _poly_det(minor))
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def splits_ternary_cubic(f: HomPoly) -> bool:
    """Whether a ternary cubic is a product of three linear forms over the closure.

    Uses the classical characterisation: the Hessian is a scalar multiple of
    the cubic (possibly zero).  Valid in characteristic zero.
    """
    if f.num_vars != 3 or f.degree != 3:
        raise ValueError("expected a cubic form in three variables")
    if f.is_zero():
        raise ValueError("the zero form is not a projective point")
    h = hessian(f)
    if h.is_zero():
        return True
    return rank_of_rows([coeff_vector(h), coeff_vector(f)]) == 1


def gram_matrix(q: HomPoly) -> Mat:
    """Symmetric matrix ``G`` with ``q(x) = x^T G x``."""
    if q.degree != 2:
        raise ValueError("expected a quadratic form")
    m = q.num_vars
    rows = [[Fraction(0)] * m for _ in range(m)]
    for e, c in q._coeffs.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            rows[i][i] += c
        else:
            rows[i][j] += Fraction(c, 2)
            rows[j][i] += Fraction(c, 2)
    return Mat(rows)


def conic_rank(q: HomPoly) -> int:
    """Rank of the quadric ``q``; at most two exactly when ``q`` is a product of two linear forms."""
    return rank_of_rows(gram_matrix(q).tolist())


def restrict(f: HomPoly, basis: Sequence[Sequence[Scalar]]) -> HomPoly:
    """Pull ``f`` back along ``y -> sum_k y_k basis[k]`` (restriction to a linear subspace)."""
    m = len(basis)
    forms = [HomPoly.linear([basis[k][i] for k in range(m)]) for i in range(f.num_vars)]
    return f.substitute(forms)


# ----------------------------------------------------------------- text format

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|x(\d+)|(\*\*|[-+*^()]))")


def parse_poly(text: str, num_vars: int | None = None) -> HomPoly:
    """Parse ``-2*x1^3 + 6*x1^2*x2`` style input (parentheses and ``**`` also accepted)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:pos + 10]!r}")
        num, var, op = m.groups()
        if num is not None:
            tokens.append(("num", Fraction(num)))
        elif var is not None:
            tokens.append(("var", int(var)))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    if not tokens:
        raise ValueError("empty polynomial")
    nv = max([v for k, v in tokens if k == "var"], default=-1) + 1
    if num_vars is None:
        num_vars = max(nv, 1)
    elif nv > num_vars:
        raise ValueError(f"variable x{nv - 1} exceeds {num_vars} variables")
    raw = _Parser(tokens, num_vars).parse()
    degrees = {sum(e) for e in raw}
    if len(degrees) > 1:
        raise ValueError("polynomial is not homogeneous")
    degree = degrees.pop() if degrees else 0
    return HomPoly(num_vars, degree, raw)


class _Parser:
    """Recursive descent over +, -, *, ^ and parentheses, producing sparse dicts."""

    def __init__(self, tokens, num_vars):
        self.tokens = tokens
        self.i = 0
        self.m = num_vars

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self):
        out = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"unexpected token {self.peek()[1]!r}")
        return out

    def expr(self):
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        acc = _scale(self.term(), sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            s = -1 if self.take()[1] == "-" else 1
            acc = _add(acc, _scale(self.term(), s))
        return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                acc = _mul(acc, self.factor())
            elif kind in ("num", "var") or (kind, val) == ("op", "("):
                acc = _mul(acc, self.factor())  # implicit product, e.g. 2x0 or x1(x0-x1)
            else:
                return acc

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num" or val.denominator != 1:
                raise ValueError("exponent must be a non-negative integer")
            out = {(0,) * self.m: Fraction(1)}
            for _ in range(int(val)):
                out = _mul(out, base)
            return out
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return {(0,) * self.m: val}
        if kind == "var":
            e = [0] * self.m
            e[val] = 1
            return {tuple(e): Fraction(1)}
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if (kind, val) == ("op", "-"):
            return _scale(self.factor(), -1)
        raise ValueError(f"unexpected token {val!r}")


def _add(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
        if not out[e]:
            del out[e]
    return out


def _scale(a, s):
    return {e: c * s for e, c in a.items()}


def _mul(a, b):
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _format_coeff(c: Scalar) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: HomPoly) -> str:
    """Render ``f`` in the parser's text format, leading monomial first."""
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.terms():
        mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        parts.append(("- " if neg else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def num_monomials(n: int, d: int) -> int:
    return comb(n + d, d)
