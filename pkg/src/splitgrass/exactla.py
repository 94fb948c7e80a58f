"""Exact dense linear algebra over the rationals and over prime fields.

Scalars are :class:`fractions.Fraction` (or plain ``int``) over QQ and
integers in ``[0, p)`` over GF(p).  Every matrix carries its field and
operations refuse to combine matrices over different fields.

Rank over QQ uses fraction-free (Bareiss) elimination on integer rows, rank
over GF(p) uses vectorised elimination on ``int64`` arrays.  Everything else
(reduced echelon forms, nullspaces, subspace arithmetic) goes through a
plain Gauss-Jordan routine that is exact in both fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

try:
    from gmpy2 import is_prime as _is_prime
    from gmpy2 import mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    mpz = int

    def _is_prime(p: int) -> bool:
        if p < 2:
            return False
        return all(p % q for q in range(2, math.isqrt(p) + 1))


Scalar = Union[int, Fraction]

#: 2**31 - 1; residues and their products fit in a signed 64-bit word.
DEFAULT_PRIME = 2147483647
MIN_PRIME = 2**20


class FieldMismatchError(ValueError):
    """Raised when objects over different fields are combined."""


@dataclass(frozen=True)
class Field:
    """Either the rationals (``prime is None``) or the prime field GF(prime)."""

    prime: int | None = None

    def __post_init__(self) -> None:
        p = self.prime
        if p is None:
            return
        if p < MIN_PRIME or p % 2 == 0 or not _is_prime(p):
            raise ValueError(f"field characteristic must be an odd prime >= 2**20, got {p}")
        if p >= 2**31:
            raise ValueError("primes above 2**31 overflow the int64 elimination path")

    @property
    def is_rational(self) -> bool:
        return self.prime is None

    def __call__(self, x) -> Scalar:
        """Coerce ``x`` (int, Fraction or ``"a/b"`` string) into this field."""
        if isinstance(x, (float, complex)):
            raise TypeError("floating point values are not exact scalars")
        if isinstance(x, str):
            x = Fraction(x)
        elif isinstance(x, np.integer):
            x = int(x)
        elif type(x).__name__ == "mpz":
            x = int(x)
        if self.prime is None:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, int):
                return int(x)
            raise TypeError(f"cannot coerce {type(x).__name__} to a rational")
        p = self.prime
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        if isinstance(x, int):
            return x % p
        raise TypeError(f"cannot coerce {type(x).__name__} into GF({p})")

    def inv(self, x: Scalar) -> Scalar:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.prime is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.prime)

    def normalize(self, x: Scalar) -> Scalar:
        if self.prime is None:
            if isinstance(x, Fraction) and x.denominator == 1:
                return x.numerator
            return x
        return x % self.prime

    def __str__(self) -> str:
        return "QQ" if self.prime is None else f"GF({self.prime})"

    @property
    def descriptor(self) -> str:
        """Command-line spelling: ``q`` or ``p:PRIME``."""
        return "q" if self.prime is None else f"p:{self.prime}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip().lower()
        if text in ("q", "qq", "rational", "rationals"):
            return QQ
        if text.startswith("p:"):
            return cls(int(text[2:]))
        if text in ("p", "prime"):
            return cls(DEFAULT_PRIME)
        raise ValueError(f"unknown field {text!r}; use 'q' or 'p:PRIME'")


QQ = Field()


def GF(p: int = DEFAULT_PRIME) -> Field:
    return Field(p)


def _common_field(*fields: Field) -> Field:
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldMismatchError(f"cannot combine objects over {first} and {f}")
    return first


class Mat:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, data: Iterable[Sequence], field: Field = QQ, cols: int | None = None):
        conv = field.__call__
        rows = tuple(tuple(conv(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        self.field = field
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def _raw(cls, rows: tuple, field: Field, cols: int) -> "Mat":
        m = object.__new__(cls)
        m.field, m.rows, m.cols, m._data = field, len(rows), cols, rows
        return m

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> "Mat":
        return cls._raw(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), field, n)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field = QQ) -> "Mat":
        return cls._raw(tuple((0,) * cols for _ in range(rows)), field, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self._data[i][j]
        return self._data[idx]

    def __iter__(self):
        return iter(self._data)

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self._data]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.field, self.cols, self._data))

    def __repr__(self) -> str:
        return f"Mat({self.tolist()!r}, field={self.field})"

    def transpose(self) -> "Mat":
        if self.rows == 0:
            return Mat._raw((), self.field, 0) if self.cols == 0 else Mat.zeros(self.cols, 0, self.field)
        return Mat._raw(tuple(zip(*self._data)), self.field, self.rows)

    T = property(transpose)

    def __matmul__(self, other: "Mat") -> "Mat":
        field = _common_field(self.field, other.field)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols_b = other.transpose()._data if other.rows else ((),) * other.cols
        out = []
        for row in self._data:
            out.append(tuple(field.normalize(sum(a * b for a, b in zip(row, col))) for col in cols_b))
        return Mat._raw(tuple(out), field, other.cols)

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product ``self @ vec``."""
        f = self.field
        if len(vec) != self.cols:
            raise ValueError("vector length does not match matrix columns")
        v = [f(x) for x in vec]
        return [f.normalize(sum(a * b for a, b in zip(row, v))) for row in self._data]

    def vstack(self, other: "Mat") -> "Mat":
        field = _common_field(self.field, other.field)
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Mat._raw(self._data + other._data, field, self.cols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat._raw(tuple(tuple(self._data[i][j] for j in cols) for i in rows), self.field, len(cols))

    def to_field(self, field: Field) -> "Mat":
        """Reduce a rational matrix modulo ``field.prime`` (or copy over QQ)."""
        if not self.field.is_rational and field != self.field:
            raise FieldMismatchError("only rational matrices can be moved to another field")
        return Mat(self._data, field, self.cols)


# ---------------------------------------------------------------- elimination


def _integer_rows(rows: Sequence[Sequence[Scalar]]) -> list[list]:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = math.lcm(den, x.denominator)
        if den == 1:
            out.append([mpz(int(x)) for x in row])
        else:
            out.append([mpz(int(x * den)) for x in row])
    return out


def _bareiss_rank(rows: list[list]) -> int:
    """Rank of an integer matrix by fraction-free elimination (destructive)."""
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    r = 0
    prev = mpz(1)
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        top = rows[r]
        a = top[c]
        for i in range(r + 1, m):
            row = rows[i]
            b = row[c]
            if b == 0:
                for j in range(c + 1, n):
                    row[j] = (a * row[j]) // prev
            else:
                for j in range(c + 1, n):
                    row[j] = (a * row[j] - b * top[j]) // prev
            row[c] = 0
        prev = a
        r += 1
        if r == m:
            break
    return r


def _modp_rank(rows: Sequence[Sequence[int]], p: int) -> int:
    if not rows:
        return 0
    a = np.array(rows, dtype=np.int64) % p
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = a[r + 1 :, c].copy()
        mask = below != 0
        if mask.any():
            idx = np.nonzero(mask)[0] + r + 1
            a[idx, c:] = (a[idx, c:] - (below[mask][:, None] * a[r, c:][None, :]) % p) % p
        r += 1
    return r


def rank(m: Mat) -> int:
    """Exact rank of ``m`` over its own field."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.is_rational:
        return _bareiss_rank(_integer_rows(m._data))
    return _modp_rank(m._data, m.field.prime)


def rank_of_rows(rows: Sequence[Sequence[Scalar]], field: Field = QQ) -> int:
    """Rank of a list of exact row vectors without building a :class:`Mat` first.

    Rows over GF(p) may hold arbitrary integers; they are reduced mod p.
    """
    if not rows:
        return 0
    if field.is_rational:
        return _bareiss_rank(_integer_rows(rows))
    p = field.prime
    return _modp_rank([[int(x) % p for x in r] for r in rows], p)


def rank_naive(m: Mat) -> int:
    """Rank by textbook Gauss-Jordan elimination (used as a cross-check)."""
    return len(_rref_rows(m._data, m.field)[1])


def _rref_rows(rows: Sequence[Sequence[Scalar]], field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    if field.is_rational:
        work = [[Fraction(x) for x in r] for r in rows]
        inv = lambda x: 1 / x  # noqa: E731
        red = lambda x: x  # noqa: E731
    else:
        p = field.prime
        work = [[int(x) % p for x in r] for r in rows]
        inv = lambda x: pow(x, -1, p)  # noqa: E731
        red = lambda x: x % p  # noqa: E731
    m = len(work)
    n = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        top = work[r]
        s = inv(top[c])
        if s != 1:
            for j in range(c, n):
                top[j] = red(top[j] * s)
        for i in range(m):
            if i == r:
                continue
            row = work[i]
            f = row[c]
            if f:
                for j in range(c, n):
                    if top[j]:
                        row[j] = red(row[j] - f * top[j])
        pivots.append(c)
        r += 1
    out = [[field.normalize(x) for x in row] for row in work[:r]]
    return out, pivots


def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form (nonzero rows only) and pivot columns."""
    rows, piv = _rref_rows(m._data, m.field)
    return Mat._raw(tuple(tuple(r) for r in rows), m.field, m.cols), piv


def det(m: Mat) -> Scalar:
    """Exact determinant of a square matrix."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    field = m.field
    if not field.is_rational:
        p = field.prime
        a = [list(r) for r in m._data]
        sign = 1
        result = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c]), None)
            if piv is None:
                return 0
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                sign = -sign
            result = result * a[c][c] % p
            inv = pow(a[c][c], -1, p)
            for i in range(c + 1, n):
                f = a[i][c] * inv % p
                if f:
                    for j in range(c, n):
                        a[i][j] = (a[i][j] - f * a[c][j]) % p
        return sign * result % p
    den = 1
    rows = []
    for row in m._data:
        d = 1
        for x in row:
            if isinstance(x, Fraction):
                d = math.lcm(d, x.denominator)
        den *= d
        rows.append([mpz(int(x * d)) for x in row])
    sign = 1
    prev = mpz(1)
    for c in range(n - 1):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        a = rows[c][c]
        for i in range(c + 1, n):
            b = rows[i][c]
            row = rows[i]
            for j in range(c + 1, n):
                row[j] = (a * row[j] - b * rows[c][j]) // prev
            row[c] = 0
        prev = a
    value = sign * int(rows[n - 1][n - 1])
    return field.normalize(Fraction(value, den))


def inverse(m: Mat) -> Mat:
    """Exact inverse of a square matrix; raises ``ZeroDivisionError`` if singular."""
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m._data)]
    red, piv = _rref_rows(aug, m.field)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return Mat._raw(tuple(tuple(r[n:]) for r in red), m.field, n)


def nullspace(m: Mat) -> "VecSubspace":
    """The subspace ``{x : m x = 0}`` of ``field^cols``."""
    n = m.cols
    red, piv = _rref_rows(m._data, m.field)
    free = [j for j in range(n) if j not in set(piv)]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(red, piv):
            v[pc] = m.field.normalize(-row[f])
        basis.append(v)
    return VecSubspace.span(basis, n, m.field)


# ------------------------------------------------------------------ subspaces


@dataclass(frozen=True, eq=False)
class VecSubspace:
    """A linear subspace of ``field^ambient_dim``.

    ``basis`` is kept in reduced row echelon form, which makes the
    representation canonical: two subspaces are equal iff their bases are.
    """

    ambient_dim: int
    basis: Mat

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, field: Field = QQ) -> "VecSubspace":
        rows = [list(v) for v in vectors]
        if any(len(v) != ambient_dim for v in rows):
            raise ValueError("vector length differs from ambient dimension")
        conv = field.__call__
        rows = [[conv(x) for x in v] for v in rows]
        red, _ = _rref_rows(rows, field) if rows else ([], [])
        return cls(ambient_dim, Mat._raw(tuple(tuple(r) for r in red), field, ambient_dim))

    @classmethod
    def zero(cls, ambient_dim: int, field: Field = QQ) -> "VecSubspace":
        return cls(ambient_dim, Mat._raw((), field, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int, field: Field = QQ) -> "VecSubspace":
        return cls(ambient_dim, Mat.identity(ambient_dim, field))

    @property
    def field(self) -> Field:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[list[Scalar]]:
        return self.basis.tolist()

    def annihilator(self) -> "VecSubspace":
        """Linear equations cutting out this subspace (the orthogonal complement)."""
        if self.dim == 0:
            return VecSubspace.full(self.ambient_dim, self.field)
        return nullspace(self.basis)

    def contains(self, v: Sequence) -> bool:
        return contains(self, v)

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def issubspace(self, other: "VecSubspace") -> bool:
        _check_ambient(self, other)
        return all(contains(other, v) for v in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, VecSubspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"VecSubspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field})"


def _check_ambient(a: VecSubspace, b: VecSubspace) -> None:
    _common_field(a.field, b.field)
    if a.ambient_dim != b.ambient_dim:
        raise ValueError(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def span_sum(a: VecSubspace, b: VecSubspace) -> VecSubspace:
    _check_ambient(a, b)
    return VecSubspace.span(a.vectors() + b.vectors(), a.ambient_dim, a.field)


def span_intersect(a: VecSubspace, b: VecSubspace) -> VecSubspace:
    _check_ambient(a, b)
    eqs = a.annihilator().vectors() + b.annihilator().vectors()
    if not eqs:
        return a
    return nullspace(Mat(eqs, a.field, a.ambient_dim))


def contains(a: VecSubspace, v: Sequence) -> bool:
    if len(v) != a.ambient_dim:
        raise ValueError("vector length differs from ambient dimension")
    f = a.field
    w = [f(x) for x in v]
    # reduce against the RREF basis
    for row, pc in zip(a.basis, _pivots(a.basis)):
        c = w[pc]
        if c:
            w = [f.normalize(x - c * y) for x, y in zip(w, row)]
    return not any(w)


def _pivots(basis: Mat) -> list[int]:
    out = []
    for row in basis:
        out.append(next(j for j, x in enumerate(row) if x != 0))
    return out
