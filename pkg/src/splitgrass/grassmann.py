"""Plücker coordinates of linear subspaces, in the equation (dual) convention.

A codimension ``d`` subspace of ``P^N`` is stored through a ``d x (N+1)``
matrix of linear equations.  Its Plücker vector lists the maximal minors of
that matrix, indexed by increasing ``d``-tuples in lexicographic order
(``p_012, p_013, ..., p_234`` for lines in ``P^4``).

Relation with the usual (basis) convention: if ``B`` is a basis matrix of the
same subspace and ``q_J`` its maximal minors, then up to one global scalar

    p_I = sign(I, I^c) * q_{I^c}

where ``sign(I, I^c)`` is the sign of the permutation listing ``I`` followed
by its complement, both increasing.  See :func:`dual_to_standard`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Mapping, Sequence

from .exactla import QQ, Field, Mat, Scalar, VecSubspace, det, nullspace, rank, rank_of_rows

Index = tuple[int, ...]


def index_tuples(n_ambient: int, size: int) -> list[Index]:
    return list(combinations(range(n_ambient), size))


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if ``seq`` has a repeat."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@dataclass(frozen=True, eq=False)
class PlueckerVec:
    """Coordinates ``p_I`` for increasing ``codim``-tuples ``I`` of ``range(n_ambient)``."""

    n_ambient: int
    codim: int
    coords: Mapping[Index, Scalar]

    def __post_init__(self):
        clean = {}
        for key, val in self.coords.items():
            key = tuple(key)
            if len(key) != self.codim or list(key) != sorted(set(key)) or (key and not 0 <= key[0] <= key[-1] < self.n_ambient):
                raise ValueError(f"invalid index tuple {key}")
            val = QQ(val) if not isinstance(val, int) else val
            if val:
                clean[key] = val
        if not clean:
            raise ValueError("the zero vector is not a Plücker point")
        object.__setattr__(self, "coords", clean)

    @classmethod
    def from_list(cls, values: Sequence[Scalar], n_ambient: int, codim: int) -> "PlueckerVec":
        idx = index_tuples(n_ambient, codim)
        if len(values) != len(idx):
            raise ValueError(f"expected {len(idx)} Plücker coordinates, got {len(values)}")
        return cls(n_ambient, codim, dict(zip(idx, values)))

    def as_list(self) -> list[Scalar]:
        return [self.coords.get(I, 0) for I in index_tuples(self.n_ambient, self.codim)]

    def __getitem__(self, index: Sequence[int]) -> Scalar:
        """Alternating extension: unsorted indices pick up the permutation sign."""
        s = perm_sign(index)
        if s == 0:
            return 0
        return s * self.coords.get(tuple(sorted(index)), 0)

    def __len__(self) -> int:
        return len(index_tuples(self.n_ambient, self.codim))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlueckerVec):
            return NotImplemented
        return (self.n_ambient, self.codim, self.coords) == (other.n_ambient, other.codim, other.coords)

    def __hash__(self) -> int:
        return hash((self.n_ambient, self.codim, frozenset(self.coords.items())))

    def __repr__(self) -> str:
        return f"PlueckerVec({format_pluecker(self)})"

    def primitive(self) -> list[int]:
        """Integer multiple of the coordinate list with coprime entries (sign kept)."""
        vals = [Fraction(x) for x in self.as_list()]
        den = lcm(*(x.denominator for x in vals))
        ints = [int(x * den) for x in vals]
        g = gcd(*ints)
        return [x // g for x in ints]

    def normalized(self) -> "PlueckerVec":
        """Scale so the first nonzero coordinate is 1."""
        lead = self.coords[min(self.coords)]
        return PlueckerVec(self.n_ambient, self.codim, {k: Fraction(v) / lead for k, v in self.coords.items()})


class Subspace:
    """A projective linear subspace of ``P^N`` given by independent equations."""

    __slots__ = ("ambient", "equations")

    def __init__(self, equations: Mat | Sequence[Sequence[Scalar]], ambient: int | None = None):
        if not isinstance(equations, Mat):
            cols = None if ambient is None else ambient + 1
            equations = Mat(equations, QQ, cols)
        if ambient is None:
            ambient = equations.cols - 1
        if equations.cols != ambient + 1:
            raise ValueError("equation matrix width must be N+1")
        if rank(equations) != equations.rows:
            raise ValueError("equation matrix does not have full row rank")
        self.ambient = ambient
        self.equations = equations

    @classmethod
    def from_equations(cls, rows: Sequence[Sequence[Scalar]], ambient: int | None = None) -> "Subspace":
        """Build from possibly dependent equations (a row basis is extracted)."""
        if ambient is None:
            ambient = len(rows[0]) - 1
        sp = VecSubspace.span(rows, ambient + 1) if rows else VecSubspace.zero(ambient + 1)
        return cls(Mat(sp.vectors(), QQ, ambient + 1), ambient)

    @classmethod
    def from_points(cls, points: Sequence[Sequence[Scalar]], ambient: int | None = None) -> "Subspace":
        """The span of the given points (vectors of the affine cone)."""
        if ambient is None:
            ambient = len(points[0]) - 1
        cone = VecSubspace.span(points, ambient + 1)
        return cls.from_cone(cone)

    @classmethod
    def from_cone(cls, cone: VecSubspace) -> "Subspace":
        eqs = cone.annihilator()
        return cls(Mat(eqs.vectors(), QQ, cone.ambient_dim), cone.ambient_dim - 1)

    @property
    def codim(self) -> int:
        return self.equations.rows

    @property
    def proj_dim(self) -> int:
        return self.ambient - self.codim

    def cone(self) -> VecSubspace:
        """The underlying vector subspace of ``K^(N+1)``."""
        if self.codim == 0:
            return VecSubspace.full(self.ambient + 1)
        return nullspace(self.equations)

    def equation_space(self) -> VecSubspace:
        return VecSubspace.span(self.equations.tolist(), self.ambient + 1)

    def contains_point(self, v: Sequence[Scalar]) -> bool:
        return not any(self.equations.apply(v))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.equation_space() == other.equation_space()

    def __hash__(self) -> int:
        return hash((self.ambient, self.equation_space()))

    def __repr__(self) -> str:
        return f"Subspace(proj_dim={self.proj_dim}, ambient={self.ambient}, equations={self.equations.tolist()})"


def pluecker_of(s: Subspace) -> PlueckerVec:
    """Maximal minors of the equation matrix of ``s``."""
    m, d = s.equations, s.codim
    coords = {}
    for I in index_tuples(s.ambient + 1, d):
        coords[I] = det(m.submatrix(range(d), I)) if d else 1
    return PlueckerVec(s.ambient + 1, d, coords)


def pluecker_relations(v: PlueckerVec):
    """Yield the values of all quadratic (shuffle) relations at ``v``."""
    n, d = v.n_ambient, v.codim
    if d in (0, 1) or d >= n - 1:
        return
    for I in combinations(range(n), d - 1):
        for J in combinations(range(n), d + 1):
            total = 0
            for l, j in enumerate(J):
                a = v[I + (j,)]
                if not a:
                    continue
                b = v[J[:l] + J[l + 1 :]]
                if b:
                    total += -a * b if l % 2 else a * b
            yield total


def is_decomposable(v: PlueckerVec) -> bool:
    """True iff ``v`` satisfies every quadratic Plücker relation."""
    return not any(pluecker_relations(v))


def subspace_of(v: PlueckerVec) -> Subspace:
    """Recover a subspace whose Plücker vector is proportional to ``v``."""
    n, d = v.n_ambient, v.codim
    I0 = min(v.coords)
    rows = []
    for a in range(d):
        row = []
        for j in range(n):
            T = list(I0)
            T[a] = j
            row.append(v[T])
        rows.append(row)
    try:
        s = Subspace(rows, n - 1)
    except ValueError:
        raise ValueError("vector is not decomposable") from None
    if not proj_equal(pluecker_of(s), v):
        raise ValueError("vector is not decomposable")
    return s


def proj_equal(a: PlueckerVec, b: PlueckerVec) -> bool:
    """Whether ``a`` and ``b`` define the same projective point."""
    if (a.n_ambient, a.codim) != (b.n_ambient, b.codim):
        raise ValueError("Plücker vectors of different shapes")
    if a.coords.keys() != b.coords.keys():
        return False
    k = min(a.coords)
    ra, rb = a.coords[k], b.coords[k]
    return all(a.coords[i] * rb == b.coords[i] * ra for i in a.coords)


def proj_equal_vectors(a: Sequence[Scalar], b: Sequence[Scalar]) -> bool:
    """Projective equality of two nonzero coordinate lists."""
    if len(a) != len(b):
        raise ValueError("length mismatch")
    if not any(a) or not any(b):
        raise ValueError("zero vector")
    return rank_of_rows([list(a), list(b)]) == 1


def dual_to_standard(v: PlueckerVec) -> PlueckerVec:
    """Convert equation-minor coordinates to basis-minor coordinates (up to scalar)."""
    n, d = v.n_ambient, v.codim
    out = {}
    for I, val in v.coords.items():
        comp = tuple(j for j in range(n) if j not in I)
        out[comp] = perm_sign(I + comp) * val
    return PlueckerVec(n, n - d, out)


def standard_to_dual(q: PlueckerVec) -> PlueckerVec:
    n, k = q.n_ambient, q.codim
    out = {}
    for J, val in q.coords.items():
        comp = tuple(j for j in range(n) if j not in J)
        out[comp] = perm_sign(comp + J) * val
    return PlueckerVec(n, n - k, out)


def basis_minors(vectors: Sequence[Sequence[Scalar]], field: Field = QQ) -> list[Scalar]:
    """Maximal minors of a basis matrix in lex order (standard convention)."""
    m = Mat(vectors, field)
    return [det(m.submatrix(range(m.rows), J)) for J in index_tuples(m.cols, m.rows)]


# ----------------------------------------------------------------- text format


def _fmt_index(I: Index) -> str:
    if all(i < 10 for i in I):
        return "".join(map(str, I))
    return ",".join(map(str, I))


def _fmt_scalar(x: Scalar) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_pluecker(v: PlueckerVec, labelled: bool = True) -> str:
    if labelled:
        body = ", ".join(f"p_{{{_fmt_index(I)}}}={_fmt_scalar(v.coords.get(I, 0))}" for I in index_tuples(v.n_ambient, v.codim))
    else:
        body = ", ".join(_fmt_scalar(x) for x in v.as_list())
    return f"[{body}]"


_LABEL = re.compile(r"\s*p_(?:\{([0-9,]+)\}|([0-9]+))\s*=\s*(-?\d+(?:/\d+)?)\s*(?:,|$)")


def parse_pluecker(text: str, n_ambient: int, codim: int) -> PlueckerVec:
    """Parse ``[p_{012}=1, p_{013}=0, ...]`` or a plain list ``[1, 0, ...]``.

    In the labelled form omitted coordinates are zero.
    """
    body = text.strip()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1].strip()
    if not body:
        raise ValueError("empty Plücker vector")
    if not body.startswith("p_"):
        try:
            values = [Fraction(t.strip()) for t in body.split(",")]
        except ValueError:
            raise ValueError(f"cannot parse Plücker list {text!r}") from None
        return PlueckerVec.from_list(values, n_ambient, codim)
    coords = {}
    pos = 0
    while pos < len(body):
        m = _LABEL.match(body, pos)
        if not m:
            raise ValueError(f"cannot parse Plücker entry near {body[pos:pos + 12]!r}")
        braced, bare, val = m.groups()
        lab = braced if braced is not None else bare
        I = tuple(int(c) for c in lab.split(",")) if "," in lab else tuple(int(c) for c in lab)
        if len(I) != codim or list(I) != sorted(set(I)) or I[-1] >= n_ambient:
            raise ValueError(f"index {lab} does not fit {codim}-tuples of range({n_ambient})")
        coords[I] = Fraction(val)
        pos = m.end()
    return PlueckerVec(n_ambient, codim, coords)
