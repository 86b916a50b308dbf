"""The lattice Z^5, the projector families, and the D10 action.

The ambient lattice is taken at unit scale (Z^5 with the window cube
[0, 1]^5) so that every projected quantity stays inside Q(tau); the
physical scale factor sqrt(5/2) only comes back at render time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .golden import ONE, TAU, ZERO, GoldenNumber, as_golden, dot

__all__ = [
    "SymCirculantMatrix",
    "GridMatrix",
    "LatticePoint",
    "projector_phys",
    "projector_internal",
    "projector_sym",
    "projector_perp",
    "grid_projector_phys",
    "grid_projector_internal",
    "apply",
    "group_a",
    "group_b",
    "act_lattice",
    "to_grid_coords",
    "from_grid_coords",
    "coset_of",
    "matmul",
    "unit_vector",
    "squared_norm_phys",
]

# circulant offset (j - i) mod 5 -> parameter index (0: alpha, 1: beta, 2: gamma)
_OFFSET_PARAM = (0, 1, 2, 2, 1)


@dataclass(frozen=True)
class SymCirculantMatrix:
    """Symmetric circulant 5x5 matrix with first row (alpha, beta, gamma, gamma, beta)."""

    alpha: GoldenNumber
    beta: GoldenNumber
    gamma: GoldenNumber

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, as_golden(getattr(self, name)))

    @property
    def params(self) -> tuple[GoldenNumber, GoldenNumber, GoldenNumber]:
        return (self.alpha, self.beta, self.gamma)

    def first_row(self) -> tuple[GoldenNumber, ...]:
        p = self.params
        return tuple(p[_OFFSET_PARAM[d]] for d in range(5))

    def __getitem__(self, ij: tuple[int, int]) -> GoldenNumber:
        i, j = ij
        if not (0 <= i < 5 and 0 <= j < 5):
            raise IndexError(ij)
        return self.params[_OFFSET_PARAM[(j - i) % 5]]

    def to_array(self) -> tuple[tuple[GoldenNumber, ...], ...]:
        return tuple(tuple(self[i, j] for j in range(5)) for i in range(5))

    def trace(self) -> GoldenNumber:
        return 5 * self.alpha

    @classmethod
    def identity(cls) -> SymCirculantMatrix:
        return cls(ONE, ZERO, ZERO)

    @classmethod
    def zero(cls) -> SymCirculantMatrix:
        return cls(ZERO, ZERO, ZERO)

    def __add__(self, other: SymCirculantMatrix) -> SymCirculantMatrix:
        if not isinstance(other, SymCirculantMatrix):
            return NotImplemented
        return SymCirculantMatrix(*(p + q for p, q in zip(self.params, other.params)))

    def __sub__(self, other: SymCirculantMatrix) -> SymCirculantMatrix:
        if not isinstance(other, SymCirculantMatrix):
            return NotImplemented
        return SymCirculantMatrix(*(p - q for p, q in zip(self.params, other.params)))

    def __neg__(self) -> SymCirculantMatrix:
        return SymCirculantMatrix(*(-p for p in self.params))

    def __rmul__(self, s) -> SymCirculantMatrix:
        s = as_golden(s)
        return SymCirculantMatrix(*(s * p for p in self.params))

    def __matmul__(self, other):
        if isinstance(other, SymCirculantMatrix):
            # product of circulants: cyclic convolution of first rows
            r, q = self.first_row(), other.first_row()
            row = [sum((r[k] * q[(d - k) % 5] for k in range(5)), ZERO) for d in range(5)]
            return SymCirculantMatrix(row[0], row[1], row[2])
        if isinstance(other, (tuple, list)):
            return apply(self, other)
        return NotImplemented

    def is_integral(self) -> bool:
        return all(p.is_integer() for p in self.params)

    def apply_int(self, x: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product for an integral matrix on an integer vector."""
        if not self.is_integral():
            raise ValueError("apply_int requires integer entries")
        a, b, c = (int(p.a) for p in self.params)
        return tuple(
            a * x[i] + b * (x[(i + 1) % 5] + x[(i - 1) % 5]) + c * (x[(i + 2) % 5] + x[(i - 2) % 5])
            for i in range(5)
        )


# row/column pattern of the 4x4 family; entries are (sign, param index) or None
_GRID_PATTERN = (
    ((1, 0), (1, 2), None, (-1, 2)),
    (None, (1, 1), (1, 2), (-1, 2)),
    ((-1, 2), (1, 2), (1, 1), None),
    ((-1, 2), None, (1, 2), (1, 0)),
)


@dataclass(frozen=True)
class GridMatrix:
    """4x4 matrix family acting on coordinates in the basis w1..w4."""

    alpha: GoldenNumber
    beta: GoldenNumber
    gamma: GoldenNumber

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, as_golden(getattr(self, name)))

    @property
    def params(self):
        return (self.alpha, self.beta, self.gamma)

    def __getitem__(self, ij: tuple[int, int]) -> GoldenNumber:
        i, j = ij
        cell = _GRID_PATTERN[i][j]
        if cell is None:
            return ZERO
        sign, k = cell
        return self.params[k] if sign > 0 else -self.params[k]

    def to_array(self) -> tuple[tuple[GoldenNumber, ...], ...]:
        return tuple(tuple(self[i, j] for j in range(4)) for i in range(4))

    @classmethod
    def from_array(cls, m: Sequence[Sequence[GoldenNumber]]) -> GridMatrix:
        """Inverse of :meth:`to_array`; raises if ``m`` is not in the family."""
        cand = cls(m[0][0], m[1][1], m[0][1])
        if cand.to_array() != tuple(tuple(as_golden(x) for x in row) for row in m):
            raise ValueError("matrix does not have the grid-family pattern")
        return cand

    def __add__(self, other: GridMatrix) -> GridMatrix:
        if not isinstance(other, GridMatrix):
            return NotImplemented
        return GridMatrix(*(p + q for p, q in zip(self.params, other.params)))

    def __sub__(self, other: GridMatrix) -> GridMatrix:
        if not isinstance(other, GridMatrix):
            return NotImplemented
        return GridMatrix(*(p - q for p, q in zip(self.params, other.params)))

    def __rmul__(self, s) -> GridMatrix:
        s = as_golden(s)
        return GridMatrix(*(s * p for p in self.params))

    def __matmul__(self, other):
        if isinstance(other, GridMatrix):
            return matmul(self.to_array(), other.to_array())
        if isinstance(other, (tuple, list)):
            if len(other) != 4:
                raise ValueError("grid vectors have length 4")
            return tuple(dot(row, other) for row in self.to_array())
        return NotImplemented

    def is_integral(self) -> bool:
        return all(p.is_integer() for p in self.params)


def matmul(a, b):
    """Plain product of nested-sequence matrices over Q(tau)."""
    n, k, m = len(a), len(b), len(b[0])
    if len(a[0]) != k:
        raise ValueError("shape mismatch")
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k)), ZERO) for j in range(m))
        for i in range(n)
    )


@dataclass(frozen=True, order=True)
class LatticePoint:
    """Point of Z^5; ``n`` is the coordinate sum (coset index)."""

    coords: tuple[int, int, int, int, int]
    n: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        c = tuple(int(x) for x in self.coords)
        if len(c) != 5:
            raise ValueError("lattice points have 5 coordinates")
        object.__setattr__(self, "coords", c)
        object.__setattr__(self, "n", sum(c))

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __add__(self, other: LatticePoint) -> LatticePoint:
        return LatticePoint(tuple(p + q for p, q in zip(self.coords, other.coords)))

    def __sub__(self, other: LatticePoint) -> LatticePoint:
        return LatticePoint(tuple(p - q for p, q in zip(self.coords, other.coords)))

    def __neg__(self) -> LatticePoint:
        return LatticePoint(tuple(-p for p in self.coords))

    def scaled(self, k: int) -> LatticePoint:
        return LatticePoint(tuple(k * p for p in self.coords))

    def as_golden(self) -> tuple[GoldenNumber, ...]:
        return tuple(GoldenNumber(p) for p in self.coords)


def unit_vector(j: int) -> LatticePoint:
    """epsilon_j for j in 1..5."""
    if not 1 <= j <= 5:
        raise ValueError(f"direction index must be in 1..5, got {j}")
    return LatticePoint(tuple(1 if i == j - 1 else 0 for i in range(5)))


_F5 = Fraction(1, 5)


def projector_phys() -> SymCirculantMatrix:
    """Orthogonal projector onto physical space E."""
    return SymCirculantMatrix(GoldenNumber(Fraction(2, 5)), (TAU - 1) * _F5, -TAU * _F5)


def projector_internal() -> SymCirculantMatrix:
    """Orthogonal projector onto the internal plane E'."""
    return SymCirculantMatrix(GoldenNumber(Fraction(2, 5)), -TAU * _F5, (TAU - 1) * _F5)


def projector_sym() -> SymCirculantMatrix:
    """Rank-one projector onto the diagonal line E''."""
    return SymCirculantMatrix(GoldenNumber(_F5), GoldenNumber(_F5), GoldenNumber(_F5))


def projector_perp() -> SymCirculantMatrix:
    """Projector onto the orthogonal complement of E."""
    return SymCirculantMatrix(GoldenNumber(Fraction(3, 5)), (1 - TAU) * _F5, TAU * _F5)


def grid_projector_phys() -> GridMatrix:
    """p in the basis w1..w4."""
    return GridMatrix((3 - TAU) * _F5, (2 + TAU) * _F5, (2 * TAU - 1) * _F5)


def grid_projector_internal() -> GridMatrix:
    """p' in the basis w1..w4."""
    return GridMatrix((2 + TAU) * _F5, (3 - TAU) * _F5, (1 - 2 * TAU) * _F5)


def apply(m: SymCirculantMatrix, v: Sequence) -> tuple[GoldenNumber, ...]:
    if len(v) != 5:
        raise ValueError(f"expected a 5-vector, got length {len(v)}")
    a, b, c = m.params
    v = tuple(v)
    return tuple(
        a * v[i] + b * (v[(i + 1) % 5] + v[(i - 1) % 5]) + c * (v[(i + 2) % 5] + v[(i - 2) % 5])
        for i in range(5)
    )


def squared_norm_phys(x: Sequence[int] | LatticePoint) -> GoldenNumber:
    """|pi x|^2 for an integer 5-vector, without forming pi x."""
    x = tuple(x)
    s0 = sum(t * t for t in x)
    s1 = sum(x[i] * x[(i + 1) % 5] for i in range(5))
    s2 = sum(x[i] * x[(i + 2) % 5] for i in range(5))
    return GoldenNumber(Fraction(2 * (s0 - s1), 5), Fraction(2 * (s1 - s2), 5))


# -- D10 -----------------------------------------------------------------------

def group_a(x: Sequence):
    """a(x1..x5) = (-x3, -x4, -x5, -x1, -x2)."""
    x1, x2, x3, x4, x5 = x
    out = (-x3, -x4, -x5, -x1, -x2)
    return LatticePoint(out) if isinstance(x, LatticePoint) else out


def group_b(x: Sequence):
    """b(x1..x5) = (x1, x5, x4, x3, x2)."""
    x1, x2, x3, x4, x5 = x
    out = (x1, x5, x4, x3, x2)
    return LatticePoint(out) if isinstance(x, LatticePoint) else out


def act_lattice(word: str, x: LatticePoint) -> LatticePoint:
    """Act on a lattice point by a word in ``a``/``b`` (rightmost letter first).

    Every element of the group either fixes or negates all signs; the
    negating ones send the window cube [0,1]^5 to [-1,0]^5, so the
    diagonal (1,1,1,1,1) is added back to keep the point inside the
    same strip.  Physical projections are unaffected since the diagonal
    lies in E''.
    """
    y = tuple(x)
    negated = False
    for letter in reversed(word):
        if letter == "a":
            y = group_a(y)
            negated = not negated
        elif letter == "b":
            y = group_b(y)
        else:
            raise ValueError(f"unknown generator {letter!r}")
    if negated:
        y = tuple(t + 1 for t in y)
    return LatticePoint(y)


# -- grid / cosets ---------------------------------------------------------------

def to_grid_coords(x: LatticePoint) -> tuple[int, int, int, int]:
    c = x.coords
    return (c[0] - c[4], c[1] - c[4], c[2] - c[4], c[3] - c[4])


def from_grid_coords(c: Sequence) -> tuple[GoldenNumber, ...]:
    """Sum of c_j * w_j with w_j = (pi + pi') e_j = e_j - (1/5)(1,...,1)."""
    c = tuple(as_golden(t) for t in c)
    if len(c) != 4:
        raise ValueError("grid coordinates have length 4")
    s = sum(c, ZERO) * _F5
    return tuple((c[j] if j < 4 else ZERO) - s for j in range(5))


def coset_of(x: LatticePoint) -> tuple[int, LatticePoint]:
    n = x.n
    return n, LatticePoint((x[0] - n, x[1], x[2], x[3], x[4]))
