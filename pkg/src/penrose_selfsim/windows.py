"""Acceptance windows in the internal plane E' and exact predicates on them."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence

from .golden import ONE, TAU, ZERO, GoldenNumber, as_golden, dot
from .projections import (
    LatticePoint,
    apply,
    projector_internal,
    projector_phys,
)

__all__ = [
    "Status",
    "InternalPoint",
    "PlanarCoords",
    "WindowPentagon",
    "DegenerateWindow",
    "NonPositiveSlack",
    "omega_vertex",
    "coset_window",
    "planar_coords",
    "orientation",
    "convex_hull",
    "classify",
    "strip_status",
    "strip_feasible",
    "contraction_certificate",
    "delta_lower_bound_squared",
    "distance_squared_to_line",
    "WINDOW_SCALES",
]


class Status(enum.Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


class DegenerateWindow(ValueError):
    pass


class NonPositiveSlack(ValueError):
    """The contracted windows are not strictly inside the originals."""


@dataclass(frozen=True)
class InternalPoint:
    """A point of E' given by its five ambient coordinates."""

    coords: tuple[GoldenNumber, ...]

    def __init__(self, coords: Sequence, *, check: bool = True) -> None:
        c = tuple(as_golden(t) for t in coords)
        if len(c) != 5:
            raise ValueError("internal points have 5 ambient coordinates")
        if check:
            if sum(c, ZERO) != 0:
                raise ValueError("internal point must have coordinate sum 0")
            if apply(projector_internal(), c) != c:
                raise ValueError("point is not fixed by the internal projector")
        object.__setattr__(self, "coords", c)

    @classmethod
    def origin(cls) -> InternalPoint:
        return cls((ZERO,) * 5, check=False)

    @classmethod
    def of_lattice(cls, x: LatticePoint | Sequence[int]) -> InternalPoint:
        """pi' x."""
        return cls(apply(projector_internal(), [GoldenNumber(t) for t in x]), check=False)

    @classmethod
    def from_planar(cls, alpha, beta) -> InternalPoint:
        alpha, beta = as_golden(alpha), as_golden(beta)
        e1, e2 = _omega_raw(1), _omega_raw(2)
        return cls(tuple(alpha * p + beta * q for p, q in zip(e1, e2)), check=False)

    def __add__(self, other: InternalPoint) -> InternalPoint:
        return InternalPoint(tuple(p + q for p, q in zip(self.coords, other.coords)), check=False)

    def __sub__(self, other: InternalPoint) -> InternalPoint:
        return InternalPoint(tuple(p - q for p, q in zip(self.coords, other.coords)), check=False)

    def __neg__(self) -> InternalPoint:
        return InternalPoint(tuple(-p for p in self.coords), check=False)

    def __rmul__(self, s) -> InternalPoint:
        s = as_golden(s)
        return InternalPoint(tuple(s * p for p in self.coords), check=False)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def squared_norm(self) -> GoldenNumber:
        return dot(self.coords, self.coords)

    def planar(self) -> PlanarCoords:
        return planar_coords(self)


class PlanarCoords(NamedTuple):
    alpha: GoldenNumber
    beta: GoldenNumber


@lru_cache(maxsize=None)
def _omega_raw(j: int) -> tuple[GoldenNumber, ...]:
    m = projector_internal()
    return tuple(m[i, j - 1] for i in range(5))


def omega_vertex(j: int) -> InternalPoint:
    """Vertex j of the unit pentagon, pi'(e_j)."""
    if not 1 <= j <= 5:
        raise ValueError(f"pentagon vertex index must be in 1..5, got {j}")
    return InternalPoint(_omega_raw(j), check=False)


# Gram matrix of (pi' e1, pi' e2) is [[2/5, -tau/5], [-tau/5, 2/5]]
_G_DIAG = GoldenNumber(Fraction(2, 5))
_G_OFF = -TAU * Fraction(1, 5)
_G_DET_INV = (_G_DIAG * _G_DIAG - _G_OFF * _G_OFF).inverse()


def planar_coords(z: InternalPoint) -> PlanarCoords:
    # <z, pi' e_j> = z_j for z in E'
    z1, z2 = z.coords[0], z.coords[1]
    return PlanarCoords(
        (_G_DIAG * z1 - _G_OFF * z2) * _G_DET_INV,
        (_G_DIAG * z2 - _G_OFF * z1) * _G_DET_INV,
    )


def orientation(p: Sequence[GoldenNumber], q: Sequence[GoldenNumber], r: Sequence[GoldenNumber]) -> int:
    """Sign of the cross product (q - p) x (r - p) in a planar chart."""
    return ((q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])).signum()


def convex_hull(points: Sequence[Sequence[GoldenNumber]]) -> list[tuple[GoldenNumber, GoldenNumber]]:
    """Exact convex hull (counter-clockwise in the chart, no collinear points)."""
    pts = sorted(set((as_golden(p[0]), as_golden(p[1])) for p in points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list = []
        for pt in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], pt) <= 0:
                out.pop()
            out.append(pt)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


@lru_cache(maxsize=None)
def _ring_order() -> tuple[int, ...]:
    """Cyclic counter-clockwise order of the pentagon vertex indices (0-based)."""
    planar = [planar_coords(omega_vertex(j)) for j in range(1, 6)]
    hull = convex_hull(planar)
    if len(hull) != 5:
        raise AssertionError("unit pentagon hull must have five vertices")
    index = {tuple(p): i for i, p in enumerate(planar)}
    return tuple(index[tuple(p)] for p in hull)


# scale of the pentagon for coset n = 1..4
WINDOW_SCALES = {1: ONE, 2: -TAU, 3: TAU, 4: -ONE}


@dataclass(frozen=True)
class WindowPentagon:
    """Closed pentagon ``scale * Omega + center`` in E'."""

    scale: GoldenNumber
    center: InternalPoint

    def __post_init__(self):
        object.__setattr__(self, "scale", as_golden(self.scale))
        if self.scale == 0:
            raise DegenerateWindow("window scale must be nonzero")

    @cached_property
    def vertices(self) -> tuple[InternalPoint, ...]:
        return tuple(self.scale * omega_vertex(j) + self.center for j in range(1, 6))

    @cached_property
    def _planar_ring(self) -> tuple[PlanarCoords, ...]:
        # negative scales are a half-turn in the plane, so the ring order is kept
        pl = [planar_coords(w) for w in self.vertices]
        return tuple(pl[i] for i in _ring_order())

    @cached_property
    def edges(self) -> tuple[tuple[InternalPoint, InternalPoint], ...]:
        ring = [self.vertices[i] for i in _ring_order()]
        return tuple((ring[i], ring[(i + 1) % 5]) for i in range(5))

    def classify(self, z: InternalPoint, order: Sequence[int] | None = None) -> Status:
        return classify(z, self, order=order)


def coset_window(n: int, v: InternalPoint) -> WindowPentagon:
    if n not in WINDOW_SCALES:
        raise ValueError(f"coset {n} has a window with empty interior; only 1..4 are valid")
    return WindowPentagon(WINDOW_SCALES[n], v)


def classify(z: InternalPoint, window: WindowPentagon, order: Sequence[int] | None = None) -> Status:
    """Exact point-in-pentagon test.

    ``order`` optionally relabels the ring (a cyclic shift of the vertex
    order); the answer must not depend on it.
    """
    ring = window._planar_ring
    if order is not None:
        ring = tuple(ring[i] for i in order)
    p = planar_coords(z)
    on_edge = False
    for i in range(5):
        s = orientation(ring[i], ring[(i + 1) % 5], p)
        if s < 0:
            return Status.OUTSIDE
        if s == 0:
            on_edge = True
    return Status.BOUNDARY if on_edge else Status.INSIDE


# -- strip projection oracle ---------------------------------------------------------

def _fm_status(rows: list[tuple[GoldenNumber, GoldenNumber, GoldenNumber, bool]]) -> bool:
    """Feasibility of {a*s + b*t <= c (strict if flag)} in two unknowns."""
    one_var: list[tuple[GoldenNumber, GoldenNumber, bool]] = []
    pos, neg = [], []
    for a, b, c, strict in rows:
        sb = b.signum()
        if sb == 0:
            one_var.append((a, c, strict))
        elif sb > 0:
            pos.append((a, b, c, strict))
        else:
            neg.append((a, b, c, strict))
    for ap, bp, cp, sp in pos:
        for an, bn, cn, sn in neg:
            one_var.append((ap * (-bn) + an * bp, cp * (-bn) + cn * bp, sp or sn))

    lower = upper = None  # (value, strict)
    for a, c, strict in one_var:
        sa = a.signum()
        if sa == 0:
            sc = c.signum()
            if sc < 0 or (sc == 0 and strict):
                return False
            continue
        bound = c / a
        if sa > 0:
            if upper is None or bound < upper[0] or (bound == upper[0] and strict):
                upper = (bound, strict)
        else:
            if lower is None or bound > lower[0] or (bound == lower[0] and strict):
                lower = (bound, strict)
    if lower is None or upper is None:
        return True
    if lower[0] < upper[0]:
        return True
    return lower[0] == upper[0] and not lower[1] and not upper[1]


@lru_cache(maxsize=None)
def _phys_basis_columns() -> tuple[tuple[GoldenNumber, ...], tuple[GoldenNumber, ...]]:
    m = projector_phys()
    return tuple(m[j, 0] for j in range(5)), tuple(m[j, 1] for j in range(5))


def _strip_rows(x: Sequence[int], v: InternalPoint, strict: bool):
    c1, c2 = _phys_basis_columns()
    rows = []
    for j in range(5):
        r = GoldenNumber(x[j]) - v.coords[j]
        # 0 <= r - s*c1_j - t*c2_j <= 1
        rows.append((c1[j], c2[j], r, strict))
        rows.append((-c1[j], -c2[j], 1 - r, strict))
    return rows


def strip_status(x: LatticePoint | Sequence[int], v: InternalPoint) -> Status:
    """Locate pi_perp(x) relative to the projected cube window.

    Decided by Fourier-Motzkin elimination of the two physical
    coordinates from ``0 <= x - v - y <= 1`` with y in E; the open
    system distinguishes interior from boundary.
    """
    x = tuple(x)
    if not _fm_status(_strip_rows(x, v, strict=False)):
        return Status.OUTSIDE
    if _fm_status(_strip_rows(x, v, strict=True)):
        return Status.INSIDE
    return Status.BOUNDARY


def strip_feasible(x: LatticePoint | Sequence[int], v: InternalPoint) -> bool:
    return _fm_status(_strip_rows(tuple(x), v, strict=False))


# -- contraction certificates --------------------------------------------------------

def _contracted_vertices(lam_conj: GoldenNumber, t: InternalPoint, window: WindowPentagon):
    return [lam_conj * (w - t) + t for w in window.vertices]


def contraction_certificate(lam_conj, t: InternalPoint, v: InternalPoint) -> bool:
    """True iff lam'(K_n - t) + t is contained in K_n for every n in 1..4."""
    lam_conj = as_golden(lam_conj)
    for n in range(1, 5):
        window = coset_window(n, v)
        for w in _contracted_vertices(lam_conj, t, window):
            if classify(w, window) is Status.OUTSIDE:
                return False
    return True


def distance_squared_to_line(w: InternalPoint, p: InternalPoint, q: InternalPoint) -> GoldenNumber:
    """Squared distance from ``w`` to the line through ``p`` and ``q`` (ambient metric)."""
    d = q - p
    u = w - p
    dd = d.squared_norm()
    proj = dot(u.coords, d.coords)
    return u.squared_norm() - proj * proj / dd


def delta_lower_bound_squared(lam_conj, v: InternalPoint) -> GoldenNumber:
    """Squared radius of a ball of admissible centres around ``v``.

    Moving the centre from ``v`` to ``t`` shifts every contracted window
    by ``(1 - lam') (t - v)``, so the smallest distance from a contracted
    vertex to the window boundary, divided by ``|1 - lam'|``, bounds how
    far the centre may move.
    """
    lam_conj = as_golden(lam_conj)
    if not abs(lam_conj) < 1:
        raise NonPositiveSlack("contraction factor must satisfy |lambda'| < 1")
    best = None
    for n in range(1, 5):
        window = coset_window(n, v)
        for w in _contracted_vertices(lam_conj, v, window):
            if classify(w, window) is not Status.INSIDE:
                raise NonPositiveSlack(f"contracted window {n} touches or leaves its original")
            for p, q in window.edges:
                d2 = distance_squared_to_line(w, p, q)
                if best is None or d2 < best:
                    best = d2
    one_minus = 1 - lam_conj
    return best / (one_minus * one_minus)
