"""Scaling factors, inflation centres and exact invariance checks.

For ``lambda = k + m*tau`` with ``2m - k + 1`` divisible by 5 and
``|k + m*tau'| < 1/2`` the map ``z -> lambda (z - p y) + p y`` sends the
vertex set into itself whenever the centre ``y`` passes the contraction
certificate.  On lattice points the map is the integer matrix
``lambda*pi + lambda'*pi' + pi''``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import _vectorized as vx
from .generator import BoundaryHit, _candidate_bound, _Pruner, generate_patch
from .golden import SQRT5, TAU_CONJ, GoldenNumber, as_golden
from .projections import (
    GridMatrix,
    LatticePoint,
    SymCirculantMatrix,
    squared_norm_phys,
)
from .windows import (
    InternalPoint,
    NonPositiveSlack,
    Status,
    classify,
    contraction_certificate,
    coset_window,
    delta_lower_bound_squared,
)

__all__ = [
    "ScalingFactor",
    "InflationCenter",
    "VerificationReport",
    "InadmissibleFactor",
    "is_admissible",
    "enumerate_factors",
    "lifted_scaling_matrix",
    "grid_scaling_matrix",
    "certify_center",
    "find_centers",
    "verify_invariance",
]

_HALF = Fraction(1, 2)


class InadmissibleFactor(ValueError):
    pass


@dataclass(frozen=True)
class ScalingFactor:
    """lambda = k + m*tau together with its conjugate k + m*tau'."""

    k: int
    m: int

    @property
    def lam(self) -> GoldenNumber:
        return GoldenNumber(self.k, self.m)

    @property
    def lam_conj(self) -> GoldenNumber:
        return self.k + self.m * TAU_CONJ

    @property
    def norm(self) -> int:
        return self.k * self.k + self.k * self.m - self.m * self.m

    @property
    def congruence_ok(self) -> bool:
        return (2 * self.m - self.k + 1) % 5 == 0

    @property
    def admissible(self) -> bool:
        return is_admissible(self.k, self.m)

    def __mul__(self, other: ScalingFactor) -> ScalingFactor:
        prod = self.lam * other.lam
        return ScalingFactor(int(prod.a), int(prod.b))

    def galois_swapped(self) -> ScalingFactor:
        """The factor whose lambda is this factor's lambda' (and vice versa)."""
        return ScalingFactor(self.k + self.m, -self.m)

    def __str__(self) -> str:
        return f"({self.k},{self.m})"


def is_admissible(k: int, m: int) -> bool:
    if (2 * m - k + 1) % 5:
        return False
    return abs(k + m * TAU_CONJ) < _HALF


def _inclusive(r) -> range:
    if isinstance(r, range):
        return r
    lo, hi = r
    return range(lo, hi + 1)


def enumerate_factors(k_range, m_range) -> list[ScalingFactor]:
    """Admissible factors in a box, sorted by |lambda|, then k, then m.

    Ranges are ``range`` objects or inclusive ``(lo, hi)`` pairs.
    """
    found = [
        ScalingFactor(k, m)
        for k in _inclusive(k_range)
        for m in _inclusive(m_range)
        if is_admissible(k, m)
    ]
    return sorted(found, key=lambda f: (f.lam * f.lam, f.k, f.m))


def _require(f: ScalingFactor) -> None:
    if not f.admissible:
        raise InadmissibleFactor(f"k + m tau with (k, m) = ({f.k}, {f.m}) is not an admissible scaling factor")


def lifted_scaling_matrix(f: ScalingFactor, check: bool = True) -> SymCirculantMatrix:
    """The 5x5 integer matrix of lambda*pi + lambda'*pi' + pi''."""
    if check:
        _require(f)
    q = Fraction(2 * f.m - f.k + 1, 5)
    return SymCirculantMatrix(GoldenNumber(f.k + q), GoldenNumber(q), GoldenNumber(q - f.m))


def grid_scaling_matrix(f: ScalingFactor, check: bool = True) -> GridMatrix:
    """lambda*p + lambda'*p' in the basis w1..w4."""
    if check:
        _require(f)
    lam, lam_c = f.lam, f.lam_conj
    lo = (5 - SQRT5) * Fraction(1, 10)
    hi = (5 + SQRT5) * Fraction(1, 10)
    alpha = lam * lo + lam_c * hi
    beta = lam * hi + lam_c * lo
    gamma = (lam - lam_c) * SQRT5 * Fraction(1, 5)
    return GridMatrix(alpha, beta, gamma)


# -- centres -----------------------------------------------------------------------

@dataclass(frozen=True)
class InflationCenter:
    y: LatticePoint
    certified: bool
    delta_squared: GoldenNumber | None = None


def _delta_or_none(lam_conj: GoldenNumber, v: InternalPoint) -> GoldenNumber | None:
    try:
        return delta_lower_bound_squared(lam_conj, v)
    except NonPositiveSlack:
        return None


def certify_center(f: ScalingFactor, y: LatticePoint | Sequence[int], v: InternalPoint) -> InflationCenter:
    y = y if isinstance(y, LatticePoint) else LatticePoint(tuple(y))
    if y.n != 0:
        raise ValueError("inflation centres must have coordinate sum 0")
    t = InternalPoint.of_lattice(y)
    ok = contraction_certificate(f.lam_conj, t, v)
    delta = _delta_or_none(f.lam_conj, v) if ok else None
    if delta is not None and not (t - v).squared_norm() < delta:
        delta = None
    return InflationCenter(y, ok, delta)


def find_centers(
    f: ScalingFactor,
    v: InternalPoint,
    search_radius_squared,
    n_jobs: int = 1,
) -> list[InflationCenter]:
    """Certified centres y (sum zero) with |pi y|^2 <= search_radius_squared.

    The fixed point of the internal contraction must lie in every
    window, so only y with pi'y - v in Omega and -Omega (all
    ``|z_k| <= tau/5``) are passed on to the exact certificate.
    """
    _require(f)
    r2 = as_golden(search_radius_squared)
    bound = _candidate_bound(v, r2)
    pr = _Pruner(v, r2, bound)

    def keep(x):
        sel = pr.in_radius(x)
        zp, zq = pr._shifted_internal(x)
        # 5d z_k within [-d tau, d tau]
        lo = vx.golden_sign(zp, zq + pr.d) >= 0
        hi = vx.golden_sign(-zp, pr.d - zq) >= 0
        return sel & (lo & hi).all(axis=1)

    arr = vx.enumerate_box(bound, (0,), keep, n_jobs=n_jobs, dtype=pr.dtype)
    delta = _delta_or_none(f.lam_conj, v)
    centers = []
    for row in arr:
        y = LatticePoint(tuple(int(t) for t in row))
        t = InternalPoint.of_lattice(y)
        if not contraction_certificate(f.lam_conj, t, v):
            continue
        d = delta if delta is not None and (t - v).squared_norm() < delta else None
        centers.append(InflationCenter(y, True, d))
    return centers


# -- verification ------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    factor: ScalingFactor
    center: InflationCenter
    points_tested: int
    failures: tuple[LatticePoint, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> bytes:
        doc = {
            "k": self.factor.k,
            "m": self.factor.m,
            "center": list(self.center.y.coords),
            "points_tested": self.points_tested,
            "failures": [list(p.coords) for p in self.failures],
        }
        return (json.dumps(doc, separators=(",", ":")) + "\n").encode()


def inflate(f: ScalingFactor, y: LatticePoint, x: LatticePoint, check: bool = True) -> LatticePoint:
    """S(x - y) + y on integer 5-tuples."""
    s = lifted_scaling_matrix(f, check=check)
    return LatticePoint(s.apply_int((x - y).coords)) + y


def verify_invariance(
    f: ScalingFactor,
    center: InflationCenter,
    v: InternalPoint,
    inner_radius_squared,
    check: bool = True,
    mode: str = "direct",
    n_jobs: int = 1,
) -> VerificationReport:
    """Map every pattern point of the inner ball and test the image.

    ``mode="direct"`` decides each image with the window test;
    ``mode="lookup"`` generates the outer patch that must contain all
    images and checks set membership.  ``check=False`` skips the
    admissibility and certificate preconditions (negative controls).
    """
    if check:
        _require(f)
        if not center.certified:
            raise ValueError("centre is not certified for this factor")
    if mode not in ("direct", "lookup"):
        raise ValueError(f"unknown mode {mode!r}")
    s = lifted_scaling_matrix(f, check=check)
    if not s.is_integral():
        raise InadmissibleFactor("scaling matrix is not integral")
    y = center.y
    patch = generate_patch(v, inner_radius_squared, n_jobs=n_jobs)
    images = [(x, LatticePoint(s.apply_int((x - y).coords)) + y) for x in patch.points]

    failures = []
    if mode == "direct":
        for x, z in images:
            if z.n != x.n or z.n not in (1, 2, 3, 4):
                failures.append(x)
                continue
            st = classify(InternalPoint.of_lattice(z), coset_window(z.n, v))
            if st is Status.BOUNDARY:
                raise BoundaryHit(v, z)
            if st is Status.OUTSIDE:
                failures.append(x)
    else:
        outer = max((squared_norm_phys(z) for _, z in images), default=GoldenNumber(0))
        members = generate_patch(v, outer, n_jobs=n_jobs).point_set()
        failures = [x for x, z in images if z.n != x.n or z.coords not in members]
    return VerificationReport(f, center, len(images), tuple(sorted(failures)))
