"""Finite patches of the Penrose vertex set, by window tests and by the strip.

Candidates come from an integer box around the origin and are pruned
with exact integer kernels; every surviving candidate is then decided by
the exact predicates in :mod:`penrose_selfsim.windows`.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import _vectorized as vx
from .golden import TAU, GoldenNumber, as_golden, format_golden, parse_golden
from .projections import LatticePoint, unit_vector
from .windows import (
    WINDOW_SCALES,
    InternalPoint,
    Status,
    classify,
    coset_window,
    omega_vertex,
    strip_status,
)

__all__ = [
    "Patch",
    "AuditReport",
    "BoundaryHit",
    "default_offset",
    "generate_patch",
    "generate_patch_strip",
    "audit_boundary",
    "derive_edges",
    "derive_faces",
    "face_kind",
    "export_patch",
    "load_patch",
]


class BoundaryHit(RuntimeError):
    """A lattice point projects onto a window boundary; perturb the offset."""

    def __init__(self, v: InternalPoint, x: LatticePoint):
        self.v = v
        self.x = x
        super().__init__(f"offset is not generic: {x.coords} projects onto a window boundary")


def default_offset() -> InternalPoint:
    """(1/4) pi'(e1)."""
    return Fraction(1, 4) * omega_vertex(1)


def face_kind(j: int, k: int) -> str:
    return "thick" if abs(j - k) in (1, 4) else "thin"


@dataclass(frozen=True)
class Patch:
    offset: InternalPoint
    radius_squared: GoldenNumber
    points: tuple[LatticePoint, ...]
    edges: tuple[tuple[int, int], ...] = ()
    faces: tuple[tuple[int, int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.points)

    def point_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(p.coords for p in self.points)


@dataclass(frozen=True)
class AuditReport:
    points_checked: int
    boundary_hits: tuple[LatticePoint, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.boundary_hits


# -- candidate pruning ---------------------------------------------------------------

class _Pruner:
    """Exact integer encodings of the offset, radius and window constants."""

    def __init__(self, v: InternalPoint, radius_squared: GoldenNumber, bound: int):
        self.d = vx.common_denominator(list(v.coords))
        self.v_pq = [vx.scaled_pair(g, self.d) for g in v.coords]
        self.dr = vx.common_denominator([radius_squared])
        self.r_pq = vx.scaled_pair(radius_squared, self.dr)
        mags = [abs(t) for pq in self.v_pq for t in pq] + [abs(t) for t in self.r_pq]
        scale = 100 * (self.d + self.dr) * (max(mags, default=0) + 1) * (bound + 1) ** 2
        self.dtype = vx.pick_dtype(scale * scale)

    def in_radius(self, x: np.ndarray) -> np.ndarray:
        p, q = vx.phys_norm5(x)
        ra, rb = self.r_pq
        return vx.golden_sign(self.dr * p - 5 * ra, self.dr * q - 5 * rb) <= 0

    def _shifted_internal(self, x: np.ndarray):
        # 5d * (pi' x - v)_k
        p, q = vx.internal5(x)
        vp = np.array([t[0] for t in self.v_pq], dtype=self.dtype)
        vq = np.array([t[1] for t in self.v_pq], dtype=self.dtype)
        return self.d * p - 5 * vp, self.d * q - 5 * vq

    def window_status(self, x: np.ndarray) -> np.ndarray:
        """+1 inside, 0 boundary, -1 outside (or coset without a window).

        Uses the facet form of the unit pentagon, Omega = {z in E' : z_k >= -tau/5},
        and the point reflection for negative scales.
        """
        zp, zq = self._shifted_internal(x)
        n = x.sum(axis=1)
        status = np.full(len(x), -1, dtype=np.int8)
        for k, sigma in WINDOW_SCALES.items():
            rows = n == k
            if not rows.any():
                continue
            sgn = 1 if sigma.signum() > 0 else -1
            mag = abs(sigma) * TAU  # tau or tau + 1; 5 * |sigma| tau / 5
            mp, mq = int(mag.a) * self.d, int(mag.b) * self.d
            signs = vx.golden_sign(sgn * zp[rows] + mp, sgn * zq[rows] + mq)
            status[rows] = signs.min(axis=1)
        return status

    def strip_slab(self, x: np.ndarray) -> np.ndarray:
        """Necessary condition for the strip: cube support along the rows of pi_perp.

        (pi_perp (x - v))_k must lie in [2 tau'/5, 3/5 + 2 tau/5].
        """
        pp, pq = vx.phys5(x)
        vp = np.array([t[0] for t in self.v_pq], dtype=self.dtype)
        vq = np.array([t[1] for t in self.v_pq], dtype=self.dtype)
        # 5d * (x_k - (pi x)_k - v_k)
        wp = 5 * self.d * x - self.d * pp - 5 * vp
        wq = -self.d * pq - 5 * vq
        lo = vx.golden_sign(wp - 2 * self.d, wq + 2 * self.d) >= 0
        hi = vx.golden_sign(3 * self.d - wp, 2 * self.d - wq) >= 0
        n = x.sum(axis=1)
        return (lo & hi).all(axis=1) & (n >= 0) & (n <= 5)


def _candidate_bound(v: InternalPoint, radius_squared: GoldenNumber) -> int:
    # |x|^2 = |pi x|^2 + |pi' x|^2 + n^2/5 with pi' x within |v| + tau*sqrt(2/5) of 0
    # and n <= 5; (a+b)^2 <= 2a^2 + 2b^2
    internal_sq = 2 * vx.golden_upper(v.squared_norm()) + 2 * vx.golden_upper(TAU * TAU * Fraction(2, 5))
    total = max(vx.golden_upper(radius_squared), Fraction(0)) + internal_sq + 5
    return vx.box_bound(total) + 1


def _to_points(arr: np.ndarray) -> list[LatticePoint]:
    return [LatticePoint(tuple(int(t) for t in row)) for row in arr]


def _model_candidates(v, radius_squared, n_jobs):
    bound = _candidate_bound(v, radius_squared)
    pr = _Pruner(v, radius_squared, bound)
    counted = []

    def keep(x):
        inside = pr.in_radius(x)
        counted.append(int(inside.sum()))
        st = pr.window_status(x[inside])
        sel = np.zeros(len(x), dtype=bool)
        sel[np.flatnonzero(inside)[st >= 0]] = True
        return sel

    arr = vx.enumerate_box(bound, (1, 2, 3, 4), keep, n_jobs=n_jobs, dtype=pr.dtype)
    return _to_points(arr), sum(counted)


def generate_patch(v: InternalPoint | None = None, radius_squared=16, n_jobs: int = 1) -> Patch:
    """Pattern points with |pi x|^2 <= radius_squared, decided by the coset windows."""
    v = default_offset() if v is None else v
    radius_squared = as_golden(radius_squared)
    candidates, _ = _model_candidates(v, radius_squared, n_jobs)
    accepted = []
    for x in candidates:
        st = classify(InternalPoint.of_lattice(x), coset_window(x.n, v))
        if st is Status.BOUNDARY:
            raise BoundaryHit(v, x)
        if st is Status.INSIDE:
            accepted.append(x)
        else:  # pragma: no cover - the pruner is exact
            raise AssertionError(f"pruner and classifier disagree at {x.coords}")
    return Patch(v, radius_squared, tuple(sorted(accepted)))


def generate_patch_strip(v: InternalPoint | None = None, radius_squared=16, n_jobs: int = 1) -> Patch:
    """Pattern points with |pi x|^2 <= radius_squared, decided by the strip."""
    v = default_offset() if v is None else v
    radius_squared = as_golden(radius_squared)
    bound = _candidate_bound(v, radius_squared)
    pr = _Pruner(v, radius_squared, bound)

    def keep(x):
        return pr.in_radius(x) & pr.strip_slab(x)

    arr = vx.enumerate_box(bound, range(0, 6), keep, n_jobs=n_jobs, dtype=pr.dtype)
    accepted = []
    for x in _to_points(arr):
        st = strip_status(x, v)
        if st is Status.BOUNDARY:
            raise BoundaryHit(v, x)
        if st is Status.INSIDE:
            accepted.append(x)
    return Patch(v, radius_squared, tuple(sorted(accepted)))


def audit_boundary(v: InternalPoint | None = None, radius_squared=16, n_jobs: int = 1) -> AuditReport:
    """Classify every candidate in the ball; report those on a window boundary."""
    v = default_offset() if v is None else v
    radius_squared = as_golden(radius_squared)
    bound = _candidate_bound(v, radius_squared)
    pr = _Pruner(v, radius_squared, bound)
    checked = []

    def keep(x):
        inside = pr.in_radius(x)
        checked.append(int(inside.sum()))
        st = pr.window_status(x[inside])
        sel = np.zeros(len(x), dtype=bool)
        sel[np.flatnonzero(inside)[st == 0]] = True
        return sel

    arr = vx.enumerate_box(bound, (1, 2, 3, 4), keep, n_jobs=n_jobs, dtype=pr.dtype)
    hits = []
    for x in _to_points(arr):
        st = classify(InternalPoint.of_lattice(x), coset_window(x.n, v))
        if st is not Status.BOUNDARY:  # pragma: no cover - the pruner is exact
            raise AssertionError(f"pruner and classifier disagree at {x.coords}")
        hits.append(x)
    return AuditReport(sum(checked), tuple(sorted(hits)))


# -- tiles ---------------------------------------------------------------------------

def derive_edges(patch: Patch) -> Patch:
    index = {p.coords: i for i, p in enumerate(patch.points)}
    edges = []
    for i, p in enumerate(patch.points):
        for j in range(1, 6):
            if (p + unit_vector(j)).coords in index:
                edges.append((i, j))
    return replace(patch, edges=tuple(edges))


def derive_faces(patch: Patch) -> Patch:
    index = {p.coords: i for i, p in enumerate(patch.points)}
    faces = []
    for i, p in enumerate(patch.points):
        for j in range(1, 6):
            pj = p + unit_vector(j)
            if pj.coords not in index:
                continue
            for k in range(j + 1, 6):
                pk = p + unit_vector(k)
                if pk.coords in index and (pj + unit_vector(k)).coords in index:
                    faces.append((i, j, k))
    return replace(patch, faces=tuple(faces))


# -- serialisation -------------------------------------------------------------------

def _patch_doc(patch: Patch) -> dict:
    return {
        "offset": [format_golden(g) for g in patch.offset.coords],
        "radius_squared": format_golden(patch.radius_squared),
        "points": [list(p.coords) for p in patch.points],
        "edges": [[i, j] for i, j in patch.edges],
        "faces": [[i, j, k, face_kind(j, k)] for i, j, k in patch.faces],
    }


def export_patch(patch: Patch, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(_patch_doc(patch), separators=(",", ":")) + "\n").encode()
    if fmt == "csv":
        from .render import render_physical

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        for p in patch.points:
            fx, fy = render_physical(p)
            w.writerow([*p.coords, p.n, f"{fx:.12g}", f"{fy:.12g}"])
        return buf.getvalue().encode()
    raise ValueError(f"unknown export format {fmt!r}")


def load_patch(data: bytes | str) -> Patch:
    doc = json.loads(data)
    faces = []
    for i, j, k, kind in doc.get("faces", []):
        if kind != face_kind(j, k):
            raise ValueError(f"face {i},{j},{k} labelled {kind!r}")
        faces.append((i, j, k))
    return Patch(
        offset=InternalPoint([parse_golden(s) for s in doc["offset"]]),
        radius_squared=parse_golden(doc["radius_squared"]),
        points=tuple(LatticePoint(tuple(p)) for p in doc["points"]),
        edges=tuple((i, j) for i, j in doc.get("edges", [])),
        faces=tuple(faces),
    )
