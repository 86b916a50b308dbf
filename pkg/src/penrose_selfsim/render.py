"""Float render basis and SVG output.

Nothing here feeds back into exact predicates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence
from xml.sax.saxutils import quoteattr

from .generator import Patch, derive_edges, derive_faces, face_kind
from .projections import LatticePoint, squared_norm_phys, unit_vector

__all__ = ["RenderBasis", "render_basis", "render_physical", "emit_svg", "PX_PER_EDGE"]

PX_PER_EDGE = 40
THICK_FILL = "#e9b44c"
THIN_FILL = "#50a2a7"
STROKE = "#1b1b1e"
OVERLAY_STROKE = "#c3423f"


@dataclass(frozen=True)
class RenderBasis:
    e: tuple[tuple[float, float], ...]
    e_internal: tuple[tuple[float, float], ...]
    c: float
    s: float
    c_prime: float
    s_prime: float
    rho: float
    kappa: float


@lru_cache(maxsize=None)
def render_basis() -> RenderBasis:
    e = tuple((math.cos(2 * math.pi * j / 5), math.sin(2 * math.pi * j / 5)) for j in range(5))
    # internal plane: doubled angles
    ei = tuple((math.cos(4 * math.pi * j / 5), math.sin(4 * math.pi * j / 5)) for j in range(5))
    return RenderBasis(
        e=e,
        e_internal=ei,
        c=math.cos(math.pi / 5),
        s=math.sin(math.pi / 5),
        c_prime=math.cos(2 * math.pi / 5),
        s_prime=math.sin(2 * math.pi / 5),
        rho=math.sqrt(2 / 5),
        kappa=math.sqrt(5 / 2),
    )


def render_physical(x: Sequence[int] | LatticePoint) -> tuple[float, float]:
    """sum_j x_j e_j; lattice steps render with unit length."""
    e = render_basis().e
    px = py = 0.0
    for t, (ex, ey) in zip(tuple(x), e):
        px += t * ex
        py += t * ey
    return px, py


def render_internal(x: Sequence[int] | LatticePoint) -> tuple[float, float]:
    e = render_basis().e_internal
    return (sum(t * v[0] for t, v in zip(x, e)), sum(t * v[1] for t, v in zip(x, e)))


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def emit_svg(patch: Patch, overlay=None) -> bytes:
    """Render thick/thin rhombi, vertices and an optional inflation overlay.

    ``overlay`` is ``(factor, center_point)``; images of patch edges under
    the inflation are drawn when both endpoints stay inside the patch
    radius.
    """
    if patch.points and not patch.faces:
        patch = derive_faces(patch)
    if patch.points and not patch.edges:
        patch = derive_edges(patch)
    pts = [render_physical(p) for p in patch.points]
    if pts:
        xs = [p[0] for p in pts]
        ys = [-p[1] for p in pts]
        x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    else:
        x0, x1, y0, y1 = -1.0, 1.0, -1.0, 1.0
    k = PX_PER_EDGE

    def sx(x: float) -> str:
        return _fmt((x - x0) * k)

    def sy(y: float) -> str:
        return _fmt((-y - y0) * k)

    width, height = _fmt((x1 - x0) * k), _fmt((y1 - y0) * k)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    out.append(f'<g id="faces" stroke={quoteattr(STROKE)} stroke-width="1">')
    for i, j, kk in patch.faces:
        p = patch.points[i]
        corners = [p, p + unit_vector(j), p + unit_vector(j) + unit_vector(kk), p + unit_vector(kk)]
        coords = " ".join(f"{sx(a)},{sy(b)}" for a, b in map(render_physical, corners))
        kind = face_kind(j, kk)
        fill = THICK_FILL if kind == "thick" else THIN_FILL
        out.append(f'<polygon class="{kind}" fill="{fill}" points="{coords}"/>')
    out.append("</g>")
    out.append('<g id="vertices" fill="#1b1b1e">')
    for a, b in pts:
        out.append(f'<circle cx="{sx(a)}" cy="{sy(b)}" r="2"/>')
    out.append("</g>")
    if overlay is not None:
        from .similarity import lifted_scaling_matrix

        factor, center = overlay
        center = center if isinstance(center, LatticePoint) else LatticePoint(tuple(center))
        s = lifted_scaling_matrix(factor)
        out.append(f'<g id="overlay" stroke="{OVERLAY_STROKE}" stroke-width="2" fill="none">')
        for i, j in patch.edges:
            p = patch.points[i]
            a = LatticePoint(s.apply_int((p - center).coords)) + center
            b = LatticePoint(s.apply_int((p + unit_vector(j) - center).coords)) + center
            if squared_norm_phys(a) <= patch.radius_squared and squared_norm_phys(b) <= patch.radius_squared:
                (ax, ay), (bx, by) = render_physical(a), render_physical(b)
                out.append(f'<line x1="{sx(ax)}" y1="{sy(ay)}" x2="{sx(bx)}" y2="{sy(by)}"/>')
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode()
