"""Command line entry point: ``penrose-selfsim <command> ...``.

Golden-number arguments use the ``a/b+c/dt`` text form (``t`` is tau).
Values starting with ``-`` must be attached with ``=``, e.g.
``--lambda=-1,-1`` or ``--k-range=-30:30``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .generator import (
    BoundaryHit,
    audit_boundary,
    default_offset,
    derive_edges,
    derive_faces,
    export_patch,
    generate_patch,
    generate_patch_strip,
)
from .golden import format_golden, parse_golden
from .projections import LatticePoint
from .render import emit_svg
from .similarity import (
    InadmissibleFactor,
    ScalingFactor,
    certify_center,
    enumerate_factors,
    find_centers,
    verify_invariance,
)
from .windows import InternalPoint, omega_vertex

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BOUNDARY = 3
EXIT_FAILURES = 4


def parse_offset(text: str) -> InternalPoint:
    """One value g means g * pi'(e1); two values are planar coordinates
    in the basis pi'(e1), pi'(e2); five values are ambient coordinates."""
    parts = [parse_golden(s) for s in text.split(",")]
    if len(parts) == 1:
        return parts[0] * omega_vertex(1)
    if len(parts) == 2:
        return InternalPoint.from_planar(*parts)
    if len(parts) == 5:
        return InternalPoint(parts)
    raise ValueError("offset takes 1, 2 or 5 comma-separated golden numbers")


def _golden_arg(text: str):
    try:
        return parse_golden(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _offset_arg(text: str) -> InternalPoint:
    try:
        return parse_offset(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _range_arg(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _factor_arg(text: str) -> ScalingFactor:
    try:
        k, m = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected K,M, got {text!r}") from None
    return ScalingFactor(k, m)


def _point_arg(text: str) -> LatticePoint:
    try:
        coords = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected five integers, got {text!r}") from None
    if len(coords) != 5:
        raise argparse.ArgumentTypeError(f"expected five integers, got {text!r}")
    return LatticePoint(coords)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="penrose-selfsim",
        description="Exact Penrose vertex patches and their self-similarities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, radius_flag="--radius2", radius_default="16"):
        p.add_argument(radius_flag, type=_golden_arg, default=parse_golden(radius_default),
                       help="squared physical radius (golden text form)")
        p.add_argument("--offset", type=_offset_arg, default=None,
                       help="window offset v in E' (default 1/4, i.e. pi'(e1)/4)")
        p.add_argument("--jobs", type=int, default=1, help="worker threads for enumeration")

    g = sub.add_parser("generate", help="enumerate a patch")
    common(g)
    g.add_argument("--method", choices=("model", "strip", "both"), default="model")
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--out", default=None, help="output path (default stdout)")

    a = sub.add_parser("audit", help="report lattice points on window boundaries")
    common(a)

    f = sub.add_parser("factors", help="list admissible scaling factors")
    f.add_argument("--k-range", type=_range_arg, default=(-30, 30))
    f.add_argument("--m-range", type=_range_arg, default=(-30, 30))

    c = sub.add_parser("centers", help="search certified inflation centres")
    c.add_argument("--lambda", dest="factor", type=_factor_arg, required=True)
    common(c)

    v = sub.add_parser("verify", help="check invariance under one inflation")
    v.add_argument("--lambda", dest="factor", type=_factor_arg, required=True)
    v.add_argument("--center", type=_point_arg, default=LatticePoint((0, 0, 0, 0, 0)))
    common(v, radius_flag="--inner-radius2", radius_default="9")
    v.add_argument("--mode", choices=("direct", "lookup"), default="direct")

    s = sub.add_parser("svg", help="draw a patch as SVG")
    common(s)
    s.add_argument("--out", required=True)
    s.add_argument("--overlay-lambda", type=_factor_arg, default=None)
    s.add_argument("--overlay-center", type=_point_arg, default=LatticePoint((0, 0, 0, 0, 0)))
    return parser


def _write(data: bytes, path: str | None) -> None:
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _v(args) -> InternalPoint:
    return default_offset() if args.offset is None else args.offset


def _cmd_generate(args) -> int:
    v = _v(args)
    if args.method == "strip":
        patch = generate_patch_strip(v, args.radius2, n_jobs=args.jobs)
    else:
        patch = generate_patch(v, args.radius2, n_jobs=args.jobs)
        if args.method == "both":
            other = generate_patch_strip(v, args.radius2, n_jobs=args.jobs)
            only_model = patch.point_set() - other.point_set()
            only_strip = other.point_set() - patch.point_set()
            if only_model or only_strip:
                print(f"definitions disagree: {len(only_model)} model-only, "
                      f"{len(only_strip)} strip-only points", file=sys.stderr)
                return EXIT_FAILURES
    patch = derive_faces(derive_edges(patch))
    _write(export_patch(patch, args.format), args.out)
    return EXIT_OK


def _cmd_audit(args) -> int:
    report = audit_boundary(_v(args), args.radius2, n_jobs=args.jobs)
    doc = {
        "points_checked": report.points_checked,
        "boundary_hits": [list(p.coords) for p in report.boundary_hits],
    }
    _write((json.dumps(doc, separators=(",", ":")) + "\n").encode(), None)
    return EXIT_OK if report.passed else EXIT_BOUNDARY


def _cmd_factors(args) -> int:
    lines = []
    for fct in enumerate_factors(args.k_range, args.m_range):
        lines.append(
            f"{fct} lambda={format_golden(fct.lam)} lambda'={format_golden(fct.lam_conj)} "
            f"norm={fct.norm} |lambda|~{abs(float(fct.lam)):.6f}"
        )
    _write(("\n".join(lines) + "\n" if lines else "").encode(), None)
    return EXIT_OK


def _cmd_centers(args) -> int:
    v = _v(args)
    centers = find_centers(args.factor, v, args.radius2, n_jobs=args.jobs)
    doc = [
        {
            "center": list(c.y.coords),
            "certified": c.certified,
            "delta_squared": None if c.delta_squared is None else format_golden(c.delta_squared),
        }
        for c in centers
    ]
    _write((json.dumps(doc, separators=(",", ":")) + "\n").encode(), None)
    return EXIT_OK


def _cmd_verify(args) -> int:
    v = _v(args)
    if not args.factor.admissible:
        raise InadmissibleFactor(f"{args.factor} is not an admissible scaling factor")
    center = certify_center(args.factor, args.center, v)
    if not center.certified:
        print(f"centre {args.center.coords} fails the contraction certificate", file=sys.stderr)
        return EXIT_FAILURES
    report = verify_invariance(args.factor, center, v, args.inner_radius2, mode=args.mode, n_jobs=args.jobs)
    _write(report.to_json(), None)
    return EXIT_OK if report.passed else EXIT_FAILURES


def _cmd_svg(args) -> int:
    v = _v(args)
    patch = derive_faces(derive_edges(generate_patch(v, args.radius2, n_jobs=args.jobs)))
    overlay = None
    if args.overlay_lambda is not None:
        if not args.overlay_lambda.admissible:
            raise InadmissibleFactor(f"{args.overlay_lambda} is not admissible")
        overlay = (args.overlay_lambda, args.overlay_center)
    _write(emit_svg(patch, overlay), args.out)
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "audit": _cmd_audit,
    "factors": _cmd_factors,
    "centers": _cmd_centers,
    "verify": _cmd_verify,
    "svg": _cmd_svg,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except BoundaryHit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDARY
    except (InadmissibleFactor, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
