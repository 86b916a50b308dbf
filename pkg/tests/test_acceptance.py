"""Acceptance run: one PASS/FAIL line per criterion.

Run standalone with ``python -m tests.test_acceptance`` or through pytest,
where the lines are repeated in the terminal summary.
"""
import itertools
import math
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from penrose_selfsim.generator import audit_boundary, default_offset, generate_patch, generate_patch_strip
from penrose_selfsim.golden import TAU
from penrose_selfsim.projections import (
    LatticePoint,
    SymCirculantMatrix,
    act_lattice,
    apply,
    group_a,
    group_b,
    projector_internal,
    projector_perp,
    projector_phys,
    projector_sym,
)
from penrose_selfsim.similarity import (
    ScalingFactor,
    certify_center,
    enumerate_factors,
    grid_scaling_matrix,
    is_admissible,
    lifted_scaling_matrix,
    verify_invariance,
)
from penrose_selfsim.windows import InternalPoint, contraction_certificate, convex_hull, omega_vertex, planar_coords

RESULTS = []
ORIGIN = LatticePoint((0,) * 5)
TIME_LIMIT = 120.0


def report(n, ok, detail):
    line = f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS.append(line)
    print(line, flush=True)
    return ok


def criterion_1():
    v = default_offset()
    sizes, ok = [], True
    for r2 in (16, 64, 400):
        t0 = time.perf_counter()
        a = generate_patch(v, r2, n_jobs=4).point_set()
        b = generate_patch_strip(v, r2, n_jobs=4).point_set()
        dt = time.perf_counter() - t0
        ok &= a == b
        sizes.append(f"R2={r2}: {len(a)} pts")
    ok &= dt < TIME_LIMIT
    return report(1, ok, f"model == strip ({', '.join(sizes)}); R2=400 pair took {dt:.1f}s")


def criterion_2():
    pi, pi_i, pi_s, perp = projector_phys(), projector_internal(), projector_sym(), projector_perp()
    zero, eye = SymCirculantMatrix.zero(), SymCirculantMatrix.identity()
    ok = all(m @ m == m for m in (pi, pi_i, pi_s))
    ok &= pi @ pi_i == zero and pi_i @ pi_s == zero and pi @ pi_s == zero
    ok &= pi + pi_i + pi_s == eye and perp == eye - pi
    traces = [m.trace() for m in (pi, pi_i, pi_s, perp)]
    ok &= traces == [2, 2, 1, 3]
    return report(2, ok, f"idempotent, orthogonal, complete; traces {[int(t.a) for t in traces]}")


def _cube_slice(n):
    pts = set()
    for corner in itertools.product((0, 1), repeat=5):
        s = n - sum(corner)
        for j in range(5):
            if not corner[j] and 0 <= s <= 1:
                p = list(corner)
                p[j] = Fraction(s)
                pts.add(tuple(p))
    return pts


def criterion_3():
    ok = True
    for n, scale in ((1, 1), (2, -TAU), (3, TAU), (4, -1)):
        proj = [planar_coords(InternalPoint(apply(projector_internal(), p), check=False)) for p in _cube_slice(n)]
        hull = convex_hull(proj)
        expected = convex_hull([planar_coords(scale * omega_vertex(j)) for j in range(1, 6)])
        ok &= len(hull) == 5 and set(hull) == set(expected)
    return report(3, ok, "cube slices n=1..4 project to +Omega, -tau Omega, +tau Omega, -Omega")


def criterion_4():
    found = enumerate_factors((-30, 30), (-30, 30))
    pairs = {(f.k, f.m) for f in found}
    ok = all((2 * f.m - f.k + 1) % 5 == 0 and abs(f.lam_conj) < Fraction(1, 2) for f in found)
    # independent float oracle for the brute force
    s5 = math.sqrt(5)
    brute = {(k, m) for k in range(-30, 31) for m in range(-30, 31)
             if (2 * m - k + 1) % 5 == 0 and abs(k + m * (1 - s5) / 2) < 0.5}
    ok &= pairs == brute
    ok &= {(2, 3), (-1, -1), (6, 10)} <= pairs and not pairs & {(0, 1), (1, 0)}
    ok &= ScalingFactor(6, 10).norm == -4
    closure = all(is_admissible((f * g).k, (f * g).m) for f in found for g in found)
    ok &= closure
    return report(4, ok, f"{len(found)} members in [-30,30]^2, float oracle agrees, products closed")


def criterion_5():
    found = enumerate_factors((-30, 30), (-30, 30))
    ok = all(lifted_scaling_matrix(f).is_integral() for f in found)
    ok &= all(t.is_integer() for f in found for row in grid_scaling_matrix(f).to_array() for t in row)
    rng = np.random.default_rng(20240607)
    pts = rng.integers(-50, 51, size=(100, 5))
    for f in found:
        s = lifted_scaling_matrix(f)
        ok &= all(sum(s.apply_int(tuple(int(t) for t in x))) == int(x.sum()) for x in pts)
    return report(5, ok, f"integral lifted and grid matrices; sums preserved on 100 points x {len(found)} factors")


def criterion_6():
    v, ok, parts = default_offset(), True, []
    for f in (ScalingFactor(2, 3), ScalingFactor(-1, -1)):
        t0 = time.perf_counter()
        c = certify_center(f, ORIGIN, v)
        rep = verify_invariance(f, c, v, 49, n_jobs=4)
        dt = time.perf_counter() - t0
        ok &= c.certified and rep.passed and dt < TIME_LIMIT
        parts.append(f"{f}: {rep.points_tested} pts, {len(rep.failures)} failures, {dt:.1f}s")
    return report(6, ok, "; ".join(parts))


def criterion_7():
    v = default_offset()
    f = ScalingFactor(2, 3)
    # lambda' replaced by lambda
    cert = contraction_certificate(f.lam, InternalPoint.origin(), v)
    bad = f.galois_swapped()
    rep = verify_invariance(bad, certify_center(f, ORIGIN, v), v, 49, check=False)
    ok = not cert and not rep.passed
    return report(7, ok, f"certificate rejects |lambda'|>1; swapped {bad} fails {len(rep.failures)}/{rep.points_tested}")


def criterion_8():
    clean = audit_boundary(default_offset(), 400, n_jobs=4)
    dirty = audit_boundary(InternalPoint.origin(), 400, n_jobs=4)
    ok = clean.passed and len(dirty.boundary_hits) >= 1
    return report(8, ok, f"default v: {len(clean.boundary_hits)} hits of {clean.points_checked}; "
                         f"v=0: {len(dirty.boundary_hits)} hits")


def _act_internal(word, v):
    c = v.coords
    for letter in reversed(word):
        c = group_a(c) if letter == "a" else group_b(c)
    return InternalPoint(c)


def criterion_9():
    rng = np.random.default_rng(7)
    ok = True
    for x in rng.integers(-20, 21, size=(50, 5)):
        x = tuple(int(t) for t in x)
        y = x
        for _ in range(10):
            y = group_a(y)
        ok &= y == x and group_b(group_b(x)) == x and group_a(group_b(group_a(group_b(x)))) == x
        lp = LatticePoint(x)
        ok &= act_lattice("a" * 10, lp) == lp and act_lattice("bb", lp) == lp and act_lattice("abab", lp) == lp
    v = default_offset()
    base = generate_patch(v, 25)
    words = ["a" * i + b for i in range(10) for b in ("", "b")]
    for w in words:
        moved = generate_patch(_act_internal(w, v), 25).point_set()
        ok &= {act_lattice(w, p).coords for p in base.points} == moved
    return report(9, ok, f"relations hold; P(g v) = g P(v) at R2=25 for all {len(words)} group elements")


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "penrose_selfsim.cli", *argv], capture_output=True, check=True).stdout


def criterion_10(tmp_dir):
    ok, checks = True, 0
    runs = [
        ("generate", "--radius2", "100"),
        ("verify", "--lambda", "2,3", "--inner-radius2", "25"),
    ]
    for argv in runs:
        outs = [_cli(*argv), _cli(*argv), _cli(*argv, "--jobs", "4")]
        ok &= outs[0] == outs[1] == outs[2] and len(outs[0]) > 0
        checks += 1
    svgs = []
    for i, jobs in enumerate(("1", "1", "4")):
        path = f"{tmp_dir}/p{i}.svg"
        _cli("svg", "--radius2", "100", "--out", path, "--jobs", jobs, "--overlay-lambda=-1,-1")
        with open(path, "rb") as fh:
            svgs.append(fh.read())
    ok &= svgs[0] == svgs[1] == svgs[2]
    checks += 1
    return report(10, ok, f"{checks} commands byte-identical across repeats and --jobs 1/4")


@pytest.mark.slow
@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n):
    assert globals()[f"criterion_{n}"]()


@pytest.mark.slow
def test_criterion_10(tmp_path):
    assert criterion_10(tmp_path)


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as d:
        results = [globals()[f"criterion_{n}"]() for n in range(1, 10)] + [criterion_10(d)]
    sys.exit(0 if all(results) else 1)
