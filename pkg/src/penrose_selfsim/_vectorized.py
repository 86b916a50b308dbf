"""Exact integer-array kernels used to prune lattice candidates.

A golden number array is carried as two integer arrays ``(p, q)`` with
an implicit common positive denominator, meaning ``(p + q*tau) / d``.
Only signs are ever extracted, so the denominator never needs to be
materialised.  Arrays fall back to Python-int object dtype when the
magnitudes could overflow int64.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .golden import GoldenNumber

INT64_SAFE = 2**62


def golden_sign(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Elementwise sign of ``p + q*tau`` for integer arrays."""
    s = 2 * p + q  # 2(p + q tau) = s + q sqrt5
    d = s * s - 5 * q * q
    sd = np.sign(d).astype(np.int8)
    out = np.where(s > 0, sd, -sd)
    out = np.where((s >= 0) & (q >= 0), 1, out)
    out = np.where((s <= 0) & (q <= 0), -1, out)
    out = np.where((s == 0) & (q == 0), 0, out)
    return out.astype(np.int8)


def common_denominator(values: Iterable[GoldenNumber]) -> int:
    d = 1
    for g in values:
        d = math.lcm(d, g.a.denominator, g.b.denominator)
    return d


def scaled_pair(g: GoldenNumber, d: int) -> tuple[int, int]:
    """Integers (p, q) with g = (p + q tau) / d."""
    a, b = g.a * d, g.b * d
    if a.denominator != 1 or b.denominator != 1:
        raise ValueError("denominator does not clear the value")
    return int(a), int(b)


def pick_dtype(magnitude: int):
    return np.int64 if magnitude < INT64_SAFE else object


def neighbour_sums(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic sums x_{k-1}+x_{k+1} and x_{k-2}+x_{k+2} for rows of ``x``."""
    near = np.roll(x, 1, axis=1) + np.roll(x, -1, axis=1)
    far = np.roll(x, 2, axis=1) + np.roll(x, -2, axis=1)
    return near, far


def phys_norm5(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(p, q) with 5*|pi x|^2 = p + q tau."""
    s0 = (x * x).sum(axis=1)
    s1 = (x * np.roll(x, -1, axis=1)).sum(axis=1)
    s2 = (x * np.roll(x, -2, axis=1)).sum(axis=1)
    return 2 * (s0 - s1), 2 * (s1 - s2)


def internal5(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(p, q) with 5*(pi' x)_k = p + q tau, shape like ``x``."""
    near, far = neighbour_sums(x)
    return 2 * x - far, far - near


def phys5(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(p, q) with 5*(pi x)_k = p + q tau."""
    near, far = neighbour_sums(x)
    return 2 * x - near, near - far


def box_bound(bound_sq: Fraction) -> int:
    """Smallest integer B with B*B >= bound_sq."""
    b = math.isqrt(math.floor(bound_sq))
    while b * b < bound_sq:
        b += 1
    return b


def golden_upper(g: GoldenNumber) -> Fraction:
    """A rational upper bound of ``g`` (uses 161/100 < tau < 1618034/1000000)."""
    lo, hi = Fraction(161, 100), Fraction(1618034, 1000000)
    return g.a + g.b * (hi if g.b > 0 else lo)


def enumerate_box(
    bound: int,
    sums: Sequence[int],
    keep: Callable[[np.ndarray], np.ndarray],
    n_jobs: int = 1,
    dtype=np.int64,
) -> np.ndarray:
    """All x in [-bound, bound]^5 with sum(x) in ``sums`` and ``keep(x)`` true.

    Work is split by the first coordinate; the result is sorted
    lexicographically so it does not depend on ``n_jobs``.
    """
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    g2, g3, g4 = (a.ravel() for a in np.meshgrid(r, r, r, indexing="ij"))
    rest = g2 + g3 + g4

    def chunk(x1: int) -> np.ndarray:
        parts = []
        for n in sums:
            x5 = n - x1 - rest
            ok = np.abs(x5) <= bound
            if not ok.any():
                continue
            block = np.stack(
                [np.full(int(ok.sum()), x1, dtype=np.int64), g2[ok], g3[ok], g4[ok], x5[ok]],
                axis=1,
            )
            if dtype is object:
                block = block.astype(object)
            sel = keep(block)
            if sel.any():
                parts.append(block[sel])
        if not parts:
            return np.empty((0, 5), dtype=dtype)
        return np.concatenate(parts)

    first = range(-bound, bound + 1)
    if n_jobs and n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            chunks = list(pool.map(chunk, first))
    else:
        chunks = [chunk(x1) for x1 in first]
    if not chunks:
        return np.empty((0, 5), dtype=dtype)
    out = np.concatenate(chunks)
    if len(out) == 0:
        return out
    order = np.lexsort(out.T[::-1].astype(np.int64))
    return out[order]
