"""scikit-learn style wrappers.

``PenrosePattern`` treats rows of an integer ``(n_samples, 5)`` array as
lattice points: ``predict`` returns vertex-set membership and
``transform`` the rendered physical coordinates.  ``InflationMap``
applies one self-similarity to lattice points.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .generator import BoundaryHit, Patch, default_offset, generate_patch, generate_patch_strip
from .golden import as_golden
from .projections import LatticePoint
from .render import render_physical
from .similarity import (
    InadmissibleFactor,
    ScalingFactor,
    certify_center,
    lifted_scaling_matrix,
    verify_invariance,
)
from .windows import InternalPoint, Status, classify, coset_window, strip_status

__all__ = ["PenrosePattern", "InflationMap", "check_lattice_array"]


def check_lattice_array(X) -> np.ndarray:
    """Validate ``X`` as integer lattice points of shape (n_samples, 5)."""
    arr = check_array(X, dtype=None, ensure_min_samples=0)
    if arr.shape[1] != 5:
        raise ValueError(f"expected 5 coordinates per row, got {arr.shape[1]}")
    if arr.dtype.kind in "iu":
        return arr.astype(np.int64)
    as_int = np.rint(arr.astype(float)).astype(np.int64)
    if not np.array_equal(as_int, arr.astype(float)):
        raise ValueError("lattice coordinates must be integers")
    return as_int


def _offset(offset) -> InternalPoint:
    if offset is None:
        return default_offset()
    if isinstance(offset, InternalPoint):
        return offset
    return InternalPoint([as_golden(t) for t in offset])


class PenrosePattern(TransformerMixin, BaseEstimator):
    """Membership oracle for the Penrose vertex set.

    Parameters
    ----------
    offset : InternalPoint or sequence of 5 golden numbers, optional
        Window offset v in E'.  Defaults to pi'(e1)/4.
    method : {"model", "strip"}
        Decide membership by the four coset windows or by the strip.
    """

    def __init__(self, offset=None, method="model"):
        self.offset = offset
        self.method = method

    def fit(self, X=None, y=None):
        if self.method not in ("model", "strip"):
            raise ValueError(f"method must be 'model' or 'strip', got {self.method!r}")
        self.offset_ = _offset(self.offset)
        if X is not None:
            check_lattice_array(X)
        self.n_features_in_ = 5
        return self

    def _status(self, row) -> Status:
        x = LatticePoint(tuple(int(t) for t in row))
        if self.method == "strip":
            st = strip_status(x, self.offset_)
        elif x.n in (1, 2, 3, 4):
            st = classify(InternalPoint.of_lattice(x), coset_window(x.n, self.offset_))
        else:
            st = Status.OUTSIDE
        if st is Status.BOUNDARY:
            raise BoundaryHit(self.offset_, x)
        return st

    def predict(self, X) -> np.ndarray:
        check_is_fitted(self, "offset_")
        arr = check_lattice_array(X)
        return np.array([self._status(row) is Status.INSIDE for row in arr], dtype=bool)

    def transform(self, X) -> np.ndarray:
        """Physical coordinates with unit edge length."""
        check_is_fitted(self, "offset_")
        arr = check_lattice_array(X)
        return np.array([render_physical(row) for row in arr], dtype=float).reshape(-1, 2)

    def generate(self, radius_squared, n_jobs: int = 1) -> Patch:
        check_is_fitted(self, "offset_")
        gen = generate_patch_strip if self.method == "strip" else generate_patch
        return gen(self.offset_, as_golden(radius_squared), n_jobs=n_jobs)


class InflationMap(TransformerMixin, BaseEstimator):
    """The self-similarity with factor k + m*tau about the lattice point ``center``.

    ``fit`` checks admissibility and certifies the centre against
    ``offset``; ``transform`` maps integer 5-tuples to their images.
    """

    def __init__(self, k=2, m=3, center=(0, 0, 0, 0, 0), offset=None):
        self.k = k
        self.m = m
        self.center = center
        self.offset = offset

    def fit(self, X=None, y=None):
        factor = ScalingFactor(int(self.k), int(self.m))
        if not factor.admissible:
            raise InadmissibleFactor(f"{factor} is not admissible")
        self.factor_ = factor
        self.offset_ = _offset(self.offset)
        self.center_ = certify_center(factor, LatticePoint(tuple(self.center)), self.offset_)
        if not self.center_.certified:
            raise ValueError(f"centre {tuple(self.center)} fails the contraction certificate")
        self.matrix_ = lifted_scaling_matrix(factor)
        self.n_features_in_ = 5
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "matrix_")
        arr = check_lattice_array(X)
        y = self.center_.y
        out = [
            (LatticePoint(self.matrix_.apply_int((LatticePoint(tuple(map(int, row))) - y).coords)) + y).coords
            for row in arr
        ]
        return np.array(out, dtype=np.int64).reshape(-1, 5)

    def verify(self, inner_radius_squared, mode: str = "direct"):
        check_is_fitted(self, "matrix_")
        return verify_invariance(self.factor_, self.center_, self.offset_, inner_radius_squared, mode=mode)
