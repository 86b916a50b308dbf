import itertools
import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from penrose_selfsim.golden import TAU, GoldenNumber, conjugate
from penrose_selfsim.projections import (
    GridMatrix,
    LatticePoint,
    SymCirculantMatrix,
    apply,
    grid_projector_internal,
    grid_projector_phys,
    matmul,
    squared_norm_phys,
    projector_internal,
    projector_phys,
    projector_sym,
    to_grid_coords,
)
from penrose_selfsim.similarity import (
    InadmissibleFactor,
    InflationCenter,
    ScalingFactor,
    certify_center,
    enumerate_factors,
    find_centers,
    grid_scaling_matrix,
    inflate,
    is_admissible,
    lifted_scaling_matrix,
    verify_invariance,
)

from .conftest import lattice_coords

ORIGIN = LatticePoint((0,) * 5)
F23 = ScalingFactor(2, 3)
FM1 = ScalingFactor(-1, -1)
SQRT5 = math.sqrt(5)

sum_zero = lattice_coords.map(lambda x: (*x[:4], -sum(x[:4])))
small_factors = st.sampled_from(enumerate_factors((-30, 30), (-30, 30)))


def float_admissible(k, m):
    return (2 * m - k + 1) % 5 == 0 and abs(k + m * (1 - SQRT5) / 2) < 0.5


class TestAdmissibility:
    def test_examples(self):
        assert is_admissible(2, 3) and is_admissible(-1, -1)
        assert F23.lam == TAU ** 4 and F23.norm == 1
        assert FM1.lam == -(TAU ** 2)
        assert not is_admissible(1, 0) and not is_admissible(0, 1)
        assert not is_admissible(1, 1)  # tau^2 fails the congruence

    def test_brute_force_oracle(self):
        for k, m in itertools.product(range(-60, 61), repeat=2):
            assert is_admissible(k, m) == float_admissible(k, m), (k, m)

    def test_congruence_is_integrality(self):
        for k, m in itertools.product(range(-12, 13), repeat=2):
            s = lifted_scaling_matrix(ScalingFactor(k, m), check=False)
            assert s.is_integral() == ScalingFactor(k, m).congruence_ok

    def test_galois_swap(self):
        swapped = F23.galois_swapped()
        assert swapped == ScalingFactor(5, -3)
        assert swapped.lam == conjugate(F23.lam)
        assert swapped.congruence_ok and not swapped.admissible


class TestEnumeration:
    def test_box(self):
        found = enumerate_factors((-30, 30), (-30, 30))
        pairs = [(f.k, f.m) for f in found]
        assert pairs[:2] == [(-1, -1), (2, 3)]
        assert (6, 10) in pairs and ScalingFactor(6, 10).norm == -4
        assert sorted(pairs) == [(k, m) for k in range(-30, 31) for m in range(-30, 31) if float_admissible(k, m)]
        lams = [abs(float(f.lam)) for f in found]
        assert lams == sorted(lams)

    def test_ranges(self):
        assert enumerate_factors(range(-30, 31), range(-30, 31)) == enumerate_factors((-30, 30), (-30, 30))

    def test_empty(self):
        assert enumerate_factors((0, 0), (0, 0)) == []

    def test_str(self):
        assert str(FM1) == "(-1,-1)"


class TestMatrices:
    def test_examples(self):
        assert lifted_scaling_matrix(F23) == SymCirculantMatrix(*map(GoldenNumber, (3, 1, -2)))
        assert lifted_scaling_matrix(FM1) == SymCirculantMatrix(*map(GoldenNumber, (-1, 0, 1)))
        assert grid_scaling_matrix(F23) == GridMatrix(*map(GoldenNumber, (2, 5, 3)))

    def test_rejects_inadmissible(self):
        with pytest.raises(InadmissibleFactor):
            lifted_scaling_matrix(ScalingFactor(1, 1))
        with pytest.raises(InadmissibleFactor):
            grid_scaling_matrix(ScalingFactor(0, 1))

    @given(small_factors)
    def test_spectral_decomposition(self, f):
        expected = f.lam * projector_phys() + f.lam_conj * projector_internal() + projector_sym()
        s = lifted_scaling_matrix(f)
        assert s == expected and s.is_integral()

    @given(small_factors)
    def test_grid_form(self, f):
        g = grid_scaling_matrix(f)
        assert g == f.lam * grid_projector_phys() + f.lam_conj * grid_projector_internal()
        assert all(t.is_integer() for row in g.to_array() for t in row)
        assert g == GridMatrix(GoldenNumber(f.k), GoldenNumber(f.k + f.m), GoldenNumber(f.m))
        pp = grid_projector_internal()
        assert GridMatrix.from_array(matmul(pp.to_array(), g.to_array())) == f.lam_conj * pp

    @given(small_factors, sum_zero)
    def test_grid_matches_lift(self, f, x):
        x = LatticePoint(x)
        lifted = LatticePoint(lifted_scaling_matrix(f).apply_int(x.coords))
        assert grid_scaling_matrix(f) @ to_grid_coords(x) == to_grid_coords(lifted)

    @given(small_factors, small_factors)
    def test_closure(self, f, g):
        prod = f * g
        assert prod.admissible
        assert lifted_scaling_matrix(f) @ lifted_scaling_matrix(g) == lifted_scaling_matrix(prod)


class TestInflation:
    @given(small_factors, lattice_coords, sum_zero)
    def test_projection_identities(self, f, x, y):
        x, y = LatticePoint(x), LatticePoint(y)
        z = inflate(f, y, x)
        assert z.n == x.n
        pz, px, py = (apply(projector_phys(), p.as_golden()) for p in (z, x, y))
        assert pz == tuple(f.lam * (a - b) + b for a, b in zip(px, py))
        iz, ix, iy = (apply(projector_internal(), p.as_golden()) for p in (z, x, y))
        assert iz == tuple(f.lam_conj * (a - b) + b for a, b in zip(ix, iy))


class TestCenters:
    def test_origin_certified(self, v):
        c = certify_center(F23, ORIGIN, v)
        assert c.certified and c.delta_squared is not None

    def test_far_center_rejected(self, v):
        c = certify_center(F23, (3, -3, 0, 0, 0), v)
        assert not c.certified

    def test_rejects_nonzero_sum(self, v):
        with pytest.raises(ValueError):
            certify_center(F23, (1, 0, 0, 0, 0), v)

    @pytest.mark.parametrize("f", [F23, FM1])
    def test_search(self, v, f):
        small = find_centers(f, v, 100)
        large = find_centers(f, v, 400)
        assert 1 <= len(small) <= len(large)
        assert {c.y for c in small} <= {c.y for c in large}
        assert ORIGIN in {c.y for c in small}
        for c in small:
            assert c.y.n == 0 and certify_center(f, c.y, v).certified

    def test_search_is_complete(self, v):
        """Brute force over a small box agrees with the pruned search."""
        found = {c.y for c in find_centers(F23, v, 9)}
        brute = set()
        for x in itertools.product(range(-3, 4), repeat=4):
            y = LatticePoint((*x, -sum(x)))
            if squared_norm_phys(y) <= 9 and certify_center(F23, y, v).certified:
                brute.add(y)
        assert brute == found

    def test_thread_independence(self, v):
        assert find_centers(F23, v, 100, n_jobs=1) == find_centers(F23, v, 100, n_jobs=3)


class TestVerify:
    @pytest.mark.parametrize("f", [F23, FM1])
    def test_passes(self, v, f):
        report = verify_invariance(f, certify_center(f, ORIGIN, v), v, 25)
        assert report.passed and report.points_tested > 50

    @pytest.mark.parametrize("f, r2", [(F23, 4), (FM1, 16)])
    def test_lookup_mode_agrees(self, v, f, r2):
        # lookup regenerates out to lambda^2 * r2
        c = certify_center(f, ORIGIN, v)
        a = verify_invariance(f, c, v, r2, mode="direct")
        b = verify_invariance(f, c, v, r2, mode="lookup")
        assert a == b and a.passed

    def test_nonzero_centre(self, v):
        centres = [c for c in find_centers(FM1, v, 100) if c.y != ORIGIN]
        report = verify_invariance(FM1, centres[0], v, 16)
        assert report.passed

    def test_inadmissible(self, v):
        with pytest.raises(InadmissibleFactor):
            verify_invariance(ScalingFactor(0, 1), InflationCenter(ORIGIN, True), v, 4)

    def test_uncertified_centre(self, v):
        with pytest.raises(ValueError):
            verify_invariance(F23, certify_center(F23, (3, -3, 0, 0, 0), v), v, 4)

    def test_swapped_control_fails(self, v):
        bad = F23.galois_swapped()
        report = verify_invariance(bad, InflationCenter(ORIGIN, True), v, 16, check=False)
        assert not report.passed
        assert len(report.failures) > report.points_tested // 2

    def test_report_json(self, v):
        report = verify_invariance(F23, certify_center(F23, ORIGIN, v), v, 4)
        doc = json.loads(report.to_json())
        assert doc == {"k": 2, "m": 3, "center": [0, 0, 0, 0, 0], "points_tested": report.points_tested, "failures": []}
