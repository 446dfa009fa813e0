import math

import numpy as np
import pytest

from descm import (
    EvenPolynomialPotential,
    MeshStrategy,
    TraceMinimumNotFound,
    assemble_collocation_matrix,
    chebyshev_well,
    collocation_trace,
    lambert_w0,
    mesh_size_for,
    optimal_mesh_size,
    trace_minimized_mesh_size,
)
from conftest import random_potential

QUARTIC = EvenPolynomialPotential((1.0, 1.0))
TRIPLE_WELL = EvenPolynomialPotential((4.0, -6.0, 1.0))


def bisect_lambert(z, lo=0.0, hi=None, tol=1e-14):
    """Solve w e^w = z by bisection; independent of the Halley route."""
    if hi is None:
        hi = 1.0
        while hi * math.exp(hi) < z:
            hi *= 2.0
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if mid * math.exp(mid) < z:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


class TestLambertW:
    def test_zero(self):
        assert lambert_w0(0.0) == 0.0

    def test_at_e(self):
        assert lambert_w0(math.e) == pytest.approx(1.0, abs=1e-14)

    def test_at_one(self):
        assert lambert_w0(1.0) == pytest.approx(0.567143290409784, abs=1e-14)
        assert lambert_w0(1.0) == pytest.approx(bisect_lambert(1.0), abs=1e-13)

    def test_matches_bisection(self):
        for z in (0.01, 0.5, 2.0, 10.0, 1e4, 1e8):
            assert lambert_w0(z) == pytest.approx(bisect_lambert(z), rel=1e-12)

    def test_round_trip_residual(self):
        for z in np.logspace(-8, 8, 1000):
            w = lambert_w0(float(z))
            assert abs(w * math.exp(w) - z) <= 1e-13 * max(1.0, z)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            lambert_w0(-0.1)


class TestOptimalMeshSize:
    def test_quartic_at_seventeen(self):
        # m = 2, leading coefficient 1: W(2^2 pi^2 * 3 * 17) / (3 * 17)
        expected = bisect_lambert(204.0 * math.pi**2) / 51.0
        got = optimal_mesh_size(QUARTIC, 17)
        assert got == pytest.approx(expected, rel=1e-12)
        assert got == pytest.approx(0.11455750052658141, rel=1e-12)

    def test_defining_identity(self, rng):
        for _ in range(20):
            p = random_potential(rng)
            n = int(rng.integers(1, 200))
            m = p.degree_parameter
            h = optimal_mesh_size(p, n)
            w = h * (m + 1) * n
            arg = 2.0**m * math.pi**2 * (m + 1) * n / math.sqrt(p.leading_coefficient)
            assert w * math.exp(w) == pytest.approx(arg, rel=1e-12)

    def test_ignores_inner_coefficients_and_constant(self):
        a = EvenPolynomialPotential((1.0, -4.0, 2.0))
        b = EvenPolynomialPotential((9.0, 7.0, 2.0), constant=5.0)
        assert optimal_mesh_size(a, 11) == optimal_mesh_size(b, 11)

    def test_decreasing_in_truncation(self):
        hs = [optimal_mesh_size(QUARTIC, n) for n in range(1, 101)]
        assert all(a > b for a, b in zip(hs, hs[1:]))

    def test_decreasing_in_leading_coefficient(self):
        strong = EvenPolynomialPotential((1.0, 4.0))
        weak = EvenPolynomialPotential((1.0, 1.0))
        assert optimal_mesh_size(strong, 10) < optimal_mesh_size(weak, 10)

    def test_rejects_bad_truncation(self):
        with pytest.raises(ValueError):
            optimal_mesh_size(QUARTIC, 0)


class TestTrace:
    def test_single_point(self):
        # N = 0 keeps only the center: pi^2/(3h^2) - 1/2 for the quartic well
        for h in (0.2, 0.7, 1.0):
            expected = math.pi**2 / (3.0 * h * h) - 0.5
            assert collocation_trace(QUARTIC, 0, h) == pytest.approx(expected, rel=1e-14)

    def test_matches_assembled_trace(self, rng):
        for _ in range(20):
            p = random_potential(rng, with_constant=True)
            n = int(rng.integers(1, 16))
            h = float(rng.uniform(0.05, 1.0))
            closed = collocation_trace(p, n, h)
            assembled = assemble_collocation_matrix(p, n, h).trace()
            assert closed == pytest.approx(assembled, rel=1e-12)

    def test_triple_well_case(self):
        closed = collocation_trace(TRIPLE_WELL, 20, 0.2)
        assembled = assemble_collocation_matrix(TRIPLE_WELL, 20, 0.2).trace()
        assert closed == pytest.approx(assembled, rel=1e-9)

    def test_diverges_at_both_ends(self):
        mid = collocation_trace(QUARTIC, 5, 0.3)
        assert collocation_trace(QUARTIC, 5, 1e-4) > mid
        assert collocation_trace(QUARTIC, 5, 50.0) > mid

    def test_rejects_bad_mesh(self):
        with pytest.raises(ValueError):
            collocation_trace(QUARTIC, 3, 0.0)


class TestTraceMinimized:
    def test_below_closed_form_trace(self):
        h_hat = trace_minimized_mesh_size(QUARTIC, 10)
        h_opt = optimal_mesh_size(QUARTIC, 10)
        assert collocation_trace(QUARTIC, 10, h_hat) <= collocation_trace(QUARTIC, 10, h_opt)

    def test_locally_flat(self):
        strategy = MeshStrategy.trace_minimized()
        for n in (1, 5, 20):
            h_hat = trace_minimized_mesh_size(TRIPLE_WELL, n, strategy)
            at_min = collocation_trace(TRIPLE_WELL, n, h_hat)
            for factor in (1.0 - strategy.tolerance, 1.0 + strategy.tolerance):
                nearby = collocation_trace(TRIPLE_WELL, n, h_hat * factor)
                assert nearby >= at_min - 1e-8 * abs(at_min)

    @pytest.mark.parametrize(
        "potential,n",
        [(QUARTIC, 10), (TRIPLE_WELL, 20), (chebyshev_well(10, -1.0), 15)],
    )
    def test_matches_dense_scan(self, potential, n):
        lo, hi = MeshStrategy.trace_minimized().bracket
        grid = np.exp(np.linspace(math.log(lo), math.log(hi), 1000))
        traces = [collocation_trace(potential, n, float(h)) for h in grid]
        dense_best = grid[int(np.argmin(traces))]
        h_hat = trace_minimized_mesh_size(potential, n)
        cell = math.log(hi / lo) / 999
        assert abs(math.log(h_hat / dense_best)) <= 2 * cell

    def test_endpoints_strictly_larger(self):
        lo, hi = MeshStrategy.trace_minimized().bracket
        for potential in (QUARTIC, TRIPLE_WELL):
            for n in (1, 2, 5, 20):
                h_hat = trace_minimized_mesh_size(potential, n)
                at_min = collocation_trace(potential, n, h_hat)
                assert collocation_trace(potential, n, lo) > at_min
                assert collocation_trace(potential, n, hi) > at_min

    def test_deterministic(self):
        a = trace_minimized_mesh_size(TRIPLE_WELL, 20)
        b = trace_minimized_mesh_size(TRIPLE_WELL, 20)
        assert a == b

    def test_edge_minimum_raises_with_profile(self):
        strategy = MeshStrategy.trace_minimized(bracket=(3.0, 5.0))
        with pytest.raises(TraceMinimumNotFound) as info:
            trace_minimized_mesh_size(QUARTIC, 10, strategy)
        assert info.value.scan_mesh.shape == info.value.scan_trace.shape
        assert info.value.scan_mesh[0] == pytest.approx(3.0)

    def test_rejects_bad_truncation(self):
        with pytest.raises(ValueError):
            trace_minimized_mesh_size(QUARTIC, 0)


class TestMeshStrategy:
    def test_dispatch(self):
        assert mesh_size_for(QUARTIC, 12, MeshStrategy.optimal()) == optimal_mesh_size(QUARTIC, 12)
        assert mesh_size_for(QUARTIC, 12, MeshStrategy.fixed(0.25)) == 0.25
        assert mesh_size_for(QUARTIC, 12, MeshStrategy.trace_minimized()) == pytest.approx(
            trace_minimized_mesh_size(QUARTIC, 12), rel=1e-12
        )

    def test_validation(self):
        with pytest.raises(ValueError):
            MeshStrategy(kind="magic")
        with pytest.raises(ValueError):
            MeshStrategy.fixed(-1.0)
        with pytest.raises(ValueError):
            MeshStrategy.trace_minimized(bracket=(2.0, 1.0))
        with pytest.raises(ValueError):
            MeshStrategy.trace_minimized(tolerance=0.0)
        with pytest.raises(ValueError):
            MeshStrategy(kind="optimal", fixed_h=0.5)
