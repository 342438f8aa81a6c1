import numpy as np
import pytest

from sweeping import (
    BarrierPair,
    EspSolution,
    SampledPath,
    constant_barriers,
    constant_path,
    esp_lipschitz_gap,
    esp_solve,
    esp_supnorm_gap,
    p_variation,
    projection_step,
    resample,
    verify_esp,
)
from helpers import random_esp_instance


def worked_example():
    times = np.array([0.0, 1.0, 2.0])
    y = SampledPath(times, [0.5, 1.8, -0.7])
    barriers = constant_barriers(times, [0.0], [1.0])
    return y, barriers


class TestEspSolve:
    def test_worked_example(self):
        y, barriers = worked_example()
        sol = esp_solve(y, barriers)
        assert sol.k.values[:, 0] == pytest.approx([0.0, -0.8, 0.7])
        assert sol.x.values[:, 0] == pytest.approx([0.5, 1.0, 0.0])
        assert verify_esp(sol, barriers).passed

    def test_interior_input_needs_no_regulator(self):
        rng = np.random.default_rng(0)
        times = np.concatenate([[0.0], np.cumsum(rng.uniform(0.1, 1, 19))])
        y = SampledPath(times, 0.5 + 0.3 * np.sin(np.arange(20.0)))
        barriers = constant_barriers(times, [0.0], [1.0])
        sol = esp_solve(y, barriers)
        assert np.all(sol.k.values == 0.0)
        assert np.array_equal(sol.x.values, y.values)

    def test_collapsed_barriers_force_x_to_witness(self):
        rng = np.random.default_rng(1)
        times = np.concatenate([[0.0], np.cumsum(rng.uniform(0.1, 1, 9))])
        h = SampledPath(times, np.cumsum(rng.normal(size=10)))
        y_vals = np.cumsum(rng.normal(size=10))
        y_vals[0] = h.values[0, 0]
        y = SampledPath(times, y_vals)
        barriers = BarrierPair(h, h)
        sol = esp_solve(y, barriers)
        assert sol.x.values == pytest.approx(h.values, rel=1e-14, abs=1e-14)
        assert sol.k.values == pytest.approx(h.values - y.values, rel=1e-14, abs=1e-14)

    def test_initial_condition_violation(self):
        times = np.array([0.0, 1.0])
        y = SampledPath(times, [2.0, 0.5])
        barriers = constant_barriers(times, [0.0], [1.0])
        with pytest.raises(ValueError, match="initial condition"):
            esp_solve(y, barriers)

    def test_barrier_crossing_rejected(self):
        times = np.array([0.0, 1.0])
        with pytest.raises(ValueError, match="barrier crossing"):
            BarrierPair(
                SampledPath(times, [0.0, 1.0]), SampledPath(times, [1.0, 0.5])
            )

    def test_witness_outside_rejected(self):
        times = np.array([0.0, 1.0])
        with pytest.raises(ValueError, match="witness"):
            BarrierPair(
                SampledPath(times, [0.0, 0.0]),
                SampledPath(times, [1.0, 1.0]),
                SampledPath(times, [0.5, 2.0]),
            )

    def test_idempotent_on_constrained_output(self):
        rng = np.random.default_rng(2)
        for _ in range(25):
            y, barriers = random_esp_instance(rng, d=2, paired=False)
            x = esp_solve(y, barriers).x
            again = esp_solve(x, barriers)
            assert np.all(again.k.values == 0.0)

    def test_midpoint_refinement_leaves_solution_unchanged(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            y, barriers = random_esp_instance(rng, d=2, paired=False)
            sol = esp_solve(y, barriers)
            times = y.times
            mids = (times[:-1] + times[1:]) / 2
            fine = np.sort(np.concatenate([times, mids]))
            sol_fine = esp_solve(resample(y, fine), barriers.resampled(fine))
            idx = np.searchsorted(fine, times)
            assert np.array_equal(sol_fine.x.values[idx], sol.x.values)
            assert np.array_equal(sol_fine.k.values[idx], sol.k.values)

    def test_deterministic(self):
        rng = np.random.default_rng(4)
        y, barriers = random_esp_instance(rng, paired=False)
        a = esp_solve(y, barriers)
        b = esp_solve(y, barriers)
        assert np.array_equal(a.x.values, b.x.values)


class TestProjectionStep:
    def test_clip_above(self):
        assert projection_step([0.5], [2.0], [0.0], [1.0]) == pytest.approx([1.0])

    def test_interior_fixed_point(self):
        assert projection_step([0.5], [0.0], [0.0], [1.0]) == pytest.approx([0.5])

    def test_clip_below(self):
        assert projection_step([0.5], [-3.0], [0.0], [1.0]) == pytest.approx([0.0])

    def test_crossing_rejected(self):
        with pytest.raises(ValueError, match="crossing"):
            projection_step([0.5], [0.0], [1.0], [0.0])


class TestVerifyEsp:
    def test_round_trip_random_instances(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            d = int(rng.integers(1, 4))
            y, barriers = random_esp_instance(rng, d=d, paired=False)
            sol = esp_solve(y, barriers)
            report = verify_esp(sol, barriers)
            assert report.passed, report.first_violation

    def test_corrupted_k_fails_at_index(self):
        rng = np.random.default_rng(6)
        y, barriers = random_esp_instance(rng, n_max=30, collapse_prob=0.0, paired=False)
        sol = esp_solve(y, barriers)
        gap_lo = sol.x.values[:, 0] - barriers.lower.values[:, 0]
        gap_hi = barriers.upper.values[:, 0] - sol.x.values[:, 0]
        interior = np.flatnonzero((gap_lo[1:] > 0.15) & (gap_hi[1:] > 0.15)) + 1
        assert interior.size > 0
        i = int(interior[0])
        k_bad = sol.k.values.copy()
        k_bad[i, 0] += 0.1
        bad = EspSolution(
            x=SampledPath(sol.times, sol.y.values + k_bad),
            k=SampledPath(sol.times, k_bad),
            y=sol.y,
        )
        report = verify_esp(bad, barriers)
        assert not report.passed
        assert report.first_violation[0] == i

    def test_zero_regulator_interior_passes(self):
        times = np.arange(5.0)
        y = SampledPath(times, 0.5 * np.ones(5))
        barriers = constant_barriers(times, [0.0], [1.0])
        sol = EspSolution(x=y, k=constant_path(times, [0.0]), y=y)
        assert verify_esp(sol, barriers).passed


class TestLipschitzGaps:
    def test_identical_inputs_give_zero(self):
        rng = np.random.default_rng(7)
        y, barriers = random_esp_instance(rng, paired=False)
        lhs_k, lhs_x, rhs = esp_lipschitz_gap(y, y, barriers, 1.5)
        assert (lhs_k, lhs_x, rhs) == (0.0, 0.0, 0.0)

    @pytest.mark.parametrize("p", [1.0, 1.3, 1.7, 2.0])
    def test_one_dimensional_contraction(self, p):
        rng = np.random.default_rng(8)
        for _ in range(200):
            y1, y2, barriers = random_esp_instance(rng, d=1)
            lhs_k, lhs_x, rhs = esp_lipschitz_gap(y1, y2, barriers, p)
            assert lhs_k <= rhs * (1 + 1e-9)
            assert lhs_x <= 2 * rhs * (1 + 1e-9)

    @pytest.mark.parametrize("d", [2, 3])
    def test_multidimensional_constants(self, d):
        rng = np.random.default_rng(9)
        for _ in range(100):
            y1, y2, barriers = random_esp_instance(rng, d=d)
            p = float(rng.choice([1.0, 1.3, 1.7, 2.0]))
            lhs_k, lhs_x, rhs = esp_lipschitz_gap(y1, y2, barriers, p)
            assert lhs_k <= d * rhs * (1 + 1e-9)
            assert lhs_x <= (d + 1) * rhs * (1 + 1e-9)

    def test_witness_norm_bounds(self):
        # bar V_p(x) <= (d+1) bar V_p(y) + d bar V_p(h)  and
        # bar V_p(k) <= d bar V_p(y) + d bar V_p(h)
        rng = np.random.default_rng(10)
        for _ in range(150):
            d = int(rng.integers(1, 4))
            y, barriers = random_esp_instance(rng, d=d, paired=False)
            p = float(rng.choice([1.0, 1.4, 1.8, 2.0]))
            sol = esp_solve(y, barriers)
            vy = p_variation(y, p).bar_norm
            vh = p_variation(barriers.witness, p).bar_norm
            vx = p_variation(sol.x, p).bar_norm
            vk = p_variation(sol.k, p).bar_norm
            assert vx <= ((d + 1) * vy + d * vh) * (1 + 1e-9)
            assert vk <= (d * vy + d * vh) * (1 + 1e-9)


class TestSupnormGap:
    def test_identical_gives_zero(self):
        rng = np.random.default_rng(11)
        y, barriers = random_esp_instance(rng, paired=False)
        sup_x, sup_k, (sup_y, sup_b) = esp_supnorm_gap(y, y, barriers, barriers)
        assert sup_x == sup_k == sup_y == sup_b == 0.0

    def test_shifted_barriers(self):
        rng = np.random.default_rng(12)
        y, barriers = random_esp_instance(rng, paired=False)
        c = 0.37
        shifted = BarrierPair(
            SampledPath(barriers.times, barriers.lower.values + c),
            SampledPath(barriers.times, barriers.upper.values + c),
        )
        y2_vals = y.values.copy()
        y2_vals[0] = np.clip(y2_vals[0], shifted.lower.values[0], shifted.upper.values[0])
        y2 = SampledPath(y.times, y2_vals)
        sup_x, _, (sup_y, sup_b) = esp_supnorm_gap(y, y2, barriers, shifted)
        assert sup_b == pytest.approx(c)
        assert sup_x <= 2 * sup_y + sup_b + 1e-12

    def test_random_perturbations_hold(self):
        rng = np.random.default_rng(13)
        for _ in range(300):
            d = int(rng.integers(1, 4))
            y1, y2, barriers = random_esp_instance(rng, d=d)
            # perturb the barriers too
            delta = rng.normal(0, 0.2, barriers.lower.values.shape)
            lower2 = SampledPath(barriers.times, barriers.lower.values + delta)
            upper2 = SampledPath(
                barriers.times,
                np.maximum(lower2.values, barriers.upper.values + delta),
            )
            y2_vals = y2.values.copy()
            y2_vals[0] = np.clip(y2_vals[0], lower2.values[0], upper2.values[0])
            barriers2 = BarrierPair(lower2, upper2)
            sup_x, sup_k, (sup_y, sup_b) = esp_supnorm_gap(
                y1, SampledPath(y2.times, y2_vals), barriers, barriers2
            )
            assert sup_x <= 2 * sup_y + sup_b + 1e-10
            assert sup_k <= sup_y + sup_b + 1e-10
