import numpy as np
import pytest

from sweeping import (
    FbmConfig,
    MatrixPath,
    SampledPath,
    SigmaWeight,
    bv_driver,
    fbm_covariance,
    fbm_sample,
    moment_check,
    p_variation,
    uniform_grid,
    weighted_fbm,
    write_path_csv,
    young_integral,
)
from sweeping.drivers import _cholesky_with_jitter


class TestCovariance:
    def test_equal_times(self):
        for h in (0.5, 0.6, 0.75, 0.9):
            assert fbm_covariance(1.0, 1.0, h) == pytest.approx(1.0)

    def test_standard_bm_reduces_to_min(self):
        assert fbm_covariance(1.0, 2.0, 0.5) == pytest.approx(1.0)
        assert fbm_covariance(3.0, 2.0, 0.5) == pytest.approx(2.0)

    def test_zero_time(self):
        assert fbm_covariance(0.0, 5.0, 0.8) == 0.0

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            fbm_covariance(-1.0, 1.0, 0.7)


class TestFbmConfig:
    def test_hurst_window(self):
        grid = uniform_grid(8)
        with pytest.raises(ValueError, match="hurst"):
            FbmConfig(hurst=0.4, dim=1, grid=grid, seed=0)
        with pytest.raises(ValueError, match="hurst"):
            FbmConfig(hurst=1.0, dim=1, grid=grid, seed=0)
        FbmConfig(hurst=0.5, dim=1, grid=grid, seed=0)  # degenerate BM case allowed

    def test_grid_must_start_at_zero(self):
        with pytest.raises(ValueError, match="grid"):
            FbmConfig(hurst=0.7, dim=1, grid=np.array([1.0, 2.0]), seed=0)

    def test_cholesky_cap(self):
        with pytest.raises(ValueError, match="cap"):
            FbmConfig(hurst=0.7, dim=1, grid=uniform_grid(5000), seed=0)


class TestFbmSample:
    def test_paths_start_at_zero(self):
        cfg = FbmConfig(hurst=0.75, dim=2, grid=uniform_grid(16), seed=3, n_paths=5)
        for path in fbm_sample(cfg):
            assert np.all(path.values[0] == 0.0)

    def test_deterministic_bitwise(self):
        cfg = FbmConfig(hurst=0.8, dim=2, grid=uniform_grid(32), seed=123, n_paths=4)
        a = fbm_sample(cfg)
        b = fbm_sample(cfg)
        for pa, pb in zip(a, b):
            assert np.array_equal(pa.values, pb.values)

    def test_empirical_covariance(self):
        cfg = FbmConfig(hurst=0.75, dim=1, grid=uniform_grid(16), seed=7, n_paths=4000)
        paths = fbm_sample(cfg)
        samples = np.stack([p.values[:, 0] for p in paths])
        rng = np.random.default_rng(0)
        for _ in range(6):
            i, j = rng.integers(1, 17, size=2)
            prods = samples[:, i] * samples[:, j]
            est = prods.mean()
            se = prods.std(ddof=1) / np.sqrt(len(prods))
            want = fbm_covariance(cfg.grid[i], cfg.grid[j], 0.75)
            assert abs(est - want) <= 4 * se

    def test_h_half_variance_is_t(self):
        cfg = FbmConfig(hurst=0.5, dim=1, grid=uniform_grid(16), seed=11, n_paths=4000)
        samples = np.stack([p.values[:, 0] for p in fbm_sample(cfg)])
        for i in (4, 8, 16):
            sq = samples[:, i] ** 2
            est, se = sq.mean(), sq.std(ddof=1) / np.sqrt(len(sq))
            assert abs(est - cfg.grid[i]) <= 4 * se

    def test_components_independent(self):
        cfg = FbmConfig(hurst=0.7, dim=2, grid=uniform_grid(8), seed=5, n_paths=4000)
        samples = np.stack([p.values for p in fbm_sample(cfg)])  # (N, n, 2)
        prods = samples[:, 5, 0] * samples[:, 5, 1]
        est, se = prods.mean(), prods.std(ddof=1) / np.sqrt(len(prods))
        assert abs(est) <= 4 * se

    def test_grid_pvariation_regimes(self):
        # p > 1/H: grid p-variation stabilises under dyadic refinement of the
        # same path; p < 1/H: it keeps growing (power sums scale like
        # n**(1 - p*H) on uniform grids)
        hurst = 0.6
        cfg = FbmConfig(hurst=hurst, dim=1, grid=uniform_grid(512), seed=21, n_paths=20)
        paths = fbm_sample(cfg)
        levels = [32, 64, 128, 256, 512]

        def median_vp(p):
            out = []
            for n in levels:
                step = 512 // n
                vals = [
                    p_variation(
                        SampledPath(b.times[::step], b.values[::step]), p
                    ).value
                    for b in paths
                ]
                out.append(float(np.median(vals)))
            return out

        bounded = median_vp(2.0)  # 2 > 1/0.6
        growing = median_vp(1.05)  # 1.05 < 1/0.6
        assert bounded[-1] <= bounded[-2] * 1.25
        assert growing[-1] > growing[0] * 1.8

    def test_jitter_recovers_near_singular(self):
        mat = np.array([[1.0, 1.0], [1.0, 1.0]])  # PSD, singular
        chol = _cholesky_with_jitter(mat)
        assert np.allclose(chol @ chol.T, mat, atol=1e-5)

    def test_jitter_gives_up_on_indefinite(self):
        with pytest.raises(RuntimeError, match="positive"):
            _cholesky_with_jitter(np.array([[1.0, 0.0], [0.0, -1.0]]))


class TestSigmaWeight:
    def test_constant_sigma_closed_form(self):
        grid = uniform_grid(100, 2.0)
        for c, h in ((1.0, 0.75), (-2.5, 0.6), (0.3, 0.9)):
            w = SigmaWeight.constant([c], grid, h)
            assert w.lh_norm[0] == pytest.approx(abs(c) * 2.0**h, rel=1e-12)

    def test_partial_interval(self):
        grid = uniform_grid(10, 1.0)
        w = SigmaWeight.constant([2.0], grid, 0.8)
        got = w.lh_norm_between(0.2, 0.7)
        assert got[0] == pytest.approx(2.0 * 0.5**0.8, rel=1e-12)

    def test_non_grid_endpoint_rejected(self):
        w = SigmaWeight.constant([1.0], uniform_grid(10), 0.8)
        with pytest.raises(ValueError, match="grid points"):
            w.lh_norm_between(0.0, 0.55)


class TestWeightedFbm:
    def test_unit_weight_reproduces_path(self):
        cfg = FbmConfig(hurst=0.75, dim=1, grid=uniform_grid(32), seed=9)
        b = fbm_sample(cfg)[0]
        w = SigmaWeight.constant([1.0], b.times, 0.75)
        z = weighted_fbm(b, w)
        assert np.allclose(z.values, b.values, rtol=1e-12, atol=1e-14)

    def test_zero_weight(self):
        cfg = FbmConfig(hurst=0.75, dim=1, grid=uniform_grid(16), seed=10)
        b = fbm_sample(cfg)[0]
        z = weighted_fbm(b, SigmaWeight.constant([0.0], b.times, 0.75))
        assert np.all(z.values == 0.0)

    def test_matches_young_integral_for_step_sigma(self):
        cfg = FbmConfig(hurst=0.8, dim=2, grid=uniform_grid(20), seed=12)
        b = fbm_sample(cfg)[0]
        rng = np.random.default_rng(1)
        sig = rng.uniform(-1, 1, (21, 2))
        w = SigmaWeight(b.times, sig, 0.8)
        z = weighted_fbm(b, w)
        diag = np.zeros((21, 2, 2))
        diag[:, 0, 0] = sig[:, 0]
        diag[:, 1, 1] = sig[:, 1]
        via_young = young_integral(MatrixPath(b.times, diag), b)
        assert np.array_equal(z.values, via_young.values)

    def test_grid_mismatch(self):
        cfg = FbmConfig(hurst=0.8, dim=1, grid=uniform_grid(8), seed=1)
        b = fbm_sample(cfg)[0]
        w = SigmaWeight.constant([1.0], uniform_grid(4), 0.8)
        with pytest.raises(ValueError, match="grid"):
            weighted_fbm(b, w)


class TestMomentCheck:
    def test_unit_sigma_second_moment(self):
        hurst = 0.75
        cfg = FbmConfig(hurst=hurst, dim=1, grid=uniform_grid(16), seed=14, n_paths=4000)
        paths = fbm_sample(cfg)
        w = SigmaWeight.constant([1.0], cfg.grid, hurst)
        t1, t2 = 0.25, 0.75
        emp, shape = moment_check(paths, w, 2.0, t1, t2)
        assert shape == pytest.approx((t2 - t1) ** (2 * hurst), rel=1e-12)
        sq = np.array(
            [(p.eval(t2)[0] - p.eval(t1)[0]) ** 2 for p in paths]
        )
        se = sq.std(ddof=1) / np.sqrt(len(sq))
        assert abs(emp - shape) <= 4 * se

    def test_ratio_bounded_under_halving(self):
        hurst = 0.8
        cfg = FbmConfig(hurst=hurst, dim=1, grid=uniform_grid(256), seed=15, n_paths=500)
        paths = fbm_sample(cfg)
        w = SigmaWeight.constant([1.0], cfg.grid, hurst)
        ratios = []
        t1, t2 = 0.0, 1.0
        for _ in range(5):
            emp, shape = moment_check(paths, w, 2.0, t1, t2)
            ratios.append(emp / shape)
            t2 = (t1 + t2) / 2
        assert max(ratios) <= 3.0  # exact constant is 1 for r = 2, sigma = 1

    def test_step_sigma_against_covariance_oracle(self):
        hurst = 0.7
        n = 16
        grid = uniform_grid(n, 1.0)
        cfg = FbmConfig(hurst=hurst, dim=1, grid=grid, seed=16, n_paths=6000)
        paths = fbm_sample(cfg)
        rng = np.random.default_rng(2)
        sig = rng.uniform(0.5, 1.5, (n + 1, 1))
        w = SigmaWeight(grid, sig, hurst)
        t1, t2 = 0.25, 0.875
        emp, _ = moment_check(paths, w, 2.0, t1, t2)
        # second moment of sum sigma_{i-1} dB_i via increment covariances
        i1, i2 = 4, 14
        want = 0.0
        for i in range(i1, i2):
            for j in range(i1, i2):
                cov = (
                    fbm_covariance(grid[i + 1], grid[j + 1], hurst)
                    - fbm_covariance(grid[i + 1], grid[j], hurst)
                    - fbm_covariance(grid[i], grid[j + 1], hurst)
                    + fbm_covariance(grid[i], grid[j], hurst)
                )
                want += sig[i, 0] * sig[j, 0] * cov
        samples = []
        for p in paths:
            z = weighted_fbm(p, w)
            samples.append((z.eval(t2)[0] - z.eval(t1)[0]) ** 2)
        se = np.std(samples, ddof=1) / np.sqrt(len(samples))
        assert abs(emp - want) <= 4 * se


class TestBvDriver:
    def test_identity(self):
        path, v1 = bv_driver("identity", grid=uniform_grid(10))
        assert v1 == pytest.approx(1.0, rel=1e-14)
        assert path.values[:, 0] == pytest.approx(path.times)

    def test_constant_jumps(self):
        _, v1 = bv_driver("jumps", grid=[0.0, 1.0, 2.0], values=[1.0, 1.0, 1.0])
        assert v1 == 0.0

    def test_jump_sequence(self):
        _, v1 = bv_driver("jumps", grid=[0.0, 1.0, 2.0], values=[0.0, 1.0, -1.0])
        assert v1 == pytest.approx(3.0)

    def test_csv(self, tmp_path):
        src = SampledPath([0.0, 1.0, 2.0], [0.0, 2.0, -1.0])
        f = tmp_path / "a.csv"
        write_path_csv(src, f)
        path, v1 = bv_driver("csv", file=f)
        assert np.array_equal(path.values, src.values)
        assert v1 == pytest.approx(5.0)

    def test_unknown_kind(self):
        with pytest.raises(ValueError, match="unknown"):
            bv_driver("spline", grid=[0.0, 1.0])
