import math

import numpy as np
import pytest

from tailbound import (
    Bernoulli,
    Beta,
    ConfigError,
    DomainError,
    PointMass,
    TruncatedExponential,
    Uniform,
    brute_root_scan,
    exact_mgf,
    lambert_w0,
    make_distribution,
    mc_tail,
    solve_poly_exp,
)

E = math.e


class TestMcTail:
    def test_point_mass_never_deviates(self):
        est = mc_tail(PointMass(0.5, lo=0, hi=1), n=4, t=0.1, trials=2000, seed=1)
        assert est.probability == 0.0
        assert est.stderr == 0.0

    def test_single_uniform_exact_tail(self):
        # P(X - 1/2 >= 1/4) = 1/4
        est = mc_tail(Uniform(0, 1), n=1, t=0.25, trials=400_000, seed=2)
        assert abs(est.probability - 0.25) <= 3 * est.stderr

    def test_two_uniforms_corner_triangle(self):
        # P(X1 + X2 - 1 >= 1/2) = area of the corner triangle = 1/8
        est = mc_tail(Uniform(0, 1), n=2, t=0.5, trials=400_000, seed=3)
        assert abs(est.probability - 0.125) <= 3 * est.stderr

    def test_deterministic_for_fixed_seed(self):
        a = mc_tail(Beta(2, 5), n=6, t=0.4, trials=50_000, seed=99)
        b = mc_tail(Beta(2, 5), n=6, t=0.4, trials=50_000, seed=99)
        assert a == b

    def test_seed_changes_estimate(self):
        a = mc_tail(Uniform(0, 1), n=5, t=0.5, trials=20_000, seed=1)
        b = mc_tail(Uniform(0, 1), n=5, t=0.5, trials=20_000, seed=2)
        assert a.probability != b.probability

    def test_stderr_formula(self):
        est = mc_tail(Uniform(0, 1), n=3, t=0.3, trials=10_000, seed=5)
        expected = math.sqrt(est.probability * (1 - est.probability) / 10_000)
        assert est.stderr == pytest.approx(expected, rel=1e-12)

    def test_rejects_tiny_trial_counts(self):
        with pytest.raises(DomainError):
            mc_tail(Uniform(0, 1), n=1, t=0.1, trials=10, seed=0)


class TestExactMgf:
    def test_one_at_zero(self):
        for dist in (Uniform(0, 1), Bernoulli(0.3), Beta(2, 2),
                     PointMass(0.4, lo=0, hi=1),
                     TruncatedExponential(1.0, 2.0)):
            assert exact_mgf(dist, 0.0) == pytest.approx(1.0, rel=1e-10)

    def test_uniform_at_one(self):
        assert exact_mgf(Uniform(0, 1), 1.0) == pytest.approx(E - 1, rel=1e-12)

    def test_uniform_series_near_zero_is_continuous(self):
        lo = exact_mgf(Uniform(0, 1), 0.9999e-6)
        hi = exact_mgf(Uniform(0, 1), 1.0001e-6)
        assert lo == pytest.approx(hi, rel=1e-9)

    def test_bernoulli_two_point_form(self):
        q, s = 0.3, 1.7
        assert exact_mgf(Bernoulli(q), s) == pytest.approx(
            q * math.exp(s) + 1 - q, rel=1e-14)

    def test_beta_against_quadrature_of_samples(self, rng):
        # independent check: empirical MGF of a large beta sample
        s = 2.0
        data = rng.beta(2.0, 5.0, 400_000)
        empirical = float(np.mean(np.exp(s * data)))
        sd = float(np.std(np.exp(s * data)))
        assert abs(exact_mgf(Beta(2, 5), s) - empirical) \
            <= 5 * sd / math.sqrt(len(data))

    def test_truncated_exponential_closed_form(self):
        d = TruncatedExponential(b=0.5, rate=2.0)
        s = 1.3
        assert exact_mgf(d, s) == pytest.approx(
            math.exp(0.5 * s) * 2.0 / (2.0 + s), rel=1e-13)


class TestBruteRootScan:
    def test_degree_zero(self):
        rs = brute_root_scan([E], 0)
        assert rs.roots[0] == pytest.approx(1.0, abs=1e-10)

    def test_degree_one_lambert_identity(self):
        rs = brute_root_scan([2.0, 1.0], 1)
        assert len(rs.roots) == 1
        assert rs.roots[0] == pytest.approx(2.0 - lambert_w0(math.exp(2.0)),
                                            abs=1e-10)

    def test_matches_production_solver(self, rng):
        for _ in range(500):
            q = int(rng.integers(0, 4))
            alpha = [float(rng.uniform(1.2, 60.0))]
            alpha += [float(v) for v in rng.normal(0.0, 2.0, q)]
            ours = solve_poly_exp(alpha, q)
            brute = brute_root_scan(alpha, q, resolution=100_000)
            assert len(ours.roots) == len(brute.roots)
            for a, b in zip(ours.roots, brute.roots):
                assert abs(a - b) <= 1e-8 * (1 + abs(a))

    def test_rejects_low_resolution(self):
        with pytest.raises(DomainError):
            brute_root_scan([2.0], 0, resolution=1000)


class TestDistributionFactory:
    def test_known_tags(self):
        assert make_distribution("uniform", lo=0, hi=2).tag == "uniform"
        assert make_distribution("bernoulli", q=0.2).tag == "bernoulli"
        assert make_distribution("beta", a=2, b=3).tag == "beta"
        assert make_distribution("point", c=0.5).tag == "point"
        assert make_distribution("truncexp", b=1, rate=2).tag == "truncexp"
        assert make_distribution("truncated-exponential", b=1, rate=2).tag \
            == "truncexp"

    def test_unknown_tag(self):
        with pytest.raises(ConfigError):
            make_distribution("cauchy")

    def test_missing_parameter(self):
        with pytest.raises(ConfigError):
            make_distribution("bernoulli")

    def test_unused_parameter(self):
        with pytest.raises(ConfigError):
            make_distribution("uniform", lo=0, hi=1, q=0.5)

    def test_moment_vectors_validate(self):
        for tag, params in [("uniform", {"lo": 0.0, "hi": 1.0}),
                            ("bernoulli", {"q": 0.25}),
                            ("beta", {"a": 2.0, "b": 2.0}),
                            ("truncexp", {"b": 1.0, "rate": 1.0})]:
            mv = make_distribution(tag, **params).moment_vector(4)
            assert mv.p == 4

    def test_truncexp_moments_match_sampling(self, rng):
        d = TruncatedExponential(b=1.0, rate=1.5)
        data = d.sample(rng, 400_000)
        for k in (1, 2, 3):
            sd = float(np.std(data ** k))
            assert abs(d.moment(k) - float(np.mean(data ** k))) \
                <= 5 * sd / math.sqrt(len(data))
        pos = np.maximum(data ** 3, 0.0)
        assert abs(d.positive_part_moment(3) - float(np.mean(pos))) \
            <= 5 * float(np.std(pos)) / math.sqrt(len(data))
