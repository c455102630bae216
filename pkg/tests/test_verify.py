import numpy as np
import pytest

from cotangent_kahler.bundle import energy_density, lift_blocks
from cotangent_kahler.connection import curvature_blocks
from cotangent_kahler.errors import DomainError, InputError
from cotangent_kahler.frame import PhasePoint
from cotangent_kahler.profile import EinsteinProfileParams, LiftProfile, Polynomial
from cotangent_kahler.spaceform import SpaceFormParams
from cotangent_kahler.verify import (
    SUITES,
    Context,
    SampleSpec,
    einstein_check,
    holomorphic_check,
    holomorphic_model,
    holomorphic_model_full,
    holomorphic_sectional,
    run_suites,
    sample_phase_points,
)

SMALL = SampleSpec(count=30, oracle_count=4)


def by_name(checks):
    return {c.name: c for c in checks}


class TestSampling:
    def test_tube_clipping(self):
        spec = SampleSpec(count=200)
        pts = sample_phase_points(SpaceFormParams(3, 1.0), EinsteinProfileParams(2.0, 1.0), spec)
        ts = [energy_density(p, SpaceFormParams(3, 1.0)) for p in pts]
        assert max(ts) < 2.0 - spec.guard

    def test_tube_in_covector_norm(self):
        base, params, spec = SpaceFormParams(3, 1.0), EinsteinProfileParams(2.0, 1.0), SampleSpec(count=200)
        for pt in sample_phase_points(base, params, spec):
            assert 2 * energy_density(pt, base) < params.A**2 / base.c - spec.guard

    def test_seed_repeatability(self):
        base, params = SpaceFormParams(3, -1.0), EinsteinProfileParams(1.0, -1.0)
        a = sample_phase_points(base, params, SampleSpec(seed=7, count=20))
        b = sample_phase_points(base, params, SampleSpec(seed=7, count=20))
        assert all(np.array_equal(x.z, y.z) for x, y in zip(a, b))
        c = sample_phase_points(base, params, SampleSpec(seed=8, count=20))
        assert not np.array_equal(a[0].z, c[0].z)

    def test_p_scaling(self):
        base, params = SpaceFormParams(4, -1.0), EinsteinProfileParams(1.0, -1.0)
        spec = SampleSpec(seed=3, count=50)
        pts = sample_phase_points(base, params, spec)
        # regenerate the target t values with the same stream
        rng = np.random.default_rng(3)
        for pt in pts:
            rng.normal(size=4), rng.uniform(), rng.normal(size=4)
            t = rng.uniform(*spec.t_range)
            assert energy_density(pt, base) == pytest.approx(t, rel=1e-12, abs=1e-15)

    def test_empty_range(self):
        with pytest.raises(DomainError):
            sample_phase_points(SpaceFormParams(3, 1.0), EinsteinProfileParams(0.5, 1.0), SampleSpec(t_range=(0.5, 1.0)))

    def test_bad_spec(self):
        with pytest.raises(InputError):
            SampleSpec(count=0)
        with pytest.raises(InputError):
            SampleSpec(t_range=(2.0, 1.0))

    def test_radius_outside_chart(self):
        with pytest.raises(DomainError):
            sample_phase_points(SpaceFormParams(3, -1.0), EinsteinProfileParams(1.0, -1.0), SampleSpec(q_radius=2.5))


class TestHolomorphicModel:
    def setup_method(self):
        self.rng = np.random.default_rng(5)
        base = SpaceFormParams(3, -1.0)
        prof = LiftProfile.einstein(1.0, -1.0)
        self.pt = PhasePoint([0.3, -0.4, 0.2], [0.7, 1.1, -0.5])
        ab = lift_blocks(self.pt, base, prof)
        self.metric, self.J = ab.metric(), ab.complex_structure()
        self.K = curvature_blocks(self.pt, base, prof).full()

    def test_repeated_argument_vanishes(self):
        X = self.rng.normal(size=6)
        assert np.max(np.abs(holomorphic_model(-2.0, self.metric, self.J, X, X, X))) < 1e-12

    def test_zero_curvature(self):
        X, Y, Z = self.rng.normal(size=(3, 6))
        assert np.all(holomorphic_model(0.0, self.metric, self.J, X, Y, Z) == 0)

    def test_full_array_matches_vector_form(self):
        e = np.eye(6)
        full = holomorphic_model_full(-2.0, self.metric, self.J)
        for a, b, c in [(0, 1, 2), (3, 0, 4), (5, 5, 1), (2, 4, 3)]:
            np.testing.assert_allclose(full[a, b, c], holomorphic_model(-2.0, self.metric, self.J, e[a], e[b], e[c]), atol=1e-14)

    def test_random_triples_match_curvature(self):
        for _ in range(10):
            X, Y, Z = self.rng.normal(size=(3, 6))
            direct = np.einsum("abcd,a,b,c->d", self.K, X, Y, Z)
            model = holomorphic_model(-2.0, self.metric, self.J, X, Y, Z)
            assert np.max(np.abs(direct - model)) < 1e-6 * max(1.0, np.max(np.abs(direct)))

    def test_sectional_value(self):
        for _ in range(10):
            X = self.rng.normal(size=6)
            assert holomorphic_sectional(self.K, self.metric, self.J, X) == pytest.approx(-2.0, rel=1e-10)


class TestSectionChecks:
    @pytest.mark.parametrize("c,A,lam", [(-1.0, 1.0, -4.0), (1.0, 2.0, 2.0)])
    def test_einstein(self, c, A, lam):
        checks = by_name(einstein_check(SpaceFormParams(3, c), EinsteinProfileParams(A, c), SMALL))
        assert all(ch.passed for ch in checks.values())
        assert checks["einstein.proportional"].max_residual < 1e-6
        assert ("einstein.tube" in checks) is (c > 0)

    def test_einstein_fails_off_solution(self):
        prof = LiftProfile.integrable(Polynomial((2.0, 1.0)), -1.0)
        checks = by_name(einstein_check(SpaceFormParams(3, -1.0), EinsteinProfileParams(1.0, -1.0), SMALL, prof))
        assert not checks["einstein.proportional"].passed
        assert checks["einstein.proportional"].max_residual > 1e-2

    @pytest.mark.parametrize("c,A,k", [(-1.0, 1.0, -2.0), (1.0, 2.0, 1.0)])
    def test_holomorphic(self, c, A, k):
        checks = by_name(holomorphic_check(SpaceFormParams(3, c), EinsteinProfileParams(A, c), SMALL))
        assert all(ch.passed for ch in checks.values())
        assert checks["holomorphic.sectional"].details["mean"] == pytest.approx(k, rel=1e-10)

    def test_scaling_law_measured(self):
        ks = []
        for A in (1.0, 2.0):
            checks = by_name(holomorphic_check(SpaceFormParams(3, -1.0), EinsteinProfileParams(A, -1.0), SMALL))
            ks.append(checks["holomorphic.sectional"].details["mean"])
        assert ks[1] == pytest.approx(ks[0] / 2, rel=1e-10)


class TestContext:
    def test_rejects_unknown_tolerance(self):
        with pytest.raises(InputError):
            Context(SpaceFormParams(3, -1.0), EinsteinProfileParams(1.0, -1.0), SMALL, {"nope": 1.0})

    def test_rejects_non_positive_tolerance(self):
        with pytest.raises(InputError):
            Context(SpaceFormParams(3, -1.0), EinsteinProfileParams(1.0, -1.0), SMALL, {"einstein.proportional": 0.0})

    def test_every_check_appears_once(self):
        ctx = Context(SpaceFormParams(3, -1.0), EinsteinProfileParams(1.0, -1.0), SMALL)
        checks = run_suites(ctx, SUITES)
        names = [c.name for c in checks]
        assert len(names) == len(set(names))
        assert {n.split(".")[0] for n in names} == set(SUITES)
        assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]
