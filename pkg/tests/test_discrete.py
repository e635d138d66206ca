import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thermint import (
    DiscretePath,
    DiscreteTriple,
    LagrangianThermoSystem,
    NewtonConfig,
    TemperatureDegenerateError,
    boundary_forms,
    ddel_map,
    del_residual,
    discrete_action,
    discrete_flow,
    discrete_momenta,
    entropy_update,
    get_system,
    integrate,
    legendre_minus,
    legendre_plus,
    midpoint_discretize,
    momentum_map,
    noether_condition,
    omega_matrices,
    pullback_check,
    semiregularity_matrix,
)
from thermint.discrete import raw_action

H = 0.01
GAMMA = 0.1
OSC = get_system("oscillator")
GAS = get_system("ideal-gas")
VDW = get_system("van-der-waals")
TP = get_system("two-pistons")
D_OSC = midpoint_discretize(OSC.lagrangian, H)
D_GAS = midpoint_discretize(GAS.lagrangian, H)
D_VDW = midpoint_discretize(VDW.lagrangian, H)
D_TP = midpoint_discretize(TP.lagrangian, H)


def free_particle(gamma=0.1):
    return LagrangianThermoSystem(
        n=1,
        L=lambda q, v, S: 0.5 * float(v @ v) - gamma * S,
        dLdq=lambda q, v, S: np.zeros(1),
        dLdv=lambda q, v, S: v,
        dLdS=lambda q, v, S: -gamma,
        d2Ldq2=lambda q, v, S: np.zeros((1, 1)),
        d2Ldv2=lambda q, v, S: np.eye(1),
        d2LdqdS=lambda q, v, S: np.zeros(1),
        d2LdvdS=lambda q, v, S: np.zeros(1),
        d2LdS2=lambda q, v, S: 0.0,
        dFfrdq=lambda q, v, S: np.zeros((1, 1)),
        dFfrdv=lambda q, v, S: np.zeros((1, 1)),
        dFfrdS=lambda q, v, S: np.zeros(1),
        name="free",
    )


D_FREE = midpoint_discretize(free_particle(), H)


class TestMidpointDiscretize:
    def test_oscillator_ld_formula(self):
        # Ld = (q1-q0)^2/(2h^2) - (q1+q0)^2/8 - gamma S0
        rng = np.random.default_rng(0)
        for _ in range(20):
            q0, q1, S0 = rng.normal(), rng.normal(), rng.normal()
            expected = (q1 - q0) ** 2 / (2 * H * H) - (q1 + q0) ** 2 / 8 - GAMMA * S0
            assert D_OSC.Ld(np.array([q0]), np.array([q1]), S0) == pytest.approx(
                expected, rel=1e-13)

    def test_ideal_gas_ld_formula(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            q0, q1 = rng.uniform(0.5, 2.0, size=2)
            S0 = rng.uniform(0, 3)
            expected = (q1 - q0) ** 2 / (2 * H * H) - np.exp(S0) * ((q1 + q0) / 2) ** (-2 / 3)
            assert D_GAS.Ld(np.array([q0]), np.array([q1]), S0) == pytest.approx(
                expected, rel=1e-13)

    def test_zero_velocity_consistency(self):
        for entry, d in ((OSC, D_OSC), (GAS, D_GAS), (VDW, D_VDW), (TP, D_TP)):
            q = np.full(entry.n, 1.1)
            S = 0.7
            assert d.Ld(q, q, S) == pytest.approx(
                entry.lagrangian.L(q, np.zeros(entry.n), S), rel=1e-13)

    def test_rejects_nonpositive_step(self):
        with pytest.raises(ValueError):
            midpoint_discretize(OSC.lagrangian, 0.0)

    def test_second_partials_match_finite_differences(self):
        # analytic chain-rule assembly against the FD fallback
        from thermint.discrete import _fd_dS, _fd_jac

        t = (np.array([0.9]), np.array([1.05]), 0.8)
        for d in (D_OSC, D_GAS, D_VDW):
            np.testing.assert_allclose(d.D2D1Ld(*t), _fd_jac(d.D1Ld, *t, slot=1),
                                       rtol=1e-5, atol=1e-4)
            np.testing.assert_allclose(d.D1D2Ld(*t), _fd_jac(d.D2Ld, *t, slot=0),
                                       rtol=1e-5, atol=1e-4)
            np.testing.assert_allclose(d.DSD1Ld(*t), _fd_dS(d.D1Ld, *t),
                                       rtol=1e-5, atol=1e-6)
            np.testing.assert_allclose(d.DSD2Ld(*t), _fd_dS(d.D2Ld, *t),
                                       rtol=1e-5, atol=1e-6)


class TestEntropyUpdate:
    def test_stationary_point_keeps_entropy(self):
        for entry, d in ((OSC, D_OSC), (GAS, D_GAS), (VDW, D_VDW), (TP, D_TP)):
            q = np.full(entry.n, 1.2)
            assert entropy_update(d, DiscreteTriple(q, q, 0.9)) == 0.9

    def test_oscillator_value(self):
        # S1 = S0 + (q1 - q0)^2 / h, independent of gamma
        s1 = entropy_update(D_OSC, DiscreteTriple([0.0], [0.01], 0.0))
        assert s1 == pytest.approx(0.01, rel=1e-14)

    def test_ideal_gas_closed_form(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            q0, q1 = rng.uniform(0.5, 2.0, size=2)
            S0 = rng.uniform(0, 3)
            expected = S0 + (GAMMA / H) * (q1 - q0) ** 2 * ((q1 + q0) / 2) ** (2 / 3) * np.exp(-S0)
            got = entropy_update(D_GAS, DiscreteTriple([q0], [q1], S0))
            assert got == pytest.approx(expected, rel=1e-12)

    def test_van_der_waals_closed_form(self):
        bh = 0.1
        rng = np.random.default_rng(3)
        for _ in range(20):
            q0, q1 = rng.uniform(0.5, 2.0, size=2)
            S0 = rng.uniform(0, 3)
            expected = S0 + (GAMMA / H) * np.exp(-S0) * (q1 - q0) ** 2 * (
                (q1 + q0 - 2 * bh) / 2) ** (2 / 3)
            got = entropy_update(D_VDW, DiscreteTriple([q0], [q1], S0))
            assert got == pytest.approx(expected, rel=1e-12)

    def test_degenerate_temperature_rejected(self):
        bad = LagrangianThermoSystem(
            n=1, L=lambda q, v, S: 0.5 * float(v @ v),
            dLdq=lambda q, v, S: np.zeros(1), dLdv=lambda q, v, S: v,
            dLdS=lambda q, v, S: 0.0, Ffr=lambda q, v, S: -v)
        d = midpoint_discretize(bad, H)
        with pytest.raises(TemperatureDegenerateError):
            entropy_update(d, DiscreteTriple([0.0], [0.1], 0.0))


@settings(max_examples=80, deadline=None)
@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-1, 1))
def test_entropy_dissipativity_oscillator(q0, q1, S0):
    """Rayleigh friction at positive temperature never destroys entropy."""
    assert entropy_update(D_OSC, DiscreteTriple([q0], [q1], S0)) >= S0


@settings(max_examples=80, deadline=None)
@given(st.floats(0.3, 3.0), st.floats(0.3, 3.0), st.floats(0, 4))
def test_entropy_dissipativity_gases(q0, q1, S0):
    for d in (D_GAS, D_VDW):
        assert entropy_update(d, DiscreteTriple([q0], [q1], S0)) >= S0


class TestDelResidual:
    def test_frictionless_recurrence_root(self):
        # gamma = 0: residual vanishes iff q2 = 2(4-h^2)/(4+h^2) q1 - q0.
        # The rounded q2 is a few ulps off the true root, which the h^-2
        # residual scale amplifies; measure the defect in q units.
        sys = LagrangianThermoSystem(
            n=1,
            L=lambda q, v, S: 0.5 * float(v @ v) - 0.5 * float(q @ q) - 0.1 * S,
            dLdq=lambda q, v, S: -q, dLdv=lambda q, v, S: v,
            dLdS=lambda q, v, S: -0.1)
        d = midpoint_discretize(sys, H)
        q0, q1 = 0.3, 0.35
        q2 = 2 * (4 - H * H) / (4 + H * H) * q1 - q0
        r = del_residual(d, [q0], [q1], 0.0, [q2], 0.0)
        assert np.max(np.abs(r)) * H * H <= 5e-15

    def test_damped_closed_form_is_root(self):
        a, b = OSC.update_coefficients(H)
        q0, q1 = 0.4, 0.42
        S0 = 0.1
        S1 = entropy_update(D_OSC, DiscreteTriple([q0], [q1], S0))
        q2 = a * q1 - b * q0
        r = del_residual(D_OSC, [q0], [q1], S0, [q2], S1)
        assert np.max(np.abs(r)) * H * H <= 5e-15

    def test_closed_form_residual_at_path_scale(self):
        # at trajectory amplitudes the raw residual itself is tiny
        a, b = OSC.update_coefficients(H)
        q0, q1 = 0.0, 0.0099
        S1 = entropy_update(D_OSC, DiscreteTriple([q0], [q1], 0.0))
        r = del_residual(D_OSC, [q0], [q1], 0.0, [a * q1 - b * q0], S1)
        assert np.max(np.abs(r)) <= 1e-13

    def test_newton_root_has_small_residual(self):
        t = DiscreteTriple([1.0], [1.001], 10.0)
        out = discrete_flow(D_GAS, t, NewtonConfig(tol=1e-10))
        r = del_residual(D_GAS, t.q0, t.q1, t.S0, out.q1, out.S0)
        assert np.max(np.abs(r)) <= 1e-10

    def test_ddel_map_is_alias(self):
        rng = np.random.default_rng(4)
        for _ in range(10):
            qp, qc, qn = rng.normal(size=3)
            Sp, Sc = rng.normal(size=2)
            np.testing.assert_array_equal(
                ddel_map(D_OSC, [qp], [qc], [qn], Sp, Sc),
                del_residual(D_OSC, [qp], [qc], Sp, [qn], Sc))


class TestLegendreTransforms:
    def test_free_particle_momenta(self):
        d = D_FREE
        t = DiscreteTriple([0.2], [0.27], 0.0)
        _, cov_m, _ = legendre_minus(d, t)
        _, cov_p, _ = legendre_plus(d, t)
        np.testing.assert_allclose(cov_m, [(0.27 - 0.2) / H ** 2], rtol=1e-12)
        np.testing.assert_allclose(cov_p, [(0.27 - 0.2) / H ** 2], rtol=1e-12)
        pm, pp = discrete_momenta(d, t)
        np.testing.assert_allclose(pm, [(0.27 - 0.2) / H], rtol=1e-12)
        np.testing.assert_allclose(pp, [(0.27 - 0.2) / H], rtol=1e-12)

    def test_oscillator_momentum_example(self):
        # gamma = 0, q0 = 0, q1 = h: p_plus = 1 - h^2/4
        sys = LagrangianThermoSystem(
            n=1,
            L=lambda q, v, S: 0.5 * float(v @ v) - 0.5 * float(q @ q) - 0.1 * S,
            dLdq=lambda q, v, S: -q, dLdv=lambda q, v, S: v,
            dLdS=lambda q, v, S: -0.1)
        d = midpoint_discretize(sys, H)
        _, pp = discrete_momenta(d, DiscreteTriple([0.0], [H], 0.0))[0:2]
        np.testing.assert_allclose(pp, [1 - H * H / 4], rtol=1e-12)

    def test_stationary_potential_terms(self):
        # frictionless oscillator at q0 = q1 = q: covectors are +/- (q0+q1)/4
        sys = LagrangianThermoSystem(
            n=1,
            L=lambda q, v, S: 0.5 * float(v @ v) - 0.5 * float(q @ q) - 0.1 * S,
            dLdq=lambda q, v, S: -q, dLdv=lambda q, v, S: v,
            dLdS=lambda q, v, S: -0.1)
        d = midpoint_discretize(sys, H)
        t = DiscreteTriple([0.8], [0.8], 0.0)
        _, cov_m, _ = legendre_minus(d, t)
        _, cov_p, _ = legendre_plus(d, t)
        np.testing.assert_allclose(cov_m, [0.4], atol=1e-14)
        np.testing.assert_allclose(cov_p, [-0.4], atol=1e-14)
        pm, pp = discrete_momenta(d, t)
        np.testing.assert_allclose(pm, -pp, atol=1e-15)

    def test_momentum_matching_along_path(self):
        path = integrate(D_OSC, [0.0], [0.0099], 0.0, 500, NewtonConfig(tol=1e-12))
        worst = 0.0
        for k in range(1, 500):
            q_p, cov_p, S_p = legendre_plus(D_OSC, path.triple(k))
            q_m, cov_m, S_m = legendre_minus(D_OSC, path.triple(k + 1))
            np.testing.assert_array_equal(q_p, q_m)
            worst = max(worst, float(np.max(np.abs(cov_p - cov_m))), abs(S_p - S_m))
        assert worst <= 1e-10


class TestDiscreteFlow:
    def test_matches_oscillator_closed_form(self):
        # wide triples have dq ~ O(1): the residual floor eps*dq/h^2 sits
        # above 1e-12, so the flow runs at an attainable tolerance
        a, b = OSC.update_coefficients(H)
        cfg = NewtonConfig(tol=1e-10)
        rng = np.random.default_rng(5)
        for _ in range(25):
            q0, q1 = rng.uniform(-1, 1, size=2)
            S0 = rng.uniform(0, 1)
            out = discrete_flow(D_OSC, DiscreteTriple([q0], [q1], S0), cfg)
            assert out.q1[0] == pytest.approx(a * q1 - b * q0, abs=1e-12)
            np.testing.assert_array_equal(out.q0, [q1])

    def test_equilibrium_fixed_point(self):
        # q = 0 is a critical point of the oscillator potential
        out = discrete_flow(D_OSC, DiscreteTriple([0.0], [0.0], 0.3))
        np.testing.assert_allclose(out.q1, [0.0], atol=1e-15)
        assert out.S0 == 0.3

    def test_ideal_gas_against_bisection(self):
        from scipy.optimize import bisect

        t = DiscreteTriple([1.0], [1.0], 10.0)
        S1 = entropy_update(D_GAS, t)

        def resid(x):
            return del_residual(D_GAS, t.q0, t.q1, t.S0, [x], S1)[0]

        # the e^10 pressure pushes the first step over a unit of travel
        root = bisect(resid, 1.0, 5.0, xtol=1e-13)
        out = discrete_flow(D_GAS, t, NewtonConfig(tol=1e-10))
        assert out.q1[0] == pytest.approx(root, abs=1e-10)
        assert out.S0 == S1


class TestOmegaMatrices:
    def test_free_particle(self):
        Wp, Wm = omega_matrices(D_FREE, DiscreteTriple([0.1], [0.2], 0.0))
        np.testing.assert_allclose(Wp, [[-1.0 / H ** 2]], rtol=1e-12)
        np.testing.assert_allclose(Wm, [[-1.0 / H ** 2]], rtol=1e-12)

    def test_zero_friction_plus_equals_minus(self):
        sys = LagrangianThermoSystem(
            n=1,
            L=lambda q, v, S: 0.5 * float(v @ v) - 0.5 * float(q @ q) - 0.1 * S,
            dLdq=lambda q, v, S: -q, dLdv=lambda q, v, S: v,
            dLdS=lambda q, v, S: -0.1)
        d = midpoint_discretize(sys, H)
        Wp, Wm = omega_matrices(d, DiscreteTriple([0.3], [0.5], 0.0))
        np.testing.assert_allclose(Wp, Wm, rtol=1e-14)

    @pytest.mark.parametrize("d,triple", [
        (D_OSC, DiscreteTriple([0.4], [0.42], 0.3)),
        (D_GAS, DiscreteTriple([1.0], [1.01], 10.0)),
        (D_TP, DiscreteTriple([1.0, 1.1], [1.01, 1.09], 1.0)),
    ])
    def test_analytic_matches_finite_differences(self, d, triple):
        # strip the analytic second partials to force the FD fallback
        import dataclasses

        fd = dataclasses.replace(
            d, D1D2Ld=None, D2D1Ld=None, D1ffr_plus=None, D2ffr_minus=None)
        Wp, Wm = omega_matrices(d, triple)
        Wp_fd, Wm_fd = omega_matrices(fd, triple)
        np.testing.assert_allclose(Wp, Wp_fd, rtol=1e-6, atol=1e-6 * np.max(np.abs(Wp)))
        np.testing.assert_allclose(Wm, Wm_fd, rtol=1e-6, atol=1e-6 * np.max(np.abs(Wm)))


class TestPullback:
    def test_oscillator_random_triples(self):
        cfg = NewtonConfig(tol=1e-10)
        rng = np.random.default_rng(6)
        for _ in range(10):
            t = DiscreteTriple(rng.uniform(-1, 1, 1), rng.uniform(-1, 1, 1),
                               rng.uniform(0, 1))
            assert pullback_check(D_OSC, t, cfg) <= 1e-6

    def test_ideal_gas_near_start(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            q0 = rng.uniform(0.95, 1.05)
            t = DiscreteTriple([q0], [q0 + rng.uniform(-0.01, 0.01)],
                               10.0 + rng.uniform(-0.1, 0.1))
            assert pullback_check(D_GAS, t, NewtonConfig(tol=1e-10)) <= 1e-5

    def test_free_particle_tight(self):
        assert pullback_check(D_FREE, DiscreteTriple([0.2], [0.25], 0.1)) <= 1e-8


class TestMomentumMapAndNoether:
    def test_zero_generator(self):
        xi = lambda q: np.zeros(2)
        assert momentum_map(D_TP, DiscreteTriple([1.0, 1.0], [1.01, 0.99], 1.0),
                            xi, "plus") == 0.0

    def test_matching_transfers_momentum_map(self):
        d = midpoint_discretize(get_system("two-pistons", gamma=0.0).lagrangian, H)
        xi = lambda q: np.array([-1.0, 1.0])
        path = integrate(d, [1.0, 1.0], [1.002, 0.997], 1.0, 200, NewtonConfig(tol=1e-11))
        for k in range(1, 200):
            jp = momentum_map(d, path.triple(k), xi, "plus")
            jm = momentum_map(d, path.triple(k + 1), xi, "minus")
            assert jm == pytest.approx(jp, abs=1e-10)

    def test_frictionless_condition_holds(self):
        d = midpoint_discretize(get_system("two-pistons", gamma=0.0).lagrangian, H)
        xi = lambda q: np.array([-1.0, 1.0])
        rng = np.random.default_rng(8)
        samples = [DiscreteTriple(rng.uniform(0.5, 1.5, 2), rng.uniform(0.5, 1.5, 2),
                                  rng.uniform(0, 2)) for _ in range(30)]
        assert noether_condition(d, xi, samples)

    def test_friction_breaks_condition(self):
        xi = lambda q: np.array([-1.0, 1.0])
        samples = [DiscreteTriple([1.0, 1.0], [1.02, 0.99], 1.0)]
        assert not noether_condition(D_TP, xi, samples)
        # the violation is exactly the friction pairing gamma (dx - dy)/h
        t = samples[0]
        f = D_TP.ffr_minus(t.q0, t.q1, t.S0)
        expected = 0.5 * f @ np.array([-1.0, 1.0]) * 2
        assert expected == pytest.approx(GAMMA * ((1.02 - 1.0) - (0.99 - 1.0)) / H)

    def test_momentum_map_conserved_along_flow(self):
        d = midpoint_discretize(get_system("two-pistons", gamma=0.0).lagrangian, H)
        xi = lambda q: np.array([-1.0, 1.0])
        N = 1000
        path = integrate(d, [1.0, 1.0], [1.002, 0.997], 1.0, N, NewtonConfig(tol=1e-11))
        j0 = momentum_map(d, path.triple(1), xi, "plus")
        drift = max(abs(momentum_map(d, path.triple(k), xi, "plus") - j0)
                    for k in range(1, N + 1))
        assert drift <= N * 1e-11


class TestActionAndBoundary:
    def test_single_segment_action(self):
        t = DiscreteTriple([0.2], [0.23], 0.4)
        S1 = entropy_update(D_OSC, t)
        path = DiscretePath(h=H, qs=np.array([[0.2], [0.23]]), Ss=np.array([0.4, S1]))
        assert discrete_action(D_OSC, path) == pytest.approx(
            D_OSC.Ld(t.q0, t.q1, t.S0), rel=1e-14)

    def test_invalid_path_rejected(self):
        path = DiscretePath(h=H, qs=np.array([[0.2], [0.23]]), Ss=np.array([0.4, 99.0]))
        with pytest.raises(ValueError):
            discrete_action(D_OSC, path)

    def test_boundary_forms_values(self):
        t = DiscreteTriple([0.3], [0.33], 0.2)
        th_m, th_p = boundary_forms(D_OSC, t)
        np.testing.assert_allclose(
            th_m, -(D_OSC.D1Ld(t.q0, t.q1, t.S0) + 0.5 * D_OSC.ffr_minus(t.q0, t.q1, t.S0)))
        np.testing.assert_allclose(
            th_p, D_OSC.D2Ld(t.q0, t.q1, t.S0) + 0.5 * D_OSC.ffr_plus(t.q0, t.q1, t.S0))

    @pytest.mark.parametrize("d", [D_OSC, D_GAS])
    def test_action_variation_matches_ddel(self, d):
        """d A_d along a constrained variation equals sum ddel . delta q."""
        rng = np.random.default_rng(9)
        N = 6
        qs = np.cumsum(rng.uniform(0.001, 0.004, size=(N + 1, 1)), axis=0) + 1.0
        Ss = np.empty(N + 1)
        Ss[0] = 2.0
        for k in range(1, N + 1):
            Ss[k] = entropy_update(d, DiscreteTriple(qs[k - 1], qs[k], Ss[k - 1]))
        path = DiscretePath(h=d.h, qs=qs, Ss=Ss)
        dq = rng.normal(size=(N + 1, 1))
        dq[0] = dq[N] = 0.0

        # variations of S from the variational constraint eta_d(delta) = 0
        dS = np.zeros(N + 1)
        for k in range(1, N + 1):
            t = path.triple(k)
            fm = d.ffr_minus(t.q0, t.q1, t.S0)
            fp = d.ffr_plus(t.q0, t.q1, t.S0)
            dS[k - 1] = (0.5 * fm @ dq[k - 1] + 0.5 * fp @ dq[k]) / d.DSLd(t.q0, t.q1, t.S0)

        eps = 1e-6
        plus = DiscretePath(h=d.h, qs=qs + eps * dq, Ss=Ss + eps * dS)
        minus = DiscretePath(h=d.h, qs=qs - eps * dq, Ss=Ss - eps * dS)
        fd = (raw_action(d, plus) - raw_action(d, minus)) / (2 * eps)

        inner = sum(
            float(ddel_map(d, qs[k - 1], qs[k], qs[k + 1], Ss[k - 1], Ss[k]) @ dq[k])
            for k in range(1, N))
        assert fd == pytest.approx(inner, abs=1e-6)


class TestSemiregularity:
    def test_oscillator_invertible_for_small_steps(self):
        for h in (0.001, 0.01, 0.1):
            d = midpoint_discretize(OSC.lagrangian, h)
            M = semiregularity_matrix(d, DiscreteTriple([0.5], [0.52], 0.0))
            expected = 1.0 / h ** 2 + 0.25 + GAMMA / (2 * h)
            np.testing.assert_allclose(M, [[expected]], rtol=1e-12)
            assert abs(np.linalg.det(M)) > 1e-12

    def test_free_particle(self):
        M = semiregularity_matrix(D_FREE, DiscreteTriple([0.0], [0.1], 0.0))
        np.testing.assert_allclose(M, [[1.0 / H ** 2]], rtol=1e-12)

    def test_degenerate_lagrangian_flagged(self):
        # Ld independent of q1: the matrix vanishes identically
        from thermint import DiscreteThermoSystem

        d = DiscreteThermoSystem(
            n=1, h=H,
            Ld=lambda q0, q1, S0: float(q0 @ q0) - 0.1 * S0,
            D1Ld=lambda q0, q1, S0: 2 * q0,
            D2Ld=lambda q0, q1, S0: np.zeros(1),
            DSLd=lambda q0, q1, S0: -0.1,
            ffr_minus=lambda q0, q1, S0: np.zeros(1),
            ffr_plus=lambda q0, q1, S0: np.zeros(1),
        )
        M = semiregularity_matrix(d, DiscreteTriple([0.3], [0.4], 0.0))
        np.testing.assert_allclose(M, [[0.0]], atol=1e-8)


class TestDiscretePath:
    def test_triple_indexing(self):
        path = DiscretePath(h=H, qs=np.array([[0.0], [1.0], [2.0]]),
                            Ss=np.array([0.0, 0.1, 0.2]))
        t = path.triple(2)
        np.testing.assert_array_equal(t.q0, [1.0])
        np.testing.assert_array_equal(t.q1, [2.0])
        assert t.S0 == 0.1
        with pytest.raises(IndexError):
            path.triple(3)

    def test_constraint_residual_of_solver_output(self):
        path = integrate(D_OSC, [0.0], [0.0099], 0.0, 100)
        assert path.constraint_residual(D_OSC) <= 1e-12
