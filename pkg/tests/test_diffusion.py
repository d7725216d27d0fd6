import numpy as np
import pytest

from heatchain import (
    ChainParams,
    DiffusionSet,
    coth,
    gibbs_covariance,
    gibbs_energy_density,
    gibbs_summary,
    heat_capacity_density,
    high_temp_diffusion,
    mode_grid,
    mode_sum_diffusion,
    quad_diffusion,
    source_density,
    stiffness_matrix,
    thermal_diffusion_matrix,
)


def params(**kw):
    base = dict(n_sites=64, mass=1.0, omega0=1.0, xi=1.0, lattice_const=1.0,
                lambda_fric=0.1, gamma_fric=0.0, bath_temp=2.0)
    base.update(kw)
    return ChainParams(**base)


def trapezoid_oracle(p, temp, r, kind, n=2_000_001):
    """Dense-grid trapezoid evaluation of the diffusion integrals."""
    q = np.linspace(-np.pi, np.pi, n)
    w = np.sqrt(p.omega0**2 + 4 * p.xi / p.mass * np.sin(q / 2) ** 2)
    weight = p.lambda_fric + 2 * p.gamma_fric * np.cos(q)
    if kind == "momentum":
        # coth(x)*x limit: the w = 0 entry tends to 2 k_B T / hbar
        kern = np.where(w > 0,
                        w if temp == 0 else coth(p.hbar * np.where(w > 0, w, 1.0)
                                                 / (2 * p.k_boltz * temp)) * w,
                        0.0 if temp == 0 else 2 * p.k_boltz * temp / p.hbar)
        f = p.hbar * p.mass / (4 * np.pi) * kern * weight
    else:
        fac = np.ones_like(w) if temp == 0 else coth(p.hbar * w / (2 * p.k_boltz * temp))
        f = p.hbar / (4 * np.pi * p.mass) * fac / w * np.cos(q * r) * weight
    return float(np.trapezoid(f, q))


class TestQuadDiffusion:
    def test_neighbour_coefficient_vanishes_for_flat_band(self):
        # xi = 0 makes the integrand q-independent; cos(q) averages to zero
        p = params(xi=0.0)
        for temp in (0.0, 1.0, 37.0):
            assert abs(quad_diffusion(p, temp, 1)) < 1e-14

    def test_against_dense_trapezoid(self):
        p = params(gamma_fric=0.02)
        got = quad_diffusion(p, 2.0, 0)
        want = trapezoid_oracle(p, 2.0, 0, "position")
        assert got == pytest.approx(want, rel=1e-8)
        got_p = quad_diffusion(p, 2.0, 0, "momentum")
        assert got_p == pytest.approx(trapezoid_oracle(p, 2.0, 0, "momentum"), rel=1e-8)
        got_e = quad_diffusion(p, 2.0, 1)
        assert got_e == pytest.approx(trapezoid_oracle(p, 2.0, 1, "position"), rel=1e-8)

    def test_flat_band_high_temperature_value(self):
        # lambda k T / (m omega0^2) when xi = 0
        p = params(xi=0.0, omega0=1.0)
        temp = 1e4
        want = p.lambda_fric * p.k_boltz * temp / (p.mass * p.omega0**2)
        assert quad_diffusion(p, temp, 0) == pytest.approx(want, rel=1e-7)

    def test_second_neighbour_kernel_supported(self):
        p = params(gamma_fric=0.02)
        got = quad_diffusion(p, 2.0, 2)
        assert got == pytest.approx(trapezoid_oracle(p, 2.0, 2, "position"), rel=1e-8)

    def test_zero_temperature_ground_state_value(self):
        # coth -> 1: D_xx = lambda <x^2>_ground (continuum integral form)
        p = params()
        got = quad_diffusion(p, 0.0, 0)
        want = trapezoid_oracle(p, 0.0, 0, "position")
        assert got == pytest.approx(want, rel=1e-9)
        assert got > 0.0

    def test_rejections(self):
        p = params()
        with pytest.raises(ValueError, match="temperature"):
            quad_diffusion(p, -1.0, 0)
        with pytest.raises(ValueError, match="momentum"):
            quad_diffusion(p, 1.0, 1, "momentum")
        with pytest.raises(ValueError, match="zero mode|mode_sum"):
            quad_diffusion(params(omega0=0.0), 1.0, 0)
        with pytest.raises(ValueError, match="kind"):
            quad_diffusion(p, 1.0, 0, "nope")

    def test_momentum_kind_fine_at_zero_pinning(self):
        p = params(omega0=0.0)
        got = quad_diffusion(p, 2.0, 0, "momentum")
        assert got == pytest.approx(trapezoid_oracle(p, 2.0, 0, "momentum"), rel=1e-8)


class TestHighTemperature:
    def test_momentum_coefficient_is_classical(self):
        p = params(lambda_fric=0.1)
        assert high_temp_diffusion(p, 100.0).d_pp == pytest.approx(10.0, rel=1e-15)

    def test_neighbour_coefficient_vanishes_with_coupling(self):
        p = params(xi=1e-8)
        ht = high_temp_diffusion(p, 100.0)
        # leading order lambda k T xi / (m^2 omega0^4)
        assert ht.d_ex == pytest.approx(p.lambda_fric * 100.0 * p.xi, rel=1e-6)

    @pytest.mark.parametrize("gamma", [0.0, 0.02])
    def test_matches_quadrature_at_high_temperature(self, gamma):
        p = params(gamma_fric=gamma)
        temp = 50.0 * p.hbar * p.omega_max / p.k_boltz
        closed = high_temp_diffusion(p, temp)
        assert quad_diffusion(p, temp, 0) == pytest.approx(closed.d_xx, rel=0.01)
        assert quad_diffusion(p, temp, 0, "momentum") == pytest.approx(closed.d_pp, rel=0.01)
        assert quad_diffusion(p, temp, 1) == pytest.approx(closed.d_ex, rel=0.01)

    def test_rejects_zero_pinning(self):
        with pytest.raises(ValueError, match="omega0"):
            high_temp_diffusion(params(omega0=0.0), 10.0)


class TestSourceDensity:
    @pytest.mark.parametrize("gamma", [0.0, 0.02])
    def test_newton_form_from_closed_coefficients(self, gamma):
        # the closed forms satisfy s = 2 lambda k_B T / a identically
        p = params(gamma_fric=gamma, omega0=0.7, xi=1.3, mass=2.0, lattice_const=0.5)
        for temp in (3.0, 50.0, 1e4):
            s = source_density(p, high_temp_diffusion(p, temp))
            assert s == pytest.approx(2 * p.lambda_fric * p.k_boltz * temp / p.lattice_const,
                                      rel=1e-12)

    def test_zero_temperature_source_matches_ground_state_energy(self):
        # s(0) = 2 lambda u_eq(0), with the ground-state energy density from
        # an independent mode sum of hbar omega / 2
        p = params()
        s = source_density(p, mode_sum_diffusion(p, 0.0))
        w = np.sqrt(p.omega0**2 + 4 * p.xi / p.mass * np.sin(mode_grid(p) / 2) ** 2)
        u0 = np.mean(p.hbar * w / 2) / p.lattice_const
        assert s == pytest.approx(2 * p.lambda_fric * u0, rel=1e-12)
        assert s > 0.0

    def test_fluctuation_dissipation_at_any_temperature(self):
        # gamma = 0: s = 2 lambda u_eq exactly, also away from high T
        p = params()
        for temp in (0.5, 2.0, 7.0):
            s = source_density(p, mode_sum_diffusion(p, temp))
            assert s == pytest.approx(2 * p.lambda_fric * gibbs_energy_density(p, temp),
                                      rel=1e-12)


class TestGibbsState:
    def test_decoupled_ground_state(self):
        p = params(xi=0.0, omega0=2.0, mass=1.5, n_sites=8)
        g = gibbs_covariance(p, 0.0)
        assert np.allclose(np.diag(g.xx), p.hbar / (2 * p.mass * p.omega0), rtol=1e-14)
        assert np.allclose(np.diag(g.pp), p.hbar * p.mass * p.omega0 / 2, rtol=1e-14)
        off = g.xx - np.diag(np.diag(g.xx))
        assert np.max(np.abs(off)) < 1e-15
        assert np.max(np.abs(g.xp)) == 0.0

    def test_equipartition_at_high_temperature(self):
        p = params(n_sites=16)
        temp = 200.0 * p.omega_max
        g = gibbs_covariance(p, temp)
        assert g.pp[0, 0] == pytest.approx(p.mass * p.k_boltz * temp, rel=1e-4)

    def test_matches_normal_mode_construction(self):
        # brute-force oracle: diagonalize K, populate each mode thermally,
        # rotate back to site coordinates
        p = params(n_sites=8, gamma_fric=0.0)
        temp = 2.0
        k = stiffness_matrix(p)
        evals, vecs = np.linalg.eigh(k)
        w = np.sqrt(evals / p.mass)
        cx = p.hbar / (2 * p.mass * w) / np.tanh(p.hbar * w / (2 * p.k_boltz * temp))
        cp = p.hbar * p.mass * w / 2 / np.tanh(p.hbar * w / (2 * p.k_boltz * temp))
        sxx = vecs @ np.diag(cx) @ vecs.T
        spp = vecs @ np.diag(cp) @ vecs.T
        g = gibbs_covariance(p, temp)
        assert np.max(np.abs(g.xx - sxx)) < 1e-12
        assert np.max(np.abs(g.pp - spp)) < 1e-12

    def test_translation_invariance_exact(self):
        p = params(n_sites=12)
        g = gibbs_covariance(p, 1.3)
        n = p.n_sites
        for r in range(1, 4):
            ref_x = g.xx[0, r]
            ref_p = g.pp[0, r]
            for k in range(n):
                assert g.xx[k, (k + r) % n] == ref_x
                assert g.pp[k, (k + r) % n] == ref_p

    def test_zero_pinning_zero_mode_handling(self):
        p = params(omega0=0.0, n_sites=16)
        g = gibbs_covariance(p, 2.0)
        # momentum of the free mode thermalizes; energy density finite
        assert np.isfinite(g.sigma).all()
        assert gibbs_energy_density(p, 2.0) > 0.0
        with pytest.raises(ValueError, match="omega0"):
            gibbs_covariance(params(omega0=0.0, xi=0.0), 1.0)

    def test_psd(self):
        for p in (params(), params(omega0=0.0), params(gamma_fric=0.05)):
            g = gibbs_covariance(p, 0.7)
            assert np.linalg.eigvalsh(g.sigma).min() > -1e-12 * np.abs(g.sigma).max()


class TestThermalDiffusionMatrix:
    def test_diagonal_matches_mode_sums(self):
        p = params(gamma_fric=0.03)
        d = thermal_diffusion_matrix(p, 2.0)
        ds = mode_sum_diffusion(p, 2.0)
        n = p.n_sites
        assert d[0, 0] == pytest.approx(ds.d_xx, rel=1e-12)
        assert d[0, 1] == pytest.approx(ds.d_ex, rel=1e-12)
        assert d[n, n] == pytest.approx(ds.d_pp, rel=1e-12)

    @pytest.mark.parametrize("gamma", [0.0, 0.02, 0.05])
    def test_psd_including_critical_damping_edge(self, gamma):
        p = params(gamma_fric=gamma, lambda_fric=0.1)
        d = thermal_diffusion_matrix(p, 0.5)
        eig = np.linalg.eigvalsh(d)
        assert eig.min() >= -1e-12 * eig.max()

    def test_fluctuation_dissipation_d_equals_lambda_covariance(self):
        # gamma = 0: D = lambda * (thermal covariance), block by block
        p = params()
        d = thermal_diffusion_matrix(p, 2.0)
        g = gibbs_covariance(p, 2.0)
        assert np.allclose(d, p.lambda_fric * g.sigma, rtol=1e-12, atol=1e-15)

    def test_quadrature_matches_mode_sum_at_n64(self):
        # continuum integrals against the N = 64 ring sums (0.1% budget)
        p = params(gamma_fric=0.02)
        for temp in (0.5, 2.0, 50.0):
            ds_int = DiffusionSet(
                d_xx=quad_diffusion(p, temp, 0),
                d_pp=quad_diffusion(p, temp, 0, "momentum"),
                d_ex=quad_diffusion(p, temp, 1),
                temp=temp,
            )
            ds_sum = mode_sum_diffusion(p, temp)
            assert ds_int.d_xx == pytest.approx(ds_sum.d_xx, rel=1e-3)
            assert ds_int.d_pp == pytest.approx(ds_sum.d_pp, rel=1e-3)
            assert ds_int.d_ex == pytest.approx(ds_sum.d_ex, rel=1e-3)


class TestEnergyAndHeatCapacity:
    def test_classical_limits(self):
        p = params()
        temp = 80.0 * p.omega_max
        assert gibbs_energy_density(p, temp) == pytest.approx(p.k_boltz * temp / p.lattice_const,
                                                              rel=1e-3)
        ratio = heat_capacity_density(p, temp) * p.lattice_const / p.k_boltz
        assert 0.99 <= ratio <= 1.0

    def test_frozen_at_zero_temperature(self):
        assert heat_capacity_density(params(), 0.0) == 0.0

    def test_energy_density_monotone_in_temperature(self):
        p = params(n_sites=16)
        temps = [0.0, 0.3, 1.0, 2.5, 10.0, 100.0]
        values = [gibbs_energy_density(p, t) for t in temps]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_heat_capacity_matches_finite_difference(self):
        # central difference of u_eq with step 1e-4 T
        p = params(n_sites=8)
        temp = 1.5
        h = 1e-4 * temp
        fd = (gibbs_energy_density(p, temp + h) - gibbs_energy_density(p, temp - h)) / (2 * h)
        assert heat_capacity_density(p, temp) == pytest.approx(fd, rel=1e-6)

    def test_si_units_classical_plateau(self):
        # explicit hbar and k_B: an argon-like chain reaching its classical
        # plateau at a laboratory-scale temperature
        p = ChainParams(
            n_sites=32, mass=6.63e-26, omega0=8e12, xi=4.3,
            lattice_const=3.4e-10, lambda_fric=5e10, gamma_fric=0.0,
            hbar=1.054571817e-34, k_boltz=1.380649e-23, bath_temp=300.0,
        )
        temp = 60.0 * p.hbar * p.omega_max / p.k_boltz
        ratio = heat_capacity_density(p, temp) * p.lattice_const / p.k_boltz
        assert 0.99 <= ratio <= 1.0
        assert gibbs_energy_density(p, temp) == pytest.approx(
            p.k_boltz * temp / p.lattice_const, rel=1e-3)

    def test_summary_bundle(self):
        p = params(n_sites=8)
        summ = gibbs_summary(p, 2.0)
        assert summ.energy_density == pytest.approx(gibbs_energy_density(p, 2.0))
        assert summ.heat_capacity_density == pytest.approx(heat_capacity_density(p, 2.0))
        assert summ.covariance.sigma.shape == (16, 16)
