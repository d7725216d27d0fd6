"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Default natural-unit parameter set: N = 64, m = 1, omega0 = 1, xi = 1,
a = 1, lambda = 0.1, gamma = 0, hbar = 1, k_B = 1, T_f = 2.
"""

import numpy as np

from heatchain import (
    ChainParams,
    CompareScenario,
    ContinuumField,
    CovarianceState,
    DiffusionSet,
    ModelMatrices,
    compare_discrete_continuum,
    diffusion_constant,
    evolve,
    gaussian_site_weights,
    gibbs_covariance,
    gibbs_energy_density,
    heat_capacity_density,
    high_temp_diffusion,
    hotspot_state,
    klemens_conductivity,
    mode_sum_diffusion,
    moment_rhs,
    quad_diffusion,
    solve_heat,
    source_density,
    stationary_covariance,
    stiffness_matrix,
    symmetrize,
    thermal_matrices,
    total_energy,
    transport_coefficients,
    uniform_state,
)

DEFAULTS = dict(n_sites=64, mass=1.0, omega0=1.0, xi=1.0, lattice_const=1.0,
                lambda_fric=0.1, gamma_fric=0.0, hbar=1.0, k_boltz=1.0, bath_temp=2.0)


def make(**kw):
    base = dict(DEFAULTS)
    base.update(kw)
    return ChainParams(**base)


def report(num, name, passed, detail):
    print(f"ACCEPTANCE {num} {name}: {'PASS' if passed else 'FAIL'} -- {detail}")


def test_criterion_1_moment_equation_fidelity():
    """Matrix RHS equals a literal transcription of the moment equations."""
    p = make(n_sites=4, gamma_fric=0.02)
    mats = thermal_matrices(p)
    n = p.n_sites
    lam, gam = p.lambda_fric, p.gamma_fric
    m, om0, xi = p.mass, p.omega0, p.xi
    dxx = mats.diffusion[:n, :n]
    dpp = mats.diffusion[n:, n:]
    rng = np.random.default_rng(20240801)
    worst = 0.0
    for _ in range(100):
        raw = rng.normal(size=(2 * n, 2 * n))
        sigma = symmetrize(raw @ raw.T) / (2 * n)
        sxx, spp, sxp = sigma[:n, :n], sigma[n:, n:], sigma[:n, n:]
        rhs = moment_rhs(CovarianceState(sigma), mats)
        for k in range(n):
            kp, km = (k + 1) % n, (k - 1) % n
            dx2 = (-2 * lam * sxx[k, k] + 2 * sxp[k, k] / m
                   - 2 * gam * (sxx[k, kp] + sxx[k, km]) + 2 * dxx[k, k])
            dp2 = (-2 * lam * spp[k, k] - 2 * (m * om0**2 + 2 * xi) * sxp[k, k]
                   - 2 * gam * (spp[k, kp] + spp[k, km])
                   + 2 * xi * (sxp[km, k] + sxp[kp, k]) + 2 * dpp[k, k])
            dnext = (-2 * lam * sxx[k, kp] + (sxp[k, kp] + sxp[kp, k]) / m
                     - gam * (sxx[kp, kp] + sxx[kp, km])
                     - gam * (sxx[k, (k + 2) % n] + sxx[k, k]) + 2 * dxx[k, kp])
            worst = max(worst,
                        abs(rhs[k, k] - dx2),
                        abs(rhs[n + k, n + k] - dp2),
                        abs(rhs[k, kp] - dnext))
    passed = worst <= 1e-13
    report(1, "moment-equation fidelity", passed, f"max |delta| {worst:.2e} (tol 1e-13)")
    assert passed


def test_criterion_2_gibbs_stationarity():
    """Stationary covariance equals the Gibbs covariance (both damping kinds)."""
    worst = 0.0
    for n in (8, 64):
        for gam in (0.0, 0.02):
            for temp in (0.5, 2.0, 50.0):
                p = make(n_sites=n, gamma_fric=gam, bath_temp=temp)
                st = stationary_covariance(thermal_matrices(p), "fourier")
                gb = gibbs_covariance(p, temp)
                rel = float(np.linalg.norm(st.sigma - gb.sigma) / np.linalg.norm(gb.sigma))
                worst = max(worst, rel)
    passed = worst <= 1e-9
    report(2, "Gibbs stationarity / fluctuation-dissipation", passed,
           f"max rel deviation {worst:.2e} (tol 1e-9)")
    assert passed


def test_criterion_3_total_energy_decay():
    """gamma = 0 relaxation: rate 2 lambda (0.1%) and U_eq identity (1e-6)."""
    p = make()
    mats = thermal_matrices(p)
    traj = evolve(uniform_state(p, 5.0), mats, t_final=2.0 / p.lambda_fric, sample_stride=5)
    u = np.array([total_energy(s, p) for s in traj.states])
    u_eq = p.n_sites * p.lattice_const * gibbs_energy_density(p, p.bath_temp)
    a = np.vstack([traj.times, np.ones_like(traj.times)]).T
    slope = float(np.linalg.lstsq(a, np.log(np.abs(u - u_eq)), rcond=None)[0][0])
    rate_err = abs(slope / (-2 * p.lambda_fric) - 1.0)
    s_val = source_density(p, mode_sum_diffusion(p, p.bath_temp))
    u_eq_pred = p.n_sites * p.lattice_const * s_val / (2 * p.lambda_fric)
    ueq_err = abs(u_eq / u_eq_pred - 1.0)
    psd_ok = bool(np.min(traj.min_eig_ratios) >= -1e-10)
    passed = rate_err <= 1e-3 and ueq_err <= 1e-6 and psd_ok
    report(3, "exact total-energy decay", passed,
           f"rate err {rate_err:.2e} (tol 1e-3), U_eq err {ueq_err:.2e} (tol 1e-6)")
    assert passed


def test_criterion_4_high_temperature_closed_forms():
    """Quadrature coefficients vs printed closed forms at k_B T = 50 hbar w(pi)."""
    worst_coeff = 0.0
    worst_source = 0.0
    for gam in (0.0, 0.02):
        p = make(gamma_fric=gam)
        temp = 50.0 * p.hbar * p.omega_max / p.k_boltz
        closed = high_temp_diffusion(p, temp)
        quad_set = DiffusionSet(
            d_xx=quad_diffusion(p, temp, 0, "position"),
            d_pp=quad_diffusion(p, temp, 0, "momentum"),
            d_ex=quad_diffusion(p, temp, 1, "position"),
            temp=temp,
        )
        for got, want in ((quad_set.d_xx, closed.d_xx), (quad_set.d_pp, closed.d_pp),
                          (quad_set.d_ex, closed.d_ex)):
            worst_coeff = max(worst_coeff, abs(got / want - 1.0))
        ratio = source_density(p, quad_set) * p.lattice_const / (
            2 * p.lambda_fric * p.k_boltz * temp)
        worst_source = max(worst_source, abs(ratio - 1.0))
    passed = worst_coeff <= 0.01 and worst_source <= 0.005
    report(4, "high-temperature closed forms", passed,
           f"coeff err {worst_coeff:.2e} (tol 1e-2), source err {worst_source:.2e} (tol 5e-3)")
    assert passed


def test_criterion_5_heat_capacity_limits():
    """C(T) a / k_B in [0.99, 1] on the classical plateau; C(0) = 0."""
    p = make()
    ratios = []
    for mult in (50.0, 120.0, 500.0):
        temp = mult * p.hbar * p.omega_max / p.k_boltz
        ratios.append(heat_capacity_density(p, temp) * p.lattice_const / p.k_boltz)
    czero = heat_capacity_density(p, 0.0)
    passed = all(0.99 <= r <= 1.0 for r in ratios) and czero == 0.0
    report(5, "heat capacity limits", passed,
           f"plateau ratios {[f'{r:.5f}' for r in ratios]}, C(0) = {czero}")
    assert passed


def test_criterion_6_conductivity_consistency():
    """Mode-sum conductivity meets diff_const * C(T) at high temperature."""
    p = make(n_sites=1024, omega0=0.0)
    temp = 50.0 * p.hbar * p.omega_max / p.k_boltz
    kappa_sum = klemens_conductivity(p, temp, velocity="sound")
    kappa_cont = transport_coefficients(p, temp).kappa
    rel = abs(kappa_sum / kappa_cont - 1.0)
    passed = rel <= 0.02
    report(6, "conductivity consistency", passed,
           f"klemens/continuum - 1 = {rel:.2e} (tol 2e-2)")
    assert passed


def test_criterion_7_pde_correctness():
    """Explicit solver vs the closed-form heat-kernel solution (512 cells)."""
    p = make()
    m_cells, length = 512, 256.0
    dx = length / m_cells
    x = dx * np.arange(m_cells)
    u_eq, amp, width = 1.0, 0.5, 8.0
    u0 = u_eq + amp * np.exp(-0.5 * ((x - length / 2) / width) ** 2)
    s = 2 * p.lambda_fric * u_eq
    t_end = 1.0 / p.lambda_fric
    fields = solve_heat(ContinuumField(u0, dx), p, s, t_end, dt=0.004, sample_stride=10**6)
    diff = diffusion_constant(p)
    k = 2 * np.pi * np.fft.fftfreq(m_cells, d=dx)
    w_hat = np.fft.fft(u0 - u_eq)
    exact = u_eq + np.real(np.fft.ifft(w_hat * np.exp(-(diff * k**2 + 2 * p.lambda_fric) * t_end)))
    rel = float(np.linalg.norm(fields[-1].values - exact) / np.linalg.norm(exact))
    passed = rel <= 1e-4
    report(7, "PDE correctness", passed, f"L2 rel {rel:.2e} (tol 1e-4)")
    assert passed


def test_criterion_8_discrete_continuum_emergence():
    """Central experiment: N = 256 chain vs the continuum heat equation.

    Both clauses asserted at their stated tolerances: field deviation <= 5%
    inside t in [0.5, 5]/lambda, and the pooled current-gradient regression
    slope within 10% of a^2 xi / (2 lambda m).
    """
    p = make(n_sites=256, omega0=0.05, lambda_fric=0.125, bath_temp=300.0)
    b = transport_coefficients(p, p.bath_temp).range_b
    width = 10.0 * b  # >= 8 b
    sc = CompareScenario(t_hot=400.0, t_cold=300.0, width_sites=width,
                         t_final=5.0 / p.lambda_fric)
    rep = compare_discrete_continuum(p, sc)
    window = (rep.times >= 0.5 / p.lambda_fric) & (rep.times <= 5.0 / p.lambda_fric)
    dev = float(np.max(rep.dev_field[window]))
    dev_tr = float(np.max(rep.dev_transient[window]))
    slope_err = abs(rep.fit_slope / rep.diff_const - 1.0)
    dev_ok = dev <= 0.05
    slope_ok = slope_err <= 0.10
    passed = dev_ok and slope_ok
    report(8, "discrete-to-continuum emergence", passed,
           f"L2 dev {dev:.2e} (tol 5e-2; transient-normalized {dev_tr:.2e}), "
           f"slope/diff_const = {rep.fit_slope / rep.diff_const:.3f} (tol within 10%)")
    assert dev_ok, f"field deviation {dev:.3e} exceeds 5%"
    assert slope_ok, (
        f"Fourier-law regression slope is {rep.fit_slope / rep.diff_const:.3f} of the "
        "continuum diffusion constant, outside the 10% tolerance. The chain's "
        "on-site damping scatters no momentum between phonon modes, so the "
        "transient current grows ballistically (slope ~ v_s^2 t / 2) instead of "
        "settling at diff_const; the pooled regression over the mandated window "
        "lands near 0.75 * diff_const for every admissible scenario."
    )


def test_criterion_9_conservation_sanity():
    """Undamped, noiseless chain conserves energy; states stay PSD."""
    p = make()
    n = p.n_sites
    z = np.zeros((n, n))
    mats = ModelMatrices(
        drift=np.block([[z, np.eye(n) / p.mass], [-stiffness_matrix(p), z]]),
        diffusion=np.zeros((2 * n, 2 * n)),
        stiffness=stiffness_matrix(p),
        friction=z,
    )
    state0 = hotspot_state(p, p.bath_temp, 5.0, gaussian_site_weights(n, n / 2, 4.0))
    traj = evolve(state0, mats, t_final=100.0 / p.omega_max,
                  dt_max=0.02 / p.omega_max, sample_stride=100)
    u = np.array([total_energy(s, p) for s in traj.states])
    drift = float(np.max(np.abs(u - u[0])) / abs(u[0]))
    psd_ok = bool(np.min(traj.min_eig_ratios) >= -1e-10)
    passed = drift <= 1e-9 and psd_ok
    report(9, "conservation sanity", passed,
           f"energy drift {drift:.2e} (tol 1e-9), min eig ratio {np.min(traj.min_eig_ratios):.2e}")
    assert passed
