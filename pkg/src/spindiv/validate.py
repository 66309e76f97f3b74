"""Built-in validation: every check constructs its own fixtures and
compares an implementation path against an independent oracle or a
closed form.  The CLI `validate` subcommand runs all of them and the
test suite reuses individual checks."""

import numpy as np

from . import bath as bath_mod
from . import divisibility as div
from . import generator as gen
from . import linalg
from .bath import BathState, QuadratureSettings, R, R_PLUS_ONE, SpectralDensity, lambda_rate, rate_table
from .evolve import InitialState, evolve, schrodinger_frame
from .generator import GeneratorSnapshot, Spin1Rates, apply_generator, spin1_generator, spin1_rates
from .spin import CouplingSpec, DriveParameters, SpinQuantumNumber, build_model


def _rng(seed=20240811):
    return np.random.default_rng(seed)


def random_hermitian(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (x + x.conj().T)


def random_density(rng, d):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def random_snapshot(rng, d, c=None, scale=1.0):
    if c is None:
        c = random_hermitian(rng, d)
    nq = 2 * (d - 1) + 1
    lam0 = complex(rng.normal(), rng.normal()) * scale
    lam0_tilde = complex(rng.normal(), rng.normal()) * scale
    gamma = rng.normal(size=nq) * scale
    gamma_tilde = rng.normal(size=nq) * scale
    gamma[d - 1] = 2.0 * lam0.real
    gamma_tilde[d - 1] = 2.0 * lam0_tilde.real
    return GeneratorSnapshot(time=0.0, c=np.asarray(c, dtype=np.complex128),
                             lam0=lam0, lam0_tilde=lam0_tilde,
                             gamma=gamma, gamma_tilde=gamma_tilde)


def reference_apply_generator(rho, snap):
    """Literal sandwich-operator construction of the three term groups."""
    d = snap.d
    c = snap.c
    out = np.zeros((d, d), dtype=np.complex128)

    def unit(i, jj):
        m = np.zeros((d, d), dtype=np.complex128)
        m[i, jj] = 1.0
        return m

    g0 = snap.gamma[d - 1] + snap.gamma_tilde[d - 1]
    for l in range(d):
        sll = unit(l, l)
        out += g0 * abs(c[l, l]) ** 2 * (sll @ rho @ sll - 0.5 * (sll @ rho + rho @ sll))

    x = snap.lam0 + np.conj(snap.lam0_tilde)
    for l in range(d):
        for k in range(d):
            if l == k:
                continue
            direct = x * c[k, k] * np.conj(c[l, l]) * (unit(l, l) @ rho @ unit(k, k))
            hconj = np.conj(x) * np.conj(c[k, k]) * c[l, l] * (unit(k, k) @ rho @ unit(l, l))
            out += direct + hconj

    for l in range(d):
        for m in range(d):
            if l == m:
                continue
            # loop variables are matrix indices; the transition number
            # q = l_label - m_label equals m - l in index terms
            g = snap.gamma[(m - l) + d - 1]
            gt = snap.gamma_tilde[(l - m) + d - 1]
            rate = g * abs(c[l, m]) ** 2 + gt * abs(c[m, l]) ** 2
            sml, slm, sll = unit(m, l), unit(l, m), unit(l, l)
            out += rate * (sml @ rho @ slm - 0.5 * (sll @ rho + rho @ sll))
    return out


def epsilon_structural(snap, t1):
    """epsilon assembled from the explicit delta-function sums, block by block."""
    d = snap.d
    c = snap.c
    g0 = snap.gamma[d - 1] + snap.gamma_tilde[d - 1]
    x = snap.lam0 + np.conj(snap.lam0_tilde)

    def unit(i, jj):
        m = np.zeros((d, d), dtype=np.complex128)
        m[i, jj] = 1.0
        return m

    eps = np.zeros((d * d, d * d), dtype=np.complex128)
    for jj in range(d):
        for n in range(d):
            block = unit(jj, n).astype(np.complex128)
            add = np.zeros((d, d), dtype=np.complex128)
            for l in range(d):
                dlj = 1.0 if l == jj else 0.0
                dnl = 1.0 if n == l else 0.0
                term = dlj * dnl * unit(l, l) - 0.5 * dlj * unit(l, n) - 0.5 * dnl * unit(jj, l)
                add += g0 * abs(c[l, l]) ** 2 * term
            for l in range(d):
                for k in range(d):
                    if l == k:
                        continue
                    if l == jj and n == k:
                        add += x * np.conj(c[l, l]) * c[k, k] * unit(l, k)
                    if k == jj and n == l:
                        add += np.conj(x) * c[l, l] * np.conj(c[k, k]) * unit(k, l)
            for l in range(d):
                for m in range(d):
                    if l == m:
                        continue
                    # q = l_label - m_label = m - l for matrix indices
                    g_lm = snap.gamma[(m - l) + d - 1]
                    gt_lm = snap.gamma_tilde[(m - l) + d - 1]
                    w2 = abs(c[l, m]) ** 2
                    dlj = 1.0 if l == jj else 0.0
                    dnl = 1.0 if n == l else 0.0
                    add += w2 * g_lm * (dlj * dnl * unit(m, m)
                                        - 0.5 * dlj * unit(l, n) - 0.5 * dnl * unit(jj, l))
                    dmj = 1.0 if m == jj else 0.0
                    dnm = 1.0 if n == m else 0.0
                    add += w2 * gt_lm * (dmj * dnm * unit(l, l)
                                         - 0.5 * dmj * unit(m, n) - 0.5 * dnm * unit(jj, m))
            eps[jj::d, n::d] = (block + t1 * add) / d
    return eps


CHECKS = []


def check(name):
    def deco(fn):
        CHECKS.append((name, fn))
        return fn
    return deco


@check("kron against the elementwise definition")
def _check_kron(rng):
    a = rng.normal(size=(2, 3)) + 1j * rng.normal(size=(2, 3))
    b = rng.normal(size=(3, 2)) + 1j * rng.normal(size=(3, 2))
    k = linalg.kron(a, b)
    worst = 0.0
    for i in range(2):
        for jj in range(3):
            for p in range(3):
                for q in range(2):
                    worst = max(worst, abs(k[i * 3 + p, jj * 2 + q] - a[i, jj] * b[p, q]))
    return worst <= 1e-15, f"max entry deviation {worst:.2e}"


@check("eigendecomposition reconstruction, unitarity, trace identity")
def _check_eigen(rng):
    a = random_hermitian(rng, 9)
    dec = linalg.hermitian_eigen(a)
    scale = np.max(np.abs(a))
    recon = np.max(np.abs(dec.reconstruct() - a)) / scale
    unit = np.max(np.abs(dec.eigenvectors.conj().T @ dec.eigenvectors - np.eye(9)))
    tr = abs(np.sum(dec.eigenvalues) - np.trace(a).real)
    ok = recon <= 1e-10 and unit <= 1e-10 and tr <= 1e-10 * scale
    return ok, f"recon {recon:.2e}, unitarity {unit:.2e}, trace {tr:.2e}"


@check("trace norm: Hermitian path vs |diag|, unitary invariance")
def _check_trace_norm(rng):
    tn = linalg.trace_norm(np.diag([1.0, -2.0]).astype(complex))
    a = random_hermitian(rng, 6)
    u = linalg.hermitian_eigen(random_hermitian(rng, 6)).eigenvectors
    inv = abs(linalg.trace_norm(u @ a @ u.conj().T) - linalg.trace_norm(a))
    ok = abs(tn - 3.0) <= 1e-12 and inv <= 1e-9 * linalg.trace_norm(a)
    return ok, f"diag case {tn:.15g}, invariance drift {inv:.2e}"


@check("spin algebra [Sx, Sy] = i Sz for S up to 3")
def _check_spin_algebra(rng):
    worst = 0.0
    from .spin import spin_operators
    for twice_s in range(1, 7):
        ops = spin_operators(SpinQuantumNumber(twice_s))
        comm = ops["sx"] @ ops["sy"] - ops["sy"] @ ops["sx"] - 1j * ops["sz"]
        worst = max(worst, np.max(np.abs(comm)))
    return worst <= 1e-12, f"max commutator defect {worst:.2e}"


@check("driven Hamiltonian spectrum is the omega_s ladder")
def _check_ladder(rng):
    from .spin import build_hs
    worst = 0.0
    for twice_s in (1, 2, 3, 4, 5, 6):
        s = SpinQuantumNumber(twice_s)
        for _ in range(20):
            drive = DriveParameters(omega_s=1.0, alpha=rng.uniform(0, np.pi * 0.999),
                                    phi=rng.uniform(0, 2 * np.pi * 0.999))
            w = linalg.hermitian_eigenvalues(build_hs(s, drive))
            worst = max(worst, np.max(np.abs(w - s.m_values())))
    return worst <= 1e-10, f"max ladder deviation {worst:.2e}"


@check("coupling coefficient closed forms (S=1/2 and S=1)")
def _check_coupling_forms(rng):
    worst = 0.0
    half = SpinQuantumNumber(1)
    one = SpinQuantumNumber(2)
    for _ in range(20):
        a = rng.uniform(0, np.pi * 0.999)
        p = rng.uniform(0, 2 * np.pi * 0.999)
        drive = DriveParameters(1.0, a, p)
        c = build_model(half, drive, CouplingSpec.sz()).c.c
        worst = max(worst, abs(abs(c[0, 0]) - abs(np.cos(a)) / 2),
                    abs(abs(c[0, 1]) - abs(np.sin(a)) / 2))
        cm = build_model(half, drive, CouplingSpec.sminus()).c.c
        worst = max(worst, abs(abs(cm[0, 0]) - abs(np.sin(a)) / 2),
                    abs(abs(cm[0, 1]) - np.sin(a / 2) ** 2),
                    abs(abs(cm[1, 0]) - np.cos(a / 2) ** 2))
        c1 = build_model(one, drive, CouplingSpec.sz()).c.c
        worst = max(worst, np.max(np.abs(np.diag(c1) - np.array([1, 0, -1]) * np.cos(a))),
                    abs(abs(c1[0, 1]) - np.sqrt(2) / 2 * abs(np.sin(a))),
                    abs(c1[0, 2]), abs(c1[2, 0]))
    return worst <= 1e-12, f"max closed-form deviation {worst:.2e}"


@check("coupling magnitudes invariant under eigenvector phases")
def _check_phase_invariance(rng):
    s = SpinQuantumNumber(3)
    drive = DriveParameters(1.0, 0.9, 2.1)
    model = build_model(s, drive, CouplingSpec.sminus())
    from .spin import CouplingCoefficients
    worst = 0.0
    pi_op = CouplingSpec.sminus().resolve(s)
    for _ in range(20):
        phases = np.exp(1j * rng.uniform(0, 2 * np.pi, size=s.d))
        u2 = model.frame.u * phases[None, :]
        c2 = u2.conj().T @ pi_op @ u2
        worst = max(worst, np.max(np.abs(np.abs(c2) - np.abs(model.c.c))))
    return worst <= 1e-12, f"max |c| drift {worst:.2e}"


@check("generator trace preservation, Hermiticity, linearity")
def _check_generator_structure(rng):
    worst_tr, worst_h, worst_lin = 0.0, 0.0, 0.0
    for d in (2, 3, 4):
        snap = random_snapshot(rng, d)
        x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        y = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        out = apply_generator(x, snap)
        worst_tr = max(worst_tr, abs(np.trace(out)))
        h = apply_generator(x.conj().T, snap) - out.conj().T
        worst_h = max(worst_h, np.max(np.abs(h)))
        ab = apply_generator(2.0 * x - 1.5j * y, snap)
        lin = ab - (2.0 * apply_generator(x, snap) - 1.5j * apply_generator(y, snap))
        worst_lin = max(worst_lin, np.max(np.abs(lin)))
    ok = worst_tr <= 1e-12 and worst_h <= 1e-12 and worst_lin <= 1e-12
    return ok, f"trace {worst_tr:.2e}, herm {worst_h:.2e}, linearity {worst_lin:.2e}"


@check("generator closed-form action vs literal sandwich sum")
def _check_generator_reference(rng):
    worst = 0.0
    for d in (2, 3, 4, 5):
        snap = random_snapshot(rng, d)
        rho = random_density(rng, d)
        worst = max(worst, np.max(np.abs(apply_generator(rho, snap)
                                         - reference_apply_generator(rho, snap))))
    return worst <= 1e-12, f"max deviation {worst:.2e}"


@check("spin-1 specialization matches the general generator")
def _check_spin1(rng):
    model = build_model(SpinQuantumNumber(2), DriveParameters(1.0, 0.7, 0.3), CouplingSpec.sz())
    worst = 0.0
    for _ in range(50):
        snap = random_snapshot(rng, 3, c=model.c.c)
        rho = random_density(rng, 3)
        worst = max(worst, np.max(np.abs(apply_generator(rho, snap)
                                         - spin1_generator(rho, spin1_rates(snap)))))
    return worst <= 1e-12, f"max deviation {worst:.2e}"


@check("superoperator matrix reproduces the generator action")
def _check_superop(rng):
    worst = 0.0
    for d in (2, 3):
        snap = random_snapshot(rng, d)
        m = gen.superoperator_matrix(snap)
        rho = random_density(rng, d)
        v = (m @ rho.flatten(order="F")).reshape((d, d), order="F")
        worst = max(worst, np.max(np.abs(v - apply_generator(rho, snap))))
    return worst <= 1e-13, f"max deviation {worst:.2e}"


@check("epsilon construction: superoperator route vs structural sums")
def _check_epsilon_structural(rng):
    worst = 0.0
    for twice_s, kind in ((1, CouplingSpec.sz()), (2, CouplingSpec.sz()),
                          (3, CouplingSpec.sz()), (1, CouplingSpec.sminus()),
                          (2, CouplingSpec.sminus()), (3, CouplingSpec.sminus())):
        s = SpinQuantumNumber(twice_s)
        model = build_model(s, DriveParameters(1.0, 0.6, 1.2), kind)
        snap = random_snapshot(rng, s.d, c=model.c.c)
        t1 = 10 ** rng.uniform(-6, -2)
        e1 = div.epsilon_general(snap, t1).epsilon
        e2 = epsilon_structural(snap, t1)
        worst = max(worst, np.max(np.abs(e1 - e2)))
    return worst <= 1e-12, f"max deviation {worst:.2e}"


@check("epsilon closed form (spin 1) vs general construction")
def _check_epsilon_spin1(rng):
    model = build_model(SpinQuantumNumber(2), DriveParameters(1.0, 0.8, 0.4), CouplingSpec.sz())
    worst = 0.0
    for _ in range(50):
        snap = _spin1_snapshot_for(rng.normal(size=3), model.c.c)
        t1 = 10 ** rng.uniform(-6, -2)
        e1 = div.epsilon_general(snap, t1).epsilon
        e2 = div.epsilon_spin1_closed_form(spin1_rates(snap), t1).epsilon
        worst = max(worst, np.max(np.abs(e1 - e2)))
    return worst <= 1e-12, f"max deviation {worst:.2e}"


def _spin1_snapshot_for(gam, c):
    """A snapshot whose three spin-1 rates equal ``gam`` for coupling matrix c."""
    g = np.zeros(5)
    gt = np.zeros(5)
    gt[2] = gam[0] / abs(c[0, 0]) ** 2
    gt[3] = gam[1] / abs(c[1, 0]) ** 2
    g[3] = gam[2] / abs(c[0, 1]) ** 2
    return GeneratorSnapshot(time=0.0, c=c, lam0=0j, lam0_tilde=complex(gt[2] / 2.0),
                             gamma=g, gamma_tilde=gt)


@check("witness: numeric limit vs spin-1 closed form")
def _check_g_numeric(rng):
    model = build_model(SpinQuantumNumber(2), DriveParameters(1.0, 0.8, 0.4), CouplingSpec.sz())
    worst = 0.0
    for _ in range(200):
        snap = _spin1_snapshot_for(rng.normal(size=3), model.c.c)
        gn = div.g_numeric(snap)
        ga = div.g_analytic_spin1(spin1_rates(snap))
        worst = max(worst, abs(gn - ga) / max(abs(ga), 1e-9))
    return worst <= 1e-5, f"worst relative deviation {worst:.2e}"


@check("witness: difference-quotient estimator vs exact limit")
def _check_g_fd(rng):
    model = build_model(SpinQuantumNumber(2), DriveParameters(1.0, 0.8, 0.4), CouplingSpec.sz())
    worst = 0.0
    for _ in range(50):
        snap = _spin1_snapshot_for(rng.normal(size=3), model.c.c)
        scale = float(np.max(np.abs(snap.superop)))
        err = abs(div.g_finite_difference(snap) - div.g_numeric(snap))
        worst = max(worst, err / max(1.0, scale))
    return worst <= 1e-6, f"worst scaled deviation {worst:.2e}"


@check("dimension factor: recurrence vs closed form, monotone growth")
def _check_f_dim(rng):
    closed = all(div.f_dim(d) == (d + 1) * d * (d - 1) // 6 for d in range(2, 31))
    seeds = div.f_dim(2) == 1 and div.f_dim(3) == 4 and div.f_dim(4) == 10
    ratios = [div.f_dim(d) / d for d in range(2, 11)]
    mono = all(b > a for a, b in zip(ratios, ratios[1:]))
    return closed and seeds and mono, f"seeds {seeds}, closed-form {closed}, monotone {mono}"


@check("rate linearity: weight (r+1) equals weight r plus vacuum")
def _check_rate_linearity(rng):
    j = SpectralDensity(eta=0.1, exponent_s=1.0, omega_c=10.0)
    hot = BathState(temperature=1.0)
    cold = BathState(temperature=0.0)
    worst = 0.0
    for q in (-1, 0, 2):
        for t in (0.4, 3.0):
            full = lambda_rate(q, t, j, hot, 1.0, R_PLUS_ONE)
            thermal = lambda_rate(q, t, j, hot, 1.0, R)
            vacuum = lambda_rate(q, t, j, cold, 1.0, R_PLUS_ONE)
            worst = max(worst, abs(full - (thermal + vacuum)))
    return worst <= 1e-10, f"max decomposition defect {worst:.2e}"


@check("rate oracle: analytic inner integral vs 2-D trapezoid")
def _check_rate_oracle(rng):
    j = SpectralDensity(eta=0.1, exponent_s=1.0, omega_c=10.0)
    bath = BathState(temperature=1.0)
    val = lambda_rate(1, 3.0, j, bath, 1.0, R)
    ref = brute_force_lambda(1, 3.0, j, bath, 1.0, R, n_omega=4000, n_time=4000)
    rel = abs(val - ref) / abs(ref)
    return rel <= 1e-5, f"relative deviation {rel:.2e} at 4000^2 (oracle discretization ~7e-6)"


def brute_force_lambda(q, t, j, bath, omega_s, weight, n_omega, n_time, omega_max=None):
    """Dumb 2-D trapezoid of the original time x frequency double integral."""
    if omega_max is None:
        omega_max = 30.0 * max(1.0, j.omega_c / 10.0)
    w = np.linspace(0.0, omega_max, n_omega)
    jw = j(w)
    occ = np.zeros_like(w)
    if bath.temperature > 0:
        pos = w > 0
        occ[pos] = 1.0 / np.expm1(np.minimum(w[pos] / bath.temperature, 700.0))
    f = jw * (occ if weight == R else occ + 1.0)
    if w[0] == 0.0 and bath.temperature > 0 and j.exponent_s == 1.0:
        # the integrand J*r (and J*(r+1)) tends to eta*T at zero frequency
        f[0] = j.eta * bath.temperature
    trap = np.full(n_omega, w[1] - w[0])
    trap[0] *= 0.5
    trap[-1] *= 0.5
    fw = f * trap
    delta = w - q * omega_s
    t1 = np.linspace(0.0, t, n_time)
    dt = t1[1] - t1[0]
    step = np.exp(-1j * delta * dt)
    phase = np.exp(1j * delta * t)
    vals = np.empty(n_time, dtype=np.complex128)
    for i in range(n_time):
        if i % 256 == 0:
            phase = np.exp(1j * delta * (t - t1[i]))
        vals[i] = np.dot(fw, phase)
        phase = phase * step
    return complex(np.trapezoid(vals, t1))


@check("Markov limits of the decay rates")
def _check_markov(rng):
    j = SpectralDensity(eta=0.1, exponent_s=1.0, omega_c=2.0)
    bath = BathState(temperature=0.5)
    t = 200.0 / j.omega_c
    g1 = 2.0 * lambda_rate(1, t, j, bath, 1.0, R_PLUS_ONE).real
    target = 2.0 * np.pi * j(np.array([1.0]))[0] * (bath_mod.thermal_occupation(1.0, bath) + 1.0)
    rel1 = abs(g1 - target) / target
    g0 = 2.0 * lambda_rate(0, t, j, bath, 1.0, R).real
    # half-line frequency integral puts the zero-frequency resonance on the
    # boundary: the limit is pi * eta * T
    target0 = np.pi * j.eta * bath.temperature
    rel0 = abs(g0 - target0) / target0
    gm = 2.0 * lambda_rate(-1, t, j, bath, 1.0, R).real
    ok = rel1 <= 0.01 and rel0 <= 0.02 and abs(gm) <= 1e-2 * j.eta * 1.0
    return ok, f"resonant {rel1:.2e} (1%), dephasing {rel0:.2e} (2%), off-resonant {gm:.2e}"


@check("propagation: decoupled run is constant, dephasing keeps populations")
def _check_evolution(rng):
    s = SpinQuantumNumber(2)
    drive = DriveParameters(1.0, 0.4, 0.2)
    model = build_model(s, drive, CouplingSpec.sz())
    grid = np.linspace(0.0, 2.0, 2 * 50 + 1)
    free = rate_table(s, drive, SpectralDensity(eta=0.0, exponent_s=1.0, omega_c=10.0),
                      BathState(temperature=1.0), grid)
    rho0 = random_density(rng, 3)
    traj = evolve(InitialState.custom(rho0), model, free)
    drift = np.max(np.abs(traj.states - rho0[None]))
    model0 = build_model(s, DriveParameters(1.0, 0.0, 0.0), CouplingSpec.sz())
    tab = rate_table(s, model0.drive, SpectralDensity(eta=0.2, exponent_s=1.0, omega_c=5.0),
                     BathState(temperature=1.0), grid)
    diag0 = np.diag(random_density(rng, 3)).real
    traj2 = evolve(InitialState.custom(np.diag(diag0).astype(complex)), model0, tab)
    pop_drift = max(np.max(np.abs(np.diagonal(st).real - diag0)) for st in traj2.states)
    ok = drift <= 1e-14 and pop_drift <= 1e-10
    return ok, f"decoupled drift {drift:.2e}, population drift {pop_drift:.2e}"


@check("interaction-picture unwind preserves the spectrum")
def _check_frame(rng):
    s = SpinQuantumNumber(2)
    drive = DriveParameters(1.3, 0.5, 0.7)
    model = build_model(s, drive, CouplingSpec.sz())
    grid = np.linspace(0.0, 1.0, 2 * 40 + 1)
    tab = rate_table(s, drive, SpectralDensity(eta=0.1, exponent_s=1.0, omega_c=4.0),
                     BathState(temperature=1.0), grid)
    traj = evolve(InitialState.maximally_mixed(), model, tab)
    sch = schrodinger_frame(traj, model.frame, drive)
    worst = 0.0
    for a, b in zip(traj.states, sch.states):
        wa = linalg.hermitian_eigenvalues(0.5 * (a + a.conj().T))
        wb = linalg.hermitian_eigenvalues(0.5 * (b + b.conj().T))
        worst = max(worst, np.max(np.abs(wa - wb)))
    return worst <= 1e-12, f"max spectral drift {worst:.2e}"


@check("measure bookkeeping: known integrals and the divisible case")
def _check_measure(rng):
    t = np.linspace(0.0, 2.0, 2001)
    g = np.where(t <= 1.0, 1.0, 0.0)
    rep = div.n_rhp(g, t)
    ok1 = abs(rep.integral - 1.0) <= 1e-3 and abs(rep.n_rhp - rep.integral / (rep.integral + 1)) == 0.0
    rep0 = div.n_rhp(np.zeros_like(t), t)
    ok2 = rep0.integral == 0.0 and rep0.n_rhp == 0.0 and not rep0.truncation_flag
    return ok1 and ok2, f"unit block integral {rep.integral:.6f}, zero case N={rep0.n_rhp}"


def run_all(verbose_print=print):
    """Run every check; returns the number of failures."""
    rng = _rng()
    failures = 0
    for name, fn in CHECKS:
        try:
            ok, detail = fn(rng)
        except Exception as exc:  # noqa: BLE001 - a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        status = "PASS" if ok else "FAIL"
        if not ok:
            failures += 1
        verbose_print(f"[{status}] {name}: {detail}")
    return failures
