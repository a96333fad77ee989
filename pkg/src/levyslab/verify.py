"""Built-in verification suite.

Each criterion returns a CriterionResult with the binding measured value and
its threshold; the CLI `verify` subcommand and the acceptance tests both run
through this module so there is a single source of truth for the bars.
"""

import math
from dataclasses import dataclass

import numpy as np

from .eigenbox import degenerate_pair, eigen_residual, even_mode, odd_mode, select_by_boundary
from .operators import (
    ComplexSamples,
    FractionalOrders,
    Grid1D,
    gl_deriv,
    l1_caputo_all_nodes,
    l1_caputo_from_samples,
    riesz_apply,
    rl_deriv,
)
from .solver import SlabConfig, ZEnvelope, norm_large_z, norm_small_z, norm_z
from .special import MLParams, gamma_fn, ml_eval_array, mittag_leffler

DEFAULT_SEED = 20240817


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    detail: str = ""

    def summary_line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{self.name},{status},{self.measured!r},{self.threshold!r}"


def _result(name, measured, threshold, larger_is_better=False, detail=""):
    ok = measured >= threshold if larger_is_better else measured <= threshold
    return CriterionResult(name, bool(ok), float(measured), float(threshold), detail)


def check_eig_odd(beta=1.8, L=1.0, n=4096, modes=(1, 2, 3)):
    """Spectral verification of the odd sine family."""
    grid = Grid1D(L, n)
    worst = 0.0
    for m in modes:
        mode = odd_mode(m, grid, beta)
        res = eigen_residual(mode.samples, beta, mode.eigenvalue)
        applied = riesz_apply(mode.samples, beta)
        dev = float(np.max(np.abs(applied.values / mode.eigenvalue - mode.samples.values)))
        worst = max(worst, res, dev)
    return _result("eig_odd_fft", worst, 1e-10, detail=f"modes {modes}")


def check_eig_degenerate(beta=1.8, L=1.0, n=4096, modes=(1, 2, 3, 4)):
    """Both shifted members carry the shared odd eigenvalue; walls select."""
    grid = Grid1D(L, n)
    worst = 0.0
    selection_ok = True
    for m in modes:
        ev = (m * np.pi / L) ** beta
        psi_c, psi_s = degenerate_pair(m, grid)
        worst = max(
            worst,
            eigen_residual(psi_c, beta, ev),
            eigen_residual(psi_s, beta, ev),
        )
        chosen = select_by_boundary((psi_c, psi_s), m)
        expected = psi_s if m % 2 == 0 else psi_c
        if chosen is not expected:
            selection_ok = False
    res = _result("eig_degenerate", worst, 1e-10, detail=f"modes {modes}")
    if not selection_ok:
        res = CriterionResult(res.name, False, res.measured, res.threshold, "boundary selection wrong")
    return res


def check_eig_even_failure(beta=1.8, L=1.0, n=4096):
    """The even family is not 2L-periodic; the FFT residual must stay large."""
    grid = Grid1D(L, n)
    mode = even_mode(0, grid, beta)
    res = eigen_residual(mode.samples, beta, mode.eigenvalue)
    return _result("eig_even_fft_fails", res, 0.1, larger_is_better=True)


def check_ml_identities(seed=DEFAULT_SEED):
    """Exponential and cosine reductions plus normalization at the origin."""
    rng = np.random.default_rng(seed)
    n = 500
    zr = rng.uniform(-3.0, 3.0, size=4 * n)
    zi = rng.uniform(-3.0, 3.0, size=4 * n)
    z = (zr + 1j * zi)[np.hypot(zr, zi) <= 3.0][:n]
    p11 = MLParams(1.0, 1.0)
    dev_exp = max(abs(mittag_leffler(p11, zz).value - np.exp(zz)) for zz in z)
    xs = np.linspace(0.0, 3.0, 100)
    p21 = MLParams(2.0, 1.0)
    dev_cos = max(
        abs(mittag_leffler(p21, complex(-x * x, 0.0)).value - math.cos(x)) for x in xs
    )
    dev_norm = 0.0
    for g, d in ((0.5, 1.0), (0.7, 1.3), (0.9, 0.8), (1.0, 1.0), (1.6, 1.95), (0.7, 1.0)):
        got = mittag_leffler(MLParams(g, d), 0.0).value
        dev_norm = max(dev_norm, abs(got - 1.0 / gamma_fn(d)))
    # report the worst margin: normalization carries a tighter bar
    measured = max(dev_exp, dev_cos, dev_norm * (1e-10 / 1e-14))
    detail = f"exp {dev_exp:.2e}, cos {dev_cos:.2e}, norm {dev_norm:.2e}"
    return _result("ml_identities", measured, 1e-10, detail=detail)


def check_caputo_eigenfunction(step=1e-4):
    """The ML relaxation profile reproduces itself under the Caputo operator."""
    worst = 0.0
    lam = -1.0
    for g in (0.5, 0.7, 0.9):
        p = MLParams(g, 1.0)
        for x in (0.5, 1.0):
            n = int(round(x / step))
            ys = x * np.arange(n + 1) / n
            args = lam * ys**g
            fs = ml_eval_array(p, args.astype(np.complex128)).real
            lhs = l1_caputo_from_samples(fs, x / n, g)
            rhs = lam * fs[-1]
            worst = max(worst, abs(lhs - rhs) / abs(rhs))
    return _result("caputo_eigenfunction", worst, 1e-3)


def check_power_rule(step=1e-4, gl_step=1e-3):
    """RL quadrature against the monomial rule, with the GL oracle alongside."""
    worst_rl = 0.0
    worst_gl = 0.0
    for pexp in (1, 2, 3):
        for alpha in (0.3, 0.5, 0.8):
            exact = gamma_fn(pexp + 1.0) / gamma_fn(pexp + 1.0 - alpha)
            got = rl_deriv(lambda y, p=pexp: y**p, alpha, 1.0, step)
            worst_rl = max(worst_rl, abs(got - exact) / abs(exact))
            n = int(round(1.0 / gl_step))
            ys = np.arange(n + 1) / n
            gl = gl_deriv(ys**pexp, alpha, 1.0 / n)[-1]
            worst_gl = max(worst_gl, abs(gl - exact) / abs(exact))
    measured = max(worst_rl, worst_gl * (1e-3 / 1e-2))
    return _result(
        "power_rule", measured, 1e-3, detail=f"rl {worst_rl:.2e}, gl {worst_gl:.2e}"
    )


def check_norm_decay():
    """Power-law tail and small-z expansion of the envelope norm."""
    worst_ratio_dev = 0.0
    worst_small = 0.0
    for g in (0.5, 0.8):
        for c in (1.0, 2.0):
            env = ZEnvelope(1.0, c, g)
            for u in (1e3, 3e3, 1e4):
                z = (u / c) ** (1.0 / g)
                ratio = norm_z(env, z) / norm_large_z(env, z)
                worst_ratio_dev = max(worst_ratio_dev, abs(ratio - 1.0))
            for u in (0.05, 0.02):
                z = (u / c) ** (1.0 / g)
                worst_small = max(worst_small, abs(norm_small_z(env, z) - norm_z(env, z)))
    measured = max(worst_ratio_dev, worst_small * (0.02 / 1e-4))
    return _result(
        "norm_decay",
        measured,
        0.02,
        detail=f"tail dev {worst_ratio_dev:.2e}, small-z dev {worst_small:.2e}",
    )


def check_limits():
    """Unitary evolution at gamma=1 and the classical spectrum at beta=2."""
    drift = 0.0
    for c in (0.5, 1.0, 5.0, 49.348022005446793):
        env = ZEnvelope(1.0, c, 1.0)
        for z in np.linspace(0.0, 10.0, 41):
            drift = max(drift, abs(norm_z(env, z) - 1.0))
    ev_dev = 0.0
    for L in (0.5, 1.0, 2.0):
        cfg = SlabConfig(L, 0.1, 0.0, FractionalOrders(0.5, 2.0))
        for m in range(1, 9):
            exact = (m * math.pi / L) ** 2
            ev_dev = max(ev_dev, abs(cfg.eigenvalue(m) - exact) / exact)
    measured = max(drift, ev_dev * (1e-9 / 1e-12))
    return _result(
        "unitary_classical_limits",
        measured,
        1e-9,
        detail=f"norm drift {drift:.2e}, eigenvalue dev {ev_dev:.2e}",
    )


def check_fse_residual(step=1e-3, z_lo=0.1, z_hi=2.0):
    """Single-mode envelope satisfies the longitudinal equation under L1."""
    beta, L, k, omega = 1.8, 1.0, 0.1, 0.0
    cfg = SlabConfig(L, k, omega, FractionalOrders(0.5, beta))
    g = cfg.orders.gamma
    env = ZEnvelope(1.0, cfg.rate(1), g)
    n = int(round(z_hi / step))
    zs = z_hi * np.arange(n + 1) / n
    p = MLParams(g, 1.0)
    f = np.empty(n + 1, dtype=np.complex128)
    f[0] = 1.0
    for i in range(1, n + 1):
        f[i] = mittag_leffler(p, complex(0.0, env.rate * zs[i] ** g)).value
    d = l1_caputo_all_nodes(f, z_hi / n, g)
    mask = zs >= z_lo
    coeff = cfg.omega_beta + cfg.eigenvalue(1)
    resid = 2j * k * d[mask] + coeff * f[mask]
    rel = float(np.linalg.norm(resid) / np.linalg.norm(coeff * f[mask]))
    return _result("fse_residual", rel, 1e-2)


def run_core(seed=DEFAULT_SEED, quick=False):
    checks = [
        check_eig_odd,
        check_eig_degenerate,
        check_eig_even_failure,
        lambda: check_ml_identities(seed=seed),
        check_limits,
    ]
    if not quick:
        checks += [check_caputo_eigenfunction, check_power_rule, check_norm_decay, check_fse_residual]
    return [c() for c in checks]


def format_summary(results):
    lines = [r.summary_line() for r in sorted(results, key=lambda r: r.name)]
    return "\n".join(lines) + "\n"


def _determinism_result(first_summary, seed, quick):
    second = format_summary(run_core(seed=seed, quick=quick))
    same = first_summary == second
    return CriterionResult("determinism", same, 0.0 if same else 1.0, 0.0, "byte comparison")


def check_determinism(seed=DEFAULT_SEED, quick=False):
    """Two passes with the same seed must produce identical summaries."""
    first = format_summary(run_core(seed=seed, quick=quick))
    return _determinism_result(first, seed, quick)


def run_all(seed=DEFAULT_SEED, quick=False):
    results = run_core(seed=seed, quick=quick)
    results.append(_determinism_result(format_summary(results), seed, quick))
    return results
