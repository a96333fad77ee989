"""Paraxial envelope solver for the effective fractional Schrodinger slab.

Covers the Mittag-Leffler longitudinal envelope Z(z) with its norm
asymptotics, sine-mode projection of odd initial data, assembly of the
field u(z, r), and the single-mode relaxation factor in physical time.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParityError
from .operators import ComplexSamples, FractionalOrders, Grid1D
from .special import MLParams, gamma_fn, mittag_leffler, rgamma_fn

_PARITY_TOL = 1e-8


@dataclass(frozen=True)
class SlabConfig:
    """Physical setup: box half-width, paraxial wavenumber, frequency over
    diffusivity, fractional orders, and the sine-series cutoff."""

    half_width: float
    wavenumber: float
    omega_beta: float
    orders: FractionalOrders
    mode_cutoff: int = 64

    def __post_init__(self):
        if not (self.half_width > 0.0):
            raise DomainError(f"half_width must be positive, got {self.half_width}")
        if self.wavenumber == 0.0:
            raise DomainError("wavenumber must be nonzero")
        if self.mode_cutoff < 1:
            raise DomainError(f"mode_cutoff must be >= 1, got {self.mode_cutoff}")

    def eigenvalue(self, m):
        return (m * np.pi / self.half_width) ** self.orders.beta

    def rate(self, m):
        """Envelope rate (omega_beta + e_m) / (2k) of mode m."""
        return (self.omega_beta + self.eigenvalue(m)) / (2.0 * self.wavenumber)


@dataclass(frozen=True)
class ZEnvelope:
    """Longitudinal envelope parameters: Z(0), rate c, and order gamma."""

    z0_value: complex
    rate: float
    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.rate):
            raise DomainError(f"rate must be finite, got {self.rate}")
        if not (0.0 < self.gamma <= 1.0):
            raise DomainError(f"gamma must lie in (0, 1], got {self.gamma}")

    @classmethod
    def for_mode(cls, cfg, m, z0_value=1.0):
        return cls(complex(z0_value), cfg.rate(m), cfg.orders.gamma)


def z_envelope(env, z):
    """Z(z) = Z(0) * E_gamma(i c z^gamma), evaluated directly in the complex
    plane."""
    if z < 0.0:
        raise DomainError(f"z must be >= 0, got {z}")
    if z == 0.0:
        return complex(env.z0_value)
    arg = complex(0.0, env.rate * z**env.gamma)
    res = mittag_leffler(MLParams(env.gamma, 1.0), arg)
    return env.z0_value * res.value


def z_envelope_parts(env, z):
    """(Re, Im) of Z(z) through the even/odd split of the envelope:
    A = E_{2g}(-u^2) and B = u E_{2g, g+1}(-u^2) with u = c z^g."""
    if z < 0.0:
        raise DomainError(f"z must be >= 0, got {z}")
    g = env.gamma
    if z == 0.0:
        a_val, b_val = 1.0, 0.0
    else:
        u = env.rate * z**g
        arg = complex(-(u * u), 0.0)
        a_val = mittag_leffler(MLParams(2.0 * g, 1.0), arg).value.real
        b_val = u * mittag_leffler(MLParams(2.0 * g, g + 1.0), arg).value.real
    w = env.z0_value * complex(a_val, b_val)
    return w.real, w.imag

def norm_z(env, z):
    """|Z(z)|^2 assembled from the real/imaginary split."""
    re, im = z_envelope_parts(env, z)
    return re * re + im * im


def norm_small_z(env, z):
    """Two-term small-z expansion of |Z(z)|^2; caller ensures c z^g << 1."""
    g = env.gamma
    c2 = env.rate * env.rate
    z2g = z ** (2.0 * g) if z > 0.0 else 0.0
    amp = abs(env.z0_value) ** 2
    return amp * (
        1.0
        - 2.0 * c2 * z2g / gamma_fn(2.0 * g + 1.0)
        + c2 * z2g / gamma_fn(g + 1.0) ** 2
    )


def norm_large_z(env, z):
    """Leading power-law decay |Z|^2 ~ Z(0)^2 c^-2 z^-2g / Gamma(1-g)^2.

    Vanishes identically at g = 1, where the evolution is unitary and the
    norm does not decay."""
    g = env.gamma
    amp = abs(env.z0_value) ** 2
    rg = rgamma_fn(1.0 - g) if g < 1.0 else 0.0
    if rg == 0.0:
        return 0.0
    if z <= 0.0:
        return math.inf
    return amp * env.rate ** (-2.0) * z ** (-2.0 * g) * rg * rg


@dataclass(frozen=True)
class ModeExpansion:
    """Sine-series coefficients A_m with their eigenvalues, bound to the
    sampling grid they were projected from."""

    config: SlabConfig
    grid: Grid1D
    coeffs: np.ndarray = field(repr=False)
    eigenvalues: np.ndarray = field(repr=False)

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.complex128, copy=True)
        eigs = np.array(self.eigenvalues, dtype=np.float64, copy=True)
        if coeffs.shape != eigs.shape or coeffs.ndim != 1:
            raise DomainError("coeffs and eigenvalues must be 1-d and congruent")
        coeffs.setflags(write=False)
        eigs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "eigenvalues", eigs)

    @property
    def n_modes(self):
        return self.coeffs.shape[0]


def even_part_fraction(u0):
    """l2 fraction of the even-about-origin component of the samples."""
    v = u0.values
    mirrored = np.roll(v[::-1], 1)  # index j -> sample at -r_j
    even = 0.5 * (v + mirrored)
    denom = np.linalg.norm(v)
    if denom == 0.0:
        return 0.0
    return float(np.linalg.norm(even) / denom)


def _sine_table(grid, n_modes):
    r = grid.nodes()
    m = np.arange(1, n_modes + 1)
    return np.sin(np.outer(m, np.pi * r / grid.half_width))


def project_initial(u0, n_modes, cfg):
    """Project odd initial data onto the first n_modes sine modes.

    A_m = (h/L) sum_j u0(r_j) sin(m pi r_j / L). Raises ParityError when the
    even component exceeds the tolerance the odd basis cannot represent.
    """
    if n_modes < 1:
        raise DomainError(f"n_modes must be >= 1, got {n_modes}")
    frac = even_part_fraction(u0)
    if frac > _PARITY_TOL:
        raise ParityError(
            f"initial data has even-part fraction {frac:.3e} "
            f"(tolerance {_PARITY_TOL:.0e}); the odd sine basis cannot represent it",
            even_fraction=frac,
        )
    grid = u0.grid
    table = _sine_table(grid, n_modes)
    coeffs = (grid.spacing / grid.half_width) * (table @ u0.values)
    eigs = cfg.eigenvalue(np.arange(1, n_modes + 1).astype(np.float64))
    return ModeExpansion(cfg, grid, coeffs, eigs)


def solve_field(cfg, expansion, z_values):
    """Assemble u(z, r) = sum_m A_m E_g(i c_m z^g) sin(m pi r / L) per z.

    Returns one ComplexSamples per entry of z_values.
    """
    grid = expansion.grid
    g = cfg.orders.gamma
    ml = MLParams(g, 1.0)
    rates = (cfg.omega_beta + expansion.eigenvalues) / (2.0 * cfg.wavenumber)
    table = _sine_table(grid, expansion.n_modes)
    fields = []
    for z in z_values:
        if z < 0.0:
            raise DomainError(f"z must be >= 0, got {z}")
        if z == 0.0:
            weights = expansion.coeffs
        else:
            zg = z**g
            env = np.array(
                [mittag_leffler(ml, complex(0.0, c * zg)).value for c in rates]
            )
            weights = expansion.coeffs * env
        fields.append(ComplexSamples(grid, weights @ table))
    return fields


def time_envelope(omega, alpha, t):
    """Relaxation factor E_alpha(omega t^alpha) of a single frequency mode."""
    if not (0.0 < alpha <= 1.0):
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    if t < 0.0:
        raise DomainError(f"t must be >= 0, got {t}")
    if t == 0.0:
        return 1.0
    res = mittag_leffler(MLParams(alpha, 1.0), complex(omega * t**alpha, 0.0))
    return float(res.value.real)
