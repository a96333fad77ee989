"""Command-line driver: mlf, eig, evolve, and verify subcommands.

Exit codes: 0 ok, 1 verify failure, 2 usage, 3 io, 4 parity. Output is CSV
(RFC-4180 style, header row, shortest round-trip float formatting) plus
optional minimal SVG line plots; no plotting stack is required.
"""

import argparse
import csv
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .eigenbox import degenerate_pair, eigen_residual, even_mode, odd_mode
from .errors import LevySlabError, ParityError, UsageError
from .operators import ComplexSamples, FractionalOrders, Grid1D, riesz_apply
from .solver import (
    ModeExpansion,
    SlabConfig,
    ZEnvelope,
    norm_large_z,
    norm_small_z,
    norm_z,
    project_initial,
    solve_field,
)
from .special import MLParams, mittag_leffler
from . import verify as verify_mod

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_PARITY = 4

_DEFAULTS = {
    "beta": 1.8,
    "L": 1.0,
    "k": 0.1,
    "omega_beta": 0.0,
    "n_grid": 4096,
    "modes": 64,
    "seed": verify_mod.DEFAULT_SEED,
    "out": "levyslab_out",
}


@dataclass
class RunConfig:
    subcommand: str
    beta: float = _DEFAULTS["beta"]
    L: float = _DEFAULTS["L"]
    k: float = _DEFAULTS["k"]
    omega_beta: float = _DEFAULTS["omega_beta"]
    n_grid: int = _DEFAULTS["n_grid"]
    mode_cutoff: int = _DEFAULTS["modes"]
    z_list: list = field(default_factory=lambda: [0.0, 0.5, 1.0, 2.0])
    output_path: str = _DEFAULTS["out"]
    seed: int = _DEFAULTS["seed"]
    family: str = "odd"
    u0_spec: str = "mode:1"
    quick: bool = False
    svg: bool = False
    ml_gamma: float = 0.8
    ml_delta: float = 1.0
    ml_z: complex = 0j

    @property
    def gamma(self):
        return self.beta - 1.0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x):
    """Shortest round-trip decimal for floats; plain str otherwise."""
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, (np.floating,)):
        return repr(float(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return str(x)


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_svg(path, x, ys, labels, width=640, height=360):
    """Minimal polyline plot, one path per series."""
    x = np.asarray(x, dtype=float)
    finite = [np.asarray(y, dtype=float) for y in ys]
    ymin = min(float(np.min(y)) for y in finite)
    ymax = max(float(np.max(y)) for y in finite)
    if ymax == ymin:
        ymax = ymin + 1.0
    xmin, xmax = float(np.min(x)), float(np.max(x))
    if xmax == xmin:
        xmax = xmin + 1.0
    pad = 30
    colors = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i, y in enumerate(finite):
        px = pad + (x - xmin) / (xmax - xmin) * (width - 2 * pad)
        py = height - pad - (y - ymin) / (ymax - ymin) * (height - 2 * pad)
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(px, py))
        color = colors[i % len(colors)]
        parts.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{pts}"/>')
        parts.append(
            f'<text x="{pad}" y="{14 + 14 * i}" fill="{color}" font-size="12">{labels[i]}</text>'
        )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts))


def _parse_config_file(path):
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values


def _build_parser():
    parser = _Parser(prog="levyslab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--beta", type=float, help="space order in (1, 2]")
    common.add_argument("--L", type=float, dest="L", help="box half-width")
    common.add_argument("--k", type=float, help="paraxial wavenumber")
    common.add_argument("--omega-beta", type=float, dest="omega_beta")
    common.add_argument("--n-grid", type=int, dest="n_grid")
    common.add_argument("--modes", type=int, dest="modes")
    common.add_argument("--out", help="output directory")
    common.add_argument("--config", help="flat key = value config file")
    common.add_argument("--seed", type=int)
    common.add_argument("--svg", action="store_true", help="also write SVG line plots")

    p_mlf = sub.add_parser("mlf", parents=[common], help="evaluate the Mittag-Leffler function")
    p_mlf.add_argument("--gamma", type=float, required=True)
    p_mlf.add_argument("--delta", type=float, required=True)
    p_mlf.add_argument("--z-re", type=float, default=0.0)
    p_mlf.add_argument("--z-im", type=float, default=0.0)

    p_eig = sub.add_parser("eig", parents=[common], help="emit eigenmode CSV data")
    p_eig.add_argument("--family", choices=("odd", "even", "degenerate"), default="odd")

    p_ev = sub.add_parser("evolve", parents=[common], help="emit field slices and a norm table")
    p_ev.add_argument("--u0", default="mode:1", help="mode:M, triangle, or a CSV sample file")
    p_ev.add_argument("--z", default="0,0.5,1,2", help="comma-separated z values")

    p_ver = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p_ver.add_argument("--quick", action="store_true", help="subset finishing in a few seconds")
    return parser


_CONFIG_KEYS = {
    "beta": float,
    "L": float,
    "k": float,
    "omega_beta": float,
    "n_grid": int,
    "modes": int,
    "seed": int,
    "out": str,
    "z": str,
    "family": str,
    "u0": str,
}


def parse_config(argv):
    """Resolve flags > LEVYSLAB_OUT (for the output dir) > config file > defaults."""
    parser = _build_parser()
    ns = parser.parse_args(argv)

    file_vals = {}
    if getattr(ns, "config", None):
        raw = _parse_config_file(ns.config)
        for key, val in raw.items():
            if key not in _CONFIG_KEYS:
                raise UsageError(f"unknown config key {key!r}")
            try:
                file_vals[key] = _CONFIG_KEYS[key](val)
            except ValueError as exc:
                raise UsageError(f"bad value for config key {key!r}: {val!r}") from exc

    def pick(flag_name, file_key, default):
        flag = getattr(ns, flag_name, None)
        if flag is not None:
            return flag
        if file_key in file_vals:
            return file_vals[file_key]
        return default

    out = pick("out", "out", None)
    if out is None:
        out = os.environ.get("LEVYSLAB_OUT", _DEFAULTS["out"])

    # eig emits one file per mode, so its default mode count stays small
    modes_default = 3 if ns.subcommand == "eig" else _DEFAULTS["modes"]
    cfg = RunConfig(
        subcommand=ns.subcommand,
        beta=pick("beta", "beta", _DEFAULTS["beta"]),
        L=pick("L", "L", _DEFAULTS["L"]),
        k=pick("k", "k", _DEFAULTS["k"]),
        omega_beta=pick("omega_beta", "omega_beta", _DEFAULTS["omega_beta"]),
        n_grid=pick("n_grid", "n_grid", _DEFAULTS["n_grid"]),
        mode_cutoff=pick("modes", "modes", modes_default),
        output_path=out,
        seed=pick("seed", "seed", _DEFAULTS["seed"]),
        svg=bool(getattr(ns, "svg", False)),
    )
    if ns.subcommand == "eig":
        cfg.family = pick("family", "family", "odd")
    if ns.subcommand == "evolve":
        cfg.u0_spec = pick("u0", "u0", "mode:1")
        zspec = pick("z", "z", "0,0.5,1,2")
        try:
            cfg.z_list = [float(tok) for tok in str(zspec).split(",") if tok.strip()]
        except ValueError as exc:
            raise UsageError(f"bad --z list: {zspec!r}") from exc
        if any(z < 0 for z in cfg.z_list):
            raise UsageError("z values must be >= 0")
    if ns.subcommand == "verify":
        cfg.quick = bool(getattr(ns, "quick", False))
    if ns.subcommand == "mlf":
        cfg.ml_gamma = ns.gamma
        cfg.ml_delta = ns.delta
        cfg.ml_z = complex(ns.z_re, ns.z_im)

    _validate(cfg)
    return cfg


def _validate(cfg):
    if cfg.subcommand in ("eig", "evolve"):
        if not (1.0 < cfg.beta <= 2.0):
            raise UsageError(f"beta must lie in (1, 2], got {cfg.beta}")
        if cfg.L <= 0:
            raise UsageError(f"L must be positive, got {cfg.L}")
        if cfg.k == 0:
            raise UsageError("k must be nonzero")
        if cfg.n_grid < 8 or (cfg.n_grid & (cfg.n_grid - 1)) != 0:
            raise UsageError(f"n-grid must be a power of two >= 8, got {cfg.n_grid}")
        if cfg.mode_cutoff < 1:
            raise UsageError(f"modes must be >= 1, got {cfg.mode_cutoff}")
    if cfg.subcommand == "mlf":
        if cfg.ml_gamma <= 0 or cfg.ml_delta <= 0:
            raise UsageError("gamma and delta must be positive")


def _slab_config(cfg):
    orders = FractionalOrders(0.5, cfg.beta)
    return SlabConfig(cfg.L, cfg.k, cfg.omega_beta, orders, cfg.mode_cutoff)


def emit_mlf(cfg):
    res = mittag_leffler(MLParams(cfg.ml_gamma, cfg.ml_delta), cfg.ml_z)
    print("gamma,delta,z_re,z_im,value_re,value_im,est_abs_error,regime")
    print(
        ",".join(
            [
                _fmt(cfg.ml_gamma),
                _fmt(cfg.ml_delta),
                _fmt(cfg.ml_z.real),
                _fmt(cfg.ml_z.imag),
                _fmt(res.value.real),
                _fmt(res.value.imag),
                _fmt(res.est_abs_error),
                res.regime,
            ]
        )
    )
    return EXIT_OK


def _mode_csv(path, grid, analytic, applied_over_e, svg=False):
    r = grid.nodes()
    psi = analytic.values.real
    over = applied_over_e.real
    rows = zip(r, psi, over, over - psi)
    _write_csv(path, ["r", "psi_analytic", "psi_operator_over_e", "diff"], rows)
    if svg:
        _write_svg(
            path[:-4] + ".svg",
            r,
            [psi, over],
            ["psi_analytic", "psi_operator_over_e"],
        )


def emit_eig(cfg):
    grid = Grid1D(cfg.L, cfg.n_grid)
    outdir = cfg.output_path
    os.makedirs(outdir, exist_ok=True)
    n_modes = cfg.mode_cutoff
    summary = []
    if cfg.family == "degenerate":
        for m in range(1, n_modes + 1):
            ev = (m * np.pi / cfg.L) ** cfg.beta
            psi_c, psi_s = degenerate_pair(m, grid)
            for tag, samples in (("c", psi_c), ("s", psi_s)):
                applied = riesz_apply(samples, cfg.beta)
                _mode_csv(
                    os.path.join(outdir, f"eig_degenerate_m{m}{tag}.csv"),
                    grid,
                    samples,
                    applied.values / ev,
                    svg=cfg.svg,
                )
                summary.append((f"{m}{tag}", ev, eigen_residual(samples, cfg.beta, ev)))
    else:
        factory = odd_mode if cfg.family == "odd" else even_mode
        first = 1 if cfg.family == "odd" else 0
        for m in range(first, first + n_modes):
            mode = factory(m, grid, cfg.beta)
            applied = riesz_apply(mode.samples, cfg.beta)
            _mode_csv(
                os.path.join(outdir, f"eig_{cfg.family}_m{m}.csv"),
                grid,
                mode.samples,
                applied.values / mode.eigenvalue,
                svg=cfg.svg,
            )
            summary.append((m, mode.eigenvalue, eigen_residual(mode.samples, cfg.beta, mode.eigenvalue)))
    _write_csv(
        os.path.join(outdir, f"eig_{cfg.family}_summary.csv"),
        ["m", "eigenvalue", "residual"],
        summary,
    )
    print(f"wrote {len(summary)} mode files to {outdir}")
    return EXIT_OK


def _initial_condition(cfg, grid):
    spec = cfg.u0_spec.strip()
    r = grid.nodes()
    L = grid.half_width
    if spec.startswith("mode:"):
        try:
            m = int(spec.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(f"bad u0 spec {spec!r}") from exc
        if m < 1:
            raise UsageError(f"u0 mode index must be >= 1, got {m}")
        return ComplexSamples(grid, np.sin(m * np.pi * r / L))
    if spec == "triangle":
        # odd triangular pulse peaking at +-L/2
        vals = np.where(
            np.abs(r) <= L / 2.0,
            2.0 * r / L,
            np.sign(r) * 2.0 * (1.0 - np.abs(r) / L),
        )
        return ComplexSamples(grid, vals)
    if os.path.exists(spec):
        data = np.genfromtxt(spec, delimiter=",", names=True)
        names = data.dtype.names or ()
        if "re_u" not in names:
            raise UsageError(f"sample file {spec!r} needs an re_u column")
        re = np.atleast_1d(data["re_u"])
        im = np.atleast_1d(data["im_u"]) if "im_u" in names else np.zeros_like(re)
        if re.shape[0] != grid.n_points:
            raise UsageError(
                f"sample file has {re.shape[0]} rows, grid needs {grid.n_points}"
            )
        return ComplexSamples(grid, re + 1j * im)
    raise UsageError(f"unknown u0 spec {spec!r} (not a builtin, not a file)")


def emit_evolve(cfg):
    grid = Grid1D(cfg.L, cfg.n_grid)
    slab = _slab_config(cfg)
    u0 = _initial_condition(cfg, grid)
    expansion = project_initial(u0, cfg.mode_cutoff, slab)
    outdir = cfg.output_path
    os.makedirs(outdir, exist_ok=True)

    fields = solve_field(slab, expansion, cfg.z_list)
    r = grid.nodes()
    for i, (z, fld) in enumerate(zip(cfg.z_list, fields)):
        vals = fld.values
        rows = zip(r, vals.real, vals.imag, np.abs(vals) ** 2)
        path = os.path.join(outdir, f"field_{i:03d}_z{z:g}.csv")
        _write_csv(path, ["r", "re_u", "im_u", "abs2_u"], rows)
        if cfg.svg:
            _write_svg(path[:-4] + ".svg", r, [vals.real, vals.imag], ["re_u", "im_u"])

    dominant = int(np.argmax(np.abs(expansion.coeffs))) + 1
    env = ZEnvelope(
        expansion.coeffs[dominant - 1],
        slab.rate(dominant),
        slab.orders.gamma,
    )
    rows = [
        (z, norm_z(env, z), norm_small_z(env, z), norm_large_z(env, z))
        for z in cfg.z_list
    ]
    _write_csv(
        os.path.join(outdir, "norms.csv"),
        ["z", "norm", "norm_small_z", "norm_large_z"],
        rows,
    )
    print(f"wrote {len(fields)} field slices and norms.csv to {outdir} (dominant mode {dominant})")
    return EXIT_OK


def run_verify(cfg):
    results = verify_mod.run_all(seed=cfg.seed, quick=cfg.quick)
    print("name,status,measured,threshold")
    print(verify_mod.format_summary(results), end="")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAIL


def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    try:
        cfg = parse_config(argv)
        if cfg.subcommand == "mlf":
            return emit_mlf(cfg)
        if cfg.subcommand == "eig":
            return emit_eig(cfg)
        if cfg.subcommand == "evolve":
            return emit_evolve(cfg)
        if cfg.subcommand == "verify":
            return run_verify(cfg)
        raise UsageError(f"unknown subcommand {cfg.subcommand!r}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParityError as exc:
        frac = f" (even-part fraction {exc.even_fraction:.3e})" if exc.even_fraction else ""
        print(f"parity error: {exc}{frac}", file=sys.stderr)
        return EXIT_PARITY
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except LevySlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAIL


def run():
    sys.exit(main())
