"""Command-line front end: verification sweeps as machine-readable tables.

Subcommands emit CSV tables (UTF-8, comma, LF, header row) whose first
line is the run manifest as a '#'-prefixed JSON comment, plus a
``.summary.json`` next to each table.  Floats are printed with 17
significant digits so a rerun with the same manifest is bit-identical.
Wall-clock duration lives only in the JSON summary: embedding it in the
CSV would break that rerun contract.

Exit codes: 0 success, 1 numerical failure (quadrature or convergence
guards), 2 usage error.

Thread control: set QUATGAMMA_THREADS to pin the BLAS/OpenMP pool size.
It is applied before numpy is first imported, which is why every
numerical import below lives inside its command function.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
import time
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from ._errors import AliasingError, DecayError, NonConvergenceError, QuadratureError

_THREAD_VARS = (
    "OMP_NUM_THREADS",
    "OPENBLAS_NUM_THREADS",
    "MKL_NUM_THREADS",
    "NUMEXPR_NUM_THREADS",
)


class _UsageError(ValueError):
    """Semantic argument failure: reported on stderr with exit code 2."""


# ------------------------------------------------------------------ plumbing


def _apply_thread_env() -> None:
    want = os.environ.get("QUATGAMMA_THREADS")
    if not want:
        return
    for var in _THREAD_VARS:
        os.environ.setdefault(var, want)


def _manifest(command: str, **params: object) -> Dict[str, object]:
    out: Dict[str, object] = {"command": command, "version": __version__}
    out.update(params)
    return out


def _cell(value: object) -> str:
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def _write_csv(
    path: str,
    manifest: Dict[str, object],
    header: Sequence[str],
    rows: Sequence[Sequence[object]],
) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# " + json.dumps(manifest, sort_keys=True) + "\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_cell(c) for c in row) + "\n")


def _summary_path(out: str) -> str:
    return re.sub(r"\.csv$", "", out) + ".summary.json"


def _write_json(path: str, payload: Dict[str, object]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _parse_s_grid(text: str) -> List[complex]:
    """'RxM' -> R interior real parts i/(R+1) times M imaginary parts on
    [-2, 2] (M = 1 collapses to the real axis).  '0x0' is the legal empty
    grid."""
    m = re.fullmatch(r"(\d+)x(\d+)", text)
    if m is None:
        raise _UsageError(f"--s-grid must look like 20x20, got {text!r}")
    n_re, n_im = int(m.group(1)), int(m.group(2))
    if n_re == 0 or n_im == 0:
        return []
    sigmas = [i / (n_re + 1) for i in range(1, n_re + 1)]
    if n_im == 1:
        imags = [0.0]
    else:
        imags = [-2.0 + 4.0 * j / (n_im - 1) for j in range(n_im)]
    return [complex(s, t) for s in sigmas for t in imags]


def _parse_lambdas(text: str) -> Tuple[float, ...]:
    try:
        vals = tuple(float(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise _UsageError(f"--lambda-list must be comma-separated reals, got {text!r}")
    if not vals:
        raise _UsageError("--lambda-list is empty")
    return vals


def _tau_grid(args: argparse.Namespace):
    if None in (args.tau_min, args.tau_max, args.tau_step):
        raise _UsageError("--tau-min, --tau-max and --tau-step are all required")
    if args.tau_step <= 0.0:
        raise _UsageError("--tau-step must be positive")
    if args.tau_max < args.tau_min:
        raise _UsageError("--tau-max must be at least --tau-min")
    import numpy as np

    count = int(math.floor((args.tau_max - args.tau_min) / args.tau_step + 0.5)) + 1
    return args.tau_min + args.tau_step * np.arange(count)


def _sector_range(args: argparse.Namespace) -> range:
    if args.n_min < 0:
        raise _UsageError("--n-min must be >= 0")
    if args.n_max < args.n_min:
        raise _UsageError("--n-max must be at least --n-min")
    return range(args.n_min, args.n_max + 1)


def _seeded_probes(count: int, seed: int, lo: float = 0.4, hi: float = 0.9):
    import numpy as np

    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(count, 4))
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    pts *= (lo + (hi - lo) * rng.random(count))[:, None]
    return pts


# ------------------------------------------------------------------ commands


def cmd_gamma_table(args: argparse.Namespace) -> int:
    start = time.monotonic()
    sectors = _sector_range(args)
    tau_mode = not (args.tau_min is None and args.tau_max is None and args.tau_step is None)
    if tau_mode == (args.s_grid is not None):
        raise _UsageError("give either --s-grid or the --tau-min/--tau-max/--tau-step trio")

    import numpy as np

    from .specfun import gamma_factor

    if tau_mode:
        taus = _tau_grid(args)
        svals = 0.5 + 1j * taus
        manifest = _manifest(
            "gamma-table",
            n_min=args.n_min,
            n_max=args.n_max,
            tau_min=args.tau_min,
            tau_max=args.tau_max,
            tau_step=args.tau_step,
        )
    else:
        svals = np.asarray(_parse_s_grid(args.s_grid), dtype=complex)
        manifest = _manifest(
            "gamma-table", n_min=args.n_min, n_max=args.n_max, s_grid=args.s_grid
        )

    rows = []
    unit_err = 0.0
    for n in sectors:
        if len(svals) == 0:
            break
        vals = np.atleast_1d(gamma_factor(n, svals))
        mags = np.abs(vals)
        if tau_mode:
            unit_err = max(unit_err, float(np.max(np.abs(mags - 1.0))))
        for s, val, mag in zip(svals, vals, mags):
            rows.append((n, s.real, s.imag, val.real, val.imag, mag))

    _write_csv(args.out, manifest, ("N", "re_s", "im_s", "re_gamma", "im_gamma", "abs_gamma"), rows)
    summary: Dict[str, object] = {
        "manifest": manifest,
        "duration_seconds": time.monotonic() - start,
        "rows": len(rows),
    }
    if tau_mode:
        summary["max_unit_modulus_error"] = unit_err
    _write_json(_summary_path(args.out), summary)
    return 0


def cmd_spectral_scan(args: argparse.Namespace) -> int:
    start = time.monotonic()
    sectors = _sector_range(args)

    import numpy as np

    from .specfun import h_multiplier, k_multiplier

    taus = _tau_grid(args)
    manifest = _manifest(
        "spectral-scan",
        n_min=args.n_min,
        n_max=args.n_max,
        tau_min=args.tau_min,
        tau_max=args.tau_max,
        tau_step=args.tau_step,
    )

    rows = []
    min_h = math.inf
    min_h_at = (0, 0.0)
    max_k = -math.inf
    max_k_at = (0, 0.0)
    for n in sectors:
        h = np.atleast_1d(h_multiplier(n, taus))
        k = np.atleast_1d(k_multiplier(n, taus))
        i = int(np.argmin(h))
        if h[i] < min_h:
            min_h, min_h_at = float(h[i]), (n, float(taus[i]))
        j = int(np.argmax(np.abs(k)))
        if abs(k[j]) > max_k:
            max_k, max_k_at = float(abs(k[j])), (n, float(taus[j]))
        for t, hv, kv in zip(taus, h, k):
            rows.append((n, float(t), float(hv), float(kv)))

    _write_csv(args.out, manifest, ("N", "tau", "h", "k"), rows)
    _write_json(
        _summary_path(args.out),
        {
            "manifest": manifest,
            "duration_seconds": time.monotonic() - start,
            "rows": len(rows),
            "min_h": min_h,
            "min_h_at": list(min_h_at),
            "max_abs_k": max_k,
            "max_abs_k_at": list(max_k_at),
        },
    )
    return 0


def cmd_functional_eq(args: argparse.Namespace) -> int:
    start = time.monotonic()
    sectors = _sector_range(args)
    svals = _parse_s_grid(args.s_grid)
    manifest = _manifest(
        "functional-eq", n_min=args.n_min, n_max=args.n_max, s_grid=args.s_grid
    )

    from .additive_oracle import (
        functional_equation_residual,
        gaussian_moment,
        gaussian_moment_quadrature,
    )

    rows = []
    max_fe = None
    max_quad = None
    for n in sectors:
        for s in svals:
            fe = functional_equation_residual(n, s)
            closed = gaussian_moment(n, s)
            quad = abs(gaussian_moment_quadrature(n, s) - closed) / abs(closed)
            rows.append((n, s.real, s.imag, float(fe), float(quad)))
            max_fe = fe if max_fe is None else max(max_fe, fe)
            max_quad = quad if max_quad is None else max(max_quad, quad)

    _write_csv(
        args.out,
        manifest,
        ("N", "re_s", "im_s", "funceq_residual", "quad_residual"),
        rows,
    )
    _write_json(
        _summary_path(args.out),
        {
            "manifest": manifest,
            "duration_seconds": time.monotonic() - start,
            "rows": len(rows),
            "max_funceq_residual": max_fe,
            "max_quad_residual": max_quad,
        },
    )
    return 0


def cmd_oracle_check(args: argparse.Namespace) -> int:
    start = time.monotonic()
    if args.probes < 1:
        raise _UsageError("--probes must be at least 1")
    if args.grid_m < 3 or args.grid_m % 2 == 0:
        raise _UsageError("--grid-m must be an odd integer >= 3")
    if args.grid_l <= 0.0:
        raise _UsageError("--grid-l must be positive")

    import numpy as np

    from .additive_oracle import Grid4D, brute_fourier, isotypic_grid_function, omega_grid_function
    from .gamma_op import IsotypicFunction, fourier_transform, to_additive

    manifest = _manifest(
        "oracle-check",
        grid_m=args.grid_m,
        grid_l=args.grid_l,
        probes=args.probes,
        seed=args.seed,
    )
    pts = _seeded_probes(args.probes, args.seed)
    exact = np.exp(-2.0 * np.pi * np.sum(pts * pts, axis=1))

    def self_dual_error(m: int) -> float:
        sampled = omega_grid_function(Grid4D(args.grid_l, m))
        got = brute_fourier(sampled, pts)
        return float(np.max(np.abs(got - exact) / exact))

    box = Grid4D(args.grid_l, args.grid_m)
    per_sector: Dict[str, float] = {}
    # narrow profile: its additive tail clears the box-boundary decay guard
    for n in (0, 1, 2):
        f = IsotypicFunction.from_log_function(
            n, lambda v: np.exp(-v**2 / (2.0 * 0.45**2))
        )
        got = brute_fourier(isotypic_grid_function(box, f), pts)
        want = to_additive(fourier_transform(f)).evaluate_points(pts)
        per_sector[str(n)] = float(np.max(np.abs(got - want) / np.abs(want)))

    payload: Dict[str, object] = {
        "manifest": manifest,
        "duration_seconds": time.monotonic() - start,
        "self_dual_error": self_dual_error(args.grid_m),
        "self_dual_error_m_halved": self_dual_error(max(3, (args.grid_m // 2) | 1)),
        "multiplier_vs_brute": per_sector,
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    if args.out:
        _write_json(args.out, payload)
    return 0


def cmd_trace_sweep(args: argparse.Namespace) -> int:
    start = time.monotonic()
    if args.n_min < 0:
        raise _UsageError("--n-min must be >= 0")
    if args.profile_width <= 0.0:
        raise _UsageError("--profile-width must be positive")
    if args.tol <= 0.0:
        raise _UsageError("--tol must be positive")
    lambdas = _parse_lambdas(args.lambda_list)

    import numpy as np

    from .connes_trace import TraceConfig, fit_trace_expansion, residual_sweep, trace_direct
    from .gamma_op import IsotypicFunction, op_H, value_at_identity

    scale = args.profile_scale
    width = args.profile_width
    f = IsotypicFunction.from_log_function(
        args.n_min, lambda v: scale * np.exp(-0.5 * (v / width) ** 2)
    )
    try:
        config = TraceConfig(f=f, lambdas=lambdas, tolerance=args.tol)
    except ValueError as exc:
        raise _UsageError(str(exc))

    manifest = _manifest(
        "trace-sweep",
        n_min=args.n_min,
        lambda_list=args.lambda_list,
        profile_width=width,
        profile_scale=scale,
        tol=args.tol,
        radial_nodes=config.radial_nodes,
    )

    results = residual_sweep(config)
    rows = []
    route_gap = 0.0
    for r in results:
        direct = trace_direct(
            f,
            r.lam,
            tol=config.tolerance,
            nodes_per_panel=config.radial_nodes,
            angular_tol=config.angular_tol,
        )
        route_gap = max(route_gap, abs(direct - r.trace) / max(1.0, abs(r.trace)))
        rows.append((float(r.lam), direct.real, r.trace.real, r.residual.real))

    try:
        slope, intercept = fit_trace_expansion(results, config.fit_min_lambda)
    except ValueError:
        try:
            slope, intercept = fit_trace_expansion(results, min(config.lambdas))
        except ValueError:
            slope = intercept = None

    _write_csv(args.out, manifest, ("lambda", "tr_direct", "tr_spectral", "residual"), rows)
    _write_json(
        _summary_path(args.out),
        {
            "manifest": manifest,
            "duration_seconds": time.monotonic() - start,
            "rows": len(rows),
            "slope": slope,
            "intercept": intercept,
            "f_at_1": value_at_identity(f).real,
            "h_at_1": value_at_identity(op_H(f)).real,
            "max_route_discrepancy": route_gap,
        },
    )
    return 0


def cmd_g_constant(args: argparse.Namespace) -> int:
    start = time.monotonic()
    if args.tol < 1e-10:
        raise _UsageError("--tol must be at least 1e-10")

    import numpy as np

    from .specfun import LOG_2PI, gamma0_expansion

    c1, c2 = gamma0_expansion(order=2, tol=args.tol)
    closed = 4.0 * LOG_2PI + 4.0 * np.euler_gamma - 2.0
    lines = [
        ("epsilon coefficient", c1),
        ("epsilon^2 coefficient", c2),
        ("closed form", closed),
        ("difference", abs(c2 - closed)),
    ]
    for label, value in lines:
        print(f"{label:<22} {format(value, '.17g')}")
    if args.out:
        _write_json(
            args.out,
            {
                "manifest": _manifest("g-constant", tol=args.tol),
                "duration_seconds": time.monotonic() - start,
                "epsilon_coefficient": c1,
                "epsilon2_coefficient": c2,
                "closed_form": closed,
                "difference": abs(c2 - closed),
            },
        )
    return 0


# -------------------------------------------------------------------- parser


def _add_sector_flags(p: argparse.ArgumentParser, with_max: bool = True) -> None:
    p.add_argument("--n-min", type=int, default=0, help="lowest angular sector N")
    if with_max:
        p.add_argument("--n-max", type=int, default=0, help="highest angular sector N")


def _add_tau_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau-min", type=float, default=None)
    p.add_argument("--tau-max", type=float, default=None)
    p.add_argument("--tau-step", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quatgamma",
        description="Verification sweeps for the quaternionic Gamma factor stack.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gamma-table", help="Gamma factor values on an s- or tau-grid")
    _add_sector_flags(p)
    _add_tau_flags(p)
    p.add_argument("--s-grid", default=None, help="strip grid as RxM, e.g. 20x20")
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=cmd_gamma_table)

    p = sub.add_parser("spectral-scan", help="h and k multipliers over a tau grid")
    _add_sector_flags(p)
    _add_tau_flags(p)
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=cmd_spectral_scan)

    p = sub.add_parser("functional-eq", help="moment functional-equation residuals")
    _add_sector_flags(p)
    p.add_argument("--s-grid", default="20x20", help="strip grid as RxM")
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=cmd_functional_eq)

    p = sub.add_parser("oracle-check", help="brute-force 4D Fourier cross-checks")
    p.add_argument("--grid-m", type=int, default=33, help="grid points per axis (odd)")
    p.add_argument("--grid-l", type=float, default=2.0, help="grid half extent")
    p.add_argument("--probes", type=int, default=6, help="number of probe points")
    p.add_argument("--seed", type=int, default=7, help="probe RNG seed")
    p.add_argument("--out", default=None, help="optional JSON report path")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("trace-sweep", help="truncated trace by both routes")
    _add_sector_flags(p, with_max=False)
    p.add_argument("--lambda-list", default="2,4,8,16,32,64", help="comma-separated cutoffs")
    p.add_argument("--profile-width", type=float, default=1.0, help="Gaussian width in v")
    p.add_argument("--profile-scale", type=float, default=1.0, help="profile amplitude")
    p.add_argument("--tol", type=float, default=1e-8, help="refinement tolerance")
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=cmd_trace_sweep)

    p = sub.add_parser("g-constant", help="expansion constant of the moment pole")
    p.add_argument("--tol", type=float, default=1e-7, help="extrapolation guard")
    p.add_argument("--out", default=None, help="optional JSON report path")
    p.set_defaults(func=cmd_g_constant)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    _apply_thread_env()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (QuadratureError, NonConvergenceError, AliasingError, DecayError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
