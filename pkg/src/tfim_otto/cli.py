"""Command line front end: magnetization curves, single cycles, regime-map
sweeps, zero-work boundaries, the zero-output fields, landmark temperatures
and small-chain cross checks, all as plot-ready CSV or JSON.

Exit codes: 0 success, 1 physics-domain error, 2 usage error.
"""

import argparse
import json
import sys

MODEL_CHOICES = ("exact", "high-t", "linear-h", "third-order",
                 "boltzmann-modes", "quasiparticle", "non-interacting")

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1,
                        help="worker-pool width for sweeps (default 1)")
    common.add_argument("--quad-tol", type=float, default=1e-10,
                        help="relative quadrature tolerance (default 1e-10)")
    common.add_argument("--seedless", action="store_true",
                        help="assert that no random generator is consumed")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="tfim-otto",
        description="Quantum Otto cycle thermodynamics of the "
                    "transverse-field Ising chain (units: k_B = hbar = 1; "
                    "all energies per site)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("magnetization", parents=[common],
                       help="m(T) curve for one evaluator, as CSV")
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--h", type=float, required=True)
    p.add_argument("--model", choices=MODEL_CHOICES, required=True)
    p.add_argument("--t-min", type=float, required=True)
    p.add_argument("--t-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("cycle", parents=[common],
                       help="one finite-stroke cycle, printed as JSON")
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--h-hot", type=float, required=True)
    p.add_argument("--h-cold", type=float, required=True)
    p.add_argument("--t-hot", type=float, required=True)
    p.add_argument("--t-cold", type=float, required=True)
    p.add_argument("--tolerance", type=float, default=None,
                   help="zero tolerance for regime classification "
                        "(default 1e-10 g)")

    p = sub.add_parser("sweep", parents=[common],
                       help="regime map over a (field, T_cold) grid")
    p.add_argument("--config", required=True, help="JSON grid description")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json-lines"), default="csv")
    p.add_argument("--tolerance", type=float, default=None)

    p = sub.add_parser("boundary", parents=[common],
                       help="zero-work boundary T_cold(h), as CSV")
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--t-hot", type=float, required=True)
    p.add_argument("--delta-h", type=float, default=None,
                   help="finite stroke size (omit for infinitesimal)")
    p.add_argument("--h-min", type=float, required=True)
    p.add_argument("--h-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", default=None)

    p = sub.add_parser("carnot", parents=[common],
                       help="zero-output field pair and its residuals, as JSON")
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--t-hot", type=float, required=True)
    p.add_argument("--t-cold", type=float, required=True)

    p = sub.add_parser("landmarks", parents=[common],
                       help="peak and equal-magnetization temperatures, as JSON")
    p.add_argument("--g", type=float, default=1.0)
    p.add_argument("--h", type=float, default=None)
    p.add_argument("--model", choices=("exact", "linear-h"), required=True)

    p = sub.add_parser("oracle-compare", parents=[common],
                       help="per-site cycle energetics: thermodynamic limit "
                            "vs discrete modes vs dense diagonalization")
    p.add_argument("--n", type=int, required=True, help="sites, even, <= 12")
    p.add_argument("--g", type=float, required=True)
    p.add_argument("--h-hot", type=float, required=True)
    p.add_argument("--h-cold", type=float, required=True)
    p.add_argument("--t-hot", type=float, required=True)
    p.add_argument("--t-cold", type=float, required=True)

    return parser


def _write_text(text: str, out_path) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _cmd_magnetization(args) -> int:
    from .dispersion import ModelParams
    from .equilibrium import MagnetizationModel, ThermalState, magnetization
    import numpy as np

    model = MagnetizationModel(args.model)
    params = ModelParams(args.g, args.h)
    lines = ["t,m"]
    for t in np.linspace(args.t_min, args.t_max, args.steps):
        m = magnetization(ThermalState(params, float(t)), model,
                          rel_tol=args.quad_tol)
        lines.append(f"{t:.12g},{m:.12g}")
    _write_text("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _result_dict(result) -> dict:
    return {
        "work": result.work,
        "q_hot": result.q_hot,
        "q_cold": result.q_cold,
        "regime": result.regime.value,
        "zero_tolerance": result.zero_tolerance,
    }


def _cmd_cycle(args) -> int:
    from .cycle import CycleSpec, finite_cycle

    spec = CycleSpec(args.g, args.h_hot, args.h_cold, args.t_hot, args.t_cold)
    result = finite_cycle(spec, zero_tolerance=args.tolerance,
                          rel_tol=args.quad_tol)
    print(json.dumps(_result_dict(result)))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    from .sweep import SweepGrid, render_csv, render_json_lines, run_sweep

    grid = SweepGrid.from_json(args.config)
    records = run_sweep(grid, threads=args.threads, rel_tol=args.quad_tol,
                        zero_tolerance=args.tolerance)
    text = render_csv(records) if args.format == "csv" else render_json_lines(records)
    _write_text(text, args.out)
    return EXIT_OK


def _cmd_boundary(args) -> int:
    import numpy as np

    from .boundaries import w_zero_curve

    h_grid = np.linspace(args.h_min, args.h_max, args.steps)
    curve = w_zero_curve(args.g, args.t_hot, h_grid, delta_h=args.delta_h,
                         rel_tol=args.quad_tol)
    lines = ["h,t_cold"]
    for h, t_cold in curve.points:
        lines.append(f"{h:.12g},{t_cold:.12g}")
    _write_text("\n".join(lines) + "\n", args.out)
    for h in curve.skipped:
        print(f"no zero-work temperature below t_hot at h = {h:.12g}",
              file=sys.stderr)
    return EXIT_OK


def _cmd_carnot(args) -> int:
    from .cycle import CycleSpec, carnot_point, finite_cycle

    h_cold, h_hot = carnot_point(args.g, args.t_hot, args.t_cold)
    result = finite_cycle(CycleSpec(args.g, h_hot, h_cold,
                                    args.t_hot, args.t_cold),
                          rel_tol=args.quad_tol)
    print(json.dumps({
        "h_cold_cp": h_cold,
        "h_hot_cp": h_hot,
        "residual_work": result.work,
        "residual_q_hot": result.q_hot,
        "residual_q_cold": result.q_cold,
    }))
    return EXIT_OK


def _cmd_landmarks(args) -> int:
    from .boundaries import (equal_magnetization_temperature,
                             magnetization_peak_temperature)
    from .equilibrium import MagnetizationModel

    model = MagnetizationModel(args.model)
    t_peak = magnetization_peak_temperature(args.g, args.h, model,
                                            rel_tol=args.quad_tol)
    t_equal = equal_magnetization_temperature(args.g, model, args.h,
                                              rel_tol=args.quad_tol)
    print(json.dumps({"t_peak": t_peak, "t_equal_m0": t_equal}))
    return EXIT_OK


def _cmd_oracle_compare(args) -> int:
    from .cycle import CycleSpec, finite_cycle
    from .dispersion import ModelParams
    from .exactdiag import brute_force_cycle, discrete_mode_cycle

    spec = CycleSpec(args.g, args.h_hot, args.h_cold, args.t_hot, args.t_cold)
    params = ModelParams(args.g, args.h_hot, args.n)
    limit = finite_cycle(spec, rel_tol=args.quad_tol)
    modes = discrete_mode_cycle(params, spec)
    dense = brute_force_cycle(params, spec)
    out = {
        "n": args.n,
        "finite_cycle": _result_dict(limit),
        "discrete_mode_cycle": _result_dict(modes),
        "brute_force_cycle": _result_dict(dense),
        "difference_dense_vs_limit": {
            "work": dense.work - limit.work,
            "q_hot": dense.q_hot - limit.q_hot,
            "q_cold": dense.q_cold - limit.q_cold,
        },
        "difference_modes_vs_limit": {
            "work": modes.work - limit.work,
            "q_hot": modes.q_hot - limit.q_hot,
            "q_cold": modes.q_cold - limit.q_cold,
        },
    }
    print(json.dumps(out))
    return EXIT_OK


_COMMANDS = {
    "magnetization": _cmd_magnetization,
    "cycle": _cmd_cycle,
    "sweep": _cmd_sweep,
    "boundary": _cmd_boundary,
    "carnot": _cmd_carnot,
    "landmarks": _cmd_landmarks,
    "oracle-compare": _cmd_oracle_compare,
}


def _rng_snapshot():
    import random

    import numpy as np

    state = np.random.get_state()
    return random.getstate(), (state[0], state[1].tobytes(), state[2:])


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    snapshot = _rng_snapshot() if args.seedless else None
    try:
        code = _COMMANDS[args.command](args)
    except (ValueError, ArithmeticError, OSError, RuntimeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DOMAIN
    if snapshot is not None and _rng_snapshot() != snapshot:
        print("error: a random generator was consumed during a seedless run",
              file=sys.stderr)
        return EXIT_DOMAIN
    return code


if __name__ == "__main__":
    sys.exit(main())
