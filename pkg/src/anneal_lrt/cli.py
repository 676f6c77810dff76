"""anneal-lrt command line front end.

Subcommands: waiting-time, protocol, excess-work, sweep-kz, variance.
Parameter precedence: command-line flags > JSON config file (--config) >
built-in defaults (the near-critical chain J=1, gamma0=0.999995,
delta_gamma=1e-5, N=10^4, hbar=1, for which `anneal-lrt waiting-time`
prints 317.099).

Every CSV gets a `# units:` comment line, a header row and
full-precision values, so re-running a command with identical
configuration produces byte-identical files.  Existing files are never
overwritten unless --overwrite is passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .kernels import KernelKind, waiting_time
from .kz import SweepResult, fit_power_law, sweep_waiting_time
from .protocols import linear_ramp, near_optimal, protocol_to_csv
from .spectral import ChainParams, build_modes
from .work import excess_work, optimal_ta_excess_work, optimal_variance

DEFAULTS = {
    "j": 1.0,
    "gamma0": 0.999995,
    "delta_gamma": 1e-5,
    "n_spins": 10_000,
    "hbar": 1.0,
}
SWEEP_DEFAULT_N_SPINS = 100_000

_CONFIG_ALIASES = {"j": ("J", "j")}


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    cfg = json.loads(Path(path).read_text())
    if not isinstance(cfg, dict):
        raise ValueError(f"config {path} must contain a JSON object")
    return cfg


def _resolve(args, config: dict, key: str, default=None):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    for alias in _CONFIG_ALIASES.get(key, (key,)):
        if alias in config:
            return config[alias]
    return default


def _chain(args, config: dict, n_spins_default: int | None = None) -> ChainParams:
    n_default = DEFAULTS["n_spins"] if n_spins_default is None else n_spins_default
    return ChainParams(
        j=float(_resolve(args, config, "j", DEFAULTS["j"])),
        gamma0=float(_resolve(args, config, "gamma0", DEFAULTS["gamma0"])),
        delta_gamma=float(_resolve(args, config, "delta_gamma", DEFAULTS["delta_gamma"])),
        n_spins=int(_resolve(args, config, "n_spins", n_default)),
        hbar=float(_resolve(args, config, "hbar", DEFAULTS["hbar"])),
    )


def _write_text(path: Path, text: str, overwrite: bool) -> Path:
    if path.exists() and not overwrite:
        raise FileExistsError(f"{path} exists; pass --overwrite to replace it")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def _chain_units_line(chain: ChainParams) -> str:
    return (
        "# units: energies in J, times in hbar/J; "
        f"J={_fmt(chain.j)} gamma0={_fmt(chain.gamma0)} "
        f"delta_gamma={_fmt(chain.delta_gamma)} n_spins={chain.n_spins} "
        f"hbar={_fmt(chain.hbar)}"
    )


def _cmd_waiting_time(args) -> int:
    config = _load_config(args.config)
    chain = _chain(args, config)
    tau_w = waiting_time(build_modes(chain), KernelKind.TIME_AVERAGED)
    print(f"tau_w = {tau_w:.6g} hbar/J")
    if args.out_dir is not None:
        stem = args.stem or "waiting_time"
        text = "\n".join(
            [
                _chain_units_line(chain),
                "J,gamma0,delta_gamma,n_spins,hbar,tau_w",
                ",".join(
                    [
                        _fmt(chain.j),
                        _fmt(chain.gamma0),
                        _fmt(chain.delta_gamma),
                        str(chain.n_spins),
                        _fmt(chain.hbar),
                        _fmt(tau_w),
                    ]
                ),
            ]
        ) + "\n"
        path = _write_text(Path(args.out_dir) / f"{stem}.csv", text, args.overwrite)
        print(f"wrote {path}")
    return 0


def _cmd_protocol(args) -> int:
    config = _load_config(args.config)
    chain = _chain(args, config)
    taus = args.tau or _resolve(args, config, "tau", [1.0, 100.0, 10000.0])
    taus = [float(t) for t in np.atleast_1d(taus)]
    grid_points = int(_resolve(args, config, "grid_points", 1001))
    tau_w = _resolve(args, config, "waiting_time")
    if tau_w is None:
        tau_w = waiting_time(build_modes(chain), KernelKind.TIME_AVERAGED)
    tau_w = float(tau_w)
    out_dir = Path(args.out_dir or ".")
    stem = args.stem or "protocol"
    units = "# units: t in hbar/J; g dimensionless"
    for tau in taus:
        p = near_optimal(tau, tau_w, grid_points)
        text = units + f" (tau_w={_fmt(tau_w)})\n" + protocol_to_csv(p)
        path = _write_text(out_dir / f"{stem}_tau{tau:g}.csv", text, args.overwrite)
        print(f"wrote {path}")
    return 0


def _excess_work_value(modes, kind: KernelKind, protocol_kind: str, tau: float,
                       tau_w: float, delta_lambda: float) -> float:
    # Near-optimal + time-averaged kernel is the optimal-work curve (the
    # boundary-term functional); everything else is the double integral of
    # the schedule's continuous part.
    if protocol_kind == "near-optimal":
        if kind is KernelKind.TIME_AVERAGED:
            return optimal_ta_excess_work(
                modes, tau, delta_lambda, waiting_time_override=tau_w
            )
        return excess_work(modes, kind, near_optimal(tau, tau_w, 2), delta_lambda)
    return excess_work(modes, kind, linear_ramp(tau, 2), delta_lambda)


def _cmd_excess_work(args) -> int:
    config = _load_config(args.config)
    chain = _chain(args, config)
    modes = build_modes(chain)
    tau_w = waiting_time(modes, KernelKind.TIME_AVERAGED)
    kernel = KernelKind(_resolve(args, config, "kernel", "time-averaged"))
    protocol_kind = _resolve(args, config, "protocol", "near-optimal")
    explicit = args.tau
    if explicit is None and isinstance(config.get("tau"), (list, tuple)):
        explicit = config["tau"]
    if explicit:
        taus = np.asarray([float(t) for t in explicit], dtype=np.float64)
    else:
        tau_min = float(_resolve(args, config, "tau_min", 1e-2 * tau_w))
        tau_max = float(_resolve(args, config, "tau_max", 1e2 * tau_w))
        tau_points = int(_resolve(args, config, "tau_points", 41))
        if not (0 < tau_min <= tau_max):
            raise ValueError("need 0 < tau-min <= tau-max")
        taus = np.geomspace(tau_min, tau_max, tau_points)
    dl = chain.delta_gamma
    values = [
        _excess_work_value(modes, kernel, protocol_kind, float(t), tau_w, dl)
        for t in taus
    ]
    out_dir = Path(args.out_dir or ".")
    stem = args.stem or "excess_work"
    lines = [
        "# units: tau in hbar/J; w_ex in J per spin "
        f"(kernel={kernel.value}, protocol={protocol_kind}, "
        f"delta_lambda={_fmt(dl)}, tau_w={_fmt(tau_w)})",
        "tau,w_ex",
    ]
    lines += [f"{_fmt(float(t))},{_fmt(w)}" for t, w in zip(taus, values)]
    path = _write_text(out_dir / f"{stem}.csv", "\n".join(lines) + "\n", args.overwrite)
    print(f"wrote {path}")
    return 0


def _cmd_sweep_kz(args) -> int:
    config = _load_config(args.config)
    if args.self_test:
        # exact synthetic power law tau_w = delta^-1; exercises the fitter
        deltas = np.geomspace(1e-2, 1e-3, 20)
        result = SweepResult(
            j=1.0,
            hbar=1.0,
            deltas=deltas,
            n_spins=np.full(deltas.shape, 10**8, dtype=np.int64),
            tau_w=1.0 / deltas,
        )
        window = (float(deltas.min()), float(deltas.max()))
    else:
        chain = _chain(args, config, n_spins_default=SWEEP_DEFAULT_N_SPINS)
        delta_min = float(_resolve(args, config, "delta_min", 1e-3))
        delta_max = float(_resolve(args, config, "delta_max", 1e-2))
        delta_points = int(_resolve(args, config, "delta_points", 20))
        if not (0 < delta_min <= delta_max):
            raise ValueError("need 0 < delta-min <= delta-max")
        deltas = np.geomspace(delta_max, delta_min, delta_points)
        result = sweep_waiting_time(chain.j, deltas, chain.n_spins, chain.hbar)
        window = (
            float(_resolve(args, config, "fit_min", delta_min)),
            float(_resolve(args, config, "fit_max", delta_max)),
        )
    result = fit_power_law(result, window)
    fit = result.fit
    print(f"exponent = {fit.exponent:.3f}  r_squared = {fit.r_squared:.6f}")
    if args.out_dir is not None:
        stem = args.stem or "sweep_kz"
        lines = ["# units: delta in J; tau_w in hbar/J", "delta,n_spins,tau_w"]
        lines += [
            f"{_fmt(d)},{n},{_fmt(t)}" for d, n, t in result.points
        ]
        path = _write_text(
            Path(args.out_dir) / f"{stem}.csv", "\n".join(lines) + "\n", args.overwrite
        )
        fit_payload = {
            "exponent": fit.exponent,
            "intercept": fit.intercept,
            "r_squared": fit.r_squared,
            "window_min": fit.window[0],
            "window_max": fit.window[1],
            "n_points": fit.n_points,
        }
        fit_path = _write_text(
            Path(args.out_dir) / f"{stem}_fit.json",
            json.dumps(fit_payload, sort_keys=True, indent=2) + "\n",
            args.overwrite,
        )
        print(f"wrote {path}")
        print(f"wrote {fit_path}")
    return 0


def _cmd_variance(args) -> int:
    config = _load_config(args.config)
    chain = _chain(args, config)
    modes = build_modes(chain)
    tau_w = waiting_time(modes, KernelKind.TIME_AVERAGED)
    beta = _resolve(args, config, "beta")
    if beta is None or not np.isfinite(float(beta)) or float(beta) <= 0:
        raise ValueError(
            "beta must be finite and > 0: at T = 0 (beta = infinity) the "
            "optimal variance of the time-averaged work diverges"
        )
    beta = float(beta)
    tau = args.tau_single
    if tau is None and isinstance(config.get("tau"), (int, float)):
        tau = config["tau"]
    tau = tau_w if tau is None else float(tau)
    dl = chain.delta_gamma
    w_opt = optimal_ta_excess_work(modes, tau, dl, waiting_time_override=tau_w)
    var = optimal_variance(modes, tau, dl, beta)
    ratio = var / w_opt
    print(f"w_ex_ta_opt = {w_opt:.6g} J per spin (tau = {tau:.6g} hbar/J)")
    print(f"sigma2_opt = {var:.6g} J^2 per spin (beta = {beta:.6g} 1/J)")
    print(f"sigma2_opt / w_ex_ta_opt = {ratio} (beta/2 = {0.5 * beta})")
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--J", dest="j", type=float, default=None, help="coupling energy")
    sub.add_argument("--gamma0", type=float, default=None, help="initial transverse field")
    sub.add_argument("--delta-gamma", dest="delta_gamma", type=float, default=None,
                     help="field increment (also the drive amplitude delta_lambda)")
    sub.add_argument("--n-spins", dest="n_spins", type=int, default=None,
                     help="number of spins N (even)")
    sub.add_argument("--hbar", type=float, default=None, help="reduced Planck constant")
    sub.add_argument("--out-dir", dest="out_dir", default=None, help="output directory")
    sub.add_argument("--stem", default=None, help="output file-name stem")
    sub.add_argument("--overwrite", action="store_true", help="replace existing files")
    sub.add_argument("--config", default=None, help="JSON config file (flags override it)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anneal-lrt",
        description="Work functionals, kernels and near-optimal schedules for the "
        "driven transverse-field Ising chain",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("waiting-time", help="time-averaged waiting time of the chain")
    _add_common(p)
    p.set_defaults(func=_cmd_waiting_time)

    p = sub.add_parser("protocol", help="near-optimal schedule CSV for each tau")
    _add_common(p)
    p.add_argument("--tau", action="append", type=float, default=None,
                   help="switching time (repeatable; default 1 100 10000)")
    p.add_argument("--grid-points", dest="grid_points", type=int, default=None,
                   help="samples per schedule (default 1001)")
    p.add_argument("--waiting-time", dest="waiting_time", type=float, default=None,
                   help="override the computed waiting time (0 gives the plain ramp)")
    p.set_defaults(func=_cmd_protocol)

    p = sub.add_parser("excess-work", help="excess work vs switching time CSV")
    _add_common(p)
    p.add_argument("--tau", action="append", type=float, default=None,
                   help="explicit switching time (repeatable; overrides the grid)")
    p.add_argument("--tau-min", dest="tau_min", type=float, default=None)
    p.add_argument("--tau-max", dest="tau_max", type=float, default=None)
    p.add_argument("--tau-points", dest="tau_points", type=int, default=None,
                   help="geometric grid size (default 41)")
    p.add_argument("--kernel", choices=["conventional", "time-averaged"], default=None)
    p.add_argument("--protocol", choices=["ramp", "near-optimal"], default=None)
    p.set_defaults(func=_cmd_excess_work)

    p = sub.add_parser("sweep-kz", help="waiting-time divergence sweep and power-law fit")
    _add_common(p)
    p.add_argument("--delta-min", dest="delta_min", type=float, default=None)
    p.add_argument("--delta-max", dest="delta_max", type=float, default=None)
    p.add_argument("--delta-points", dest="delta_points", type=int, default=None)
    p.add_argument("--fit-min", dest="fit_min", type=float, default=None,
                   help="fit window lower edge (default delta-min)")
    p.add_argument("--fit-max", dest="fit_max", type=float, default=None,
                   help="fit window upper edge (default delta-max)")
    p.add_argument("--self-test", dest="self_test", action="store_true",
                   help="fit an exact synthetic power law instead of the chain")
    p.set_defaults(func=_cmd_sweep_kz)

    p = sub.add_parser("variance", help="optimal variance of the time-averaged work")
    _add_common(p)
    p.add_argument("--beta", type=float, default=None, help="inverse temperature (1/J)")
    p.add_argument("--tau", dest="tau_single", type=float, default=None,
                   help="switching time (default: the waiting time)")
    p.set_defaults(func=_cmd_variance)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
