"""Command-line interface: verify, verify-system, solve, transform,
nonexist, reproduce.

Exit status: 0 when every requested check passes (or the solver converges),
1 when a check fails or no conclusion is reached, 2 on malformed configs or
inconsistent problem descriptions.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .config import (
    Plan,
    PlanCheck,
    load_toml,
    parse_elliptic,
    parse_measure,
    parse_plan,
    parse_problem,
    parse_system,
)
from .elliptic import transform
from .errors import DivergenceError, DomainError, HammersteinError, SpecificationError
from .expressions import scalar
from .reports import format_value
from .runner import (
    reproduce,
    run_nonexistence,
    run_problem_plan,
    run_system_plan,
)
from .serialize import system_config_text
from .settings import Settings
from .solver import Window, localization_check, solve


def _settings_from_args(args) -> Settings:
    return Settings(
        panels=args.panels,
        grid_n=args.grid_n,
        tol=args.tol,
    )


def _write_output(text: str, out: str | None):
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text)


def _load_plan(args, config: dict, system: bool) -> Plan:
    if args.plan:
        return parse_plan(load_toml(args.plan), system=system)
    return parse_plan(config, system=system)


def _cmd_verify(args) -> int:
    settings = _settings_from_args(args)
    config = load_toml(args.config)
    problem = parse_problem(config)
    if args.check:
        if args.rho is None:
            raise SpecificationError("--check needs --rho")
        alpha = parse_measure(
            load_toml(args.alpha).get("alpha") if args.alpha else None, "alpha"
        )
        plan = Plan(checks=(PlanCheck(kind=args.check, rhos=(args.rho,), alpha=alpha),))
    else:
        plan = _load_plan(args, config, system=False)
    result = run_problem_plan(problem, plan, settings)
    _write_output(result.text(), args.out)
    return 0 if result.all_passed else 1


def _cmd_verify_system(args) -> int:
    settings = _settings_from_args(args)
    config = load_toml(args.config)
    if "elliptic" in config:
        system = transform(parse_elliptic(config)).system
    else:
        system = parse_system(config)
    plan = _load_plan(args, config, system=True)
    result = run_system_plan(system, plan, settings)
    _write_output(result.text(), args.out)
    return 0 if result.all_passed else 1


def _cmd_transform(args) -> int:
    config = load_toml(args.config)
    result = transform(parse_elliptic(config))
    text = system_config_text(config, result)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    summary = (
        f"eta = {format_value(result.eta)}\n"
        f"xi = {format_value(result.xi)}\n"
        f"beta2 = {format_value(result.beta2)}\n"
    )
    sys.stderr.write(summary)
    return 0


def _cmd_nonexist(args) -> int:
    settings = _settings_from_args(args)
    config = load_toml(args.config)
    problem = parse_problem(config)
    table = dict(config.get("nonexist", {}))
    if args.mode:
        table["mode"] = args.mode
    if args.u_lo is not None:
        table["u_lo"] = args.u_lo
    if args.u_hi is not None:
        table["u_hi"] = args.u_hi
    result = run_nonexistence(problem, table, settings)
    _write_output(result.text(), args.out)
    return 0 if result.all_passed else 1


def _parse_u0(text: str):
    if text.startswith("const:"):
        parts = text[len("const:"):].split(",")
        values = [scalar(p, "--u0") for p in parts]
        return values[0] if len(values) == 1 else values
    raise SpecificationError(f"--u0 must look like const:VALUE[,VALUE], got {text!r}")


def _windows_from_config(config: dict) -> list[Window]:
    windows = []
    for entry in config.get("solve", {}).get("windows", []):
        windows.append(
            Window(
                t_lo=scalar(entry.get("t_lo", 0.0), "window.t_lo"),
                t_hi=scalar(entry.get("t_hi", 1.0), "window.t_hi"),
                lower=scalar(entry.get("lower", -np.inf), "window.lower"),
                upper=scalar(entry.get("upper", np.inf), "window.upper"),
                component=int(entry.get("component", 1)) - 1,
            )
        )
    return windows


def _cmd_solve(args) -> int:
    settings = Settings(panels=args.panels, grid_n=args.grid_n)
    config = load_toml(args.config)
    if "system" in config:
        problem = parse_system(config)
        is_system = True
    elif "elliptic" in config:
        problem = transform(parse_elliptic(config)).system
        is_system = True
    else:
        problem = parse_problem(config)
        is_system = False
    solve_table = config.get("solve", {})
    u0 = _parse_u0(args.u0) if args.u0 else solve_table.get("u0", 0.0)
    damping = args.damping if args.damping is not None else float(
        solve_table.get("damping", 0.5))
    tol = args.tol if args.tol is not None else float(solve_table.get("tol", 1e-10))
    profile = solve(
        problem,
        u0=u0,
        damping=damping,
        tol=tol,
        max_iter=args.max_iter,
        grid_n=args.nodes,
        settings=settings,
    )
    windows = _windows_from_config(config)
    flags = localization_check(profile, windows) if windows else ()
    profile.window_flags = flags

    lines = [
        f"converged = {format_value(profile.converged)}",
        f"iterations = {profile.iterations}",
        f"residual = {format_value(profile.residual)}",
    ]
    for i, flag in enumerate(flags, start=1):
        lines.append(f"window_{i} = {format_value(flag)}")
    sys.stdout.write("\n".join(lines) + "\n")

    if args.out:
        header = "t,u,v" if is_system else "t,u"
        rows = [header]
        for j, t in enumerate(profile.grid):
            cols = [float(t)]
            if is_system:
                cols += [float(profile.values[0][j]), float(profile.values[1][j])]
            else:
                cols.append(float(profile.values[j]))
            rows.append(",".join(repr(c) for c in cols))
        Path(args.out).write_text("\n".join(rows) + "\n")
    ok = profile.converged and all(flags)
    return 0 if ok else 1


def _cmd_reproduce(args) -> int:
    settings = _settings_from_args(args)
    result = reproduce(args.name, settings)
    _write_output(result.text(), args.out)
    return 0 if result.all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hammerstein",
        description=(
            "Verify cone fixed-point index conditions for perturbed Hammerstein "
            "integral equations, solve them by Nystrom iteration, and reproduce "
            "the bundled reference problems."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, plan=False):
        p.add_argument("--config", required=True, help="problem config (TOML)")
        if plan:
            p.add_argument("--plan", help="separate plan config; default: [plan] in --config")
        p.add_argument("--out", help="write the report here as well as stdout")
        p.add_argument("--panels", type=int, default=64, help="quadrature panels")
        p.add_argument("--grid-n", type=int, default=512, dest="grid_n",
                       help="grid for suprema/infima over t")
        p.add_argument("--tol", type=float, default=1e-6,
                       help="strictness margin for inequalities")

    p = sub.add_parser("verify", help="check index conditions for one equation")
    common(p, plan=True)
    p.add_argument("--check", choices=("index1", "index0"))
    p.add_argument("--rho", type=float)
    p.add_argument("--alpha", help="config file with an [alpha] measure table")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("verify-system", help="check index conditions for a system")
    common(p, plan=True)
    p.set_defaults(func=_cmd_verify_system)

    p = sub.add_parser("solve", help="fixed point by damped Picard iteration")
    p.add_argument("--config", required=True, help="problem config (TOML)")
    p.add_argument("--out", help="write the profile here as CSV (t,u[,v])")
    p.add_argument("--panels", type=int, default=64, help="quadrature panels")
    p.add_argument("--grid-n", type=int, default=512, dest="grid_n")
    p.add_argument("--u0", help="initial iterate, e.g. const:1.0 or const:1.0,0.5")
    p.add_argument("--damping", type=float, default=None)
    p.add_argument("--tol", type=float, default=None,
                   help="stopping tolerance for the iteration (default 1e-10)")
    p.add_argument("--max-iter", type=int, default=2000)
    p.add_argument("--nodes", type=int, default=257, help="solution grid nodes")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("transform", help="reduce an elliptic annulus problem")
    common(p)
    p.set_defaults(func=_cmd_transform)

    p = sub.add_parser("nonexist", help="non-existence thresholds and growth check")
    common(p)
    p.add_argument("--mode", choices=("sub", "super"))
    p.add_argument("--u-lo", type=float, default=None, dest="u_lo")
    p.add_argument("--u-hi", type=float, default=None, dest="u_hi")
    p.set_defaults(func=_cmd_nonexist)

    p = sub.add_parser("reproduce", help="run a bundled reference problem")
    p.add_argument("name", help="reactor | beam | thermostat | nonexist | elliptic")
    p.add_argument("--out")
    p.add_argument("--panels", type=int, default=64)
    p.add_argument("--grid-n", type=int, default=512, dest="grid_n")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpecificationError, DomainError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except DivergenceError as exc:
        sys.stderr.write(f"diverged: {exc}\n")
        return 1
    except HammersteinError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
