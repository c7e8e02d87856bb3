"""TOML config ingestion: problems, systems, elliptic descriptions, plans.

Numeric fields accept either literals or constant formulas ("10^(-3/2)",
"1/3"), so configs can state values exactly as the source problems do.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .conditions import ProblemSpec
from .elliptic import (
    EllipticAnnulusProblem,
    RadialFunctionalSpec,
    TransformResult,
    transform,
)
from .envelopes import FunctionalSpec, NonlinearitySpec
from .errors import SpecificationError
from .expressions import compile_expr, scalar
from .kernels import GammaSpec, KernelSpec, SignClass, builtin
from .measures import StieltjesMeasure
from .systems import MeasureGrid, SystemSpec


def load_toml(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise SpecificationError(f"config file not found: {path}")
    try:
        with open(path, "rb") as fh:
            return _toml.load(fh)
    except _toml.TOMLDecodeError as exc:
        raise SpecificationError(f"{path}: {exc}") from None


def _require(table: dict, key: str, context: str):
    if key not in table:
        raise SpecificationError(f"{context}: missing required key {key!r}")
    return table[key]


def parse_measure(data: dict | None, context: str = "measure") -> StieltjesMeasure:
    """``{atoms = [{t = ..., w = ...}], density = "..."}``; empty means zero."""
    if data is None:
        return StieltjesMeasure.zero()
    if not isinstance(data, dict):
        raise SpecificationError(f"{context}: expected a table")
    atoms = []
    for entry in data.get("atoms", []):
        atoms.append(
            (scalar(_require(entry, "t", context), f"{context}.t"),
             scalar(_require(entry, "w", context), f"{context}.w"))
        )
    density = None
    if "density" in data:
        density = compile_expr(data["density"], ("t",))
    breaks = tuple(scalar(v, context) for v in data.get("density_breakpoints", []))
    return StieltjesMeasure(atoms=tuple(atoms), density=density,
                            density_breakpoints=breaks)


def parse_functional(data: dict | None, context: str = "H",
                     n_components: int = 1) -> FunctionalSpec:
    """``{points = [...], h = "expr in x1..xn"}``; empty means zero.

    For single equations points are plain locations; for systems each point
    is a pair [component, location] with 1-based components.
    """
    if data is None or not data:
        return FunctionalSpec.zero()
    points_raw = data.get("points", [])
    h_expr = data.get("h")
    if not points_raw and (h_expr in (None, "0")):
        return FunctionalSpec.zero()
    if h_expr is None:
        raise SpecificationError(f"{context}: points given but no h expression")
    points = []
    for entry in points_raw:
        if isinstance(entry, (list, tuple)):
            comp = int(entry[0]) - 1
            loc = scalar(entry[1], f"{context}.points")
        else:
            comp = 0
            loc = scalar(entry, f"{context}.points")
        if comp >= n_components:
            raise SpecificationError(
                f"{context}: point component {comp + 1} exceeds the number of unknowns"
            )
        points.append((comp, loc))
    names = tuple(f"x{i + 1}" for i in range(len(points)))
    return FunctionalSpec(points=tuple(points), h=compile_expr(h_expr, names),
                          name=context)


def parse_radial_functional(data: dict | None, context: str) -> RadialFunctionalSpec:
    """Like ``parse_functional`` but with (component, radius) points."""
    if data is None or not data:
        return RadialFunctionalSpec.zero()
    points_raw = data.get("points", [])
    h_expr = data.get("h")
    if not points_raw and (h_expr in (None, "0")):
        return RadialFunctionalSpec.zero()
    if h_expr is None:
        raise SpecificationError(f"{context}: points given but no h expression")
    points = []
    for entry in points_raw:
        if not isinstance(entry, (list, tuple)) or len(entry) != 2:
            raise SpecificationError(
                f"{context}: points must be [component, radius] pairs"
            )
        points.append((int(entry[0]) - 1, scalar(entry[1], f"{context}.points")))
    names = tuple(f"x{i + 1}" for i in range(len(points)))
    return RadialFunctionalSpec(points=tuple(points),
                                h=compile_expr(h_expr, names), name=context)


def parse_kernel(data: dict, context: str = "kernel"):
    """Either a builtin reference or an explicit kernel description."""
    if not isinstance(data, dict):
        raise SpecificationError(f"{context}: expected a table")
    if "builtin" in data:
        name = data["builtin"]
        params = {
            key: scalar(val, f"{context}.{key}")
            for key, val in data.items()
            if key not in ("builtin", "class")
        }
        kernel, gammas = builtin(name, **params)
        if "class" in data:
            declared = SignClass.from_string(data["class"])
            if declared is not kernel.sign_class:
                raise SpecificationError(
                    f"{context}: declared class {declared.value!r} does not match "
                    f"builtin {name!r} ({kernel.sign_class.value!r})"
                )
        return kernel, gammas
    for key in ("expr", "phi", "c1", "class"):
        _require(data, key, context)
    k = compile_expr(data["expr"], ("t", "s"))
    phi = compile_expr(data["phi"], ("s",))
    a = scalar(data.get("a", 0.0), f"{context}.a")
    b = scalar(data.get("b", 1.0), f"{context}.b")
    static_breaks = tuple(scalar(v, context) for v in data.get("s_breakpoints", []))
    kernel = KernelSpec(
        k=lambda t, s: k(t, s),
        phi=lambda s: phi(s),
        interval=(a, b),
        c1=scalar(data["c1"], f"{context}.c1"),
        sign_class=SignClass.from_string(data["class"]),
        s_breakpoints=lambda t: tuple(sorted(set(static_breaks) | {t})),
        phi_breakpoints=static_breaks,
        name=data.get("name", "custom"),
    )
    return kernel, ()


def parse_gamma(data: dict, interval, context: str = "gamma") -> GammaSpec:
    expr = _require(data, "expr", context)
    gamma = compile_expr(expr, ("t",))
    kwargs = {}
    if "c2" in data:
        kwargs["c2"] = scalar(data["c2"], f"{context}.c2")
    if "norm" in data:
        kwargs["norm"] = scalar(data["norm"], f"{context}.norm")
    return GammaSpec(gamma=gamma, interval=interval, name=context, **kwargs)


def parse_problem(data: dict) -> ProblemSpec:
    table = _require(data, "problem", "config")
    kernel, gammas = parse_kernel(_require(table, "kernel", "problem"))
    if "gamma" in table:
        gamma = parse_gamma(table["gamma"], kernel.interval, "problem.gamma")
    elif gammas:
        gamma = gammas[0]
    else:
        raise SpecificationError(
            "problem: custom kernels need an explicit [problem.gamma] table"
        )
    g_expr = table.get("g", "1")
    g = compile_expr(g_expr, ("s",))
    g_breaks = tuple(scalar(v, "problem.g_breakpoints")
                     for v in table.get("g_breakpoints", []))
    f = NonlinearitySpec(
        compile_expr(_require(table, "f", "problem"), ("t", "u")), arity=2,
        name="f",
    )
    H = parse_functional(table.get("H"), "problem.H", n_components=1)
    c_override = None
    if "c" in table:
        c_override = scalar(table["c"], "problem.c")
    return ProblemSpec(
        kernel=kernel,
        gamma=gamma,
        g=g,
        H=H,
        f=f,
        g_breakpoints=g_breaks,
        c_override=c_override,
        name=str(table.get("name", "")),
    )


def _parse_equation(table: dict, context: str):
    kernel, gammas = parse_kernel(_require(table, "kernel", context), f"{context}.kernel")
    if "gamma1" in table or "gamma2" in table:
        gamma1 = parse_gamma(_require(table, "gamma1", context), kernel.interval,
                             f"{context}.gamma1")
        gamma2 = parse_gamma(_require(table, "gamma2", context), kernel.interval,
                             f"{context}.gamma2")
    elif len(gammas) == 2:
        gamma1, gamma2 = gammas
    else:
        raise SpecificationError(
            f"{context}: kernel does not provide two profiles; give gamma1/gamma2"
        )
    g = compile_expr(table.get("g", "1"), ("s",))
    g_breaks = tuple(scalar(v, context) for v in table.get("g_breakpoints", []))
    f = NonlinearitySpec(
        compile_expr(_require(table, "f", context), ("t", "u", "v")), arity=3,
        name=f"{context}.f",
    )
    H1 = parse_functional(table.get("H1"), f"{context}.H1", n_components=2)
    H2 = parse_functional(table.get("H2"), f"{context}.H2", n_components=2)
    c_override = scalar(table["c"], f"{context}.c") if "c" in table else None
    return kernel, (gamma1, gamma2), g, g_breaks, f, (H1, H2), c_override


def parse_system(data: dict) -> SystemSpec:
    table = _require(data, "system", "config")
    eq1 = _parse_equation(_require(table, "eq1", "system"), "system.eq1")
    eq2 = _parse_equation(_require(table, "eq2", "system"), "system.eq2")
    return SystemSpec(
        kernels=(eq1[0], eq2[0]),
        gammas=(eq1[1], eq2[1]),
        weights=(eq1[2], eq2[2]),
        H=(eq1[5], eq2[5]),
        f=(eq1[4], eq2[4]),
        weight_breakpoints=(eq1[3], eq2[3]),
        c_overrides=(eq1[6], eq2[6]),
        name=str(table.get("name", "")),
    )


_ELLIPTIC_ALIASES = {"Reta": "R_eta", "Rxi": "R_xi", "beta2t": "beta2_tilde"}


def parse_elliptic(data: dict) -> EllipticAnnulusProblem:
    table = dict(_require(data, "elliptic", "config"))
    for short, long in _ELLIPTIC_ALIASES.items():
        if short in table:
            table.setdefault(long, table.pop(short))
    get = lambda key: scalar(_require(table, key, "elliptic"), f"elliptic.{key}")
    f1 = NonlinearitySpec(
        compile_expr(_require(table, "f1", "elliptic"), ("t", "u", "v")), arity=3)
    f2 = NonlinearitySpec(
        compile_expr(_require(table, "f2", "elliptic"), ("t", "u", "v")), arity=3)
    interval1 = None
    if "a1" in table or "b1" in table:
        interval1 = (get("a1"), get("b1"))
    interval2 = None
    if "a2" in table or "b2" in table:
        interval2 = (get("a2"), get("b2"))
    overrides = (
        scalar(table["c1_override"], "elliptic.c1_override") if "c1_override" in table else None,
        scalar(table["c2_override"], "elliptic.c2_override") if "c2_override" in table else None,
    )
    return EllipticAnnulusProblem(
        n=int(table.get("n", 2)),
        R1=get("R1"),
        R0=get("R0"),
        R_eta=get("R_eta"),
        R_xi=get("R_xi"),
        beta1=get("beta1"),
        beta2_tilde=get("beta2_tilde"),
        gtilde1=compile_expr(table.get("gtilde1", "1"), ("r",)),
        gtilde2=compile_expr(table.get("gtilde2", "1"), ("r",)),
        f1=f1,
        f2=f2,
        H11_tilde=parse_radial_functional(table.get("H11"), "elliptic.H11"),
        H12=parse_radial_functional(table.get("H12"), "elliptic.H12"),
        H21_tilde=parse_radial_functional(table.get("H21"), "elliptic.H21"),
        H22=parse_radial_functional(table.get("H22"), "elliptic.H22"),
        interval1=interval1,
        interval2=interval2,
        c_overrides=overrides,
    )


@dataclass(frozen=True)
class PlanCheck:
    kind: str                       # index1 | index0 | index0_diamond
    rhos: tuple[float, ...]         # one entry per unknown
    alpha: StieltjesMeasure | None = None          # single-equation checks
    measures: MeasureGrid | None = None            # system checks
    diamond_i: int | None = None


@dataclass(frozen=True)
class Plan:
    checks: tuple[PlanCheck, ...]


_KINDS = ("index1", "index0", "index0_diamond")


def parse_plan(data: dict, system: bool) -> Plan:
    table = data.get("plan")
    if not table or not table.get("checks"):
        raise SpecificationError("plan: no checks given")
    checks = []
    for pos, entry in enumerate(table["checks"], start=1):
        context = f"plan.checks[{pos}]"
        kind = _require(entry, "kind", context)
        if kind not in _KINDS:
            raise SpecificationError(f"{context}: unknown kind {kind!r}")
        if system:
            rhos = (scalar(_require(entry, "rho1", context), context),
                    scalar(_require(entry, "rho2", context), context))
            grid_entries = {}
            for key, md in entry.get("measures", {}).items():
                if not (key.startswith("alpha_") and len(key) == 9):
                    raise SpecificationError(
                        f"{context}: measure keys look like alpha_ijl, got {key!r}"
                    )
                i, j, l = (int(ch) for ch in key[6:9])
                grid_entries[(i, j, l)] = parse_measure(md, f"{context}.{key}")
            checks.append(
                PlanCheck(
                    kind=kind,
                    rhos=rhos,
                    measures=MeasureGrid(grid_entries),
                    diamond_i=int(entry["i"]) if "i" in entry else None,
                )
            )
        else:
            if kind == "index0_diamond":
                raise SpecificationError(f"{context}: diamond checks are for systems")
            rho = scalar(_require(entry, "rho", context), context)
            alpha = parse_measure(entry.get("alpha"), f"{context}.alpha")
            checks.append(PlanCheck(kind=kind, rhos=(rho,), alpha=alpha))
    return Plan(checks=tuple(checks))


def load_elliptic_transformed(data: dict) -> TransformResult:
    return transform(parse_elliptic(data))
