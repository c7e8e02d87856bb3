"""Emission of system configs (used by the transform command) and reports."""

from __future__ import annotations

import json
import re

from .elliptic import TransformResult
from .expressions import scalar


def _toml_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, float)):
        return repr(v)
    if isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, list):
        return "[" + ", ".join(_toml_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k} = {_toml_value(val)}" for k, val in v.items()) + "}"
    raise TypeError(f"cannot serialize {v!r}")


def _radial_exprs(n: int, R1: float, R0: float) -> tuple[str, str]:
    """Expression strings (in the variable s) for r and phi."""
    if n == 2:
        r_expr = f"(({R0!r})^(1-s))*(({R1!r})^s)"
        phi_expr = f"(({r_expr})^2)*((log(({R0!r})/({R1!r})))^2)"
    else:
        p = n - 2
        base = f"(({R0!r})^(-{p}) + (({R1!r})^(-{p}) - ({R0!r})^(-{p}))*s)"
        r_expr = f"({base})^(-1/{p})"
        phi_expr = (
            f"(((({R1!r})^(-{p})) - (({R0!r})^(-{p})))/{p})^2"
            f" * ({base})^(-2*{n - 1}/{p})"
        )
    return r_expr, phi_expr


def _weight_expr(gtilde_expr: str, r_expr: str, phi_expr: str) -> str:
    substituted = re.sub(r"\br\b", f"({r_expr})", gtilde_expr)
    return f"({phi_expr})*({substituted})"


def _functional_table(spec, h_expr: str | None, scale: float | None) -> dict | None:
    if spec.is_zero or h_expr is None:
        return None
    points = [[comp + 1, loc] for comp, loc in spec.points]
    h = h_expr if scale is None else f"({scale!r})*({h_expr})"
    return {"points": points, "h": h}


def system_config_text(config: dict, result: TransformResult) -> str:
    """A system config equivalent to the given elliptic config.

    Weight formulas are composed textually from the radial change of
    variables and the radial weights, so the emitted file is self-contained.
    """
    ell = config["elliptic"]
    n = int(ell.get("n", 2))
    R0, R1 = scalar(ell["R0"], "R0"), scalar(ell["R1"], "R1")
    r_expr, phi_expr = _radial_exprs(n, R1, R0)
    system = result.system

    lines = ["# generated from an elliptic annulus description", ""]
    for i, (kernel_line, g_key, f_key) in enumerate(
        (("multipoint_k1", "gtilde1", "f1"), ("derivative_k2", "gtilde2", "f2"))
    ):
        eq = f"system.eq{i + 1}"
        a, b = system.kernels[i].interval
        if i == 0:
            kernel = {"builtin": "multipoint_k1", "beta1": scalar(ell["beta1"], "beta1"),
                      "eta": result.eta, "a": a, "b": b}
        else:
            kernel = {"builtin": "derivative_k2", "beta2": result.beta2,
                      "xi": result.xi, "a": a, "b": b}
        lines.append(f"[{eq}]")
        lines.append(f"kernel = {_toml_value(kernel)}")
        lines.append(f"g = {_toml_value(_weight_expr(ell.get(g_key, '1'), r_expr, phi_expr))}")
        lines.append(f"f = {_toml_value(ell[f_key])}")
        override_key = f"c{i + 1}_override"
        if override_key in ell:
            lines.append(f"c = {_toml_value(scalar(ell[override_key], override_key))}")
        h_scaled = _functional_table(
            system.H[i][0], ell.get(f"H{i + 1}1", {}).get("h"), result.h1_scale
        )
        h_plain = _functional_table(
            system.H[i][1], ell.get(f"H{i + 1}2", {}).get("h"), None
        )
        if h_scaled:
            lines.append(f"H1 = {_toml_value(h_scaled)}")
        if h_plain:
            lines.append(f"H2 = {_toml_value(h_plain)}")
        lines.append("")

    if "plan" in config:
        for check in config["plan"].get("checks", []):
            lines.append("[[plan.checks]]")
            for key, value in check.items():
                lines.append(f"{key} = {_toml_value(value)}")
            lines.append("")
    return "\n".join(lines)
