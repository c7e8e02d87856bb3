"""Index conditions, multiplicity planning, and non-existence thresholds for
systems of two perturbed Hammerstein integral equations.

Equation i couples to both unknowns through functionals H_i1, H_i2 with
profiles gamma_i1, gamma_i2.  The checks eliminate the coupled functional
values with order-preserving 2x2 matrix inversion and compare nonlinearity
envelopes against perturbed kernel integrals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .envelopes import (
    FunctionalSpec,
    NonlinearitySpec,
    boundary_box,
    box_extremum,
    domination_check,
)
from .errors import DomainError, SpecificationError
from .kernels import GammaSpec, KernelSpec, transformed_breakpoints, transformed_kernel
from .measures import StieltjesMeasure
from .quadrature import QuadratureRule, sup_inf_over_t
from .reports import FAIL, PASS, ConditionReport, merge_reports
from .settings import DEFAULT_SETTINGS, Settings

Array = np.ndarray

_ZERO = StieltjesMeasure.zero()


@dataclass(frozen=True)
class SystemSpec:
    """Two coupled equations with per-equation kernels, profiles and weights."""

    kernels: tuple[KernelSpec, KernelSpec]
    gammas: tuple[tuple[GammaSpec, GammaSpec], tuple[GammaSpec, GammaSpec]]
    weights: tuple[Callable[[Array], Array], Callable[[Array], Array]]
    H: tuple[tuple[FunctionalSpec, FunctionalSpec], tuple[FunctionalSpec, FunctionalSpec]]
    f: tuple[NonlinearitySpec, NonlinearitySpec]
    weight_breakpoints: tuple[tuple[float, ...], tuple[float, ...]] = ((), ())
    c_overrides: tuple[float | None, float | None] = (None, None)
    name: str = ""

    def __post_init__(self):
        for fi in self.f:
            if fi.arity != 3:
                raise SpecificationError("system nonlinearities need f(t, u, v)")
        for ci in self.c_overrides:
            if ci is not None and not 0.0 < ci <= 1.0:
                raise SpecificationError("c override must lie in (0, 1]")

    def cone_constant(self, i: int) -> float:
        """c_i = min of the kernel constant and the two profile constants."""
        if self.c_overrides[i] is not None:
            return self.c_overrides[i]
        kernel = self.kernels[i]
        g1, g2 = self.gammas[i]
        return min(kernel.c1, g1.c2, g2.c2)

    def rule(self, i: int, settings: Settings = DEFAULT_SETTINGS) -> QuadratureRule:
        return QuadratureRule(
            panels=settings.panels,
            nodes_per_panel=settings.nodes_per_panel,
            breakpoints=self.weight_breakpoints[i],
        )


class MeasureGrid:
    """The measures alpha_ijl attached to one system check.

    Keys are (i, j, l) with i the equation, j the functional column, and l
    the component the functional acts on; all indices are 1-based as in the
    condition statements.  Missing entries are the zero measure.
    """

    def __init__(self, entries: Mapping[tuple[int, int, int], StieltjesMeasure] | None = None):
        self._entries: dict[tuple[int, int, int], StieltjesMeasure] = {}
        for key, measure in (entries or {}).items():
            i, j, l = key
            if not all(idx in (1, 2) for idx in (i, j, l)):
                raise SpecificationError(f"measure index {key} out of range")
            self._entries[key] = measure

    def get(self, i: int, j: int, l: int) -> StieltjesMeasure:
        return self._entries.get((i, j, l), _ZERO)

    def items(self):
        return self._entries.items()


def matrix2_solve(
    a11: float, a12: float, a21: float, a22: float, rhs: tuple[float, float]
) -> tuple[float, float]:
    """Solve the 2x2 system with the order-preserving sign pattern.

    Diagonal entries must be non-negative and off-diagonal entries
    non-positive; the determinant must be positive, which makes the inverse
    order preserving.
    """
    if a11 < 0 or a22 < 0:
        raise SpecificationError("diagonal entries must be non-negative")
    if a12 > 0 or a21 > 0:
        raise SpecificationError("off-diagonal entries must be non-positive")
    det = a11 * a22 - a12 * a21
    if det <= 0:
        raise SpecificationError(
            f"determinant {det:g} is not positive; inverse is not order preserving"
        )
    p, q = rhs
    return ((a22 * p - a12 * q) / det, (a11 * q - a21 * p) / det)


def _weighted_kernel_integral(s, i, t, lo, hi, rule, absolute):
    kernel = s.kernels[i]
    weight = s.weights[i]
    breaks = kernel.s_breakpoints(float(t))
    integrand = lambda x: kernel.k(np.full_like(x, t), x) * weight(x)
    if absolute:
        return rule.integrate_abs(integrand, lo, hi, breaks)
    return rule.integrate(integrand, lo, hi, breaks)


# m_i and M_i depend only on the kernel and weight, not on measures or
# radii, so repeated checks reuse them.
_KERNEL_CONSTANT_CACHE: dict[tuple, tuple[float, float]] = {}


def _sup_abs_kernel(s, i, settings) -> tuple[float, float]:
    key = (s, i, "sup_abs", settings)
    if len(_KERNEL_CONSTANT_CACHE) > 64:
        _KERNEL_CONSTANT_CACHE.clear()
    if key not in _KERNEL_CONSTANT_CACHE:
        rule = s.rule(i, settings)
        F = lambda ts: np.array(
            [_weighted_kernel_integral(s, i, t, 0.0, 1.0, rule, True)
             for t in np.atleast_1d(ts)]
        )
        _KERNEL_CONSTANT_CACHE[key] = sup_inf_over_t(
            F, 0.0, 1.0, "sup", settings.grid_n, refine_tol=settings.refine_tol
        )
    return _KERNEL_CONSTANT_CACHE[key]


def _inf_window_kernel(s, i, settings) -> tuple[float, float]:
    key = (s, i, "inf_window", settings)
    if len(_KERNEL_CONSTANT_CACHE) > 64:
        _KERNEL_CONSTANT_CACHE.clear()
    if key not in _KERNEL_CONSTANT_CACHE:
        a, b = s.kernels[i].interval
        rule = s.rule(i, settings)
        F = lambda ts: np.array(
            [_weighted_kernel_integral(s, i, t, a, b, rule, False)
             for t in np.atleast_1d(ts)]
        )
        _KERNEL_CONSTANT_CACHE[key] = sup_inf_over_t(
            F, a, b, "inf", settings.grid_n, refine_tol=settings.refine_tol
        )
    return _KERNEL_CONSTANT_CACHE[key]


def system_constants(
    s: SystemSpec,
    mg: MeasureGrid,
    i: int,
    rho1: float,
    rho2: float,
    settings: Settings = DEFAULT_SETTINGS,
) -> dict:
    """Every constant of equation i's index conditions, as a named map.

    Raises nothing; a failed hypothesis (some alpha[gamma] >= 1 or D <= 0)
    is flagged under the ``hypothesis_ok`` key.
    """
    if i not in (1, 2):
        raise SpecificationError(f"equation index must be 1 or 2, got {i}")
    idx = i - 1
    other = 2 if i == 1 else 1
    rho_i = (rho1, rho2)[idx]
    rho_l = (rho1, rho2)[other - 1]
    rule = s.rule(idx, settings)
    g1, g2 = s.gammas[idx]

    consts: dict[str, float] = {}
    hypothesis_ok = True
    for j, l in ((1, 1), (1, 2), (2, 1), (2, 2)):
        gamma_ij = s.gammas[idx][j - 1]
        val = mg.get(i, j, l).apply(gamma_ij.gamma, rule)
        consts[f"alpha_{i}{j}{l}[gamma_{i}{j}]"] = val
        if val >= 1.0 - settings.tol:
            hypothesis_ok = False

    a_i1i = mg.get(i, 1, i)
    a_i2i = mg.get(i, 2, i)
    a11 = a_i1i.apply(g1.gamma, rule)
    a12 = a_i1i.apply(g2.gamma, rule)
    a21 = a_i2i.apply(g1.gamma, rule)
    a22 = a_i2i.apply(g2.gamma, rule)
    consts[f"alpha_{i}1{i}[gamma_{i}2]"] = a12
    consts[f"alpha_{i}2{i}[gamma_{i}1]"] = a21
    D = (1.0 - a11) * (1.0 - a22) - a12 * a21
    consts["D"] = D
    if D <= settings.tol:
        hypothesis_ok = False
    theta = (
        (1.0 - a22) / D,
        a12 / D,
        a21 / D,
        (1.0 - a11) / D,
    ) if D > 0 else (np.nan,) * 4
    consts.update({f"theta{j}": theta[j - 1] for j in (1, 2, 3, 4)})

    mass_1l = mg.get(i, 1, other).mass(rule)
    mass_2l = mg.get(i, 2, other).mass(rule)
    ratio = rho_l / rho_i
    Q = ratio * (a11 * mass_1l + a12 * mass_2l)
    S = ratio * (a21 * mass_1l + a22 * mass_2l)
    consts.update({"Q": Q, "S": S,
                   "alpha_mass_1l": mass_1l, "alpha_mass_2l": mass_2l})

    inv_m, arg_m = _sup_abs_kernel(s, idx, settings)
    inv_M, arg_M = _inf_window_kernel(s, idx, settings)
    consts.update(
        {
            "inv_m": inv_m,
            "m": np.inf if inv_m <= 0 else 1.0 / inv_m,
            "inv_m_arg": arg_m,
            "inv_M": inv_M,
            "M": np.inf if inv_M <= 0 else 1.0 / inv_M,
            "inv_M_arg": arg_M,
        }
    )

    a, b = s.kernels[idx].interval
    weight = s.weights[idx]
    for j in (1, 2):
        measure = mg.get(i, j, i)
        K = transformed_kernel(s.kernels[idx], measure, rule)
        breaks = transformed_breakpoints(s.kernels[idx], measure) + s.weight_breakpoints[idx]
        consts[f"K_int_full_{j}"] = rule.integrate(
            lambda x: K(x) * weight(x), 0.0, 1.0, breaks
        )
        consts[f"K_int_window_{j}"] = rule.integrate(
            lambda x: K(x) * weight(x), a, b, breaks
        )

    consts["gamma_norm_1"] = g1.norm
    consts["gamma_norm_2"] = g2.norm
    consts["c_gamma_1"] = g1.c2
    consts["c_gamma_2"] = g2.c2
    consts["c"] = s.cone_constant(idx)
    consts["hypothesis_ok"] = float(hypothesis_ok)
    return consts


def _system_domination(s, mg, i, rho1, rho2, kind, direction, settings):
    """Domination of H_i1, H_i2 by their measure pairs on a boundary set."""
    idx = i - 1
    cones = (s.cone_constant(0), s.cone_constant(1))
    rhos = (rho1, rho2)
    parts = {}
    for j in (1, 2):
        H = s.H[idx][j - 1]
        alphas = {0: mg.get(i, j, 1), 1: mg.get(i, j, 2)}
        points = list(H.points)
        for comp_key, measure in alphas.items():
            points.extend((comp_key, loc) for loc, _ in measure.atoms)
        boxes = {}
        for comp, loc in points:
            a, b = s.kernels[comp].interval
            in_window = a - 1e-12 <= loc <= b + 1e-12
            boxes[(comp, loc)] = boundary_box(
                kind, in_window, s.kernels[comp].sign_class, rhos[comp], cones[comp]
            )
        parts[f"H{i}{j}"] = domination_check(
            H, alphas, boxes, direction, tol=settings.tol, grid_n=settings.box_grid
        )
    return parts


def _index1_equation(s, mg, i, rho1, rho2, settings):
    idx = i - 1
    other = 2 if i == 1 else 1
    rho_i = (rho1, rho2)[idx]
    consts = system_constants(s, mg, i, rho1, rho2, settings)
    cid = f"eq{i}"
    if not consts["hypothesis_ok"]:
        return ConditionReport(cid, FAIL, consts, settings.as_dict(),
                               notes=("alpha[gamma] < 1 or D > 0 failed",))

    f_env = box_extremum(
        s.f[idx], (0.0, 1.0), (-rho1, rho1), (-rho2, rho2), rho_i, "sup",
        grid_n=settings.box_grid,
    )
    n1, n2 = consts["gamma_norm_1"], consts["gamma_norm_2"]
    th1, th2, th3, th4 = (consts[f"theta{j}"] for j in (1, 2, 3, 4))
    bracket = (
        (n1 * th1 + n2 * th3) * consts["K_int_full_1"]
        + (n1 * th2 + n2 * th4) * consts["K_int_full_2"]
        + consts["inv_m"]
    )
    ratio_term = (consts["alpha_mass_1l"] * n1 + consts["alpha_mass_2l"] * n2)
    ratio_term *= (rho1, rho2)[other - 1] / rho_i
    const_term = (
        n1 * (th1 * consts["Q"] + th2 * consts["S"])
        + n2 * (th3 * consts["Q"] + th4 * consts["S"])
        + ratio_term
    )
    lhs = f_env * bracket + const_term
    margin = 1.0 - lhs
    headroom = 1.0 - const_term
    consts.update(
        {
            "f_envelope": f_env,
            "sup_f": f_env * rho_i,
            "bracket": bracket,
            "const_term": const_term,
            "lhs": lhs,
            "margin": margin,
            "f_threshold": np.inf if bracket <= 0 else rho_i * headroom / bracket,
        }
    )
    return ConditionReport(
        cid, PASS if margin > settings.tol else FAIL, consts, settings.as_dict()
    )


def system_index1_check(
    s: SystemSpec,
    rho1: float,
    rho2: float,
    mg: MeasureGrid,
    settings: Settings = DEFAULT_SETTINGS,
) -> ConditionReport:
    """Index-1 condition on the product ball K_{rho1, rho2}."""
    if rho1 <= 0 or rho2 <= 0:
        raise DomainError("radii must be positive")
    cid = f"system-index1(rho=({rho1:g}, {rho2:g}))"
    parts = {}
    for i in (1, 2):
        parts[f"eq{i}"] = _index1_equation(s, mg, i, rho1, rho2, settings)
        parts.update(_system_domination(s, mg, i, rho1, rho2, "K", "le", settings))
    return merge_reports(cid, parts, settings.as_dict())


def _index0_equation(s, mg, i, rho1, rho2, settings, diamond):
    idx = i - 1
    rho_i = (rho1, rho2)[idx]
    c1_, c2_ = s.cone_constant(0), s.cone_constant(1)
    consts = system_constants(s, mg, i, rho1, rho2, settings)
    cid = f"eq{i}"
    if not consts["hypothesis_ok"]:
        return ConditionReport(cid, FAIL, consts, settings.as_dict(),
                               notes=("alpha[gamma] < 1 or D > 0 failed",))

    a, b = s.kernels[idx].interval
    if i == 1:
        u_range = (0.0 if diamond else rho1, rho1 / c1_)
        v_range = (-rho2 / c2_, rho2 / c2_)
    else:
        u_range = (-rho1 / c1_, rho1 / c1_)
        v_range = (0.0 if diamond else rho2, rho2 / c2_)
    f_env = box_extremum(
        s.f[idx], (a, b), u_range, v_range, rho_i, "inf", grid_n=settings.box_grid
    )

    n1, n2 = consts["gamma_norm_1"], consts["gamma_norm_2"]
    cg1, cg2 = consts["c_gamma_1"], consts["c_gamma_2"]
    a11 = consts[f"alpha_{i}1{i}[gamma_{i}1]"]
    a12 = consts[f"alpha_{i}1{i}[gamma_{i}2]"]
    a21 = consts[f"alpha_{i}2{i}[gamma_{i}1]"]
    a22 = consts[f"alpha_{i}2{i}[gamma_{i}2]"]
    D = consts["D"]
    coef1 = (cg1 * n1 * (1.0 - a22) + cg2 * n2 * a21) / D
    coef2 = (cg1 * n1 * a12 + cg2 * n2 * (1.0 - a11)) / D
    bracket = (
        coef1 * consts["K_int_window_1"]
        + coef2 * consts["K_int_window_2"]
        + consts["inv_M"]
    )
    lhs = f_env * bracket
    margin = lhs - 1.0
    consts.update(
        {
            "f_envelope": f_env,
            "inf_f": f_env * rho_i,
            "bracket": bracket,
            "lhs": lhs,
            "margin": margin,
            "f_threshold": np.inf if bracket <= 0 else rho_i / bracket,
        }
    )
    return ConditionReport(
        cid, PASS if margin > settings.tol else FAIL, consts, settings.as_dict()
    )


def system_index0_check(
    s: SystemSpec,
    rho1: float,
    rho2: float,
    mg: MeasureGrid,
    variant: str = "full",
    diamond_i: int | None = None,
    settings: Settings = DEFAULT_SETTINGS,
) -> ConditionReport:
    """Index-0 condition on V_{rho1, rho2}.

    The "full" variant bounds both nonlinearities from below; the "diamond"
    variant certifies a single equation ``diamond_i`` over the wider box in
    which its own component starts at zero.
    """
    if rho1 <= 0 or rho2 <= 0:
        raise DomainError("radii must be positive")
    if variant not in ("full", "diamond"):
        raise SpecificationError(f"variant must be 'full' or 'diamond', got {variant!r}")
    if variant == "diamond":
        if diamond_i not in (1, 2):
            raise SpecificationError("diamond variant must name equation 1 or 2")
        indices = (diamond_i,)
        cid = f"system-index0-diamond(i={diamond_i}, rho=({rho1:g}, {rho2:g}))"
    else:
        indices = (1, 2)
        cid = f"system-index0(rho=({rho1:g}, {rho2:g}))"
    parts = {}
    for i in indices:
        parts[f"eq{i}"] = _index0_equation(
            s, mg, i, rho1, rho2, settings, diamond=(variant == "diamond")
        )
        parts.update(_system_domination(s, mg, i, rho1, rho2, "V", "ge", settings))
    return merge_reports(cid, parts, settings.as_dict())


# ---------------------------------------------------------------------------
# Multiplicity planner
# ---------------------------------------------------------------------------

_PATTERNS = (
    ("S5", ("I0*", "I1", "I0", "I1"), ("c", "plain", "c"), 3),
    ("S6", ("I1", "I0", "I1", "I0"), ("plain", "c", "plain"), 3),
    ("S3", ("I0*", "I1", "I0"), ("c", "plain"), 2),
    ("S4", ("I1", "I0", "I1"), ("plain", "c"), 2),
    ("S1", ("I0*", "I1"), ("c",), 1),
    ("S2", ("I1", "I0"), ("plain",), 1),
)


@dataclass(frozen=True)
class SystemExistenceSummary:
    count: int
    pattern: str | None
    localizations: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def to_lines(self) -> list[str]:
        lines = [
            f"solutions = {self.count}",
            f"pattern = {self.pattern or 'none'}",
        ]
        for i, loc in enumerate(self.localizations, start=1):
            lines.append(f"solution_{i} = {loc}")
        lines.extend(f"note = {n}" for n in self.notes)
        return lines


def _kind_matches(kind: str, wanted: str) -> bool:
    if wanted == "I0*":
        return kind in ("I0", "I0d")
    return kind == wanted


def system_multiplicity(
    s: SystemSpec,
    verdicts: Sequence[tuple[tuple[float, float], str, ConditionReport]],
) -> SystemExistenceSummary:
    """Match the sequence of passing verdicts against the S-patterns.

    Kinds are "I1", "I0", and "I0d" (the diamond variant, admissible only
    where the patterns allow it).  Reports the first matching pattern, its
    guaranteed solution count, and the localization sets; with no match the
    summary says "no conclusion" rather than raising.
    """
    for _, kind, _ in verdicts:
        if kind not in ("I1", "I0", "I0d"):
            raise SpecificationError(f"unknown verdict kind {kind!r}")
    notes = []
    passing = []
    for radii, kind, rep in verdicts:
        if rep.passed:
            passing.append((radii, kind))
        else:
            notes.append(f"ignored failed {kind} at radii {radii}")

    c = (s.cone_constant(0), s.cone_constant(1))

    def gap_ok(r_prev, r_next, gap):
        for comp in (0, 1):
            left = r_prev[comp] / c[comp] if gap == "c" else r_prev[comp]
            if not left < r_next[comp]:
                return False
        return True

    for name, kinds, gaps, count in _PATTERNS:
        if len(passing) != len(kinds):
            continue
        if not all(_kind_matches(k, w) for (_, k), w in zip(passing, kinds)):
            continue
        if not all(
            gap_ok(passing[j][0], passing[j + 1][0], gaps[j]) for j in range(len(gaps))
        ):
            notes.append(f"kind sequence fits {name} but a radius gap fails")
            continue
        locs = []
        for j in range(len(passing) - 1):
            (r_a, k_a), (r_b, _) = passing[j], passing[j + 1]
            if k_a in ("I0", "I0d"):
                locs.append(
                    f"in K_({r_b[0]:g},{r_b[1]:g}) outside closure of "
                    f"V_({r_a[0]:g},{r_a[1]:g})"
                )
            else:
                locs.append(
                    f"in V_({r_b[0]:g},{r_b[1]:g}) outside closure of "
                    f"K_({r_a[0]:g},{r_a[1]:g})"
                )
        return SystemExistenceSummary(
            count=count, pattern=name, localizations=tuple(locs), notes=tuple(notes)
        )
    notes.append("no pattern matched: no conclusion")
    return SystemExistenceSummary(count=0, pattern=None, notes=tuple(notes))


# ---------------------------------------------------------------------------
# Non-existence for systems
# ---------------------------------------------------------------------------


def system_nonexistence(
    s: SystemSpec,
    measures: Mapping[tuple[int, int], StieltjesMeasure],
    mode,
    settings: Settings = DEFAULT_SETTINGS,
) -> ConditionReport:
    """Sublinear thresholds N_i, superlinear thresholds P_i, or a mix.

    ``mode`` is "sub", "super", or ("mixed", i) where i names the equation
    taking the sublinear role.  The report carries the thresholds; growth of
    the nonlinearities is checked separately with ``check_growth``.
    """
    if isinstance(mode, tuple):
        tag, sub_i = mode
        if tag != "mixed" or sub_i not in (1, 2):
            raise SpecificationError(f"bad mixed mode {mode!r}")
        roles = {sub_i: "sub", (2 if sub_i == 1 else 1): "super"}
    elif mode in ("sub", "super"):
        roles = {1: mode, 2: mode}
    else:
        raise SpecificationError(f"mode must be 'sub', 'super' or ('mixed', i)")

    constants: dict[str, float] = {}
    notes: list[str] = []
    verdict = PASS
    for i in (1, 2):
        idx = i - 1
        rule = s.rule(idx, settings)
        g1, g2 = s.gammas[idx]
        a11 = measures.get((i, 1), _ZERO).apply(g1.gamma, rule)
        a12 = measures.get((i, 1), _ZERO).apply(g2.gamma, rule)
        a21 = measures.get((i, 2), _ZERO).apply(g1.gamma, rule)
        a22 = measures.get((i, 2), _ZERO).apply(g2.gamma, rule)
        for label, val in (("11", a11), ("12", a12), ("21", a21), ("22", a22)):
            constants[f"eq{i}.alpha_{label}"] = val
        if a11 >= 1 - settings.tol or a22 >= 1 - settings.tol:
            verdict = FAIL
            notes.append(f"eq{i}: alpha[gamma] >= 1")
            continue
        D = (1.0 - a11) * (1.0 - a22) - a12 * a21
        constants[f"eq{i}.D"] = D
        if D <= settings.tol:
            verdict = FAIL
            notes.append(f"eq{i}: D <= 0")
            continue

        kernel = s.kernels[idx]
        weight = s.weights[idx]
        K_ints = {}
        for j in (1, 2):
            measure = measures.get((i, j), _ZERO)
            K = transformed_kernel(kernel, measure, rule)
            breaks = transformed_breakpoints(kernel, measure) + s.weight_breakpoints[idx]
            K_ints[(j, "full")] = rule.integrate(
                lambda x: K(x) * weight(x), 0.0, 1.0, breaks
            )
            a, b = kernel.interval
            K_ints[(j, "window")] = rule.integrate(
                lambda x: K(x) * weight(x), a, b, breaks
            )

        role = roles[i]
        if role == "sub":
            def F(ts):
                ts = np.atleast_1d(np.asarray(ts, float))
                base = np.array(
                    [_weighted_kernel_integral(s, idx, t, 0.0, 1.0, rule, True) for t in ts]
                )
                w1 = np.abs(g1.gamma(ts)) * (1.0 - a22) / D + np.abs(g2.gamma(ts)) * a21 / D
                w2 = np.abs(g1.gamma(ts)) * a12 / D + np.abs(g2.gamma(ts)) * (1.0 - a11) / D
                return base + w1 * K_ints[(1, "full")] + w2 * K_ints[(2, "full")]

            inv, arg = sup_inf_over_t(F, 0.0, 1.0, "sup", settings.grid_n,
                                      refine_tol=settings.refine_tol)
            constants[f"eq{i}.N"] = np.inf if inv <= 0 else 1.0 / inv
            constants[f"eq{i}.inv_N"] = inv
            constants[f"eq{i}.inv_N_arg"] = arg
        else:
            a, b = kernel.interval

            def F(ts):
                ts = np.atleast_1d(np.asarray(ts, float))
                base = np.array(
                    [_weighted_kernel_integral(s, idx, t, a, b, rule, False) for t in ts]
                )
                w1 = g1.gamma(ts) * (1.0 - a22) / D + g2.gamma(ts) * a21 / D
                w2 = g1.gamma(ts) * a12 / D + g2.gamma(ts) * (1.0 - a11) / D
                return base + w1 * K_ints[(1, "window")] + w2 * K_ints[(2, "window")]

            inv, arg = sup_inf_over_t(F, a, b, "inf", settings.grid_n,
                                      refine_tol=settings.refine_tol)
            constants[f"eq{i}.P"] = np.inf if inv <= 0 else 1.0 / inv
            constants[f"eq{i}.inv_P"] = inv
            constants[f"eq{i}.inv_P_arg"] = arg

    mode_name = mode if isinstance(mode, str) else f"mixed(sub={mode[1]})"
    return ConditionReport(
        condition_id=f"system-nonexistence({mode_name})",
        verdict=verdict,
        constants=constants,
        settings=settings.as_dict(),
        notes=tuple(notes),
    )
