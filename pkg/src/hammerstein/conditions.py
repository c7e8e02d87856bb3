"""Index-1 / index-0 conditions for one perturbed Hammerstein equation,
non-existence thresholds, growth checks, and the existence planner.

The equation is u(t) = gamma(t) H[u] + integral of k(t, s) g(s) f(s, u(s)) ds
on [0, 1].  The checkers evaluate the hypotheses of the cone fixed-point
index conditions numerically and report every intermediate constant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .envelopes import (
    FunctionalSpec,
    NonlinearitySpec,
    boundary_box,
    box_extremum,
    domination_check,
)
from .errors import DomainError, SpecificationError
from .kernels import GammaSpec, KernelSpec, SignClass, transformed_breakpoints, transformed_kernel
from .measures import StieltjesMeasure
from .quadrature import QuadratureRule, sup_inf_over_t
from .reports import FAIL, PASS, ConditionReport, merge_reports
from .settings import DEFAULT_SETTINGS, Settings

Array = np.ndarray


@dataclass(frozen=True)
class ProblemSpec:
    """One equation: kernel, perturbation profile, weight, functional, f."""

    kernel: KernelSpec
    gamma: GammaSpec
    g: Callable[[Array], Array]
    H: FunctionalSpec
    f: NonlinearitySpec
    g_breakpoints: tuple[float, ...] = ()
    c_override: float | None = None
    name: str = ""

    def __post_init__(self):
        if self.f.arity != 2:
            raise SpecificationError("single-equation problems need f(t, u)")
        if self.c_override is not None and not 0.0 < self.c_override <= 1.0:
            raise SpecificationError("c override must lie in (0, 1]")

    @property
    def c(self) -> float:
        if self.c_override is not None:
            return self.c_override
        return min(self.kernel.c1, self.gamma.c2)

    def rule(self, settings: Settings = DEFAULT_SETTINGS) -> QuadratureRule:
        return QuadratureRule(
            panels=settings.panels,
            nodes_per_panel=settings.nodes_per_panel,
            breakpoints=self.g_breakpoints,
        )


def _hypothesis_failed(condition_id, constants, settings, note):
    return ConditionReport(
        condition_id=condition_id,
        verdict=FAIL,
        constants=constants,
        settings=settings,
        notes=(note,),
    )


def _kernel_integral(p, t, lo, hi, rule, absolute):
    k = p.kernel.k
    g = p.g
    breaks = p.kernel.s_breakpoints(float(t))
    integrand = lambda s: k(np.full_like(s, t), s) * g(s)
    if absolute:
        return rule.integrate_abs(integrand, lo, hi, breaks)
    return rule.integrate(integrand, lo, hi, breaks)


def _bracket_extremum(p, alpha, alpha_gamma, lo, hi, mode, settings, absolute):
    """sup or inf over t of the gamma term plus the kernel integral.

    The gamma term uses |gamma| when ``absolute`` (sign-changing index-1);
    the kernel integral uses |k| in the same case.
    """
    rule = p.rule(settings)
    K = transformed_kernel(p.kernel, alpha, rule)
    K_breaks = transformed_breakpoints(p.kernel, alpha) + p.g_breakpoints
    CK = rule.integrate(lambda s: K(s) * p.g(s), lo, hi, K_breaks)
    gamma_fun = p.gamma.gamma

    def F(ts: Array) -> Array:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        kernel_part = np.array(
            [_kernel_integral(p, t, lo, hi, rule, absolute) for t in ts]
        )
        gvals = gamma_fun(ts)
        if absolute:
            gvals = np.abs(gvals)
        return gvals / (1.0 - alpha_gamma) * CK + kernel_part

    value, arg = sup_inf_over_t(
        F, lo, hi, mode, grid_n=settings.grid_n, refine_tol=settings.refine_tol
    )
    return value, arg, CK


def _envelope_u_range(sign_class: SignClass, rho: float, c: float, kind: str):
    """u-box of the nonlinearity envelope for the index-1 / index-0 checks."""
    if kind == "index1":
        if sign_class is SignClass.STRONGLY_POSITIVE:
            return (c * rho, rho)
        if sign_class is SignClass.NON_NEGATIVE:
            return (0.0, rho)
        return (-rho, rho)
    return (rho, rho / c)


def _domination(p, alpha, rho, kind, direction, settings):
    a, b = p.kernel.interval
    points = list(p.H.points) + [(0, loc) for loc, _ in alpha.atoms]
    boxes = {}
    for comp, loc in points:
        in_window = a - 1e-12 <= loc <= b + 1e-12
        boxes[(comp, loc)] = boundary_box(kind, in_window, p.kernel.sign_class, rho, p.c)
    return domination_check(p.H, {0: alpha}, boxes, direction, tol=settings.tol,
                            grid_n=settings.box_grid)


def index1_check(
    p: ProblemSpec,
    rho: float,
    alpha: StieltjesMeasure,
    settings: Settings = DEFAULT_SETTINGS,
) -> ConditionReport:
    """Index-1 condition on the ball of radius rho.

    Checks alpha[gamma] < 1, the domination H <= alpha on the ball boundary,
    and the product of the nonlinearity envelope with the supremum of the
    perturbed kernel integral being below one.
    """
    if rho <= 0:
        raise DomainError(f"rho must be positive, got {rho}")
    cid = f"index1(rho={rho:g})"
    rule = p.rule(settings)
    alpha_gamma = alpha.apply(p.gamma.gamma, rule)
    consts = {"alpha_gamma": alpha_gamma, "c": p.c, "rho": rho}
    if alpha_gamma >= 1.0 - settings.tol:
        return _hypothesis_failed(cid, consts, settings.as_dict(),
                                  "alpha[gamma] >= 1: resolvent bound unavailable")

    dom = _domination(p, alpha, rho, "K", "le", settings)

    sign_class = p.kernel.sign_class
    u_range = _envelope_u_range(sign_class, rho, p.c, "index1")
    f_env = box_extremum(p.f, (0.0, 1.0), u_range, None, rho, "sup",
                         grid_n=settings.box_grid)

    absolute = sign_class is SignClass.SIGN_CHANGING
    bracket, arg, CK = _bracket_extremum(
        p, alpha, alpha_gamma, 0.0, 1.0, "sup", settings, absolute
    )
    lhs = f_env * bracket
    margin = 1.0 - lhs
    consts.update(
        {
            "f_envelope": f_env,
            "sup_f": f_env * rho,
            "bracket": bracket,
            "bracket_arg": arg,
            "transformed_integral": CK,
            "bound": np.inf if bracket <= 0 else 1.0 / bracket,
            "f_threshold": np.inf if bracket <= 0 else rho / bracket,
            "lhs": lhs,
            "margin": margin,
        }
    )
    parts = {"domination": dom}
    main = ConditionReport(
        condition_id=cid,
        verdict=PASS if margin > settings.tol else FAIL,
        constants=consts,
        settings=settings.as_dict(),
    )
    return merge_reports(cid, {"main": main, **parts}, settings.as_dict())


def index0_check(
    p: ProblemSpec,
    rho: float,
    alpha: StieltjesMeasure,
    settings: Settings = DEFAULT_SETTINGS,
) -> ConditionReport:
    """Index-0 condition on the sub-level set of radius rho.

    The strongly positive class takes the infimum and integrals over all of
    [0, 1]; the other classes restrict both to the window [a, b].
    """
    if rho <= 0:
        raise DomainError(f"rho must be positive, got {rho}")
    cid = f"index0(rho={rho:g})"
    rule = p.rule(settings)
    alpha_gamma = alpha.apply(p.gamma.gamma, rule)
    consts = {"alpha_gamma": alpha_gamma, "c": p.c, "rho": rho}
    if alpha_gamma >= 1.0 - settings.tol:
        return _hypothesis_failed(cid, consts, settings.as_dict(),
                                  "alpha[gamma] >= 1: resolvent bound unavailable")

    dom = _domination(p, alpha, rho, "V", "ge", settings)

    sign_class = p.kernel.sign_class
    if sign_class is SignClass.STRONGLY_POSITIVE:
        lo, hi = 0.0, 1.0
    else:
        lo, hi = p.kernel.interval
    u_range = _envelope_u_range(sign_class, rho, p.c, "index0")
    f_env = box_extremum(p.f, (lo, hi), u_range, None, rho, "inf",
                         grid_n=settings.box_grid)

    bracket, arg, CK = _bracket_extremum(
        p, alpha, alpha_gamma, lo, hi, "inf", settings, absolute=False
    )
    lhs = f_env * bracket
    margin = lhs - 1.0
    consts.update(
        {
            "f_envelope": f_env,
            "inf_f": f_env * rho,
            "bracket": bracket,
            "bracket_arg": arg,
            "transformed_integral": CK,
            "bound": np.inf if bracket <= 0 else 1.0 / bracket,
            "f_threshold": np.inf if bracket <= 0 else rho / bracket,
            "lhs": lhs,
            "margin": margin,
        }
    )
    main = ConditionReport(
        condition_id=cid,
        verdict=PASS if margin > settings.tol else FAIL,
        constants=consts,
        settings=settings.as_dict(),
    )
    return merge_reports(cid, {"main": main, "domination": dom}, settings.as_dict())


@dataclass(frozen=True)
class NonexistenceThresholds:
    m_alpha: float
    M_alpha: float
    report: ConditionReport


def nonexistence_thresholds(
    p: ProblemSpec,
    alpha: StieltjesMeasure,
    settings: Settings = DEFAULT_SETTINGS,
) -> NonexistenceThresholds:
    """Sublinear slope m_alpha and superlinear slope M_alpha.

    1/m is the supremum over [0, 1] of the |gamma|-perturbed |k| integral;
    1/M is the infimum over [a, b] of the unperturbed version on [a, b].
    The caller decides which growth claim to test via ``check_growth``.
    """
    rule = p.rule(settings)
    alpha_gamma = alpha.apply(p.gamma.gamma, rule)
    cid = "nonexistence-thresholds"
    if alpha_gamma >= 1.0 - settings.tol:
        report = _hypothesis_failed(cid, {"alpha_gamma": alpha_gamma},
                                    settings.as_dict(),
                                    "alpha[gamma] >= 1: resolvent bound unavailable")
        return NonexistenceThresholds(np.nan, np.nan, report)

    inv_m, arg_m, CK = _bracket_extremum(
        p, alpha, alpha_gamma, 0.0, 1.0, "sup", settings, absolute=True
    )
    a, b = p.kernel.interval
    inv_M, arg_M, CK_ab = _bracket_extremum(
        p, alpha, alpha_gamma, a, b, "inf", settings, absolute=False
    )
    m_alpha = np.inf if inv_m <= 0 else 1.0 / inv_m
    M_alpha = np.inf if inv_M <= 0 else 1.0 / inv_M
    report = ConditionReport(
        condition_id=cid,
        verdict=PASS,
        constants={
            "alpha_gamma": alpha_gamma,
            "m_alpha": m_alpha,
            "M_alpha": M_alpha,
            "inv_m": inv_m,
            "inv_m_arg": arg_m,
            "inv_M": inv_M,
            "inv_M_arg": arg_M,
        },
        settings=settings.as_dict(),
    )
    return NonexistenceThresholds(m_alpha, M_alpha, report)


def check_growth(
    f: NonlinearitySpec,
    slope: float,
    direction: str,
    t_range: tuple[float, float],
    u_range: tuple[float, float],
    settings: Settings = DEFAULT_SETTINGS,
    v_range: tuple[float, float] | None = None,
    component: int = 0,
) -> ConditionReport:
    """Grid-verify f < slope * |u| or f > slope * u strictly on the box.

    The verdict only covers the tested range, which the report records.
    For two-component nonlinearities ``component`` names the argument the
    slope multiplies.
    """
    if slope <= 0:
        raise DomainError(f"slope must be positive, got {slope}")
    if direction not in ("<", ">"):
        raise DomainError(f"direction must be '<' or '>', got {direction!r}")

    if f.arity == 2:
        if direction == "<":
            gap = lambda t, u: slope * np.abs(u) - f.f(t, u)
        else:
            gap = lambda t, u: f.f(t, u) - slope * u
        margin_spec = NonlinearitySpec(gap, arity=2)
        margin = box_extremum(margin_spec, t_range, u_range, None, 1.0, "inf",
                              grid_n=settings.box_grid)
    else:
        if v_range is None:
            raise SpecificationError("three-argument growth check needs a v range")
        pick = (lambda u, v: u) if component == 0 else (lambda u, v: v)
        if direction == "<":
            gap = lambda t, u, v: slope * np.abs(pick(u, v)) - f.f(t, u, v)
        else:
            gap = lambda t, u, v: f.f(t, u, v) - slope * pick(u, v)
        margin_spec = NonlinearitySpec(gap, arity=3)
        margin = box_extremum(margin_spec, t_range, u_range, v_range, 1.0, "inf",
                              grid_n=settings.box_grid)

    note = (
        f"strict inequality f {direction} {slope:g}*u tested on "
        f"t in [{t_range[0]:g}, {t_range[1]:g}], u in [{u_range[0]:g}, {u_range[1]:g}]"
    )
    return ConditionReport(
        condition_id=f"growth({direction}, slope={slope:g})",
        verdict=PASS if margin > settings.tol else FAIL,
        constants={"margin": margin, "slope": slope},
        settings=settings.as_dict(),
        notes=(note,),
    )


@dataclass(frozen=True)
class LocalizedSolution:
    """One guaranteed solution with its localization window."""

    description: str
    lower: float
    lower_window: tuple[float, float]
    upper: float


@dataclass(frozen=True)
class ExistenceSummary:
    count: int
    solutions: tuple[LocalizedSolution, ...]
    notes: tuple[str, ...] = ()

    def to_lines(self) -> list[str]:
        lines = [f"solutions = {self.count}"]
        for i, sol in enumerate(self.solutions, start=1):
            lines.append(f"solution_{i} = {sol.description}")
        lines.extend(f"note = {n}" for n in self.notes)
        return lines


def single_multiplicity(
    p: ProblemSpec, verdicts: Sequence[tuple[float, str, ConditionReport]]
) -> ExistenceSummary:
    """Alternating-index counting for one equation.

    ``verdicts`` is a list of (rho, kind, report) with kind "I1" or "I0",
    sorted by rho.  Each adjacent alternating pair with a valid radius gap
    certifies one solution; gap violations are specification errors.
    """
    rhos = [v[0] for v in verdicts]
    if any(r2 <= r1 for r1, r2 in zip(rhos, rhos[1:])):
        raise SpecificationError("verdicts must be sorted by strictly increasing rho")
    for _, kind, _ in verdicts:
        if kind not in ("I1", "I0"):
            raise SpecificationError(f"unknown verdict kind {kind!r}")

    passing = [(rho, kind) for rho, kind, rep in verdicts if rep.passed]
    failed = [(rho, kind) for rho, kind, rep in verdicts if not rep.passed]
    notes = [f"ignored failed {kind} at rho={rho:g}" for rho, kind in failed]

    c = p.c
    a, b = p.kernel.interval
    window = f"[{a:g}, {b:g}]"
    solutions: list[LocalizedSolution] = []
    for (rho1, kind1), (rho2, kind2) in zip(passing, passing[1:]):
        if kind1 == kind2:
            continue
        if kind1 == "I0":
            if rho1 / c >= rho2:
                raise SpecificationError(
                    f"I0 at rho={rho1:g} followed by I1 at rho={rho2:g} "
                    f"requires rho1/c < rho2 (rho1/c = {rho1 / c:g})"
                )
            solutions.append(
                LocalizedSolution(
                    description=(
                        f"norm <= {rho2:g} and min over {window} >= {rho1:g}"
                    ),
                    lower=rho1,
                    lower_window=(a, b),
                    upper=rho2,
                )
            )
        else:
            if rho1 >= rho2:
                raise SpecificationError(
                    f"I1 at rho={rho1:g} followed by I0 at rho={rho2:g} "
                    f"requires rho1 < rho2"
                )
            solutions.append(
                LocalizedSolution(
                    description=(
                        f"norm <= {rho2 / c:g} and min over {window} >= {c * rho1:g}"
                    ),
                    lower=c * rho1,
                    lower_window=(a, b),
                    upper=rho2 / c,
                )
            )
    return ExistenceSummary(
        count=len(solutions), solutions=tuple(solutions), notes=tuple(notes)
    )
