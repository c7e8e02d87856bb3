"""Kernels k(t, s) with envelopes, cone constants, and the built-in library.

A kernel spec records the data the index conditions need: an envelope
function Phi, the sub-interval [a, b] where the kernel dominates c1 * Phi,
and the sign class that selects which inequalities define the cone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, SpecificationError
from .measures import StieltjesMeasure
from .quadrature import DEFAULT_RULE, QuadratureRule, sup_inf_over_t
from .reports import FAIL, PASS, ConditionReport

Array = np.ndarray
Kernel2D = Callable[[Array, Array], Array]
Func1D = Callable[[Array], Array]


class SignClass(enum.Enum):
    STRONGLY_POSITIVE = "strongly_positive"
    NON_NEGATIVE = "non_negative"
    SIGN_CHANGING = "sign_changing"

    @classmethod
    def from_string(cls, text: str) -> "SignClass":
        try:
            return cls(text)
        except ValueError:
            raise SpecificationError(
                f"unknown sign class {text!r}; expected one of "
                f"{[m.value for m in cls]}"
            ) from None


def _no_breakpoints(t: float) -> tuple[float, ...]:
    return ()


@dataclass(frozen=True)
class KernelSpec:
    """A kernel with its envelope and cone data.

    ``s_breakpoints(t)`` lists the s-locations where s -> k(t, s) is not
    smooth, so quadrature can split there and keep its full order.
    """

    k: Kernel2D
    phi: Func1D
    interval: tuple[float, float]
    c1: float
    sign_class: SignClass
    s_breakpoints: Callable[[float], tuple[float, ...]] = _no_breakpoints
    phi_breakpoints: tuple[float, ...] = ()
    name: str = ""

    def __post_init__(self):
        a, b = self.interval
        if not (0.0 <= a < b <= 1.0):
            raise SpecificationError(f"invalid kernel interval [{a}, {b}]")
        if not 0.0 < self.c1 <= 1.0:
            raise SpecificationError(f"c1 must lie in (0, 1], got {self.c1}")
        if self.sign_class is SignClass.STRONGLY_POSITIVE and (a, b) != (0.0, 1.0):
            raise SpecificationError(
                "strongly positive kernels require [a, b] = [0, 1]"
            )


@dataclass(frozen=True)
class GammaSpec:
    """The perturbation profile gamma with its lower-bound constant c2.

    The norm is the supremum of |gamma| over a fine grid (with golden-section
    refinement); c2 defaults to min over [a, b] of gamma divided by the norm.
    """

    gamma: Func1D
    interval: tuple[float, float]
    c2: float | None = None
    norm: float | None = None
    name: str = ""

    def __post_init__(self):
        if self.norm is None:
            sup_abs, _ = sup_inf_over_t(
                lambda t: np.abs(self.gamma(t)), 0.0, 1.0, "sup", grid_n=2049
            )
            object.__setattr__(self, "norm", float(sup_abs))
        if self.norm <= 0:
            raise SpecificationError("gamma must not be identically zero")
        if self.c2 is None:
            a, b = self.interval
            low, _ = sup_inf_over_t(self.gamma, a, b, "inf", grid_n=2049)
            c2 = low / self.norm
            if c2 <= 0:
                raise SpecificationError(
                    "gamma is not bounded below by a positive multiple of its "
                    "norm on [a, b]"
                )
            object.__setattr__(self, "c2", float(min(c2, 1.0)))
        if not 0.0 < self.c2 <= 1.0:
            raise SpecificationError(f"c2 must lie in (0, 1], got {self.c2}")


def transformed_kernel(
    kernel: KernelSpec,
    measure: StieltjesMeasure,
    rule: QuadratureRule = DEFAULT_RULE,
) -> Func1D:
    """The s-function K(s) = integral of k(t, s) dA(t).

    For atom-only measures this is the closed form sum_i w_i k(t_i, s).
    """
    if measure.density is None:

        def K(s: Array) -> Array:
            total = np.zeros_like(np.asarray(s, dtype=float))
            for loc, weight in measure.atoms:
                total = total + weight * kernel.k(np.full_like(total, loc), s)
            return total

    else:

        def K(s: Array) -> Array:
            s = np.asarray(s, dtype=float)
            flat = np.atleast_1d(s)
            vals = np.array(
                [measure.apply(lambda t: kernel.k(t, np.full_like(t, si)), rule)
                 for si in flat]
            )
            return vals.reshape(s.shape)

    return K


def transformed_breakpoints(kernel: KernelSpec, measure: StieltjesMeasure) -> tuple[float, ...]:
    """s-kinks of the transformed kernel: the union over atoms of k's kinks."""
    points: list[float] = []
    for loc, _ in measure.atoms:
        points.extend(kernel.s_breakpoints(loc))
    return tuple(sorted(set(points)))


def verify_bounds(
    kernel: KernelSpec, grid_n: int = 256, tol: float = 1e-9
) -> ConditionReport:
    """Sample the sign class's two defining inequalities on a tensor grid.

    Reports the worst-case violation margin; passes iff margin >= -tol.
    """
    if grid_n < 16:
        raise DomainError("grid_n must be at least 16")
    t_grid = np.linspace(0.0, 1.0, grid_n)
    s_grid = np.linspace(0.0, 1.0, grid_n)
    extra = set(kernel.phi_breakpoints)
    for t in t_grid[:: max(1, grid_n // 64)]:
        extra.update(kernel.s_breakpoints(float(t)))
    if extra:
        s_grid = np.unique(np.concatenate((s_grid, np.array(sorted(extra)))))
    T, S = np.meshgrid(t_grid, s_grid, indexing="ij")
    K = np.asarray(kernel.k(T, S), dtype=float)
    Phi = np.asarray(kernel.phi(s_grid), dtype=float)[None, :]
    a, b = kernel.interval
    window = (t_grid >= a - 1e-12) & (t_grid <= b + 1e-12)

    if kernel.sign_class is SignClass.STRONGLY_POSITIVE:
        upper = float(np.min(Phi - K))
        lower = float(np.min(K - kernel.c1 * Phi))
    elif kernel.sign_class is SignClass.NON_NEGATIVE:
        upper = float(np.min(np.minimum(Phi - K, K)))
        lower = float(np.min(K[window] - kernel.c1 * Phi))
    else:
        upper = float(np.min(Phi - np.abs(K)))
        lower = float(np.min(K[window] - kernel.c1 * Phi))
    margin = min(upper, lower)

    return ConditionReport(
        condition_id=f"kernel-bounds[{kernel.name or 'custom'}]",
        verdict=PASS if margin >= -tol else FAIL,
        constants={
            "envelope_margin": upper,
            "lower_bound_margin": lower,
            "margin": margin,
        },
        settings={"grid_n": grid_n, "tol": tol},
    )


def verify_gamma(
    gamma: GammaSpec, grid_n: int = 256, tol: float = 1e-9
) -> ConditionReport:
    """Check gamma(t) >= c2 * ||gamma|| on [a, b] with the stored constants."""
    a, b = gamma.interval
    grid = np.linspace(a, b, grid_n)
    margin = float(np.min(gamma.gamma(grid) - gamma.c2 * gamma.norm))
    return ConditionReport(
        condition_id="gamma-bounds",
        verdict=PASS if margin >= -tol else FAIL,
        constants={"margin": margin, "norm": gamma.norm, "c2": gamma.c2},
        settings={"grid_n": grid_n, "tol": tol},
    )


# ---------------------------------------------------------------------------
# Built-in kernel library
# ---------------------------------------------------------------------------


def _reactor(lam: float, a: float = 0.0, b: float = 1.0):
    if lam <= 0:
        raise SpecificationError("reactor kernel requires lam > 0")
    if (a, b) != (0.0, 1.0):
        raise SpecificationError("reactor kernel is strongly positive on [0, 1]")

    def k(t, s):
        return np.where(s > t, np.exp(lam * (t - s)), 1.0)

    def gamma(t):
        return np.exp(lam * (np.asarray(t, float) - 1.0)) / lam

    kernel = KernelSpec(
        k=k,
        phi=lambda s: np.ones_like(np.asarray(s, float)),
        interval=(0.0, 1.0),
        c1=float(np.exp(-lam)),
        sign_class=SignClass.STRONGLY_POSITIVE,
        s_breakpoints=lambda t: (t,),
        name="reactor",
    )
    gspec = GammaSpec(
        gamma=gamma,
        interval=(0.0, 1.0),
        c2=float(np.exp(-lam)),
        norm=1.0 / lam,
        name="reactor-gamma",
    )
    return kernel, (gspec,)


def _cantilever(a: float, b: float):
    if not (0.0 < a < b <= 1.0):
        raise SpecificationError("cantilever kernel requires 0 < a < b <= 1")

    def k(t, s):
        return np.where(
            s >= t,
            (3.0 * t * t * s - t**3) / 6.0,
            (3.0 * s * s * t - s**3) / 6.0,
        )

    def gamma(t):
        t = np.asarray(t, float)
        return (3.0 * t * t - t**3) / 6.0

    c = a * a * (3.0 - a) / 2.0
    kernel = KernelSpec(
        k=k,
        phi=lambda s: np.asarray(s, float) ** 2 / 2.0 - np.asarray(s, float) ** 3 / 6.0,
        interval=(a, b),
        c1=c,
        sign_class=SignClass.NON_NEGATIVE,
        s_breakpoints=lambda t: (t,),
        name="cantilever",
    )
    gspec = GammaSpec(
        gamma=gamma, interval=(a, b), c2=c, norm=1.0 / 3.0, name="cantilever-gamma"
    )
    return kernel, (gspec,)


def _thermostat(beta: float, eta: float, a: float, b: float):
    if beta <= 0:
        raise SpecificationError("thermostat kernel requires beta > 0")
    if not 0.0 <= eta <= 1.0:
        raise SpecificationError("thermostat kernel requires eta in [0, 1]")
    if beta + eta >= 1.0:
        raise SpecificationError("thermostat kernel requires beta + eta < 1")
    if not (0.0 <= a < b < beta + eta):
        raise SpecificationError(
            "thermostat kernel requires 0 <= a < b < beta + eta"
        )
    phi_val = max(beta + eta, 1.0 - beta - eta)

    def k(t, s):
        s = np.asarray(s, float)
        return (
            beta
            + np.where(s <= eta, eta - s, 0.0)
            - np.where(s <= t, np.asarray(t, float) - s, 0.0)
        )

    # min over [a, b] of k is attained at t = b (the four-case choice of c)
    low = beta if b <= eta else beta + eta - b
    kernel = KernelSpec(
        k=k,
        phi=lambda s: np.full_like(np.asarray(s, float), phi_val),
        interval=(a, b),
        c1=low / phi_val,
        sign_class=SignClass.SIGN_CHANGING,
        s_breakpoints=lambda t: tuple(sorted({eta, t})),
        name="thermostat",
    )
    gspec = GammaSpec(
        gamma=lambda t: beta + eta - np.asarray(t, float),
        interval=(a, b),
        c2=(beta + eta - b) / phi_val,
        norm=phi_val,
        name="thermostat-gamma",
    )
    return kernel, (gspec,)


def _multipoint_k1(beta1: float, eta: float, a: float, b: float):
    if beta1 >= 0:
        raise SpecificationError("multipoint_k1 requires beta1 < 0")
    if not 0.0 < eta < 1.0:
        raise SpecificationError("multipoint_k1 requires eta in (0, 1)")
    if not (0.0 <= a < b <= eta):
        raise SpecificationError("multipoint_k1 requires [a, b] inside [0, eta]")
    denom = 1.0 - beta1

    def k(t, s):
        s = np.asarray(s, float)
        return (
            (1.0 - s) / denom
            - (beta1 / denom) * np.where(s <= eta, eta - s, 0.0)
            - np.where(s <= t, np.asarray(t, float) - s, 0.0)
        )

    kernel = KernelSpec(
        k=k,
        phi=lambda s: 1.0 - np.asarray(s, float),
        interval=(a, b),
        c1=(1.0 - eta) / denom,
        sign_class=SignClass.SIGN_CHANGING,
        s_breakpoints=lambda t: tuple(sorted({eta, t})),
        name="multipoint_k1",
    )
    gamma1 = GammaSpec(
        gamma=lambda t: -np.asarray(t, float) + (1.0 - beta1 * eta) / denom,
        interval=(a, b),
        name="multipoint_k1-gamma1",
    )
    gamma2 = GammaSpec(
        gamma=lambda t: np.full_like(np.asarray(t, float), 1.0 / denom),
        interval=(a, b),
        c2=1.0,
        norm=1.0 / denom,
        name="multipoint_k1-gamma2",
    )
    return kernel, (gamma1, gamma2)


def _derivative_k2(beta2: float, xi: float, a: float, b: float):
    if not 0.0 < xi < 1.0:
        raise SpecificationError("derivative_k2 requires xi in (0, 1)")
    if not 0.0 < beta2 < 1.0 - xi:
        raise SpecificationError("derivative_k2 requires 0 < beta2 < 1 - xi")
    if not (0.0 <= a < b <= xi):
        raise SpecificationError("derivative_k2 requires [a, b] inside [0, xi]")

    def k(t, s):
        s = np.asarray(s, float)
        return (
            (1.0 - s)
            - np.where(s <= xi, beta2, 0.0)
            - np.where(s <= t, np.asarray(t, float) - s, 0.0)
        )

    kernel = KernelSpec(
        k=k,
        phi=lambda s: 1.0 - np.asarray(s, float),
        interval=(a, b),
        c1=1.0 - beta2 - xi,
        sign_class=SignClass.SIGN_CHANGING,
        s_breakpoints=lambda t: tuple(sorted({xi, t})),
        name="derivative_k2",
    )
    gamma1 = GammaSpec(
        gamma=lambda t: -np.asarray(t, float) + 1.0 - beta2,
        interval=(a, b),
        c2=(1.0 - beta2 - b) / (1.0 - beta2),
        norm=1.0 - beta2,
        name="derivative_k2-gamma1",
    )
    gamma2 = GammaSpec(
        gamma=lambda t: np.ones_like(np.asarray(t, float)),
        interval=(a, b),
        c2=1.0,
        norm=1.0,
        name="derivative_k2-gamma2",
    )
    return kernel, (gamma1, gamma2)


_BUILTINS = {
    "reactor": _reactor,
    "cantilever": _cantilever,
    "thermostat": _thermostat,
    "multipoint_k1": _multipoint_k1,
    "derivative_k2": _derivative_k2,
}


def builtin(name: str, **params) -> tuple[KernelSpec, tuple[GammaSpec, ...]]:
    """Instantiate a built-in kernel with its associated gamma profile(s)."""
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise SpecificationError(
            f"unknown builtin kernel {name!r}; available: {sorted(_BUILTINS)}"
        ) from None
    try:
        return factory(**params)
    except TypeError as exc:
        raise SpecificationError(f"bad parameters for kernel {name!r}: {exc}") from None
