"""Nonlinearity envelopes (box extrema of f / rho) and functional domination.

The growth numbers compared against kernel integrals are essential suprema
or infima of f(t, u) / rho over boxes; all bundled nonlinearities are
continuous, so plain extrema of the continuous representative are used.
Extrema are grid-sampled with local zoom refinement, and reports always
carry the achieved margin so near-violations stay visible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import DomainError, SpecificationError
from .kernels import SignClass
from .measures import StieltjesMeasure
from .reports import FAIL, PASS, ConditionReport

Array = np.ndarray


@dataclass(frozen=True)
class NonlinearitySpec:
    """A non-negative Caratheodory nonlinearity f(t, u) or f(t, u, v)."""

    f: Callable[..., Array]
    arity: int = 2
    name: str = ""

    def __post_init__(self):
        if self.arity not in (2, 3):
            raise SpecificationError("nonlinearity arity must be 2 or 3")

    def __call__(self, *args) -> Array:
        return self.f(*args)


@dataclass(frozen=True)
class FunctionalSpec:
    """A compact functional reduced to finitely many point evaluations.

    ``points`` is a tuple of (component, location) pairs; component 0 is the
    first unknown, component 1 the second.  ``h`` maps the vector of point
    values to the functional value and must broadcast over arrays.
    """

    points: tuple[tuple[int, float], ...] = ()
    h: Callable[..., Array] | None = None
    name: str = ""

    def __post_init__(self):
        for comp, loc in self.points:
            if comp not in (0, 1):
                raise SpecificationError(f"functional component must be 0 or 1, got {comp}")
            if not 0.0 <= loc <= 1.0:
                raise DomainError(f"functional point {loc} outside [0, 1]")

    @classmethod
    def zero(cls) -> "FunctionalSpec":
        return cls(points=(), h=None, name="zero")

    @property
    def is_zero(self) -> bool:
        return self.h is None

    def value(self, point_values: Sequence[Array]) -> Array:
        if self.h is None:
            return np.zeros_like(np.asarray(point_values[0], float)) if point_values else 0.0
        return self.h(*point_values)

    def evaluate(self, interpolants: Sequence[Callable[[Array], Array]]) -> float:
        """Apply the functional to concrete function(s) of t."""
        if self.h is None:
            return 0.0
        values = [interpolants[comp](np.array(loc)) for comp, loc in self.points]
        return float(self.h(*values))


def _zoom_extremum(
    fun: Callable[[Sequence[Array]], Array],
    ranges: Sequence[tuple[float, float]],
    mode: str,
    grid_n: int,
    zoom_iters: int = 40,
    zoom_points: int = 9,
) -> tuple[float, tuple[float, ...]]:
    """Grid extremum over a box with iterative zoom around the best point."""
    sign = -1.0 if mode == "sup" else 1.0
    lows = np.array([r[0] for r in ranges], dtype=float)
    highs = np.array([r[1] for r in ranges], dtype=float)
    if np.any(highs < lows):
        raise DomainError("degenerate box: upper bound below lower bound")

    def evaluate(axes):
        grids = np.meshgrid(*axes, indexing="ij")
        vals = np.asarray(fun(grids), dtype=float)
        idx = np.unravel_index(int(np.argmin(sign * vals)), vals.shape)
        return float(vals[idx]), np.array([g[idx] for g in grids])

    axes = [
        np.linspace(lo, hi, 1 if hi - lo < 1e-15 else grid_n)
        for lo, hi in zip(lows, highs)
    ]
    best_val, best_arg = evaluate(axes)

    widths = (highs - lows) / max(grid_n - 1, 1)
    for _ in range(zoom_iters):
        if np.all(widths < 1e-12):
            break
        axes = []
        for j in range(len(ranges)):
            lo = max(lows[j], best_arg[j] - widths[j])
            hi = min(highs[j], best_arg[j] + widths[j])
            axes.append(np.linspace(lo, hi, 1 if hi - lo < 1e-15 else zoom_points))
        val, arg = evaluate(axes)
        if sign * val < sign * best_val:
            best_val, best_arg = val, arg
        widths = widths * 0.5
    return best_val, tuple(best_arg)


def box_extremum(
    spec: NonlinearitySpec,
    t_range: tuple[float, float],
    u_range: tuple[float, float],
    v_range: tuple[float, float] | None,
    rho: float,
    mode: str,
    grid_n: int = 128,
) -> float:
    """Extremum of f / rho over the box t_range x u_range [x v_range]."""
    if rho <= 0:
        raise DomainError(f"rho must be positive, got {rho}")
    if mode not in ("sup", "inf"):
        raise DomainError(f"mode must be 'sup' or 'inf', got {mode!r}")
    ranges = [t_range, u_range]
    if spec.arity == 3:
        if v_range is None:
            raise SpecificationError("three-argument nonlinearity needs a v range")
        ranges.append(v_range)
    elif v_range is not None:
        raise SpecificationError("two-argument nonlinearity got a v range")
    value, _ = _zoom_extremum(lambda g: spec.f(*g), ranges, mode, grid_n)
    return value / rho


def boundary_box(
    kind: str,
    in_window: bool,
    sign_class: SignClass,
    rho: float,
    c: float,
) -> tuple[float, float]:
    """Admissible value range at one evaluation point on a boundary set.

    ``kind`` is "K" for the boundary of the norm ball K_rho or "V" for the
    boundary of the sub-level set V_rho.  Outside the window [a, b] the
    widest range consistent with the cone is used, which is conservative.
    """
    if kind == "K":
        if in_window or sign_class is SignClass.STRONGLY_POSITIVE:
            return (c * rho, rho)
        if sign_class is SignClass.NON_NEGATIVE:
            return (0.0, rho)
        return (-rho, rho)
    if kind == "V":
        if in_window or sign_class is SignClass.STRONGLY_POSITIVE:
            return (rho, rho / c)
        if sign_class is SignClass.NON_NEGATIVE:
            return (0.0, rho / c)
        return (-rho / c, rho / c)
    raise DomainError(f"boundary kind must be 'K' or 'V', got {kind!r}")


def domination_check(
    H: FunctionalSpec,
    alphas: Mapping[int, StieltjesMeasure],
    boxes: Mapping[tuple[int, float], tuple[float, float]],
    direction: str,
    tol: float = 1e-6,
    grid_n: int = 64,
) -> ConditionReport:
    """Verify H <= or >= the sum of the measures' atom functionals on a box.

    Each point (from H or from a measure atom) ranges over its admissible
    box; the worst margin of (alpha - H) resp. (H - alpha) is reported.
    Non-strict domination passes down to margin >= -tol.
    """
    if direction not in ("le", "ge"):
        raise DomainError(f"direction must be 'le' or 'ge', got {direction!r}")
    if any(m.density is not None for m in alphas.values()):
        return ConditionReport(
            condition_id="domination",
            verdict="not-checkable",
            notes=("domination against measures with densities is not reducible "
                   "to point-value boxes",),
        )

    points: list[tuple[int, float]] = list(H.points)
    for comp, measure in alphas.items():
        for loc, _ in measure.atoms:
            if (comp, loc) not in points:
                points.append((comp, loc))
    if not points:
        # both sides identically zero
        margin = 0.0
        return ConditionReport(
            condition_id="domination",
            verdict=PASS,
            constants={"margin": margin},
            settings={"tol": tol},
        )

    try:
        ranges = [boxes[p] for p in points]
    except KeyError as missing:
        raise SpecificationError(f"no value box for evaluation point {missing}") from None

    weights = []
    for comp, loc in points:
        w = 0.0
        measure = alphas.get(comp)
        if measure is not None:
            w = sum(wt for at_loc, wt in measure.atoms if at_loc == loc)
        weights.append(w)
    h_index = {p: i for i, p in enumerate(points)}
    h_args = [h_index[p] for p in H.points]

    def gap(grids):
        alpha_sum = np.zeros_like(grids[0]) if grids else 0.0
        for w, g in zip(weights, grids):
            alpha_sum = alpha_sum + w * g
        h_val = H.value([grids[i] for i in h_args]) if not H.is_zero else 0.0
        return alpha_sum - h_val if direction == "le" else h_val - alpha_sum

    per_axis = max(5, int(round(grid_n / max(1, len(points) - 1) ** 0.5)))
    margin, arg = _zoom_extremum(gap, ranges, "inf", per_axis)
    return ConditionReport(
        condition_id="domination",
        verdict=PASS if margin >= -tol else FAIL,
        constants={"margin": float(margin),
                   **{f"worst_point_{i}": float(a) for i, a in enumerate(arg)}},
        settings={"tol": tol, "grid_n": per_axis, "direction": direction},
    )
