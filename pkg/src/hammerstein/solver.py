"""Nystrom discretization and damped Picard iteration for the fixed points
of the perturbed Hammerstein operator, for single equations and systems.

Each output node t_i gets its own quadrature nodes split at s = t_i and at
the kernel's kinks, so the discrete operator keeps the rule's full order;
the unknown is carried between nodes by piecewise-linear interpolation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .conditions import ProblemSpec
from .errors import DivergenceError, DomainError, SpecificationError
from .quadrature import QuadratureRule
from .settings import DEFAULT_SETTINGS, Settings
from .systems import SystemSpec

Array = np.ndarray


@dataclass(frozen=True)
class Window:
    """A localization window: bounds on the interpolant over [t_lo, t_hi]."""

    t_lo: float
    t_hi: float
    lower: float = -np.inf
    upper: float = np.inf
    component: int = 0


@dataclass
class SolutionProfile:
    """Discrete solution values on a grid, with iteration diagnostics."""

    grid: Array
    values: Array  # shape (n,) for one equation, (2, n) for systems
    residual: float = np.nan
    iterations: int = 0
    converged: bool = False
    window_flags: tuple[bool, ...] = ()

    @property
    def is_system(self) -> bool:
        return self.values.ndim == 2

    def component(self, i: int) -> Array:
        return self.values[i] if self.is_system else self.values

    def interpolant(self, i: int = 0):
        vals = self.component(i)
        grid = self.grid
        return lambda t: np.interp(t, grid, vals)

    @classmethod
    def constant(cls, value, grid_n: int = 257, components: int = 1) -> "SolutionProfile":
        grid = np.linspace(0.0, 1.0, grid_n)
        if components == 1:
            values = np.full(grid_n, float(np.atleast_1d(value)[0]))
        else:
            vals = np.atleast_1d(np.asarray(value, dtype=float))
            if vals.size == 1:
                vals = np.repeat(vals, components)
            values = np.repeat(vals[:, None], grid_n, axis=1)
        return cls(grid=grid, values=values)


class _NystromRows:
    """Precomputed quadrature data for one equation on a fixed grid."""

    def __init__(self, kernel, weight, weight_breaks, grid: Array, settings: Settings):
        rule = QuadratureRule(
            panels=settings.panels,
            nodes_per_panel=settings.nodes_per_panel,
            breakpoints=tuple(weight_breaks),
        )
        nodes, coeffs = [], []
        for t in grid:
            breaks = set(kernel.s_breakpoints(float(t)))
            breaks.add(float(t))
            x, w = rule.nodes_weights(0.0, 1.0, sorted(breaks))
            nodes.append(x)
            coeffs.append(w * kernel.k(np.full_like(x, t), x) * weight(x))
        self.nodes = np.vstack(nodes)          # (n, m)
        self.coeffs = np.vstack(coeffs)        # (n, m)

    def apply(self, f_values_at_nodes: Array) -> Array:
        return np.sum(self.coeffs * f_values_at_nodes, axis=1)


def _single_operator(p: ProblemSpec, grid: Array, settings: Settings):
    rows = _NystromRows(p.kernel, p.g, p.g_breakpoints, grid, settings)
    gamma_on_grid = p.gamma.gamma(grid)

    def T(values: Array) -> Array:
        u = lambda t: np.interp(t, grid, values)
        h_val = p.H.evaluate([u])
        f_nodes = p.f.f(rows.nodes, u(rows.nodes))
        return gamma_on_grid * h_val + rows.apply(f_nodes)

    return T


def _system_operator(s: SystemSpec, grid: Array, settings: Settings):
    rows = [
        _NystromRows(s.kernels[i], s.weights[i], s.weight_breakpoints[i], grid, settings)
        for i in (0, 1)
    ]
    gammas_on_grid = [
        (s.gammas[i][0].gamma(grid), s.gammas[i][1].gamma(grid)) for i in (0, 1)
    ]

    def T(values: Array) -> Array:
        interps = [lambda t, v=values[i]: np.interp(t, grid, v) for i in (0, 1)]
        out = np.empty_like(values)
        for i in (0, 1):
            h1 = s.H[i][0].evaluate(interps)
            h2 = s.H[i][1].evaluate(interps)
            f_nodes = s.f[i].f(
                rows[i].nodes, interps[0](rows[i].nodes), interps[1](rows[i].nodes)
            )
            out[i] = (
                gammas_on_grid[i][0] * h1
                + gammas_on_grid[i][1] * h2
                + rows[i].apply(f_nodes)
            )
        return out

    return T


def apply_T(p: ProblemSpec, profile: SolutionProfile,
            settings: Settings = DEFAULT_SETTINGS) -> SolutionProfile:
    """One application of the integral operator to a profile."""
    T = _single_operator(p, profile.grid, settings)
    values = T(profile.values)
    if not np.all(np.isfinite(values)):
        raise DomainError("operator produced non-finite values")
    return SolutionProfile(grid=profile.grid, values=values)


def solve(
    problem,
    u0: SolutionProfile | float = 0.0,
    damping: float = 0.5,
    tol: float = 1e-10,
    max_iter: int = 2000,
    grid_n: int = 257,
    settings: Settings = DEFAULT_SETTINGS,
) -> SolutionProfile:
    """Damped Picard iteration u <- (1 - d) u + d T u until the step is small.

    Non-convergence returns the best iterate flagged ``converged=False``;
    a non-finite iterate raises ``DivergenceError``.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    if not 0.0 < damping <= 1.0:
        raise DomainError("damping must lie in (0, 1]")
    is_system = isinstance(problem, SystemSpec)
    if not isinstance(problem, (ProblemSpec, SystemSpec)):
        raise SpecificationError("solve expects a ProblemSpec or SystemSpec")

    if isinstance(u0, SolutionProfile):
        profile = u0
        grid = profile.grid
    else:
        profile = SolutionProfile.constant(
            u0, grid_n=grid_n, components=2 if is_system else 1
        )
        grid = profile.grid

    T = (_system_operator if is_system else _single_operator)(problem, grid, settings)
    values = profile.values.astype(float)
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        new = (1.0 - damping) * values + damping * T(values)
        if not np.all(np.isfinite(new)):
            raise DivergenceError(
                f"non-finite iterate at iteration {iterations}", iterations
            )
        step = float(np.max(np.abs(new - values)))
        values = new
        if step < tol:
            converged = True
            break
    residual = float(np.max(np.abs(values - T(values))))
    return SolutionProfile(
        grid=grid,
        values=values,
        residual=residual,
        iterations=iterations,
        converged=converged,
    )


def localization_check(
    sol: SolutionProfile, windows: Sequence[Window], samples: int = 2001
) -> tuple[bool, ...]:
    """Per-window bounds on the piecewise-linear interpolant; never fatal."""
    flags = []
    for w in windows:
        if not (0.0 <= w.t_lo <= w.t_hi <= 1.0):
            raise DomainError(f"window [{w.t_lo}, {w.t_hi}] outside [0, 1]")
        interp = sol.interpolant(w.component)
        ts = np.linspace(w.t_lo, w.t_hi, samples)
        inside = sol.grid[(sol.grid >= w.t_lo) & (sol.grid <= w.t_hi)]
        ts = np.unique(np.concatenate((ts, inside)))
        vals = interp(ts)
        flags.append(bool(np.min(vals) >= w.lower and np.max(vals) <= w.upper))
    return tuple(flags)
