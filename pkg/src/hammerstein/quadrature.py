"""Composite Gauss-Legendre quadrature on [0, 1] with breakpoint splitting.

All integrands in this package are piecewise smooth with known kink
locations (the diagonal s = t of a Green's function, sensor positions,
weight discontinuities), so a fixed-order composite rule that never
straddles a kink reaches near machine accuracy.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError

_EDGE_TOL = 1e-12


@lru_cache(maxsize=None)
def _gauss_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def _clean_breakpoints(points: Iterable[float], lo: float, hi: float) -> np.ndarray:
    """Sorted breakpoints strictly inside (lo, hi), deduplicated."""
    pts = np.asarray(sorted(set(float(p) for p in points)), dtype=float)
    pts = pts[(pts > lo + _EDGE_TOL) & (pts < hi - _EDGE_TOL)]
    if pts.size > 1:
        keep = np.concatenate(([True], np.diff(pts) > _EDGE_TOL))
        pts = pts[keep]
    return pts


def _allocate_panels(lengths: np.ndarray, total: int) -> np.ndarray:
    """Largest-remainder split of ``total`` panels, at least one per piece."""
    n = len(lengths)
    total = max(total, n)
    raw = total * lengths / lengths.sum()
    counts = np.maximum(np.floor(raw).astype(int), 1)
    # distribute the remaining panels to the largest fractional parts
    while counts.sum() < total:
        counts[int(np.argmax(raw - counts))] += 1
    while counts.sum() > total:
        over = np.where(counts > 1, counts - raw, -np.inf)
        counts[int(np.argmax(over))] -= 1
    return counts


@dataclass(frozen=True)
class QuadratureRule:
    """Composite fixed-order Gauss rule; ``breakpoints`` are always honoured."""

    panels: int = 64
    nodes_per_panel: int = 4
    breakpoints: tuple[float, ...] = ()

    def __post_init__(self):
        if self.panels < 1 or self.nodes_per_panel < 1:
            raise DomainError("panels and nodes_per_panel must be positive")

    def nodes_weights(
        self, lo: float, hi: float, extra_breakpoints: Sequence[float] = ()
    ) -> tuple[np.ndarray, np.ndarray]:
        """Quadrature nodes and weights for [lo, hi], split at breakpoints.

        The total node count is ``panels * nodes_per_panel`` regardless of
        how many pieces the breakpoints create, so batched callers get
        rectangular arrays.
        """
        if lo > hi:
            raise DomainError(f"invalid interval [{lo}, {hi}]")
        if lo < -_EDGE_TOL or hi > 1 + _EDGE_TOL:
            raise DomainError("quadrature interval must lie inside [0, 1]")
        if hi - lo < _EDGE_TOL:
            return np.full(self.panels * self.nodes_per_panel, lo), np.zeros(
                self.panels * self.nodes_per_panel
            )
        cuts = _clean_breakpoints(
            list(self.breakpoints) + list(extra_breakpoints), lo, hi
        )
        edges = np.concatenate(([lo], cuts, [hi]))
        lengths = np.diff(edges)
        counts = _allocate_panels(lengths, self.panels)

        base_x, base_w = _gauss_nodes(self.nodes_per_panel)
        xs, ws = [], []
        for left, length, m in zip(edges[:-1], lengths, counts):
            panel_edges = left + length * np.arange(m + 1) / m
            half = np.diff(panel_edges) / 2.0
            mid = (panel_edges[:-1] + panel_edges[1:]) / 2.0
            xs.append((mid[:, None] + half[:, None] * base_x[None, :]).ravel())
            ws.append((half[:, None] * base_w[None, :]).ravel())
        return np.concatenate(xs), np.concatenate(ws)

    def integrate(
        self,
        h: Callable[[np.ndarray], np.ndarray],
        lo: float,
        hi: float,
        extra_breakpoints: Sequence[float] = (),
    ) -> float:
        """Integral of a vectorized integrand over [lo, hi]."""
        x, w = self.nodes_weights(lo, hi, extra_breakpoints)
        values = np.asarray(h(x), dtype=float)
        return float(np.dot(values, w))

    def integrate_abs(
        self,
        h: Callable[[np.ndarray], np.ndarray],
        lo: float,
        hi: float,
        extra_breakpoints: Sequence[float] = (),
        scan_n: int = 1024,
    ) -> float:
        """Integral of |h| with sign-change locations found by bisection."""
        if hi - lo < _EDGE_TOL:
            return 0.0
        scan = np.linspace(lo, hi, scan_n)
        vals = np.asarray(h(scan), dtype=float)
        flip = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
        crossings: list[float] = [float(x) for x in scan[vals == 0.0]]
        if flip.size:
            a = scan[flip].copy()
            b = scan[flip + 1].copy()
            fa = vals[flip].copy()
            for _ in range(48):
                m = 0.5 * (a + b)
                fm = np.asarray(h(m), dtype=float)
                went_right = fa * fm > 0
                a = np.where(went_right, m, a)
                b = np.where(went_right, b, m)
                fa = np.where(went_right, fm, fa)
            crossings.extend(float(x) for x in 0.5 * (a + b))
        extras = list(extra_breakpoints) + crossings
        return self.integrate(lambda s: np.abs(h(s)), lo, hi, extras)


DEFAULT_RULE = QuadratureRule()


def golden_section(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-8
) -> tuple[float, float]:
    """Minimize a scalar function on [a, b]; returns (argmin, min)."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def sup_inf_over_t(
    F: Callable[[np.ndarray], np.ndarray],
    t_lo: float,
    t_hi: float,
    mode: str,
    grid_n: int = 512,
    breakpoints: Sequence[float] = (),
    refine_tol: float = 1e-8,
) -> tuple[float, float]:
    """Supremum or infimum of a vectorized function of t over [t_lo, t_hi].

    Evaluates on a uniform grid (endpoints and breakpoints included), then
    refines around the best grid point by golden-section search.  The result
    is never worse than the best sampled grid value.

    Returns ``(extremum, arg_extremum)``.
    """
    if mode not in ("sup", "inf"):
        raise DomainError(f"mode must be 'sup' or 'inf', got {mode!r}")
    if grid_n < 2:
        raise DomainError("grid_n must be at least 2")
    grid = np.linspace(t_lo, t_hi, grid_n)
    cuts = _clean_breakpoints(breakpoints, t_lo, t_hi)
    if cuts.size:
        grid = np.unique(np.concatenate((grid, cuts)))
    values = np.asarray(F(grid), dtype=float)
    sign = -1.0 if mode == "sup" else 1.0

    i = int(np.argmin(sign * values))
    best_val, best_arg = values[i], grid[i]
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, len(grid) - 1)]
    if b - a > refine_tol:
        scalar = lambda t: sign * float(F(np.array([t]))[0])
        x, fx = golden_section(scalar, a, b, tol=refine_tol)
        if fx < sign * best_val:
            best_val, best_arg = sign * fx, x
    return float(best_val), float(best_arg)
