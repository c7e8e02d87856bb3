"""Positive Stieltjes measures on [0, 1] and the linear functionals they induce.

A measure is a finite list of atoms plus an optional piecewise-continuous
density.  Atoms are the primary path (point evaluations of the unknown);
densities are integrated with the shared quadrature machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, InvalidMeasureError
from .quadrature import DEFAULT_RULE, QuadratureRule


@dataclass(frozen=True)
class StieltjesMeasure:
    """Immutable positive measure dA on [0, 1]."""

    atoms: tuple[tuple[float, float], ...] = ()
    density: Callable[[np.ndarray], np.ndarray] | None = None
    density_breakpoints: tuple[float, ...] = ()

    def __post_init__(self):
        cleaned = []
        for loc, weight in self.atoms:
            loc, weight = float(loc), float(weight)
            if not 0.0 <= loc <= 1.0:
                raise DomainError(f"atom location {loc} outside [0, 1]")
            if weight < 0.0:
                raise InvalidMeasureError(f"negative atom weight {weight}")
            cleaned.append((loc, weight))
        object.__setattr__(self, "atoms", tuple(cleaned))

    @classmethod
    def zero(cls) -> "StieltjesMeasure":
        return cls()

    @classmethod
    def point(cls, location: float, weight: float) -> "StieltjesMeasure":
        return cls(atoms=((location, weight),))

    @property
    def is_zero(self) -> bool:
        return not self.atoms and self.density is None

    def apply(
        self,
        u: Callable[[np.ndarray], np.ndarray],
        rule: QuadratureRule = DEFAULT_RULE,
        u_breakpoints: Sequence[float] = (),
    ) -> float:
        """alpha[u] = sum_i w_i u(t_i) + integral of u * density.

        Atom sums are exact; only the density part incurs quadrature.
        """
        total = 0.0
        if self.atoms:
            locs = np.array([a[0] for a in self.atoms])
            weights = np.array([a[1] for a in self.atoms])
            total += float(np.dot(weights, np.asarray(u(locs), dtype=float)))
        if self.density is not None:
            density = self.density
            integrand = lambda t: np.asarray(u(t), float) * np.asarray(density(t), float)
            breaks = tuple(self.density_breakpoints) + tuple(u_breakpoints)
            total += rule.integrate(integrand, 0.0, 1.0, breaks)
        return total

    def mass(self, rule: QuadratureRule = DEFAULT_RULE) -> float:
        """alpha[1], the total mass of the measure."""
        return self.apply(lambda t: np.ones_like(t), rule)
