"""Radial reduction of elliptic systems on an annulus to the integral form.

The Laplacian on an annulus of radii R1 < R0 in dimension n becomes, after
the change of variables r = r(t), a second-order problem on [0, 1] with
weight phi(t); nonlocal boundary terms at radii R_eta and R_xi land at the
interior points eta and xi of the unit interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .envelopes import FunctionalSpec, NonlinearitySpec
from .errors import DomainError, RegimeError, SpecificationError
from .kernels import builtin
from .systems import SystemSpec

Array = np.ndarray


@dataclass(frozen=True)
class RadialFunctionalSpec:
    """A boundary functional whose points are (component, radius) pairs.

    The transform maps each radius into the unit interval and produces an
    ordinary ``FunctionalSpec``.
    """

    points: tuple[tuple[int, float], ...] = ()
    h: Callable[..., Array] | None = None
    name: str = ""

    @classmethod
    def zero(cls) -> "RadialFunctionalSpec":
        return cls()

    @property
    def is_zero(self) -> bool:
        return self.h is None


@dataclass(frozen=True)
class EllipticAnnulusProblem:
    """A two-component elliptic system with nonlocal, nonlinear boundary data.

    ``H11_tilde`` and ``H21_tilde`` act on the outer normal derivative and
    are rescaled by the transform; ``H12`` and ``H22`` enter the inner
    boundary relations unchanged.  Functional points are (component, radius)
    pairs and get mapped to t-locations.
    """

    n: int
    R1: float
    R0: float
    R_eta: float
    R_xi: float
    beta1: float
    beta2_tilde: float
    gtilde1: Callable[[Array], Array]
    gtilde2: Callable[[Array], Array]
    f1: NonlinearitySpec
    f2: NonlinearitySpec
    H11_tilde: RadialFunctionalSpec = RadialFunctionalSpec.zero()
    H12: RadialFunctionalSpec = RadialFunctionalSpec.zero()
    H21_tilde: RadialFunctionalSpec = RadialFunctionalSpec.zero()
    H22: RadialFunctionalSpec = RadialFunctionalSpec.zero()
    interval1: tuple[float, float] | None = None
    interval2: tuple[float, float] | None = None
    c_overrides: tuple[float | None, float | None] = (None, None)

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("dimension must be at least 2")
        if not 0.0 < self.R1 < self.R0:
            raise DomainError("radii must satisfy 0 < R1 < R0")
        for R in (self.R_eta, self.R_xi):
            if not self.R1 < R < self.R0:
                raise DomainError("nonlocal radii must lie strictly inside (R1, R0)")
        if self.beta1 >= 0 or self.beta2_tilde >= 0:
            raise RegimeError("only beta1 < 0 and beta2_tilde < 0 are supported")


def radial_map(n: int, R1: float, R0: float):
    """The maps r(t) and phi(t) taking the annulus problem to [0, 1].

    r decreases from R0 at t = 0 to R1 at t = 1.
    """
    if n < 2:
        raise DomainError("dimension must be at least 2")
    if not 0.0 < R1 < R0:
        raise DomainError("radii must satisfy 0 < R1 < R0")
    if n == 2:
        log_ratio = np.log(R0 / R1)

        def r(t):
            t = np.asarray(t, dtype=float)
            return R0 ** (1.0 - t) * R1**t

        def phi(t):
            return r(t) ** 2 * log_ratio**2

    else:
        p = n - 2
        lo, hi = R0 ** (-p), R1 ** (-p)

        def r(t):
            t = np.asarray(t, dtype=float)
            return (lo + (hi - lo) * t) ** (-1.0 / p)

        def phi(t):
            t = np.asarray(t, dtype=float)
            return ((hi - lo) / p) ** 2 * (lo + (hi - lo) * t) ** (-2.0 * (n - 1) / p)

    return r, phi


def _t_of_radius(n: int, R1: float, R0: float, R: float) -> float:
    if n == 2:
        return float(np.log(R0 / R) / np.log(R0 / R1))
    p = n - 2
    return float((R ** (-p) - R0 ** (-p)) / (R1 ** (-p) - R0 ** (-p)))


def _scale_functional(H: RadialFunctionalSpec, scale: float, mapper) -> FunctionalSpec:
    if H.is_zero:
        return FunctionalSpec.zero()
    points = tuple((comp, mapper(radius)) for comp, radius in H.points)
    base = H.h
    if scale == 1.0:
        return FunctionalSpec(points=points, h=base, name=H.name)
    return FunctionalSpec(
        points=points,
        h=(lambda *xs: scale * base(*xs)),
        name=H.name,
    )


@dataclass(frozen=True)
class TransformResult:
    system: SystemSpec
    eta: float
    xi: float
    beta2: float
    h1_scale: float


def transform(ep: EllipticAnnulusProblem) -> TransformResult:
    """Build the integral-system description of the annulus problem.

    eta and xi solve r(eta) = R_eta and r(xi) = R_xi in closed form; the
    derived coefficient beta2 must satisfy 0 < beta2 < 1 - xi (outside this
    regime the kernel positivity structure is lost and the transform
    refuses rather than guessing).
    """
    n, R1, R0 = ep.n, ep.R1, ep.R0
    r, phi = radial_map(n, R1, R0)
    eta = _t_of_radius(n, R1, R0, ep.R_eta)
    xi = _t_of_radius(n, R1, R0, ep.R_xi)

    if n == 2:
        beta2 = ep.beta2_tilde / (np.log(R1 / R0) * ep.R_xi)
        h1_scale = R0 * np.log(R0 / R1)
    else:
        p = n - 2
        beta2 = (
            -ep.beta2_tilde
            * p
            / ep.R_xi
            * (R1**p + xi * (R0**p - R1**p))
            / (R0**p - R1**p)
        )
        h1_scale = R0 * ((R0 / R1) ** p - 1.0) / p
    if not 0.0 < beta2 < 1.0 - xi:
        raise RegimeError(
            f"derived beta2 = {beta2:g} outside (0, {1.0 - xi:g}); "
            "the positive-kernel regime does not apply"
        )

    def clamp_interval(interval, hi, label):
        if interval is None:
            return (0.0, hi)
        a, b = interval
        if b > hi and b - hi < 1e-9:
            b = hi
        if not 0.0 <= a < b <= hi:
            raise SpecificationError(f"{label} must lie inside [0, {hi:g}]")
        return (a, b)

    interval1 = clamp_interval(ep.interval1, eta, "interval1")
    interval2 = clamp_interval(ep.interval2, xi, "interval2")

    k1, gammas1 = builtin(
        "multipoint_k1", beta1=ep.beta1, eta=eta, a=interval1[0], b=interval1[1]
    )
    k2, gammas2 = builtin(
        "derivative_k2", beta2=beta2, xi=xi, a=interval2[0], b=interval2[1]
    )

    def make_weight(gtilde):
        return lambda t: phi(t) * gtilde(r(t))

    mapper = lambda R: _t_of_radius(n, R1, R0, R)
    H11 = _scale_functional(ep.H11_tilde, h1_scale, mapper)
    H21 = _scale_functional(ep.H21_tilde, h1_scale, mapper)
    H12 = _scale_functional(ep.H12, 1.0, mapper)
    H22 = _scale_functional(ep.H22, 1.0, mapper)

    system = SystemSpec(
        kernels=(k1, k2),
        gammas=(gammas1, gammas2),
        weights=(make_weight(ep.gtilde1), make_weight(ep.gtilde2)),
        H=((H11, H12), (H21, H22)),
        f=(ep.f1, ep.f2),
        c_overrides=ep.c_overrides,
        name="elliptic-annulus",
    )
    return TransformResult(system=system, eta=eta, xi=xi, beta2=float(beta2),
                           h1_scale=float(h1_scale))
