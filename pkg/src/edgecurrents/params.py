"""Model parameters, the projective boundary parameter and its discrete symmetries.

The boundary condition psi_2(0, y) = i * gamma * psi_1(0, y) is labelled by a
single point gamma of the projective real line (gamma = inf encodes
psi_1(0, y) = 0).  Every derived boundary characteristic (edge velocity,
signature, rapidity) and the discrete duality maps live here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import BoostUndefined

GammaLike = Union["ProjectiveReal", float, int, str]


@dataclass(frozen=True)
class ProjectiveReal:
    """A point of the projective real line; ``value is None`` encodes infinity."""

    value: float | None = None

    def __post_init__(self) -> None:
        if self.value is not None:
            v = float(self.value)
            if math.isnan(v) or math.isinf(v):
                raise ValueError(
                    "finite projective values must be finite floats; "
                    "use ProjectiveReal() for the point at infinity"
                )
            object.__setattr__(self, "value", v)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def inv(self) -> "ProjectiveReal":
        """Projective inversion: inv(0) = inf, inv(inf) = 0."""
        if self.is_infinite:
            return ProjectiveReal(0.0)
        if self.value == 0.0:
            return ProjectiveReal()
        return ProjectiveReal(1.0 / self.value)

    def neg(self) -> "ProjectiveReal":
        """Projective negation; -inf = inf."""
        if self.is_infinite:
            return self
        return ProjectiveReal(-self.value)

    def __float__(self) -> float:
        if self.value is None:
            raise ValueError("the point at infinity has no float value")
        return self.value

    def __repr__(self) -> str:
        return "ProjectiveReal(inf)" if self.is_infinite else f"ProjectiveReal({self.value!r})"


GAMMA_INFINITY = ProjectiveReal()


def as_gamma(g: GammaLike) -> ProjectiveReal:
    """Coerce a float, ``'inf'`` or ProjectiveReal to a ProjectiveReal."""
    if isinstance(g, ProjectiveReal):
        return g
    if isinstance(g, str):
        if g.strip().lower() in ("inf", "infinity", "oo"):
            return GAMMA_INFINITY
        return ProjectiveReal(float(g))
    return ProjectiveReal(float(g))


@dataclass(frozen=True)
class ModelParams:
    """One fermion species: mass m and boundary parameter gamma."""

    m: float
    gamma: ProjectiveReal

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", float(self.m))
        object.__setattr__(self, "gamma", as_gamma(self.gamma))

    @property
    def is_cpt_invariant_bc(self) -> bool:
        """True exactly for the limiting boundary conditions gamma = +-1."""
        return not self.gamma.is_infinite and abs(self.gamma.value) == 1.0

    @property
    def gap(self) -> tuple[float, float]:
        """Spectral gap (-|m|, |m|) of the bulk, derived on demand."""
        return (-abs(self.m), abs(self.m))


@dataclass(frozen=True)
class BoundaryCharacter:
    """Edge velocity, signature eta, rapidity theta and epsilon = sgn(v_edge).

    ``eta is None`` marks the undefined signature at gamma = +-1, where
    ``theta is None`` likewise marks an infinite rapidity.  ``epsilon is None``
    marks vanishing edge velocity.
    """

    v_edge: float
    eta: int | None
    theta: float | None
    epsilon: int | None


def edge_velocity(gamma: GammaLike) -> float:
    """Common travel velocity 2*gamma/(1+gamma^2) of all edge modes; 0 at gamma=inf."""
    g = as_gamma(gamma)
    if g.is_infinite:
        return 0.0
    v = g.value
    return 2.0 * v / (1.0 + v * v)


def boundary_character(gamma: GammaLike) -> BoundaryCharacter:
    """Derive (v_edge, eta, theta, epsilon) from the boundary parameter.

    eta = sgn((1-gamma)/(1+gamma)) and eta*exp(theta) = (1+gamma)/(1-gamma),
    equivalently tanh(theta) = v_edge.  gamma = inf maps to (0, -1, 0, None).
    """
    g = as_gamma(gamma)
    v = edge_velocity(g)
    if not g.is_infinite and abs(g.value) == 1.0:
        # maximal edge velocity: signature undefined, rapidity infinite
        return BoundaryCharacter(v_edge=v, eta=None, theta=None, epsilon=1 if v > 0 else -1)
    if g.is_infinite:
        eta = -1
    else:
        ratio = (1.0 - g.value) / (1.0 + g.value) if g.value != -1.0 else math.inf
        eta = 1 if ratio > 0 else -1
    theta = math.atanh(v)
    epsilon = None if v == 0.0 else (1 if v > 0 else -1)
    return BoundaryCharacter(v_edge=v, eta=eta, theta=theta, epsilon=epsilon)


def _gamma_from_eta_theta(eta: int, theta: float) -> ProjectiveReal:
    # (1+gamma)/(1-gamma) = eta*e^theta  =>  gamma = (r-1)/(r+1)
    r = eta * math.exp(theta)
    if r == -1.0:
        return GAMMA_INFINITY
    return ProjectiveReal((r - 1.0) / (r + 1.0))


def boost(gamma: GammaLike, chi: float) -> ProjectiveReal:
    """Act with a boost of rapidity chi parallel to the boundary: theta -> theta + chi.

    The signature eta is Lorentz invariant and kept fixed.  Raises
    BoostUndefined for gamma = +-1.
    """
    g = as_gamma(gamma)
    if not g.is_infinite and abs(g.value) == 1.0:
        raise BoostUndefined("boosts are undefined at gamma = +-1")
    ch = boundary_character(g)
    assert ch.eta is not None and ch.theta is not None
    return _gamma_from_eta_theta(ch.eta, ch.theta + chi)


def reflection_dual(p: ModelParams) -> ModelParams:
    """Space reflection y -> -y lifted by sigma_1: (m, gamma) -> (-m, -1/gamma)."""
    return ModelParams(-p.m, p.gamma.inv().neg())


def cpt_dual(p: ModelParams) -> ModelParams:
    """CPT map: positive-energy states of (m, gamma) <-> negative-energy of (m, 1/gamma)."""
    return ModelParams(p.m, p.gamma.inv())


def halfplane_dual(p: ModelParams) -> ModelParams:
    """Duality relating boundary states of complementary half planes: (-m, 1/gamma)."""
    return ModelParams(-p.m, p.gamma.inv())
