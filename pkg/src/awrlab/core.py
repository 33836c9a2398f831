"""Shared domain types, pressure law, eigenstructure and variable conversions.

Two pressured systems are supported, identified by the tags ``"original"``
and ``"perturbed"``.  Both share the pressure law P(rho) = A*rho - B/rho**alpha
but differ in the conserved momentum: the original system transports
rho*(u + P(rho)) while the perturbed one transports
rho*(u + (A/2)*rho - B/((1-alpha)*rho**alpha)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

ORIGINAL = "original"
PERTURBED = "perturbed"
TRANSPORT = "transport"

# Densities below this are treated as degenerate in conversions.
RHO_FLOOR = 1e-300


class DegenerateDensityError(ValueError):
    """Raised when a conversion is asked for a non-positive density."""


class BranchError(ValueError):
    """Raised when a wave-curve query lands on the inadmissible half-branch."""


class NoThresholdError(ValueError):
    """Raised when no coupled-parameter threshold separates two regions."""


class InapplicableError(ValueError):
    """Raised when an operation's configuration precondition fails."""


@dataclass(frozen=True)
class PressureParams:
    """Coefficients (A, B, alpha) of the pressure law A*rho - B/rho**alpha.

    ``system`` records which model the parameters will feed.  The perturbed
    system is only defined for 0 < alpha < 1; the original one accepts
    alpha = 1 as well.  A = 0 or B = 0 is permitted so the closed-form
    degenerate cases can be used as analytic checks, but the two pressured
    Riemann solvers require A > 0 and B > 0.
    """

    A: float
    B: float
    alpha: float
    system: str = ORIGINAL

    def __post_init__(self):
        if not (self.A >= 0.0 and math.isfinite(self.A)):
            raise ValueError(f"A must be finite and >= 0, got {self.A}")
        if not (self.B >= 0.0 and math.isfinite(self.B)):
            raise ValueError(f"B must be finite and >= 0, got {self.B}")
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.system not in (ORIGINAL, PERTURBED):
            raise ValueError(f"unknown system tag {self.system!r}")
        if self.system == PERTURBED and self.alpha == 1.0:
            raise ValueError("the perturbed system is not defined for alpha = 1")


@dataclass(frozen=True)
class State:
    """A point (u, rho) in the phase plane; both components must be positive.

    Vacuum appears only inside solution fans (as plain (u, 0) samples),
    never as a solver input.
    """

    u: float
    rho: float

    def __post_init__(self):
        if not (self.u > 0.0 and math.isfinite(self.u)):
            raise ValueError(f"u must be finite and > 0, got {self.u}")
        if not (self.rho > 0.0 and math.isfinite(self.rho)):
            raise ValueError(f"rho must be finite and > 0, got {self.rho}")


@dataclass(frozen=True)
class Conserved:
    """Cell-average unknowns: q1 = rho, q2 = generalized momentum."""

    q1: float
    q2: float


@dataclass(frozen=True)
class WaveSpeedPair:
    lambda1: float
    lambda2: float


def pressure(params: PressureParams, rho: float) -> float:
    """Pressure A*rho - B/rho**alpha; rho must be positive."""
    if not rho > 0.0:
        raise DegenerateDensityError(f"pressure requires rho > 0, got {rho}")
    return params.A * rho - params.B / rho**params.alpha


def pressure_derivative(params: PressureParams, rho: float) -> float:
    """dP/drho = A + B*alpha/rho**(1+alpha), strictly positive for A,B > 0."""
    if not rho > 0.0:
        raise DegenerateDensityError(f"rho must be positive, got {rho}")
    return params.A + params.B * params.alpha / rho ** (1.0 + params.alpha)


def velocity_offset(system: str, params: PressureParams, rho: float) -> float:
    """The system's velocity offset P_eff(rho) so that q2 = rho*(u + P_eff)."""
    if not rho > 0.0:
        raise DegenerateDensityError(f"rho must be positive, got {rho}")
    if system == ORIGINAL:
        return params.A * rho - params.B / rho**params.alpha
    if system == PERTURBED:
        return 0.5 * params.A * rho - params.B / (
            (1.0 - params.alpha) * rho**params.alpha
        )
    raise ValueError(f"unknown system tag {system!r}")


def eigenvalues_original(params: PressureParams, s: State) -> WaveSpeedPair:
    """Characteristic speeds (u - A*rho - B*alpha/rho**alpha, u)."""
    lam1 = s.u - params.A * s.rho - params.B * params.alpha / s.rho**params.alpha
    return WaveSpeedPair(lam1, s.u)


def eigenvalues_perturbed(params: PressureParams, s: State) -> WaveSpeedPair:
    """Characteristic speeds u -/+ sqrt(u*(A*rho + B*alpha/rho**alpha))."""
    if params.alpha >= 1.0:
        raise ValueError("perturbed eigenvalues require 0 < alpha < 1")
    gap = math.sqrt(
        s.u * (params.A * s.rho + params.B * params.alpha / s.rho**params.alpha)
    )
    return WaveSpeedPair(s.u - gap, s.u + gap)


def genuine_nonlinearity_original(params: PressureParams, s: State) -> float:
    """grad(lambda1) . r1 = -2A - (1-alpha)*B*alpha/rho**(1+alpha) (< 0)."""
    return -2.0 * params.A - (1.0 - params.alpha) * params.B * params.alpha / s.rho ** (
        1.0 + params.alpha
    )


def perturbed_nondegeneracy_gap(params: PressureParams, s: State) -> float:
    """Distance from the degenerate set where genuine nonlinearity can fail.

    Returns (3*A*rho + (B*alpha/rho**alpha)*(2-alpha))*sqrt(u)
    - (A*rho + B*alpha/rho**alpha)**1.5.  Inputs within 1e-12 of zero are
    merely reported by callers; there is no special-case handling.
    """
    g = params.A * s.rho + params.B * params.alpha / s.rho**params.alpha
    lead = 3.0 * params.A * s.rho + (params.B * params.alpha / s.rho**params.alpha) * (
        2.0 - params.alpha
    )
    return lead * math.sqrt(s.u) - g**1.5


def to_conserved(system: str, params: PressureParams, s: State) -> Conserved:
    """Map a phase-plane state to the conservative variables of ``system``."""
    return Conserved(s.rho, s.rho * (s.u + velocity_offset(system, params, s.rho)))


def from_conserved(system: str, params: PressureParams, q: Conserved) -> State:
    """Invert :func:`to_conserved`; raises on degenerate density."""
    if not q.q1 > RHO_FLOOR:
        raise DegenerateDensityError(f"degenerate density q1 = {q.q1}")
    u = q.q2 / q.q1 - velocity_offset(system, params, q.q1)
    return State(u, q.q1)
