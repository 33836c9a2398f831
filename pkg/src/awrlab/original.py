"""Exact Riemann solver for the Aw-Rascle system with pressure A*rho - B/rho**alpha.

The first family is genuinely nonlinear (shock or rarefaction), the second
linearly degenerate (contact).  Shock and rarefaction loci coincide on the
curve u + A*rho - B/rho**alpha = const, so the system is of Temple type and
the solution is always a 1-wave followed by a contact moving at the
downstream velocity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .core import (
    InapplicableError,
    NoThresholdError,
    PressureParams,
    State,
    eigenvalues_original,
)
from .rootfind import bisect_decreasing, solve_decreasing

BOUNDARY_TOL = 1e-12


class RegionLabel14(Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    ON_R_CURVE = "ON_R_CURVE"
    ON_S_CURVE = "ON_S_CURVE"
    ON_J_LINE = "ON_J_LINE"
    COINCIDENT = "COINCIDENT"


@dataclass(frozen=True)
class Shock:
    speed: float


@dataclass(frozen=True)
class Contact:
    speed: float


@dataclass(frozen=True)
class Rarefaction:
    """Centered fan between self-similar coordinates head <= tail."""

    head: float
    tail: float
    profile: Callable[[float], tuple[float, float]]


def curve_constant(params: PressureParams, left: State) -> float:
    """Constant C = u + A*rho - B/rho**alpha labelling the 1-curve through left."""
    return left.u + params.A * left.rho - params.B / left.rho**params.alpha


def phi(params: PressureParams, s: State) -> float:
    """Curve coordinate u + A*rho - B/rho**alpha of an arbitrary state."""
    return s.u + params.A * s.rho - params.B / s.rho**params.alpha


def classify(
    params: PressureParams, left: State, right: State, tol: float = BOUNDARY_TOL
) -> RegionLabel14:
    """Locate ``right`` relative to the wave curves through ``left``.

    Regions: I (u+ > u-, above the 1-curve), II (u+ > u-, below it),
    III (u+ < u-, above), IV (u+ < u-, below).  Ties within ``tol`` get
    boundary tags.
    """
    du = right.u - left.u
    dphi = phi(params, right) - curve_constant(params, left)
    on_j = abs(du) <= tol
    on_curve = abs(dphi) <= tol
    if on_j and on_curve:
        return RegionLabel14.COINCIDENT
    if on_j:
        return RegionLabel14.ON_J_LINE
    if on_curve:
        return RegionLabel14.ON_R_CURVE if du > 0.0 else RegionLabel14.ON_S_CURVE
    if du > 0.0:
        return RegionLabel14.I if dphi > 0.0 else RegionLabel14.II
    return RegionLabel14.III if dphi > 0.0 else RegionLabel14.IV


def threshold_A0(left: State, right: State, alpha: float) -> float:
    """Coupled parameter value A = B at which the 1-curve through ``left``
    passes through ``right``; separates regions III/IV (and II/I)."""
    if abs(right.u - left.u) <= BOUNDARY_TOL:
        raise NoThresholdError("equal velocities admit no region threshold")
    denom = (right.rho - right.rho**-alpha) - (left.rho - left.rho**-alpha)
    if denom == 0.0:
        raise NoThresholdError(
            "curve passes through both states for every coupled A = B"
        )
    return (left.u - right.u) / denom


def intermediate_state(params: PressureParams, left: State, u_plus: float) -> State:
    """State on the 1-curve through ``left`` at velocity ``u_plus``.

    The curve map rho -> -A*rho + B/rho**alpha + C is strictly decreasing and
    onto the real line, so a unique root exists; it is found by bracketing
    plus bisection.  rho* > rho- iff u_plus < u- (shock branch), rho* < rho-
    otherwise (rarefaction branch).
    """
    if not u_plus > 0.0:
        raise ValueError(f"u_plus must be positive, got {u_plus}")
    if u_plus == left.u:
        return left
    if params.A <= 0.0 or params.B <= 0.0:
        raise InapplicableError("the pressured solver requires A > 0 and B > 0")
    c = curve_constant(params, left)

    def f(rho: float) -> float:
        return -params.A * rho + params.B / rho**params.alpha + c - u_plus

    rho_star = solve_decreasing(f, 0.5 * left.rho, 2.0 * left.rho, rtol=1e-15)
    return State(u_plus, rho_star)


def shock_speed(params: PressureParams, left: State, star: State) -> float:
    """Speed of the 1-shock joining ``left`` (upstream) to ``star``."""
    if not star.rho > left.rho:
        raise InapplicableError(
            f"entropic 1-shock requires rho* > rho-, got {star.rho} <= {left.rho}"
        )
    a = params.alpha
    chord = (left.rho ** (1.0 - a) - star.rho ** (1.0 - a)) / (star.rho - left.rho)
    return star.u - params.B / star.rho**a - params.A * left.rho - params.B * chord


def rh_residual(
    params: PressureParams, sl: State, sr: State, sigma: float
) -> tuple[float, float]:
    """Both Rankine-Hugoniot components across a discontinuity at speed sigma."""
    pl = params.A * sl.rho - params.B / sl.rho**params.alpha
    pr = params.A * sr.rho - params.B / sr.rho**params.alpha
    r1 = -sigma * (sr.rho - sl.rho) + (sr.rho * sr.u - sl.rho * sl.u)
    m_l = sl.rho * (sl.u + pl)
    m_r = sr.rho * (sr.u + pr)
    r2 = -sigma * (m_r - m_l) + (sr.u * m_r - sl.u * m_l)
    return r1, r2


@dataclass(frozen=True)
class RiemannSolution14:
    """Self-similar solution: constant states joined by (R or S) then J."""

    params: PressureParams
    left: State
    star: State
    right: State
    waves: tuple

    def sample(self, xi: float) -> tuple[float, float]:
        """Primitive values (u, rho) at the self-similar coordinate xi."""
        pos = self.left.u, self.left.rho
        for wave in self.waves:
            if isinstance(wave, Rarefaction):
                if xi < wave.head:
                    return pos
                if xi <= wave.tail:
                    return wave.profile(xi)
                pos = self.star.u, self.star.rho
            else:
                if xi < wave.speed:
                    return pos
                pos = self._downstream_of(wave)
        return pos

    def _downstream_of(self, wave) -> tuple[float, float]:
        if isinstance(wave, Shock):
            return self.star.u, self.star.rho
        return self.right.u, self.right.rho


def _fan_profile(
    params: PressureParams, c: float, rho_lo: float, rho_hi: float
) -> Callable[[float], tuple[float, float]]:
    """Pointwise inversion of xi = lambda1 along the 1-curve u = -A*rho + B/rho**a + c."""
    a = params.alpha

    def lam1_of_rho(rho: float) -> float:
        return c - 2.0 * params.A * rho + params.B * (1.0 - a) / rho**a

    def profile(xi: float) -> tuple[float, float]:
        # lam1_of_rho is strictly decreasing, so lam1 - xi brackets on [lo, hi]
        rho = bisect_decreasing(
            lambda r: lam1_of_rho(r) - xi, rho_lo, rho_hi, rtol=1e-15
        )
        u = -params.A * rho + params.B / rho**a + c
        return u, rho

    return profile


def solve(params: PressureParams, left: State, right: State) -> RiemannSolution14:
    """Assemble the exact solution: a 1-wave (R or S) followed by a contact.

    The contact moves at the downstream velocity u+ and joins the
    intermediate state (u+, rho*) to ``right``.
    """
    if right.u == left.u:
        star = intermediate_state(params, left, right.u)
        if right.rho == left.rho:
            return RiemannSolution14(params, left, star, right, ())
        return RiemannSolution14(params, left, star, right, (Contact(right.u),))
    star = intermediate_state(params, left, right.u)
    contact = Contact(right.u)
    if right.u < left.u:
        sigma1 = shock_speed(params, left, star)
        return RiemannSolution14(params, left, star, right, (Shock(sigma1), contact))
    head = eigenvalues_original(params, left).lambda1
    tail = eigenvalues_original(params, star).lambda1
    fan = Rarefaction(
        head, tail, _fan_profile(params, curve_constant(params, left), star.rho, left.rho)
    )
    return RiemannSolution14(params, left, star, right, (fan, contact))
