"""Bracketing + bisection helpers for strictly monotone scalar maps."""

from __future__ import annotations

from typing import Callable


class BracketError(RuntimeError):
    """Raised when geometric expansion fails to bracket a sign change."""


def expand_bracket(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    factor: float = 4.0,
    max_expansions: int = 600,
) -> tuple[float, float]:
    """Grow [lo, hi] geometrically until f changes sign across it.

    ``f`` is assumed strictly decreasing (positive at small arguments,
    negative at large ones), which is the shape of every curve map in this
    package.  Bounds stay positive throughout.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo, lo
    if fhi == 0.0:
        return hi, hi
    n = 0
    while flo < 0.0:
        lo /= factor
        flo = f(lo)
        n += 1
        if n > max_expansions:
            raise BracketError("no sign change found while shrinking lower bound")
    n = 0
    while fhi > 0.0:
        hi *= factor
        fhi = f(hi)
        n += 1
        if n > max_expansions:
            raise BracketError("no sign change found while growing upper bound")
    return lo, hi


def bisect_decreasing(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    rtol: float = 1e-14,
    max_iter: int = 400,
) -> float:
    """Bisection root of a strictly decreasing f with f(lo) >= 0 >= f(hi)."""
    if lo == hi:
        return lo
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if not (flo > 0.0 > fhi):
        raise BracketError(f"root not bracketed: f({lo})={flo}, f({hi})={fhi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:  # interval collapsed to adjacent floats
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if fm > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= rtol * mid:
            break
    return 0.5 * (lo + hi)


def solve_decreasing(
    f: Callable[[float], float],
    lo_guess: float,
    hi_guess: float,
    rtol: float = 1e-14,
) -> float:
    """Bracket (by geometric expansion) then bisect a decreasing map to zero."""
    lo, hi = expand_bracket(f, lo_guess, hi_guess)
    if lo == hi:
        return lo
    return bisect_decreasing(f, lo, hi, rtol=rtol)
