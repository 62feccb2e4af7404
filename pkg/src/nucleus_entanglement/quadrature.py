"""Adaptive Simpson quadrature with a relative tolerance and a panel cap."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

__all__ = ["QuadratureSpec", "ConvergenceError", "adaptive_simpson"]


class ConvergenceError(ArithmeticError):
    """Raised when refinement stops short of the requested tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-8
    max_panels: int = 2**16
    initial_panels: int = 16


def _simpson(fa: float, fm: float, fb: float, width: float) -> float:
    return width * (fa + 4.0 * fm + fb) / 6.0


def adaptive_simpson(
    func: Callable[[float], float],
    a: float,
    b: float,
    spec: QuadratureSpec = QuadratureSpec(),
) -> float:
    """Integrate ``func`` over ``[a, b]``.

    The interval is first cut into ``spec.initial_panels`` equal panels to
    obtain a reference magnitude; each panel is then bisected until the
    Simpson estimates on the halves agree with the parent to within its
    share of ``rel_tol * |reference|``. Accepted panels receive the usual
    Richardson correction.

    Raises
    ------
    ConvergenceError
        If more than ``spec.max_panels`` panels would be needed.
    """
    if b == a:
        return 0.0
    if b < a:
        return -adaptive_simpson(func, b, a, spec)

    n0 = spec.initial_panels
    h = (b - a) / n0
    xs = [a + i * h for i in range(n0)] + [b]
    fx = [func(x) for x in xs]
    panels = []
    reference = 0.0
    for i in range(n0):
        xa, xb = xs[i], xs[i + 1]
        xm = 0.5 * (xa + xb)
        fm = func(xm)
        whole = _simpson(fx[i], fm, fx[i + 1], xb - xa)
        reference += abs(whole)
        panels.append((xa, xb, fx[i], fm, fx[i + 1], whole))

    if reference == 0.0:
        # integrand vanished on every node; refine once more against an absolute floor
        reference = math.ulp(1.0)
    abs_tol = spec.rel_tol * reference

    total = 0.0
    count = n0
    stack = panels[::-1]
    while stack:
        xa, xb, fa, fm, fb, whole = stack.pop()
        width = xb - xa
        xl = xa + 0.25 * width
        xm = xa + 0.5 * width
        xr = xa + 0.75 * width
        fl = func(xl)
        fr = func(xr)
        left = _simpson(fa, fl, fm, 0.5 * width)
        right = _simpson(fm, fr, fb, 0.5 * width)
        delta = left + right - whole
        local_tol = abs_tol * width / (b - a)
        if abs(delta) <= 15.0 * local_tol or width <= 4.0 * math.ulp(max(abs(xa), abs(xb))):
            total += left + right + delta / 15.0
            continue
        count += 1
        if count > spec.max_panels:
            raise ConvergenceError(
                f"adaptive Simpson exceeded {spec.max_panels} panels on [{a}, {b}]"
            )
        stack.append((xm, xb, fm, fr, fb, right))
        stack.append((xa, xm, fa, fl, fm, left))
    return total
