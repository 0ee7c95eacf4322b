"""Constructed curves and diagrams used across the package and its CLI."""

from __future__ import annotations

import math
from fractions import Fraction

from .surface import Triangulation


def torus_slope_walk(tri: Triangulation, p, q):
    """Tight walk of the (p,q) straight-line curve on the genus-1 surface.

    The model square has side 0 = bottom (a), 1 = right (b), 2 = top,
    3 = left; the curve is the image of the line through (1/3, 1/7) with
    direction (p, q), gcd(|p|,|q|) = 1.
    """
    if tri.genus != 1:
        raise ValueError("slope curves live on the torus")
    if math.gcd(p, q) != 1:
        raise ValueError("slope must be reduced")
    x0, y0 = Fraction(1, 3), Fraction(1, 7)
    events = []
    for k in range(1, abs(p) + 1):
        t = Fraction(k - x0 if p > 0 else k - 1 + x0, abs(p))
        events.append((t, "v"))
    for k in range(1, abs(q) + 1):
        t = Fraction(k - y0 if q > 0 else k - 1 + y0, abs(q))
        events.append((t, "h"))
    events.sort()
    side_params = []
    for t, kind in events:
        x = (x0 + p * t) % 1
        y = (y0 + q * t) % 1
        if kind == "v":
            if p > 0:
                side_params.append((1, y))
            else:
                side_params.append((3, 1 - y))
        else:
            if q > 0:
                side_params.append((2, 1 - x))
            else:
                side_params.append((0, x))
    walk = tri.side_crossing_curve(side_params)
    seq = tri.tighten(walk.darts())
    w = tri.walk_weights(seq)
    walks = tri.trace_walks(w)
    assert len(walks) == 1, "slope curve must be connected"
    return walks[0]


def torus_slope_weights(tri: Triangulation, p, q):
    return tri.walk_weights(torus_slope_walk(tri, p, q).darts())
