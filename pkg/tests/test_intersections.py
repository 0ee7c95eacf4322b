"""Intersection numbers against the torus determinant oracle."""

import math

import pytest

from multisect.surface import Triangulation
from multisect.curveops import (algebraic_intersection, geometric_intersection_walks,
                                dehn_twist_walk, curve_walk)
from multisect.fixtures import torus_slope_walk, torus_slope_weights


def coprime_pairs(bound):
    out = []
    for p in range(-bound, bound + 1):
        for q in range(-bound, bound + 1):
            if (p, q) != (0, 0) and math.gcd(p, q) == 1:
                out.append((p, q))
    return out


def test_slope_weights_expected():
    tri = Triangulation.reference(1)
    # (0,1): vertical line: crosses a (bottom) once and one diagonal
    w = torus_slope_weights(tri, 0, 1)
    assert sum(w) == 2 and w[1] == 0
    w = torus_slope_weights(tri, 1, 0)
    assert sum(w) == 2 and w[0] == 0


def test_torus_geometric_oracle_small():
    tri = Triangulation.reference(1)
    pairs = coprime_pairs(2)
    walks = {pq: torus_slope_walk(tri, *pq) for pq in pairs}
    for (p, q) in pairs:
        for (r, s) in pairs:
            got = geometric_intersection_walks(tri, walks[(p, q)], walks[(r, s)])
            assert got == abs(p * s - q * r), ((p, q), (r, s), got)


def test_torus_algebraic_oracle_small():
    # traced curves carry an arbitrary traversal direction, so the pairing
    # is pinned only up to one sign per curve: |alg| = |det| and alg is
    # antisymmetric.
    tri = Triangulation.reference(1)
    pairs = coprime_pairs(2)
    walks = {pq: torus_slope_walk(tri, *pq) for pq in pairs}
    for (p, q) in pairs:
        for (r, s) in pairs:
            got = algebraic_intersection(tri, walks[(p, q)], walks[(r, s)])
            rev = algebraic_intersection(tri, walks[(r, s)], walks[(p, q)])
            assert abs(got) == abs(p * s - q * r)
            assert got == -rev


def test_twist_transvection_torus():
    tri = Triangulation.reference(1)
    c = torus_slope_walk(tri, 1, 0)
    d = torus_slope_walk(tri, 0, 1)
    w = dehn_twist_walk(tri, c, d, 1)
    expect = {tuple(torus_slope_weights(tri, 1, 1)), tuple(torus_slope_weights(tri, -1, -1)),
              tuple(torus_slope_weights(tri, 1, -1)), tuple(torus_slope_weights(tri, -1, 1))}
    assert tuple(w) in expect


def test_twist_inverse_roundtrip_torus():
    tri = Triangulation.reference(1)
    for pq in [(1, 0), (0, 1), (1, 1), (2, 1)]:
        for ab in [(1, 0), (1, 2), (3, 1)]:
            c = torus_slope_walk(tri, *pq)
            d = torus_slope_walk(tri, *ab)
            w1 = dehn_twist_walk(tri, c, d, 1)
            back = dehn_twist_walk(tri, c, curve_walk(tri, w1), -1)
            assert back == tri.walk_weights(d.darts())


def test_twist_disjoint_fixes():
    tri = Triangulation.reference(1)
    c = torus_slope_walk(tri, 1, 0)
    w = dehn_twist_walk(tri, c, c, 3)
    assert w == tri.walk_weights(c.darts())
