"""Exact operations on curves: intersection numbers and Dehn twists.

Geometric intersection is computed by cutting the surface along one
curve and repeatedly erasing boundary-parallel through-arcs of the
other; boundary-parallelism is decided exactly in the free fundamental
group of the cut surface.  The fixpoint is bigon-free, hence minimal.
"""

from __future__ import annotations

from fractions import Fraction

from ._cells import BandDecomposition, Walk, free_reduce
from ._cut import CutSurface, refine
from .surface import Triangulation, relayer


def curve_walk(tri: Triangulation, weights):
    """Tight positioned walk of a one-component normal curve."""
    walks = tri.trace_walks(weights)
    if len(walks) != 1:
        raise ValueError(f"{len(walks)} components, expected 1")
    return walks[0]


def overlay_pair(tri, wa: Walk, wb: Walk):
    return relayer(tri, wa, 0, 2), relayer(tri, wb, 1, 2)


def algebraic_intersection(tri, wa: Walk, wb: Walk):
    """Signed crossing count; independent of the chosen representatives."""
    a, b = overlay_pair(tri, wa, wb)
    return sum(c["sign"] for c in tri.cx.crossings_between(a, b))


def _pushoff(cx, frm, to):
    """Crossing darts of a boundary-parallel path from frm to to, moving
    in the boundary flow direction.  Points are (boundary dart, pos)."""
    (df, pf), (dt, pt) = frm, to
    if df == dt and pt > pf:
        return []
    out = []
    b = df
    while True:
        nb = cx.next_boundary(b)
        e = cx.next_in_face(b)
        while e != nb:
            out.append(cx.pair[e])
            e = cx.next_in_face(cx.pair[e])
        b = nb
        if b == dt:
            break
    return out


def _rev(cx, darts):
    return [cx.pair[e] for e in reversed(darts)]


class CurveCutter:
    """The surface cut along one fixed curve, reused across queries."""

    def __init__(self, tri, walk: Walk):
        self.tri = tri
        self.system = relayer(tri, walk, 0, 2)
        self.ref = refine(tri.cx, [self.system], [])
        self.cut = CutSurface(self.ref)
        self.bd = BandDecomposition(self.cut.cx)

    def carry(self, walk: Walk):
        """Arcs of a one-component curve cut along the system curve."""
        return self.cut.cut_walk(relayer(self.tri, walk, 1, 2))


_cutters = {}


def cutter_for(tri, weights):
    key = (tri.genus, tuple(weights))
    if key not in _cutters:
        _cutters[key] = CurveCutter(tri, curve_walk(tri, weights))
        if len(_cutters) > 512:
            _cutters.clear()
            _cutters[key] = CurveCutter(tri, curve_walk(tri, weights))
    return _cutters[key]


def geometric_intersection_walks(tri, wa: Walk, wb: Walk):
    """Minimal transverse crossing number of two one-component curves."""
    if tri.genus == 0:
        return 0
    wts_a = tri.walk_weights(wa.darts())
    if wts_a == tri.walk_weights(wb.darts()):
        return 0
    cutter = cutter_for(tri, wts_a)
    cut = cutter.cut
    arcs = cutter.carry(wb)
    if isinstance(arcs, Walk):
        return 0
    bd = cutter.bd
    arcs = [{"start": ar["start"], "end": ar["end"], "darts": list(ar["darts"])}
            for ar in arcs]

    def try_remove():
        for i, B in enumerate(arcs):
            sd, _ = B["start"]
            ed, _ = B["end"]
            if cut.circle_of[sd] != cut.circle_of[ed]:
                continue
            wordB = bd.word(B["darts"])
            # candidate: B is the against-flow boundary path start -> end
            t1 = free_reduce(wordB + bd.word(_pushoff(cut.cx, B["end"], B["start"])))
            if not t1:
                return i, "against"
            # candidate: B is the forward-flow boundary path start -> end
            fw = _pushoff(cut.cx, B["start"], B["end"])
            t2 = free_reduce(wordB + bd.word(_rev(cut.cx, fw)))
            if not t2:
                return i, "forward"
        return None

    while True:
        hit = try_remove()
        if hit is None:
            return len(arcs)
        i, kind = hit
        if len(arcs) <= 2:
            return 0
        A = arcs[(i - 1) % len(arcs)]
        B = arcs[i]
        C = arcs[(i + 1) % len(arcs)]
        xm = A["end"]      # mirror of B.start
        ym = C["start"]    # mirror of B.end
        if kind == "forward":
            # forward on the cut circle mirrors to against-flow on the twin
            transport = _rev(cut.cx, _pushoff(cut.cx, ym, xm))
        else:
            transport = _pushoff(cut.cx, xm, ym)
        merged = {"start": A["start"],
                  "end": C["end"],
                  "darts": A["darts"] + transport + C["darts"]}
        n = len(arcs)
        im1, ip1 = (i - 1) % n, (i + 1) % n
        res = []
        j = (ip1 + 1) % n
        while j != im1:
            res.append(arcs[j])
            j = (j + 1) % n
        res.append(merged)
        arcs = res


_geo_cache = {}


def geometric_intersection(tri, weights_a, weights_b):
    """Geometric intersection number from normal coordinates (cached)."""
    wa, wb = tuple(weights_a), tuple(weights_b)
    key = (tri.genus, wa, wb) if wa <= wb else (tri.genus, wb, wa)
    if key not in _geo_cache:
        if len(_geo_cache) > 100000:
            _geo_cache.clear()
        _geo_cache[key] = geometric_intersection_walks(
            tri, curve_walk(tri, key[1]), curve_walk(tri, key[2]))
    return _geo_cache[key]


def dehn_twist_walk(tri, about: Walk, target: Walk, power):
    """Weights of the image of ``target`` under the ``power``-th twist
    about ``about``.  Positive powers are right-handed under the fixed
    orientation convention (counterclockwise faces)."""
    if power == 0:
        return tri.walk_weights(tri.tighten(target.darts()))
    c, d = overlay_pair(tri, about, target)
    crossings = tri.cx.crossings_between(c, d)
    by_arc = {}
    for x in crossings:
        by_arc.setdefault(x["kb"], []).append(x)
    for lst in by_arc.values():
        lst.sort(key=lambda x: x["tb"])
    cdarts = list(c.darts())
    nc = len(cdarts)
    out = []
    for k, dd in enumerate(d.darts()):
        out.append(dd)
        for x in by_arc.get(k, ()):
            ka = x["ka"]
            # calibrated so [twist^n_c d] = [d] + n<[d],[c]>[c] on homology
            follow_forward = (x["sign"] > 0) != (power > 0)
            for _ in range(abs(power)):
                if follow_forward:
                    out.extend(cdarts[(ka + 1 + t) % nc] for t in range(nc))
                else:
                    out.extend(tri.cx.pair[cdarts[(ka - t) % nc]] for t in range(nc))
    return tri.canonical_weights(out)


def dehn_twist(tri, weights_about, weights_target, power):
    return dehn_twist_walk(tri, curve_walk(tri, weights_about),
                           curve_walk(tri, weights_target), power)


# -- homology ----------------------------------------------------------------

_basis_cache = {}


def _basis(tri):
    """Oriented symplectic basis walks, normalized so <A_k, B_k> = +1."""
    if tri.genus not in _basis_cache:
        raw = tri.basis_curves()
        out = []
        for k in range(tri.genus):
            a, b = raw[2 * k], raw[2 * k + 1]
            if algebraic_intersection(tri, a, b) < 0:
                b = b.reversed(tri.cx)
            assert algebraic_intersection(tri, a, b) == 1
            out.extend([a, b])
        _basis_cache[tri.genus] = out
    return _basis_cache[tri.genus]


def homology_class_walk(tri, walk: Walk):
    """Class in Z^{2g} w.r.t. the polygon basis; sign fixed by traversal.

    Coordinates are (x_a1, x_b1, x_a2, ...): the coefficient of the A_k
    basis class is <walk, B_k> and of B_k is -<walk, A_k>.
    """
    basis = _basis(tri)
    out = []
    for k in range(tri.genus):
        a, b = basis[2 * k], basis[2 * k + 1]
        out.append(algebraic_intersection(tri, walk, b))
        out.append(-algebraic_intersection(tri, walk, a))
    return tuple(out)


def homology_class(tri, weights):
    """Homology class of a one-component curve, defined up to global sign."""
    return homology_class_walk(tri, curve_walk(tri, weights))


def symplectic_pairing(u, v):
    """Intersection pairing of Z^{2g} classes in the standard basis."""
    g2 = len(u)
    total = 0
    for k in range(0, g2, 2):
        total += u[k] * v[k + 1] - u[k + 1] * v[k]
    return total


# -- mapping class words ------------------------------------------------------

def humphries_walks(tri):
    """Dehn twist generator curves: the standard chain plus one extra.

    Chain: B_1, A_1, C_1, A_2, C_2, ..., A_g (consecutive ones meet once)
    and the extra curve B_2 for genus >= 2.
    """
    g = tri.genus
    basis = tri.basis_curves()
    out = [basis[1], basis[0]]           # B_1, A_1
    for k in range(g - 1):
        # chain curve joining handles k+1 and k+2: crosses b_{k+1}, b_{k+2}
        c = tri.side_crossing_curve([
            (4 * k + 1, Fraction(1, 3)),
            (4 * k + 5, Fraction(2, 3)),
        ])
        out.append(c)
        out.append(basis[2 * k + 2])     # A_{k+2}
    if g >= 2:
        out.append(basis[3])             # B_2
    return out


def apply_twist_word(tri, word, weights):
    """Apply a sequence of (generator index, power) twists, left to right."""
    gens = humphries_walks(tri)
    cur = tuple(weights)
    for idx, power in word:
        cur = dehn_twist_walk(tri, gens[idx], curve_walk(tri, cur), power)
    return cur
