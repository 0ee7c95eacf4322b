"""Refining a surface complex along curve systems, and cutting it open.

``refine`` turns a set of positioned closed walks ("systems") into honest
interior edges of a finer complex, while re-expressing further walks
("carries") as walks of the finer complex, including their transverse
crossings of the new system edges.  ``CutSurface`` then unpairs the
system edges, producing a surface with boundary together with enough
bookkeeping to walk along the cut circles and to split carried walks
into arcs.

All geometry is exact: face charts are rational points on a circle and
chord crossings are rational segment intersections.
"""

from __future__ import annotations

import functools
from fractions import Fraction

from ._cells import CellComplex, Walk, _seg_params


def _chart_point(idx, pos):
    u = Fraction(4 * idx) + 4 * Fraction(pos)
    den = 1 + u * u
    return (Fraction(1 - u * u, 1) / den, Fraction(2) * u / den)


def _dir_cmp(a, b):
    """Exact ccw comparison of nonzero directions, angle 0 first."""
    ha = 0 if (a[1] > 0 or (a[1] == 0 and a[0] > 0)) else 1
    hb = 0 if (b[1] > 0 or (b[1] == 0 and b[0] > 0)) else 1
    if ha != hb:
        return -1 if ha < hb else 1
    cr = a[0] * b[1] - a[1] * b[0]
    if cr > 0:
        return -1
    if cr < 0:
        return 1
    raise ValueError("collinear directions at a node")


class Refinement:
    def __init__(self):
        self.base = None            # original CellComplex
        self.cx = None              # refined CellComplex
        self.dart_id = {}           # symbolic key -> dart id
        self.piece_range = {}       # (i,k,m) -> (t0,t1) param range on the chord
        self.npieces = {}           # (i,k) -> number of pieces of that arc
        self.carried = []           # list of Walk in refined complex
        self.sys_hits = []          # per carry: {step_index: hit info dict}
        self.sys_cross = []         # system-system crossings
        self.sub_count = {}         # base dart -> number of split points
        self.sys_walks = []
        self.splits = {}            # canonical base dart -> sorted split positions
        self.occupancy = {}         # canonical base dart -> set of positions
        self.sys_chords = {}        # base face -> list of (i, k, in_pt, out_pt)
        self.chord_geom = {}        # (i, k) -> (p, q) chart endpoints

    def piece_darts(self, i, k, m):
        dl = self.dart_id[("s", i, k, m, "L")]
        dr = self.dart_id[("s", i, k, m, "R")]
        return dl, dr

    def left_circle_darts(self, i):
        """Darts along the left side of system walk i, in walk order."""
        out = []
        nk = len(self.sys_walks[i])
        for k in range(nk):
            for m in range(self.npieces[(i, k)]):
                out.append(self.dart_id[("s", i, k, m, "L")])
        return out


def refine(base: CellComplex, systems, carries):
    """Embed the system walks as edges; re-express the carried walks.

    systems: list of closed positioned Walks, transverse to each other
    and individually embedded.
    carries: list of closed positioned Walks, transverse to the systems.
    All crossing positions on any single edge must be pairwise distinct.
    """
    ref = Refinement()
    ref.base = base
    ref.sys_walks = list(systems)

    def canon(d):
        p = base.pair[d]
        if p == -1:
            raise ValueError("walk crosses a boundary edge")
        return min(d, p)

    # system crossings split the base edges; carried crossings do not
    splits = ref.splits
    occupancy = ref.occupancy

    def note(d, pos):
        c = canon(d)
        cpos = pos if d == c else 1 - pos
        occupancy.setdefault(c, set())
        if cpos in occupancy[c]:
            raise ValueError("coincident crossings on one edge")
        occupancy[c].add(cpos)
        return c, cpos

    for i, w in enumerate(systems):
        for k, (d, p) in enumerate(w.steps):
            c, cpos = note(d, p)
            splits.setdefault(c, []).append(cpos)
    for c in splits:
        splits[c].sort()

    def splits_on(d):
        c = canon(d)
        pts = splits.get(c, [])
        if d == c:
            return list(pts)
        return [1 - p for p in reversed(pts)]

    for d in range(base.ndarts):
        ref.sub_count[d] = len(splits.get(canon(d), [])) if base.pair[d] != -1 else 0

    # per-face system chords
    sys_chords = ref.sys_chords
    for i, w in enumerate(systems):
        for face, a_in, a_out, k in base.walk_chords(w):
            sys_chords.setdefault(face, []).append((i, k, a_in, a_out))
            ref.chord_geom[(i, k)] = (
                _chart_point(base.idx_in[a_in[0]], a_in[1]),
                _chart_point(base.idx_in[a_out[0]], a_out[1]))

    global_faces = []
    for fi in range(len(base.faces)):
        cyc = base.faces[fi]
        nodes = {}
        bnodes = []
        for idx, d in enumerate(cyc):
            vkey = ("v", fi, idx)
            nodes[vkey] = _chart_point(idx, 0)
            bnodes.append((vkey, d))
            for p in splits_on(d):
                # identify the system step sitting at this split point
                key = ("p", d, p)
                nodes[key] = _chart_point(idx, p)
                bnodes.append((key, d))

        chords = []
        for (i, k, (din, pin), (dout, pout)) in sys_chords.get(fi, []):
            n_in = ("p", din, pin)
            n_out = ("p", dout, pout)
            assert n_in in nodes and n_out in nodes
            chords.append((i, k, n_in, n_out))

        cross_pts = {}
        for a in range(len(chords)):
            ia, ka, na_in, na_out = chords[a]
            pa, qa = nodes[na_in], nodes[na_out]
            for b in range(a + 1, len(chords)):
                ib, kb, nb_in, nb_out = chords[b]
                pb, qb = nodes[nb_in], nodes[nb_out]
                hit = _seg_params(pa, qa, pb, qb)
                if hit is None:
                    continue
                t, u = hit
                key = ("xx", ia, ka, ib, kb)
                px = (pa[0] + t * (qa[0] - pa[0]), pa[1] + t * (qa[1] - pa[1]))
                nodes[key] = px
                cross_pts.setdefault((ia, ka), []).append((t, key))
                cross_pts.setdefault((ib, kb), []).append((u, key))
                dja = (qa[0] - pa[0], qa[1] - pa[1])
                djb = (qb[0] - pb[0], qb[1] - pb[1])
                sgn = 1 if dja[0] * djb[1] - dja[1] * djb[0] > 0 else -1
                ref.sys_cross.append({"a": (ia, ka), "b": (ib, kb),
                                      "t_a": t, "t_b": u, "sign": sgn})

        out_edges = {}
        edges = {}
        eid = [0]

        def add_edge(n1, n2, sym_fwd, sym_bwd):
            p1, p2 = nodes[n1], nodes[n2]
            v1 = (p2[0] - p1[0], p2[1] - p1[1])
            v2 = (-v1[0], -v1[1])
            e1, e2 = eid[0], eid[0] + 1
            eid[0] += 2
            edges[e1] = (n1, n2, sym_fwd, e2)
            edges[e2] = (n2, n1, sym_bwd, e1)
            out_edges.setdefault(n1, []).append((v1, e1))
            out_edges.setdefault(n2, []).append((v2, e2))

        nb = len(bnodes)
        sub_i = {}
        for t in range(nb):
            n1 = bnodes[t][0]
            n2 = bnodes[(t + 1) % nb][0]
            d = bnodes[t][1]
            i = sub_i.get(d, 0)
            sub_i[d] = i + 1
            add_edge(n1, n2, ("e", d, i), None)
        for d in cyc:
            assert sub_i[d] == ref.sub_count[d] + 1, "boundary subdivision mismatch"

        for (i, k, n_in, n_out) in chords:
            pts = sorted(cross_pts.get((i, k), []))
            ref.npieces[(i, k)] = len(pts) + 1
            seq = [(Fraction(0), n_in)] + pts + [(Fraction(1), n_out)]
            for m in range(len(seq) - 1):
                t0, na = seq[m]
                t1, nb2 = seq[m + 1]
                ref.piece_range[(i, k, m)] = (t0, t1)
                add_edge(na, nb2, ("s", i, k, m, "L"), ("s", i, k, m, "R"))

        for n in out_edges:
            out_edges[n].sort(key=functools.cmp_to_key(
                lambda x, y: _dir_cmp(x[0], y[0])))

        def next_dart(e):
            _, to, _, rev = edges[e]
            lst = out_edges[to]
            j = next(a for a, (_, ee) in enumerate(lst) if ee == rev)
            return lst[(j - 1) % len(lst)][1]

        visited = set()
        for e0 in sorted(edges):
            if e0 in visited:
                continue
            cycle = [e0]
            visited.add(e0)
            e = next_dart(e0)
            while e != e0:
                cycle.append(e)
                visited.add(e)
                e = next_dart(e)
            syms = [edges[e][2] for e in cycle]
            if any(s is None for s in syms):
                assert all(s is None for s in syms), "outer face traced a chord"
                continue
            global_faces.append(tuple(syms))

    dart_id = {}
    for f in global_faces:
        for s in f:
            if s in dart_id:
                raise RuntimeError("symbolic dart traced twice")
            dart_id[s] = len(dart_id)
    pair = [-1] * len(dart_id)
    for s, d in dart_id.items():
        if s[0] == "e":
            _, bd, i = s
            mate = ("e", base.pair[bd], ref.sub_count[bd] - i)
            pair[d] = dart_id[mate]
        else:
            _, i, k, m, side = s
            mate = ("s", i, k, m, "R" if side == "L" else "L")
            pair[d] = dart_id[mate]
    ref.cx = CellComplex([tuple(dart_id[s] for s in f) for f in global_faces], pair)
    ref.dart_id = dart_id

    for w in carries:
        walk, hits = carry_walk(ref, w)
        ref.carried.append(walk)
        ref.sys_hits.append(hits)

    return ref


def carry_walk(ref: Refinement, w: Walk, check=True):
    """Re-express a walk on the base complex as a walk of the refinement.

    Returns (walk, hits) where hits maps step indices of the new walk to
    descriptions of the system edges crossed there.  The walk's crossing
    positions must avoid all positions already used by the systems.
    """
    base = ref.base
    dart_id = ref.dart_id
    splits = ref.splits

    def canon(d):
        return min(d, base.pair[d])

    def sub_index_and_range(d, pos):
        c = canon(d)
        pts = splits.get(c, [])
        if d != c:
            pts = [1 - p for p in reversed(pts)]
        i = 0
        lo = Fraction(0)
        for p in pts:
            if pos > p:
                lo, i = p, i + 1
            elif pos == p:
                raise ValueError("carried crossing collides with a system point")
            else:
                break
        hi = pts[i] if i < len(pts) else Fraction(1)
        return i, lo, hi

    steps = []
    hits = {}
    n = len(w.steps)
    for k in range(n):
        d, p = w.steps[k]
        i, lo, hi = sub_index_and_range(d, p)
        steps.append((dart_id[("e", d, i)], (p - lo) / (hi - lo)))
        d2, p2 = w.steps[(k + 1) % n]
        fi = base.face_of[d]
        if fi not in ref.sys_chords:
            continue
        e = base.pair[d2]
        pa = _chart_point(base.idx_in[d], p)
        qa = _chart_point(base.idx_in[e], 1 - p2)
        dca = (qa[0] - pa[0], qa[1] - pa[1])
        found = []
        for (i2, k2, _pt_in, _pt_out) in ref.sys_chords[fi]:
            pb, qb = ref.chord_geom[(i2, k2)]
            hit = _seg_params(pa, qa, pb, qb)
            if hit is None:
                continue
            t_carry, t_sys = hit
            dcb = (qb[0] - pb[0], qb[1] - pb[1])
            sgn = 1 if dcb[0] * dca[1] - dcb[1] * dca[0] > 0 else -1
            found.append((t_carry, i2, k2, t_sys, sgn))
        found.sort()
        for t_carry, i2, k2, t_sys, sgn in found:
            m = 0
            while True:
                t0, t1 = ref.piece_range[(i2, k2, m)]
                if t0 < t_sys < t1:
                    break
                m += 1
            rel = (t_sys - t0) / (t1 - t0)
            if sgn == 1:
                dd = dart_id[("s", i2, k2, m, "L")]
                pos = rel
            else:
                dd = dart_id[("s", i2, k2, m, "R")]
                pos = 1 - rel
            hits[len(steps)] = {"sys": i2, "arc": k2, "piece": m,
                                "t": t_sys, "sign": sgn}
            steps.append((dd, pos))
    walk = Walk(steps, True)
    if check:
        ref.cx.walk_check(walk)
    return walk, hits


class CutSurface:
    """A refined complex with its system edges cut open."""

    def __init__(self, ref: Refinement):
        self.ref = ref
        fine = ref.cx
        pair = list(fine.pair)
        mirror = {}
        tags = {}
        for (sym, d) in ref.dart_id.items():
            if sym[0] != "s":
                continue
            mirror[d] = fine.pair[d]
            pair[d] = -1
            _, i, k, m, side = sym
            tags[d] = (i, k, m, side)
        self.cx = CellComplex(list(fine.faces), pair)
        self.mirror = mirror
        self.tags = tags
        self.circles = self.cx.boundary_circles()
        self.circle_of = {}
        self.pos_in_circle = {}
        for ci, circ in enumerate(self.circles):
            for n, d in enumerate(circ):
                self.circle_of[d] = ci
                self.pos_in_circle[d] = n

    def circle_key(self, d, pos):
        """Sort key for a point on a boundary circle, along the circle flow."""
        return (self.pos_in_circle[d], pos)

    def carried_arcs(self, j):
        """Cut carried walk j into arcs at its system crossings.

        Returns a list of dicts, cyclic in order along the walk, with
        start/end boundary points and the interior crossing darts.  If
        the walk never meets the systems, returns the closed Walk.
        """
        return self.arcs_of(self.ref.carried[j], self.ref.sys_hits[j])

    def cut_walk(self, w: Walk):
        """Carry a base walk across the refinement and cut it open."""
        walk, hits = carry_walk(self.ref, w)
        return self.arcs_of(walk, hits)

    def arcs_of(self, walk: Walk, hits):
        if not hits:
            return Walk(walk.steps, True)
        n = len(walk.steps)
        hit_idx = sorted(hits)
        arcs = []
        for a in range(len(hit_idx)):
            k1 = hit_idx[a]
            k2 = hit_idx[(a + 1) % len(hit_idx)]
            d1, p1 = walk.steps[k1]
            d2, p2 = walk.steps[k2]
            inner = []
            k = (k1 + 1) % n
            while k != k2:
                inner.append(walk.steps[k])
                k = (k + 1) % n
            arcs.append({
                "start": (d1, p1),
                "end": (self.mirror[d2], 1 - p2),
                "darts": [d for d, _ in inner],
                "start_hit": hits[k1],
                "end_hit": hits[k2],
            })
        return arcs
