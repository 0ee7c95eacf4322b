"""Oriented surface cell complexes with transverse curve walks.

The combinatorial model used everywhere in this package:

* A surface is a collection of disk faces, each a cyclic tuple of *darts*
  (directed edge sides) listed counterclockwise.  ``pair[d]`` is the
  opposite dart of the same edge, or -1 when the edge lies on the
  boundary.  All gluings are orientation reversing, so the complex is an
  oriented surface, possibly with boundary.

* A curve is a *walk*: a sequence of crossings ``(dart, pos)``, meaning
  the curve crosses that edge moving into ``face_of(dart)`` at parameter
  ``pos`` (a Fraction in (0,1) measured along the dart).  Inside a face
  the curve runs as a straight chord of a convex model of the face, so
  crossings between walks and their order along chords are exact
  rational computations.

Walks are plain tuples; complexes are immutable after construction.
Operations that rebuild the complex (cutting, edge deletion, ...) return
the new complex together with the data needed to carry walks across.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class Walk:
    """A transverse curve on a cell complex.

    ``steps`` is a tuple of (dart, pos) crossings; ``closed`` tells
    whether the walk is a loop (steps cyclic) or an arc.  Arcs carry
    their endpoint data separately where needed.
    """

    __slots__ = ("steps", "closed")

    def __init__(self, steps, closed=True):
        self.steps = tuple((d, Fraction(p)) for d, p in steps)
        self.closed = closed

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __repr__(self):
        kind = "loop" if self.closed else "arc"
        return f"Walk({kind}, {len(self.steps)} crossings)"

    def darts(self):
        return tuple(d for d, _ in self.steps)

    def reversed(self, cx):
        rev = [(cx.pair[d], 1 - p) for d, p in reversed(self.steps)]
        return Walk(rev, self.closed)


class CellComplex:
    def __init__(self, faces, pair):
        self.faces = [tuple(f) for f in faces]
        self.pair = list(pair)
        n = len(self.pair)
        self.face_of = [-1] * n
        self.idx_in = [-1] * n
        for fi, f in enumerate(self.faces):
            for k, d in enumerate(f):
                if self.face_of[d] != -1:
                    raise ValueError(f"dart {d} used twice")
                self.face_of[d] = fi
                self.idx_in[d] = k
        self._vertex_of = None
        self.check()

    # -- basic incidences ------------------------------------------------

    @property
    def ndarts(self):
        return len(self.pair)

    def next_in_face(self, d):
        f = self.faces[self.face_of[d]]
        return f[(self.idx_in[d] + 1) % len(f)]

    def prev_in_face(self, d):
        f = self.faces[self.face_of[d]]
        return f[(self.idx_in[d] - 1) % len(f)]

    def check(self):
        for d in range(self.ndarts):
            if self.face_of[d] == -1:
                raise ValueError(f"dart {d} not in any face")
            p = self.pair[d]
            if p != -1 and (self.pair[p] != d or p == d):
                raise ValueError(f"bad pairing at dart {d}")

    # -- vertices --------------------------------------------------------

    def vertex_of(self, d):
        """Vertex id at the tail of dart d."""
        if self._vertex_of is None:
            self._compute_vertices()
        return self._vertex_of[d]

    def _compute_vertices(self):
        n = self.ndarts
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d in range(n):
            p = self.pair[self.prev_in_face(d)]
            if p != -1:
                a, b = find(d), find(p)
                if a != b:
                    parent[a] = b
        ids = {}
        out = [0] * n
        for d in range(n):
            r = find(d)
            if r not in ids:
                ids[r] = len(ids)
            out[d] = ids[r]
        self._vertex_of = out
        self._nvertices = len(ids)

    def nvertices(self):
        if self._vertex_of is None:
            self._compute_vertices()
        return self._nvertices

    def nedges(self):
        paired = sum(1 for d in range(self.ndarts) if self.pair[d] != -1)
        boundary = self.ndarts - paired
        return paired // 2 + boundary

    def euler(self):
        return self.nvertices() - self.nedges() + len(self.faces)

    def vertex_next(self, d):
        """Next outgoing dart counterclockwise around the tail of d (or -1)."""
        return self.pair[self.prev_in_face(d)]

    def vertex_prev(self, d):
        p = self.pair[d]
        return -1 if p == -1 else self.next_in_face(p)

    def vertex_fan(self, d):
        """All outgoing darts at tail(d), in ccw rotation order.

        For an interior vertex this is the full cyclic orbit starting at
        d; at a boundary vertex the fan is swept back to the boundary
        first, so it is the complete linear link.
        """
        start = d
        guard = 0
        while True:
            p = self.vertex_prev(start)
            if p == -1 or p == d:
                break
            start = p
            guard += 1
            if guard > self.ndarts:
                raise RuntimeError("vertex rotation does not close")
        fan = [start]
        cur = start
        while True:
            nxt = self.vertex_next(cur)
            if nxt == -1 or nxt == start:
                break
            fan.append(nxt)
            cur = nxt
        return fan

    # -- boundary ---------------------------------------------------------

    def boundary_darts(self):
        return [d for d in range(self.ndarts) if self.pair[d] == -1]

    def next_boundary(self, d):
        e = self.next_in_face(d)
        while self.pair[e] != -1:
            e = self.next_in_face(self.pair[e])
        return e

    def boundary_circles(self):
        seen = set()
        circles = []
        for d in self.boundary_darts():
            if d in seen:
                continue
            circ = [d]
            seen.add(d)
            e = self.next_boundary(d)
            while e != d:
                circ.append(e)
                seen.add(e)
                e = self.next_boundary(e)
            circles.append(tuple(circ))
        return circles

    # -- components and topology ------------------------------------------

    def components(self):
        """Connected components as sorted tuples of face indices."""
        nf = len(self.faces)
        parent = list(range(nf))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d in range(self.ndarts):
            p = self.pair[d]
            if p != -1:
                a, b = find(self.face_of[d]), find(self.face_of[p])
                if a != b:
                    parent[a] = b
        groups = {}
        for fi in range(nf):
            groups.setdefault(find(fi), []).append(fi)
        return [tuple(sorted(g)) for g in sorted(groups.values())]

    def component_data(self):
        """Per component: (faces, euler, n_boundary_circles, genus)."""
        comps = self.components()
        face_comp = {}
        for ci, comp in enumerate(comps):
            for fi in comp:
                face_comp[fi] = ci
        circles = self.boundary_circles()
        ncirc = [0] * len(comps)
        for circ in circles:
            ncirc[face_comp[self.face_of[circ[0]]]] += 1
        out = []
        for ci, comp in enumerate(comps):
            darts = [d for fi in comp for d in self.faces[fi]]
            dset = set(darts)
            vs = len({self.vertex_of(d) for d in darts})
            paired = sum(1 for d in darts if self.pair[d] in dset and self.pair[d] != -1)
            es = paired // 2 + (len(darts) - paired)
            chi = vs - es + len(comp)
            b = ncirc[ci]
            genus2 = 2 - chi - b
            if genus2 < 0 or genus2 % 2:
                raise RuntimeError("non-orientable or inconsistent component")
            out.append((comp, chi, b, genus2 // 2))
        return out

    # -- walk helpers -------------------------------------------------------

    def walk_check(self, walk: Walk):
        steps = walk.steps
        rng = range(len(steps)) if walk.closed else range(len(steps) - 1)
        for k in rng:
            d, p = steps[k]
            d2, p2 = steps[(k + 1) % len(steps)]
            if not (0 < p < 1):
                raise ValueError("crossing position out of range")
            if self.pair[d2] == -1 or self.face_of[self.pair[d2]] != self.face_of[d]:
                raise ValueError(f"walk not continuous at step {k}")

    def remove_backtracks(self, walk: Walk) -> Walk:
        """Drop immediate U-turns (enter and exit a face through one edge)."""
        steps = list(walk.steps)
        if not walk.closed:
            raise ValueError("arc backtrack removal not supported here")
        changed = True
        while changed and len(steps) >= 2:
            changed = False
            n = len(steps)
            for k in range(n):
                d, _ = steps[k]
                d2, _ = steps[(k + 1) % n]
                if self.pair[d2] == d:
                    hi, lo = max(k, (k + 1) % n), min(k, (k + 1) % n)
                    del steps[hi]
                    del steps[lo]
                    changed = True
                    break
        return Walk(steps, True)

    # -- chords and crossings ---------------------------------------------

    def boundary_rank(self, d, pos):
        """Total order key of a boundary point of its face (ccw)."""
        return (self.idx_in[d], pos)

    def walk_chords(self, walk: Walk):
        """Arcs of a closed walk: list of (face, (d_in, p_in), (d_out, p_out), k).

        Arc k runs from crossing k to crossing k+1; d_out is the dart of
        the face through which it exits (the pair of crossing k+1's dart).
        """
        out = []
        steps = walk.steps
        n = len(steps)
        if n == 0:
            return out
        rng = range(n) if walk.closed else range(n - 1)
        for k in rng:
            d, p = steps[k]
            d2, p2 = steps[(k + 1) % n]
            e = self.pair[d2]
            out.append((self.face_of[d], (d, p), (e, 1 - p2), k))
        return out

    def chords_cross(self, a_in, a_out, b_in, b_out):
        """Crossing of two chords of one face: None or sign (+1/-1)."""
        ra1 = self.boundary_rank(*a_in)
        ra2 = self.boundary_rank(*a_out)
        rb1 = self.boundary_rank(*b_in)
        rb2 = self.boundary_rank(*b_out)
        in1 = _cyclic_between(ra1, rb1, ra2)
        in2 = _cyclic_between(ra1, rb2, ra2)
        if in1 == in2:
            return None
        return 1 if in1 else -1

    def crossings_between(self, wa: Walk, wb: Walk):
        """All transverse crossings of two walks.

        Returns a list of dicts with keys: face, ka, kb (arc indices),
        sign, ta, tb (rational parameters along the two chords, for
        ordering crossings along each walk).
        """
        byface = {}
        for ch in self.walk_chords(wb):
            byface.setdefault(ch[0], []).append(ch)
        out = []
        for face, a_in, a_out, ka in self.walk_chords(wa):
            if face not in byface:
                continue
            pts = self._face_points(face)
            pa, qa = pts(a_in), pts(a_out)
            for _, b_in, b_out, kb in byface[face]:
                sign = self.chords_cross(a_in, a_out, b_in, b_out)
                if sign is None:
                    continue
                pb, qb = pts(b_in), pts(b_out)
                hit = _seg_params(pa, qa, pb, qb)
                if hit is None:
                    raise RuntimeError("rank test and geometry disagree")
                ta, tb = hit
                out.append({"face": face, "ka": ka, "kb": kb, "sign": sign,
                            "ta": ta, "tb": tb})
        return out

    def _face_points(self, fi):
        """Exact convex coordinates for boundary points of face fi."""
        face = self.faces[fi]
        nsides = len(face)

        def pts(pt):
            d, pos = pt
            k = self.idx_in[d]
            u = Fraction(4 * k) + 4 * pos  # strictly increasing with rank
            den = 1 + u * u
            return (Fraction(1 - u * u, 1) / den, Fraction(2) * u / den)

        # shift so u >= 0 across the face; circle param is ccw for u ascending
        return pts

    def self_crossings(self, w: Walk):
        byface = {}
        for ch in self.walk_chords(w):
            byface.setdefault(ch[0], []).append(ch)
        count = 0
        for face, chs in byface.items():
            for i in range(len(chs)):
                for j in range(i + 1, len(chs)):
                    _, a_in, a_out, ka = chs[i]
                    _, b_in, b_out, kb = chs[j]
                    if abs(ka - kb) in (1, len(w) - 1) or ka == kb:
                        continue
                    if self.chords_cross(a_in, a_out, b_in, b_out) is not None:
                        count += 1
        return count

    # -- structural edits ---------------------------------------------------

    def delete_edge(self, d, walks):
        """Remove the interior edge of d, merging its two (distinct) faces.

        Returns (complex, new_walks).  Walk crossings of the deleted edge
        vanish; inside the merged disk face the neighbouring chords simply
        concatenate, which is the same isotopy class rel endpoints.
        """
        p = self.pair[d]
        if p == -1:
            raise ValueError("cannot delete a boundary edge")
        f1, f2 = self.face_of[d], self.face_of[p]
        if f1 == f2:
            raise ValueError("edge has one face on both sides")
        c1 = self.faces[f1]
        c2 = self.faces[f2]
        i1 = self.idx_in[d]
        i2 = self.idx_in[p]
        merged = c1[i1 + 1:] + c1[:i1] + c2[i2 + 1:] + c2[:i2]
        faces = [f for fi, f in enumerate(self.faces) if fi not in (f1, f2)]
        faces.append(merged)
        cx, remap = _rebuild(faces, self.pair, drop={d, p})
        new_walks = []
        for w in walks:
            steps = [(remap[dd], pp) for dd, pp in w.steps if dd not in (d, p)]
            new_walks.append(Walk(steps, w.closed))
        return cx, new_walks

    def collapse_adjacent(self, d, walks):
        """Fold an edge whose darts are adjacent in one face (… d pair[d] …)."""
        p = self.pair[d]
        fi = self.face_of[d]
        if p == -1 or self.face_of[p] != fi:
            raise ValueError("not a foldable edge")
        if self.next_in_face(d) != p and self.next_in_face(p) != d:
            raise ValueError("darts not adjacent in the face")
        cyc = self.faces[fi]
        keep = [x for x in cyc if x not in (d, p)]
        if not keep:
            raise ValueError("folding would erase the last face")
        faces = [f for k, f in enumerate(self.faces) if k != fi]
        faces.append(tuple(keep))
        cx, remap = _rebuild(faces, self.pair, drop={d, p})
        new_walks = []
        for w in walks:
            steps = [(remap[dd], pp) for dd, pp in w.steps if dd not in (d, p)]
            new_walks.append(Walk(steps, w.closed))
        return cx, new_walks

    def cap_circle(self, circle, walks):
        """Glue a disk onto a boundary circle (tuple of boundary darts)."""
        n = self.ndarts
        newfaces = list(self.faces)
        pair = list(self.pair) + [0] * len(circle)
        cap = []
        for k, b in enumerate(circle):
            nd = n + k
            pair[b] = nd
            pair[nd] = b
            cap.append(nd)
        cap.reverse()
        newfaces.append(tuple(cap))
        cx = CellComplex(newfaces, pair)
        return cx, [Walk(w.steps, w.closed) for w in walks]


def _rebuild(faces, pair, drop):
    """Renumber darts densely after dropping some; returns (complex, remap)."""
    old = [d for f in faces for d in f]
    remap = {}
    for d in sorted(old):
        remap[d] = len(remap)
    newfaces = [tuple(remap[d] for d in f) for f in faces]
    newpair = [0] * len(remap)
    for d in old:
        p = pair[d]
        newpair[remap[d]] = -1 if (p == -1 or p in drop) else remap[p]
    return CellComplex(newfaces, newpair), remap


# -- exact 2d helpers -------------------------------------------------------


def _cyclic_between(a, x, b):
    """Is x strictly inside the ccw cyclic interval (a, b)?  Keys are tuples."""
    if a == x or x == b or a == b:
        raise ValueError("coincident boundary points")
    if a < b:
        return a < x < b
    return x > a or x < b


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _seg_params(p, q, r, s):
    """Intersection of open segments pq and rs: (t, u) params or None."""
    d1 = (q[0] - p[0], q[1] - p[1])
    d2 = (s[0] - r[0], s[1] - r[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0:
        return None
    w = (r[0] - p[0], r[1] - p[1])
    t = Fraction(w[0] * d2[1] - w[1] * d2[0], den)
    u = Fraction(w[0] * d1[1] - w[1] * d1[0], den)
    if 0 < t < 1 and 0 < u < 1:
        return t, u
    return None


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def cyclic_reduce(word):
    w = free_reduce(word)
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return w


class BandDecomposition:
    """Disk-plus-bands form of a compact surface complex.

    A spanning tree of the dual graph makes the union of faces a disk;
    every interior edge off the tree is a band and a free generator of
    the fundamental group.  The word of a transverse walk is the signed
    sequence of band edges it crosses: the walk is null-homotopic iff
    the word freely reduces to nothing.
    """

    def __init__(self, cx: CellComplex):
        self.cx = cx
        nf = len(cx.faces)
        intree = set()
        seen = [False] * nf
        order = sorted(range(nf))
        gen_of = {}
        for root in order:
            if seen[root]:
                continue
            seen[root] = True
            queue = [root]
            while queue:
                fi = queue.pop(0)
                for d in cx.faces[fi]:
                    p = cx.pair[d]
                    if p == -1:
                        continue
                    fj = cx.face_of[p]
                    if not seen[fj]:
                        seen[fj] = True
                        intree.add(d)
                        intree.add(p)
                        queue.append(fj)
        g = 0
        for d in range(cx.ndarts):
            p = cx.pair[d]
            if p == -1 or d in intree or d > p:
                continue
            g += 1
            gen_of[d] = g
            gen_of[p] = -g
        self.gen_of = gen_of
        self.ngens = g

    def word(self, darts):
        out = []
        for d in darts:
            v = self.gen_of.get(d, 0)
            if v:
                out.append(v)
        return free_reduce(out)

    def trivial(self, darts):
        return not self.word(darts)


def boundary_pushoff_darts(cx: CellComplex, d_from, d_to):
    """Crossing darts of a path pushed just inside the boundary.

    The path starts on boundary dart ``d_from`` and runs in the dart
    direction along the boundary until reaching ``d_to`` (so if
    ``d_from == d_to`` the pushoff is empty).  Returned darts are the
    edges crossed while rounding the boundary vertices in between.
    """
    out = []
    b = d_from
    while b != d_to:
        nb = cx.next_boundary(b)
        e = cx.next_in_face(b)
        while e != nb:
            out.append(cx.pair[e])
            e = cx.next_in_face(cx.pair[e])
        b = nb
    return out
