"""Reference surfaces and exact curve primitives.

A closed orientable genus-g surface is modelled by a fixed one-vertex
triangulation built from the standard 4g-gon (a1 b1 a1' b1' ... polygon
word) with a fan of diagonals from vertex 0.  Isotopy classes of
essential simple closed curves are stored as normal coordinates: the
vector of transverse crossing counts of the tight representative with
the triangulation edges.  Equal weight vectors = isotopic curves.

Curves are manipulated as explicit transverse walks (dart-crossing
sequences).  ``tighten`` pulls a walk to minimal position by removing
edge backtracks and pushing fans of arcs across the vertex; the crossing
counts of the tight walk are the canonical coordinates.
"""

from __future__ import annotations

from fractions import Fraction

from ._cells import CellComplex, Walk


class Triangulation:
    """Reference one-vertex triangulation of the closed genus-g surface."""

    _cache = {}

    def __init__(self, genus):
        self.genus = genus
        if genus == 0:
            faces = [(0, 1, 2), (3, 4, 5)]
            pair = [3, 5, 4, 0, 2, 1]
            self.cx = CellComplex(faces, pair)
            self.edge_names = ["e0", "e1", "e2"]
            self._edge_of = {0: 0, 3: 0, 1: 1, 5: 1, 2: 2, 4: 2}
            self.side_dart = {}
        else:
            n = 4 * genus
            nf = n - 2
            faces = [(3 * j, 3 * j + 1, 3 * j + 2) for j in range(nf)]
            pair = [-1] * (3 * nf)

            def sdart(j):
                if j == 0:
                    return 0
                if j == n - 1:
                    return 3 * (nf - 1) + 2
                return 3 * (j - 1) + 1

            self.side_dart = {j: sdart(j) for j in range(n)}
            for f in range(1, nf):
                a = 3 * (f - 1) + 2      # top diagonal of face f-1
                b = 3 * f                # bottom diagonal of face f
                pair[a] = b
                pair[b] = a
            for k in range(genus):
                for (u, v) in ((4 * k, 4 * k + 2), (4 * k + 1, 4 * k + 3)):
                    du, dv = sdart(u), sdart(v)
                    pair[du] = dv
                    pair[dv] = du
            self.cx = CellComplex(faces, pair)
            self._edge_of = {}
            self.edge_names = []
            for k in range(genus):
                for nm, j in ((f"a{k+1}", 4 * k), (f"b{k+1}", 4 * k + 1)):
                    e = len(self.edge_names)
                    self.edge_names.append(nm)
                    d = sdart(j)
                    self._edge_of[d] = e
                    self._edge_of[self.cx.pair[d]] = e
            for f in range(1, nf):
                e = len(self.edge_names)
                self.edge_names.append(f"d{f+1}")   # diagonal (0, f+1)
                d = 3 * (f - 1) + 2
                self._edge_of[d] = e
                self._edge_of[self.cx.pair[d]] = e
            if self.cx.nvertices() != 1:
                raise RuntimeError("reference triangulation is not one-vertex")
        if self.cx.euler() != 2 - 2 * genus:
            raise RuntimeError("bad Euler characteristic")
        self.nedges = len(self.edge_names)
        self.canonical_dart = [None] * self.nedges
        for d in range(self.cx.ndarts):
            e = self._edge_of[d]
            if self.canonical_dart[e] is None or d < self.canonical_dart[e]:
                self.canonical_dart[e] = d
        self._sigma = {}
        self._sigma_inv = {}
        if genus >= 1:
            for d in range(self.cx.ndarts):
                s = self.cx.vertex_next(d)
                self._sigma[d] = s
                self._sigma_inv[s] = d

    @classmethod
    def reference(cls, genus):
        if genus not in cls._cache:
            cls._cache[genus] = cls(genus)
        return cls._cache[genus]

    def edge_of(self, d):
        return self._edge_of[d]

    def __repr__(self):
        return f"Triangulation(genus={self.genus})"

    def __eq__(self, other):
        return isinstance(other, Triangulation) and other.genus == self.genus

    def __hash__(self):
        return hash(("Triangulation", self.genus))

    # -- normal coordinate validation ------------------------------------

    def matching_error(self, weights):
        """None if weights satisfy the normal matching conditions."""
        if len(weights) != self.nedges:
            return ("length", -1)
        if any(w < 0 for w in weights):
            return ("negative", -1)
        for fi, f in enumerate(self.cx.faces):
            w = [weights[self._edge_of[d]] for d in f]
            if sum(w) % 2:
                return ("parity", fi)
            for i in range(3):
                if w[i] > w[(i + 1) % 3] + w[(i + 2) % 3]:
                    return ("triangle_inequality", fi)
        return None

    # -- canonical trace ---------------------------------------------------

    def trace_walks(self, weights):
        """Positioned walks of the embedded normal multicurve, per component."""
        err = self.matching_error(weights)
        if err:
            raise ValueError(f"invalid normal coordinates: {err}")

        def wt(d):
            return weights[self._edge_of[d]]

        links = {}

        def connect(p1, p2):
            assert p1 not in links and p2 not in links
            links[p1] = p2
            links[p2] = p1

        for f in self.cx.faces:
            w = [wt(d) for d in f]
            for i in range(3):
                ni = (w[i] + w[(i + 1) % 3] - w[(i + 2) % 3]) // 2
                for a in range(ni):
                    connect((f[i], w[i] - 1 - a), (f[(i + 1) % 3], a))

        def canon_pt(d, s):
            e = self._edge_of[d]
            return (e, s if d == self.canonical_dart[e] else wt(d) - 1 - s)

        def local_slot(e, s, d):
            return s if d == self.canonical_dart[e] else weights[e] - 1 - s

        visited = set()
        walks = []
        all_pts = sorted({canon_pt(d, s) for (d, s) in links})
        for start in all_pts:
            if start in visited:
                continue
            e0, s0 = start
            d0 = min(self.canonical_dart[e0], self.cx.pair[self.canonical_dart[e0]])
            cur_dart = d0
            cur_slot = local_slot(e0, s0, d0)
            steps = []
            while True:
                pt = canon_pt(cur_dart, cur_slot)
                if pt in visited:
                    assert pt == start, "strand did not close at its start"
                    break
                visited.add(pt)
                e = self._edge_of[cur_dart]
                cpos = Fraction(pt[1] + 1, weights[e] + 1)
                pos = cpos if cur_dart == self.canonical_dart[e] else 1 - cpos
                steps.append((cur_dart, pos))
                out_dart, out_slot = links[(cur_dart, cur_slot)]
                cur_dart = self.cx.pair[out_dart]
                cur_slot = wt(out_dart) - 1 - out_slot
            walks.append(Walk(steps, True))
        for w in walks:
            self.cx.walk_check(w)
        return walks

    def walk_weights(self, darts):
        w = [0] * self.nedges
        for d in darts:
            w[self._edge_of[d]] += 1
        return tuple(w)

    # -- tightening --------------------------------------------------------

    def tighten(self, darts):
        """Minimal-crossing dart sequence of the free homotopy class.

        Returns None when the class is trivial.
        """
        if self.genus == 0:
            return None
        seq = list(darts)
        while True:
            # backtracks
            k = 0
            while k < len(seq) and len(seq) >= 2:
                n = len(seq)
                d = seq[k]
                d2 = seq[(k + 1) % n]
                if self.cx.pair[d2] == d:
                    hi, lo = max(k, (k + 1) % n), min(k, (k + 1) % n)
                    del seq[hi]
                    del seq[lo]
                    k = 0
                else:
                    k += 1
            if not seq:
                return None
            res = self._fan_pass(seq)
            if res is None:
                return None
            seq, changed = res
            if not changed:
                return tuple(seq)

    def _arc_corner(self, entry, exit_):
        if exit_ == self.cx.next_in_face(entry):
            return exit_
        if entry == self.cx.next_in_face(exit_):
            return entry
        raise AssertionError("triangle arc does not cut a corner")

    def _fan_pass(self, seq):
        """Apply one improving fan push.  Returns (seq, changed) or None
        when the whole walk is a vertex-linking (trivial) loop."""
        n = len(seq)
        cx = self.cx
        corners = []
        for k in range(n):
            entry = seq[k]
            exit_ = cx.pair[seq[(k + 1) % n]]
            corners.append(self._arc_corner(entry, exit_))
        N = cx.ndarts
        for k in range(n):
            for direction in (1, -1):
                if direction == 1 and seq[k] != corners[k]:
                    continue
                if direction == -1 and seq[k] != cx.prev_in_face(corners[k]):
                    continue
                m = 1
                while m < n:
                    j = (k + m - 1) % n
                    x = corners[j]
                    if direction == 1:
                        nxt = self._sigma[x]
                        need_cross = nxt
                    else:
                        nxt = self._sigma_inv[x]
                        need_cross = cx.pair[x]
                    if seq[(j + 1) % n] != need_cross or corners[(j + 1) % n] != nxt:
                        break
                    m += 1
                if m == n:
                    return None
                if N - m - 1 < m + 1:
                    return self._fan_replace(seq, corners, k, m, direction), True
        return list(seq), False

    def _fan_replace(self, seq, corners, k, m, direction):
        cx = self.cx
        n = len(seq)
        x_first = corners[k]
        x_last = corners[(k + m - 1) % n]
        new = []
        guard = 0
        if direction == 1:
            post_face = cx.face_of[self._sigma[x_last]]
            z = self._sigma_inv[x_first]
            while cx.face_of[z] != post_face:
                new.append(cx.pair[z])
                z = self._sigma_inv[z]
                guard += 1
                assert guard <= cx.ndarts, "fan sweep did not close"
        else:
            post_face = cx.face_of[cx.pair[x_last]]
            z = self._sigma[x_first]
            while cx.face_of[z] != post_face:
                new.append(self._sigma[z])
                z = self._sigma[z]
                guard += 1
                assert guard <= cx.ndarts, "fan sweep did not close"
        kept = [seq[(k + m + 1 + t) % n] for t in range(n - (m + 1))]
        return kept + new

    def canonical_weights(self, darts):
        """Tighten a closed dart walk; return its canonical weight vector.

        Raises if the class is trivial or traces to several components.
        """
        seq = self.tighten(darts)
        if seq is None:
            raise ValueError("trivial curve")
        w = self.walk_weights(seq)
        comps = self.trace_walks(w)
        if len(comps) != 1:
            raise RuntimeError("tightened walk is not a single embedded curve")
        return w

    # -- polygon chart curves ----------------------------------------------

    def polygon_vertex(self, j):
        u = Fraction(j)
        den = 1 + u * u
        return (Fraction(1 - u * u, 1) / den, Fraction(2) * u / den)

    def side_crossing_curve(self, side_params):
        """Positioned walk from polygon-side crossing data.

        ``side_params`` lists, cyclically, the polygon sides the curve
        crosses and the crossing parameter along each side; between
        listed crossings the curve runs straight in the 4g-gon, and its
        fan-diagonal crossings are computed exactly.
        """
        if self.genus == 0:
            raise ValueError("no polygon chart on the sphere")
        n4 = 4 * self.genus
        nf = n4 - 2

        def sigma_side(j):
            k, r = divmod(j, 4)
            return 4 * k + (r + 2) % 4

        def side_point(j, t):
            a = self.polygon_vertex(j)
            b = self.polygon_vertex((j + 1) % n4)
            return (a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))

        steps = []
        L = len(side_params)
        for i in range(L):
            s1, t1 = side_params[i]
            s2, t2 = side_params[(i + 1) % L]
            t1, t2 = Fraction(t1), Fraction(t2)
            ss, tt = sigma_side(s1), 1 - t1
            steps.append((self.side_dart[ss], tt))
            p = side_point(ss, tt)
            q = side_point(s2, t2)
            hits = []
            v0 = self.polygon_vertex(0)
            for mdiag in range(2, n4 - 1):
                vm = self.polygon_vertex(mdiag)
                hit = _seg_params_closed(v0, vm, p, q)
                if hit is None:
                    continue
                t_diag, t_chord = hit
                upward = _cross(v0, vm, p) < 0
                hits.append((t_chord, mdiag, t_diag, upward))
            hits.sort()
            for _, mdiag, t_diag, upward in hits:
                if upward:
                    steps.append((3 * (mdiag - 1), t_diag))
                else:
                    steps.append((3 * (mdiag - 2) + 2, 1 - t_diag))
        w = Walk(steps, True)
        self.cx.walk_check(w)
        return w

    def basis_curves(self):
        """Walks [A_1, B_1, ..., A_g, B_g]; A_k crosses edge a_k once and
        B_k crosses edge b_k once."""
        out = []
        for k in range(self.genus):
            out.append(self.side_crossing_curve([(4 * k, Fraction(1, 2))]))
            out.append(self.side_crossing_curve([(4 * k + 1, Fraction(1, 2))]))
        return out


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _seg_params_closed(a, b, p, q):
    """Intersection params of segment ab (open) with segment pq (open)."""
    d1 = (b[0] - a[0], b[1] - a[1])
    d2 = (q[0] - p[0], q[1] - p[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    if den == 0:
        return None
    w = (p[0] - a[0], p[1] - a[1])
    t = Fraction(w[0] * d2[1] - w[1] * d2[0], den)
    u = Fraction(w[0] * d1[1] - w[1] * d1[0], den)
    if 0 < t < 1 and 0 < u < 1:
        return t, u
    return None


def relayer(tri: Triangulation, walk: Walk, layer, nlayers):
    """Shift a walk's crossings into its own parallel band per edge.

    The affine shift acts in canonical edge coordinates, so it preserves
    the strand order of the walk along every edge.
    """
    steps = []
    for d, p in walk.steps:
        c = tri.canonical_dart[tri.edge_of(d)]
        pc = p if d == c else 1 - p
        pc = (pc + layer) / Fraction(nlayers)
        steps.append((d, pc if d == c else 1 - pc))
    return Walk(steps, walk.closed)
