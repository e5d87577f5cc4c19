"""Overlay of two normal multicurves and the bigon engine.

Both multicurves are drawn as straight chords in every triangle, with points
on each side spread proportionally.  Chords of different curves cross exactly
when their endpoints interleave on the triangle boundary, and the order of the
crossings along a chord is the order of the other chords' endpoints on the
counter-clockwise arc it cuts off.

From the drawing we build the faces of the complement of ``a ∪ b`` and then
remove innermost bigons until none is left.  A bigon is a disk face with two
corners and no puncture; removing it deletes two crossings, merges the faces
opposite its corners and leaves the two other neighbours in place.  The
remaining crossing count is the geometric intersection number.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import kernels


def _corner_counts(w, edge, t):
    a, b, c = w[edge[3 * t]], w[edge[3 * t + 1]], w[edge[3 * t + 2]]
    return ((c + a - b) >> 1, (a + b - c) >> 1, (b + c - a) >> 1)


@dataclass
class Chord:
    colour: int
    lo: tuple  # boundary key of the lower endpoint
    hi: tuple
    plo: int  # edge point ids of the endpoints (in the colour's numbering)
    phi: int
    comp: int
    corner: tuple = (0, 0)  # (k, j): j-th chord from corner k
    crossings: list = field(default_factory=list)  # crossing ids in order lo -> hi


class Overlay:
    """Transverse drawing of multicurves ``a`` (colour 0) and ``b`` (colour 1)."""

    def __init__(self, tri, wa, wb):
        self.tri = tri
        fr = self.fr = kernels.frame(tri)
        self.w = (tuple(wa), tuple(wb))
        self.traces = []
        self.offsets = []
        for w in self.w:
            self.traces.append(kernels.trace(fr, w))
            off = [0]
            for x in w:
                off.append(off[-1] + x)
            self.offsets.append(off)
        self.chords: list[list[Chord]] = []
        self.cross: list[tuple[int, int, int]] = []  # (triangle, a chord, b chord)
        for t in range(fr.ntri):
            chs = self._chords(t, 0) + self._chords(t, 1)
            self.chords.append(chs)
            na = sum(1 for c in chs if c.colour == 0)
            for i in range(na):
                ca = chs[i]
                for j in range(na, len(chs)):
                    cb = chs[j]
                    if (ca.lo < cb.lo < ca.hi) != (ca.lo < cb.hi < ca.hi):
                        x = len(self.cross)
                        self.cross.append((t, i, j))
                        ca.crossings.append(x)
                        cb.crossings.append(x)
            for c in chs:
                other = lambda x: chs[self.cross[x][2 if c.colour == 0 else 1]]
                c.crossings.sort(key=lambda x: _inside(other(x), c))

    def _point(self, colour, s, p):
        fr = self.fr
        e = fr.edge[s]
        w = self.w[colour][e]
        return self.offsets[colour][e] + (p if fr.fwd[s] else w - 1 - p)

    def _chords(self, t, colour):
        fr = self.fr
        w = self.w[colour]
        labels = self.traces[colour][0]
        x = _corner_counts(w, fr.edge, t)
        out = []
        for k in range(3):
            km = (k + 2) % 3
            sk, sm = 3 * t + k, 3 * t + km
            wk, wm = w[fr.edge[sk]], w[fr.edge[sm]]
            for j in range(x[k]):
                pa = self._point(colour, sk, j)
                pb = self._point(colour, sm, wm - 1 - j)
                ka = (k, (2 * j + 1) / (2 * wk), colour ^ 1 ^ fr.fwd[sk])
                kb = (km, (2 * (wm - 1 - j) + 1) / (2 * wm), colour ^ 1 ^ fr.fwd[sm])
                if ka > kb:
                    ka, kb, pa, pb = kb, ka, pb, pa
                out.append(Chord(colour, ka, kb, pa, pb, labels[pa], (k, j)))
        return out

    @property
    def crossings(self) -> int:
        return len(self.cross)


def _inside(d: Chord, c: Chord):
    """Key of the endpoint of ``d`` lying on the arc from ``c.lo`` to ``c.hi``."""
    return d.lo if c.lo < d.lo < c.hi else d.hi


# ---------------------------------------------------------------- faces

class _UF:
    def __init__(self):
        self.parent = []

    def add(self):
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a


@dataclass
class Face:
    chi: int = 0
    punct: int = 0
    corners: int = 0
    floats: list = field(default_factory=list)  # (colour, comp)
    incid: list = field(default_factory=list)  # (crossing, quadrant)
    alive: bool = True


class Arrangement:
    """Faces of the complement of an overlay, with bigon removal."""

    def __init__(self, ov: Overlay):
        self.ov = ov
        tri, fr = ov.tri, ov.fr
        self.uf = _UF()
        # quadrant faces of every crossing, ccw from the a-chord's hi direction
        self.quad = [[None] * 4 for _ in ov.cross]
        side_segments: dict[int, list[int]] = {}
        corner_face = {}
        pieces = []
        chord_faces = {}
        for t in range(fr.ntri):
            segs, cf, chf, npieces = self._triangle_faces(t)
            pieces.extend(npieces)
            for k in range(3):
                side_segments[3 * t + k] = segs[k]
            for k in range(3):
                corner_face[(t, k)] = cf[k]
            chord_faces.update(chf)
        glued = []
        for s in range(3 * fr.ntri):
            if not fr.fwd[s]:
                continue
            o = fr.partner[s]
            a, b = side_segments[s], side_segments[o]
            n = len(a) - 1
            for q in range(n + 1):
                ra, rb = self.uf.find(a[q]), self.uf.find(b[n - q])
                if ra != rb:
                    self.uf.parent[ra] = rb
                glued.append(a[q])
        self.faces: dict[int, Face] = {}
        for p in pieces:
            self._face(p).chi += 1
        for p in glued:
            self._face(p).chi -= 1
        seen = set()
        for t in range(fr.ntri):
            for k in range(3):
                v = tri.corners[t][k]
                if v in seen:
                    continue
                seen.add(v)
                f = self._face(corner_face[(t, k)])
                if tri.is_puncture(v):
                    f.punct += 1
                else:
                    f.chi += 1
        for x, q in enumerate(self.quad):
            for i in range(4):
                f = self._face(q[i])
                f.corners += 1
                f.incid.append((x, i))
        self.count = [[0] * ov.traces[0][1], [0] * ov.traces[1][1]]
        for t, i, j in ov.cross:
            self.count[0][ov.chords[t][i].comp] += 1
            self.count[1][ov.chords[t][j].comp] += 1
        self.float_sides: dict[tuple[int, int], tuple[int, int]] = {}
        for colour in (0, 1):
            for comp, n in enumerate(self.count[colour]):
                if n == 0:
                    fl, fr_ = chord_faces[(colour, comp)]
                    self._float(colour, comp, fl, fr_)
        self.alive = [True] * len(ov.cross)
        self.crossings = len(ov.cross)

    def _face(self, piece) -> Face:
        r = self.uf.find(piece)
        f = self.faces.get(r)
        if f is None:
            f = self.faces[r] = Face()
        return f

    def _float(self, colour, comp, f1, f2):
        f1, f2 = self.uf.find(f1), self.uf.find(f2)
        self.float_sides[(colour, comp)] = (f1, f2)
        self.faces.setdefault(f1, Face()).floats.append((colour, comp))
        self.faces.setdefault(f2, Face()).floats.append((colour, comp))

    def _triangle_faces(self, t):
        """Trace the faces of the chord diagram in triangle ``t``."""
        ov = self.ov
        chs = ov.chords[t]
        # boundary nodes: ("c", k) corners and ("p", chord, end) endpoints
        bnodes = [((k, -1.0, 0), ("c", k)) for k in range(3)]
        for ci, c in enumerate(chs):
            bnodes.append((c.lo, ("p", ci, 0)))
            bnodes.append((c.hi, ("p", ci, 1)))
        bnodes.sort()
        nb = len(bnodes)
        bindex = {node: i for i, (_, node) in enumerate(bnodes)}
        # rotation systems; a half-edge is (tail, head, tag)
        rot: dict = {}
        for i, (_, node) in enumerate(bnodes):
            nxt, prv = bnodes[(i + 1) % nb][1], bnodes[i - 1][1]
            if node[0] == "c":
                rot[node] = [(nxt, "b"), (prv, "b")]
            else:
                ci, end = node[1], node[2]
                c = chs[ci]
                inward = ("x", c.crossings[0]) if c.crossings else ("p", ci, 1 - end)
                if c.crossings and end == 1:
                    inward = ("x", c.crossings[-1])
                rot[node] = [(nxt, "b"), (inward, ci), (prv, "b")]
        for x in {x for c in chs for x in c.crossings}:
            _, ia, ib = ov.cross[x]
            ca, cb = chs[ia], chs[ib]
            dirs = []
            for c, ci in ((ca, ia), (cb, ib)):
                k = c.crossings.index(x)
                hi = ("x", c.crossings[k + 1]) if k + 1 < len(c.crossings) else ("p", ci, 1)
                lo = ("x", c.crossings[k - 1]) if k > 0 else ("p", ci, 0)
                dirs.append((hi, lo, ci))
            (ahi, alo, ia_), (bhi, blo, ib_) = dirs
            # b's endpoint on the arc lo->hi of a is on a's right
            if ca.lo < cb.lo < ca.hi:
                right, left = blo, bhi
            else:
                right, left = bhi, blo
            rot[("x", x)] = [(ahi, ia_), (left, ib_), (alo, ia_), (right, ib_)]
        # face tracing: next = clockwise neighbour of the reversed half-edge
        pos = {}
        for v, lst in rot.items():
            for i, (h, tag) in enumerate(lst):
                pos[(v, h, tag)] = i
        faces_of = {}
        npieces = []
        for v, lst in rot.items():
            for h, tag in lst:
                if (v, h, tag) in faces_of:
                    continue
                cyc = []
                cur = (v, h, tag)
                while cur not in faces_of:
                    faces_of[cur] = None
                    cyc.append(cur)
                    u, hd, tg = cur
                    i = pos[(hd, u, tg)]
                    nl = rot[hd]
                    nh, ntag = nl[(i - 1) % len(nl)]
                    cur = (hd, nh, ntag)
                outer = all(tg == "b" and _is_prev(bindex, nb, u, hd) for u, hd, tg in cyc)
                fid = None if outer else self.uf.add()
                if fid is not None:
                    npieces.append(fid)
                for he in cyc:
                    faces_of[he] = fid
                if fid is None:
                    continue
                for j, (u, hd, tg) in enumerate(cyc):
                    if hd[0] == "x":
                        i = pos[(hd, u, tg)]
                        self.quad[hd[1]][(i - 1) % 4] = fid
        # boundary segments along each side, and the face at each corner
        segs = [[], [], []]
        cf = [None] * 3
        for i, (key, node) in enumerate(bnodes):
            nxt = bnodes[(i + 1) % nb][1]
            f = faces_of[(node, nxt, "b")]
            if node[0] == "c":
                cf[node[1]] = f
                segs[node[1]].append(f)
            else:
                segs[key[0]].append(f)
        chf = {}
        for ci, c in enumerate(chs):
            key = (c.colour, c.comp)
            if key in chf:
                continue
            h = rot[("p", ci, 0)][1]
            fl = faces_of[(("p", ci, 0), h[0], ci)]
            fr_ = faces_of[(h[0], ("p", ci, 0), ci)] if h[0][0] == "p" else None
            if fr_ is None:
                continue
            chf[key] = (fl, fr_)
        return segs, cf, chf, npieces

    # -------------------------------------------------------------- bigons

    def _root(self, f):
        return self.uf.find(f)

    def find_bigon(self):
        for r in sorted(self.faces):
            f = self.faces[r]
            if not f.alive or self.uf.find(r) != r:
                continue
            if f.chi == 1 and f.punct == 0 and f.corners == 2:
                inc = [(x, i) for x, i in f.incid if self.alive[x]]
                if len(inc) == 2 and inc[0][0] != inc[1][0]:
                    return r, inc
        return None

    def remove(self, r, inc):
        ov = self.ov
        (x, i), (y, j) = inc
        qx = [self._root(q) for q in self.quad[x]]
        qy = [self._root(q) for q in self.quad[y]]
        # ray i+1 at x: colour 1 if odd index (b rays sit at 1 and 3)
        across = {}
        for q, k in ((qx, i), (qy, j)):
            for d in (1, -1):
                ray = (k + 1) % 4 if d == 1 else k % 4
                colour = ray % 2  # ray parity gives its colour
                across.setdefault("D" if colour == 0 else "U", []).append(q[(k + d) % 4])
        U = across["U"]
        D = across["D"]
        assert len(set(U)) == 1 and len(set(D)) == 1, "bigon neighbours disagree"
        U, D = U[0], D[0]
        L, R = qx[(i + 2) % 4], qy[(j + 2) % 4]
        self.faces[U].corners -= 2
        self.faces[D].corners -= 2
        self.faces[L].corners -= 1
        self.faces[R].corners -= 1
        self.faces[r].alive = False
        self.alive[x] = self.alive[y] = False
        self.crossings -= 2
        if L != R:
            fl, frr = self.faces[L], self.faces[R]
            self.uf.parent[R] = L
            fl.chi += frr.chi - 1
            fl.punct += frr.punct
            fl.corners += frr.corners
            fl.floats += frr.floats
            fl.incid += frr.incid
            frr.alive = False
            for key, (s1, s2) in list(self.float_sides.items()):
                self.float_sides[key] = (L if s1 == R else s1, L if s2 == R else s2)
        else:
            self.faces[L].chi -= 1
        LR = L
        t, ia, ib = ov.cross[x]
        ca, cb = ov.chords[t][ia].comp, ov.chords[t][ib].comp
        self.count[0][ca] -= 2
        self.count[1][cb] -= 2
        U, D = self._root(U), self._root(D)
        if self.count[0][ca] == 0:
            self._float(0, ca, U, LR)
        if self.count[1][cb] == 0:
            self._float(1, cb, D, LR)

    def reduce(self):
        while True:
            b = self.find_bigon()
            if b is None:
                return self
            self.remove(*b)

    def annulus_between(self, ca: int, cb: int) -> bool:
        """Whether a-component ``ca`` and b-component ``cb`` cobound an annulus face."""
        for r, f in self.faces.items():
            if not f.alive or self.uf.find(r) != r:
                continue
            if f.chi == 0 and f.punct == 0 and f.corners == 0:
                fl = sorted(f.floats)
                if fl == [(0, ca), (1, cb)]:
                    return True
        return False


def _is_prev(bindex, nb, u, hd):
    return bindex.get(hd) == (bindex.get(u, -10) - 1) % nb


@dataclass(frozen=True)
class Position:
    crossings: int
    arrangement: Arrangement


def minimal_position(tri, wa, wb) -> Position:
    arr = Arrangement(Overlay(tri, wa, wb)).reduce()
    return Position(arr.crossings, arr)


def isotopic(tri, wa, wb) -> bool:
    """Isotopy test for two connected curves."""
    if tuple(wa) == tuple(wb):
        return True
    arr = Arrangement(Overlay(tri, wa, wb)).reduce()
    if arr.crossings:
        return False
    return arr.annulus_between(0, 0)
