# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; same signatures and results as ``_pykernels``."""

from libc.stdlib cimport malloc, free, calloc
from libc.string cimport memset, memcpy

BACKEND = "cython"


cdef struct Tri:
    int ntri
    int nedge
    int *partner
    int *edge
    int *fwd


cdef int *_ints(seq) except NULL:
    cdef Py_ssize_t n = len(seq), i
    cdef int *out = <int *>malloc((n + 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = seq[i]
    return out


cdef inline void _corners(const int *w, const int *edge, int t, int *x) noexcept nogil:
    cdef int a = w[edge[3 * t]], b = w[edge[3 * t + 1]], c = w[edge[3 * t + 2]]
    x[0] = (c + a - b) >> 1
    x[1] = (a + b - c) >> 1
    x[2] = (b + c - a) >> 1


def bad_triangle(int ntri, edge, w):
    cdef int t, a, b, c
    for t in range(ntri):
        a = w[edge[3 * t]]
        b = w[edge[3 * t + 1]]
        c = w[edge[3 * t + 2]]
        if a < 0 or b < 0 or c < 0 or (a + b + c) & 1 or a > b + c or b > a + c or c > a + b:
            return t
    return -1


# ---------------------------------------------------------------- tracing

cdef int _trace_count(int ntri, int nedge, const int *partner, const int *edge,
                      const int *fwd, const int *first, const int *w, int *off,
                      int *labels, int *cw, int maxcomp) noexcept nogil:
    """Label edge points by component; fills ``cw[c * nedge + e]``.

    Returns the number of components, or -1 past ``maxcomp``.
    """
    cdef int e, pos, c, s, p, es, pid, t, k, xk, out, q, so, we
    cdef int x[3]
    off[0] = 0
    for e in range(nedge):
        off[e + 1] = off[e] + w[e]
    for e in range(off[nedge]):
        labels[e] = -1
    cdef int ncomp = 0
    for e in range(nedge):
        for pos in range(w[e]):
            if labels[off[e] + pos] >= 0:
                continue
            if ncomp >= maxcomp:
                return -1
            c = ncomp
            ncomp += 1
            memset(cw + c * nedge, 0, nedge * sizeof(int))
            s = first[e]
            p = pos
            while True:
                es = edge[s]
                pid = off[es] + (p if fwd[s] else w[es] - 1 - p)
                if labels[pid] == c:
                    break
                labels[pid] = c
                cw[c * nedge + es] += 1
                t = s // 3
                k = s - 3 * t
                _corners(w, edge, t, x)
                xk = x[k]
                if p < xk:
                    out = (k + 2) % 3
                    q = w[edge[3 * t + out]] - 1 - p
                else:
                    out = (k + 1) % 3
                    q = w[es] - 1 - p
                so = 3 * t + out
                s = partner[so]
                p = w[edge[so]] - 1 - q
    return ncomp


def trace(int ntri, int nedge, partner, edge, fwd, w):
    """Components of a normal multicurve; see ``_pykernels.trace``."""
    cdef int *cp = _ints(partner)
    cdef int *ce = _ints(edge)
    cdef int *cf = _ints(fwd)
    cdef int *cw = _ints(w)
    cdef int *off = <int *>malloc((nedge + 1) * sizeof(int))
    cdef int *first = <int *>malloc(nedge * sizeof(int))
    cdef int total = 0, e, pos, c, s, p, es, pid, t, k, xk, out, q, so
    cdef int x[3]
    cdef int *labels
    try:
        off[0] = 0
        for e in range(nedge):
            off[e + 1] = off[e] + cw[e]
        total = off[nedge]
        for s in range(3 * ntri):
            if cf[s]:
                first[ce[s]] = s
        labels = <int *>malloc((total + 1) * sizeof(int))
        for e in range(total):
            labels[e] = -1
        weights, walks, arcs, points = [], [], [], []
        ncomp = 0
        for e in range(nedge):
            for pos in range(cw[e]):
                if labels[off[e] + pos] >= 0:
                    continue
                c = ncomp
                ncomp += 1
                comp = [0] * nedge
                walk = []
                pts = []
                arc = None
                s = first[e]
                p = pos
                while True:
                    es = ce[s]
                    pid = off[es] + (p if cf[s] else cw[es] - 1 - p)
                    if labels[pid] == c:
                        break
                    labels[pid] = c
                    pts.append(pid)
                    comp[es] += 1
                    t = s // 3
                    k = s - 3 * t
                    _corners(cw, ce, t, x)
                    xk = x[k]
                    if p < xk:
                        out = (k + 2) % 3
                        q = cw[ce[3 * t + out]] - 1 - p
                        if arc is None:
                            arc = (t, k, p)
                    else:
                        out = (k + 1) % 3
                        q = cw[es] - 1 - p
                        if arc is None:
                            arc = (t, out, q)
                    so = 3 * t + out
                    walk.append(so)
                    s = cp[so]
                    p = cw[ce[so]] - 1 - q
                weights.append(comp)
                walks.append(walk)
                arcs.append(arc)
                points.append(pts)
        labs = [labels[i] for i in range(total)]
        free(labels)
        return labs, ncomp, weights, walks, arcs, points
    finally:
        free(cp); free(ce); free(cf); free(cw); free(off); free(first)


# ---------------------------------------------------------------- regions

cdef int _find(int *parent, int a) noexcept nogil:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


cdef inline int _piece(const int *base, const int *xs, int t, int k, int j) noexcept nogil:
    if j >= xs[3 * t + k]:
        return base[t] + xs[3 * t] + xs[3 * t + 1] + xs[3 * t + 2]
    if k == 0:
        return base[t] + j
    if k == 1:
        return base[t] + xs[3 * t] + j
    return base[t] + xs[3 * t] + xs[3 * t + 1] + j


cdef inline int _segment(const int *base, const int *xs, const int *edge, const int *w,
                         int s, int q) noexcept nogil:
    cdef int t = s // 3
    cdef int k = s - 3 * t
    if q <= xs[3 * t + k]:
        return _piece(base, xs, t, k, q)
    return _piece(base, xs, t, (k + 1) % 3, w[edge[s]] - q)


def regions(int ntri, int nedge, partner, edge, fwd, vert, int nvert, marked, w, arcs):
    """Complementary regions; see ``_pykernels.regions``."""
    cdef int *cp = _ints(partner)
    cdef int *ce = _ints(edge)
    cdef int *cf = _ints(fwd)
    cdef int *cw = _ints(w)
    cdef int *base = <int *>malloc((ntri + 1) * sizeof(int))
    cdef int *xs = <int *>malloc(3 * ntri * sizeof(int))
    cdef int *parent = NULL
    cdef int *lab = NULL
    cdef int t, s, o, we, q, a, b, i, npiece, r, v, k
    try:
        base[0] = 0
        for t in range(ntri):
            _corners(cw, ce, t, xs + 3 * t)
            base[t + 1] = base[t] + xs[3 * t] + xs[3 * t + 1] + xs[3 * t + 2] + 1
        npiece = base[ntri]
        parent = <int *>malloc(npiece * sizeof(int))
        lab = <int *>malloc(npiece * sizeof(int))
        for i in range(npiece):
            parent[i] = i
            lab[i] = -1
        glued = []
        for s in range(3 * ntri):
            if not cf[s]:
                continue
            o = cp[s]
            we = cw[ce[s]]
            for q in range(we + 1):
                a = _find(parent, _segment(base, xs, ce, cw, s, q))
                b = _find(parent, _segment(base, xs, ce, cw, o, we - q))
                if a != b:
                    parent[a] = b
                glued.append(_segment(base, xs, ce, cw, s, q))
        nreg = 0
        for i in range(npiece):
            r = _find(parent, i)
            if lab[r] < 0:
                lab[r] = nreg
                nreg += 1
        chi = [0] * nreg
        punct = [[] for _ in range(nreg)]
        tris = [set() for _ in range(nreg)]
        for t in range(ntri):
            for i in range(base[t], base[t + 1]):
                r = lab[_find(parent, i)]
                chi[r] += 1
                tris[r].add(t)
        for i in glued:
            chi[lab[_find(parent, i)]] -= 1
        seen = [False] * nvert
        for s in range(3 * ntri):
            v = vert[s]
            if seen[v]:
                continue
            seen[v] = True
            t = s // 3
            k = s - 3 * t
            r = lab[_find(parent, _piece(base, xs, t, k, 0))]
            if marked[v]:
                punct[r].append(v)
            else:
                chi[r] += 1
        sides = []
        for t, k, j in arcs:
            sides.append((lab[_find(parent, _piece(base, xs, t, k, j))],
                          lab[_find(parent, _piece(base, xs, t, k, j + 1))]))
        plabel = [lab[_find(parent, i)] for i in range(npiece)]
        return nreg, sides, chi, punct, [sorted(x) for x in tris], plabel
    finally:
        free(cp); free(ce); free(cf); free(cw); free(base); free(xs)
        free(parent); free(lab)


# ---------------------------------------------------------------- lifts

def passages(partner, walk):
    cdef Py_ssize_t n = len(walk), i
    cdef int cur, prev
    out = []
    for i in range(n):
        cur = walk[i]
        prev = walk[i - 1 if i else n - 1]
        out.append((cur // 3, partner[prev] % 3, cur % 3))
    return out


def reverse_passages(ps):
    return [(t, o, i) for (t, i, o) in reversed(ps)]


cdef int _lift_count(int n, const int *ta, const int *ia, const int *oa,
                     int m, const int *tb, const int *ib, const int *ob) noexcept nogil:
    cdef int count = 0, i, j, step, ia2, oa2, left_start, left_end
    for i in range(n):
        for j in range(m):
            if tb[j] != ta[i] or ob[j] != oa[i] or ib[j] == ia[i]:
                continue
            left_start = ia[i] == (oa[i] + 1) % 3
            step = 1
            while step <= n + m:
                ia2 = ia[(i + step) % n]
                oa2 = oa[(i + step) % n]
                if oa2 != ob[(j + step) % m]:
                    left_end = oa2 == (ia2 + 2) % 3
                    if left_start != left_end:
                        count += 1
                    break
                step += 1
    return count


def lift_crossings(pa, pb):
    """Linked lift pairs of two closed walks; see ``_pykernels.lift_crossings``."""
    cdef int n = len(pa), m = len(pb), j
    if n == 0 or m == 0:
        return 0
    cdef int *buf = <int *>malloc((3 * n + 6 * m) * sizeof(int))
    cdef int *ta = buf
    cdef int *ia = buf + n
    cdef int *oa = buf + 2 * n
    cdef int *tb = buf + 3 * n
    cdef int *ib = tb + m
    cdef int *ob = tb + 2 * m
    cdef int *tr = tb + 3 * m
    cdef int *ir = tr + m
    cdef int *orr = tr + 2 * m
    try:
        for j in range(n):
            ta[j], ia[j], oa[j] = pa[j]
        for j in range(m):
            tb[j], ib[j], ob[j] = pb[j]
        for j in range(m):
            # reversed walk: passage (t, out, in) in reverse order
            tr[j] = tb[m - 1 - j]
            ir[j] = ob[m - 1 - j]
            orr[j] = ib[m - 1 - j]
        return _lift_count(n, ta, ia, oa, m, tb, ib, ob) + _lift_count(n, ta, ia, oa, m, tr, ir, orr)
    finally:
        free(buf)


# ---------------------------------------------------------------- overlay

cdef int _chord_keys(const int *w, const int *edge, const int *fwd, int t, int flag,
                     long long *out) noexcept nogil:
    """Chords of triangle ``t`` as pairs of integer boundary keys.

    A key packs (side, position on the side, tie-break flag) so that keys
    compare like the tuples of the pure-Python kernel.
    """
    cdef int x[3]
    cdef int n = 0, k, km, wk, wp, j, fa, fb
    cdef long long a, b, tmp
    _corners(w, edge, t, x)
    for k in range(3):
        km = (k + 2) % 3
        wk = w[edge[3 * t + k]]
        wp = w[edge[3 * t + km]]
        fa = flag ^ 1 ^ fwd[3 * t + k]
        fb = flag ^ 1 ^ fwd[3 * t + km]
        for j in range(x[k]):
            a = ((<long long>k) << 34) | ((((<long long>(2 * j + 1)) << 31) // (2 * wk)) << 1) | fa
            b = ((<long long>km) << 34) | ((((<long long>(2 * (wp - 1 - j) + 1)) << 31) // (2 * wp)) << 1) | fb
            if a > b:
                tmp = a; a = b; b = tmp
            out[2 * n] = a
            out[2 * n + 1] = b
            n += 1
    return n


def overlay_crossings(int ntri, edge, fwd, wa, wb):
    """Crossings of the proportional drawings of two normal multicurves."""
    cdef int *ce = _ints(edge)
    cdef int *cf = _ints(fwd)
    cdef int *ca = _ints(wa)
    cdef int *cb = _ints(wb)
    cdef int maxa = 0, maxb = 0, e, t, na, nb, i, j
    cdef long total = 0
    cdef long long lo, hi, r, s
    for e in range(len(wa)):
        maxa = max(maxa, ca[e])
        maxb = max(maxb, cb[e])
    cdef long long *ka = <long long *>malloc((6 * maxa + 2) * sizeof(long long))
    cdef long long *kb = <long long *>malloc((6 * maxb + 2) * sizeof(long long))
    try:
        for t in range(ntri):
            na = _chord_keys(ca, ce, cf, t, 0, ka)
            if na == 0:
                continue
            nb = _chord_keys(cb, ce, cf, t, 1, kb)
            for i in range(na):
                lo = ka[2 * i]
                hi = ka[2 * i + 1]
                for j in range(nb):
                    r = kb[2 * j]
                    s = kb[2 * j + 1]
                    if (lo < r < hi) != (lo < s < hi):
                        total += 1
        return total
    finally:
        free(ce); free(cf); free(ca); free(cb); free(ka); free(kb)


# ---------------------------------------------------------------- enumeration

cdef struct Closing:
    int n
    int y[4]
    int z[4]


cdef class _Vectors:
    cdef int nedge, bound, started, done
    cdef int *w
    cdef int *hi
    cdef int *step
    cdef int *ncl
    cdef int *cly
    cdef int *clz
    cdef int e

    def __cinit__(self, int ntri, int nedge, edge, int bound, start):
        cdef int t, a, b, c, m, i
        self.nedge = nedge
        self.bound = bound
        self.w = <int *>calloc(nedge + 1, sizeof(int))
        self.hi = <int *>calloc(nedge + 1, sizeof(int))
        self.step = <int *>calloc(nedge + 1, sizeof(int))
        self.ncl = <int *>calloc(nedge + 1, sizeof(int))
        self.cly = <int *>calloc(2 * ntri + 1, sizeof(int))
        self.clz = <int *>calloc(2 * ntri + 1, sizeof(int))
        # triangles closing at each edge, packed by edge
        closes = [[] for _ in range(nedge)]
        for t in range(ntri):
            a, b, c = edge[3 * t], edge[3 * t + 1], edge[3 * t + 2]
            m = max(a, b, c)
            closes[m].append(tuple(x for x in (a, b, c) if x != m))
        i = 0
        for m in range(nedge):
            self.ncl[m] = i
            for y, z in closes[m]:
                self.cly[i] = y
                self.clz[i] = z
                i += 1
        self.ncl[nedge] = i
        self.started = 0
        self.done = 0
        if start is not None:
            for m in range(nedge):
                self._range(m)
                self.w[m] = start[m]
            self.e = nedge
            self.started = 1

    def __dealloc__(self):
        free(self.w); free(self.hi); free(self.step); free(self.ncl)
        free(self.cly); free(self.clz)

    cdef int _range(self, int e) noexcept nogil:
        # sets hi/step for edge e and returns lo (or lo > hi when empty)
        cdef int lo = 0, hi = self.bound, par = -1, i, wy, wz, d, p
        for i in range(self.ncl[e], self.ncl[e + 1]):
            wy = self.w[self.cly[i]]
            wz = self.w[self.clz[i]]
            d = wy - wz if wy > wz else wz - wy
            if d > lo:
                lo = d
            if wy + wz < hi:
                hi = wy + wz
            p = (wy + wz) & 1
            if par >= 0 and par != p:
                self.hi[e] = 0
                self.step[e] = 1
                return 1
            par = p
        if par >= 0:
            if (lo & 1) != par:
                lo += 1
            self.step[e] = 2
        else:
            self.step[e] = 1
        self.hi[e] = hi
        return lo

    cdef int advance(self) noexcept nogil:
        """Move to the next valid vector; 0 when exhausted."""
        cdef int e, lo, n = self.nedge, fresh
        if self.done:
            return 0
        if self.started == 0:
            e = 0
            self.started = 1
            fresh = 1
        else:
            e = self.e - 1
            self.w[e] += self.step[e]
            fresh = 0
        while True:
            if not fresh:
                # back up while the advanced entry overflows
                while e >= 0 and self.w[e] > self.hi[e]:
                    e -= 1
                    if e >= 0:
                        self.w[e] += self.step[e]
                if e < 0:
                    self.done = 1
                    return 0
                e += 1
            fresh = 0
            while e < n:
                lo = self._range(e)
                if lo > self.hi[e]:
                    break
                self.w[e] = lo
                e += 1
            if e == n:
                self.e = n
                return 1
            e -= 1
            self.w[e] += self.step[e]

    def __iter__(self):
        return self

    def __next__(self):
        if not self.advance():
            raise StopIteration
        return tuple(self.w[i] for i in range(self.nedge))


def valid_vectors(int ntri, int nedge, edge, int bound, start=None):
    """Valid normal weight vectors with entries <= bound, lexicographically."""
    return _Vectors(ntri, nedge, edge, bound, start)


cdef int _region_count(int ntri, const int *partner, const int *edge, const int *fwd,
                       const int *w, int *xs, int *base, int *parent) noexcept nogil:
    cdef int t, s, q, we, a, b, n
    base[0] = 0
    for t in range(ntri):
        _corners(w, edge, t, xs + 3 * t)
        base[t + 1] = base[t] + xs[3 * t] + xs[3 * t + 1] + xs[3 * t + 2] + 1
    n = base[ntri]
    for t in range(n):
        parent[t] = t
    for s in range(3 * ntri):
        if not fwd[s]:
            continue
        we = w[edge[s]]
        for q in range(we + 1):
            a = _find(parent, _segment(base, xs, edge, w, s, q))
            b = _find(parent, _segment(base, xs, edge, w, partner[s], we - q))
            if a != b:
                parent[a] = b
                n -= 1
    return n


def region_count(int ntri, partner, edge, fwd, w):
    """Number of complementary regions of a normal multicurve."""
    cdef int *cp = _ints(partner)
    cdef int *ce = _ints(edge)
    cdef int *cf = _ints(fwd)
    cdef int *cw = _ints(w)
    cdef int total = 0, e
    for e in range(len(w)):
        total += cw[e]
    cdef int *xs = <int *>malloc(3 * ntri * sizeof(int))
    cdef int *base = <int *>malloc((ntri + 1) * sizeof(int))
    cdef int *parent = <int *>malloc((2 * total + ntri + 1) * sizeof(int))
    try:
        return _region_count(ntri, cp, ce, cf, cw, xs, base, parent)
    finally:
        free(cp); free(ce); free(cf); free(cw); free(xs); free(base); free(parent)


MULTI, CONNECTED, SEPARATING = 0, 1, 2


def scan_canonical(int ntri, int nedge, partner, edge, fwd, links, int bound,
                   int mode, start, int limit):
    """Canonical multicurves on an ideal triangulation; see ``_pykernels``."""
    cdef bint connected = mode != MULTI
    cdef _Vectors vec = _Vectors(ntri, nedge, edge, bound, start)
    cdef int *cp = _ints(partner)
    cdef int *ce = _ints(edge)
    cdef int *cf = _ints(fwd)
    cdef int *first = <int *>malloc(nedge * sizeof(int))
    cdef int *off = <int *>malloc((nedge + 1) * sizeof(int))
    cdef int maxpts = bound * nedge + 1
    cdef int maxcomp = maxpts if not connected else 1
    cdef int *labels = <int *>malloc(maxpts * sizeof(int))
    cdef int *cw = <int *>malloc((maxpts + 1) * nedge * sizeof(int))
    cdef int nlinks = len(links)
    cdef int *lk = <int *>malloc((nlinks * nedge + 1) * sizeof(int))
    cdef int s, i, j, e, nc, ok, anyw, same, nout = 0
    cdef int *w = vec.w
    cdef int *xs = <int *>malloc(3 * ntri * sizeof(int))
    cdef int *base = <int *>malloc((ntri + 1) * sizeof(int))
    cdef int *parent = <int *>malloc((2 * maxpts + ntri + 1) * sizeof(int))
    for i in range(nlinks):
        for e in range(nedge):
            lk[i * nedge + e] = links[i][e]
    for s in range(3 * ntri):
        if cf[s]:
            first[ce[s]] = s
    out = []
    last = None
    try:
        while vec.advance():
            anyw = 0
            for e in range(nedge):
                if w[e]:
                    anyw = 1
                    break
            if not anyw:
                continue
            nc = _trace_count(ntri, nedge, cp, ce, cf, first, w, off, labels, cw, maxcomp)
            if nc < 0:
                continue
            ok = 1
            for i in range(nc):
                for j in range(nlinks):
                    same = 1
                    for e in range(nedge):
                        if cw[i * nedge + e] != lk[j * nedge + e]:
                            same = 0
                            break
                    if same:
                        ok = 0
                        break
                if not ok:
                    break
                for j in range(i):
                    same = 1
                    for e in range(nedge):
                        if cw[i * nedge + e] != cw[j * nedge + e]:
                            same = 0
                            break
                    if same:
                        ok = 0
                        break
                if not ok:
                    break
            if not ok:
                continue
            if mode == SEPARATING and _region_count(ntri, cp, ce, cf, w, xs, base, parent) < 2:
                continue
            item = tuple(w[e] for e in range(nedge))
            out.append(item)
            nout += 1
            if nout >= limit:
                return out, item
        return out, None
    finally:
        free(cp); free(ce); free(cf); free(first); free(off); free(labels); free(cw); free(lk)
        free(xs); free(base); free(parent)


# ---------------------------------------------------------------- pairwise intersections

cdef class _Packed:
    """Passage lists of many closed walks with a bucket index per walk.

    Passage ``(t, in, out)`` of walk ``c`` is filed under key
    ``9 t + 3 out + in``; the reversed walk is stored alongside.
    """
    cdef int n, nkey
    cdef int *off
    cdef int *pt
    cdef int *pi
    cdef int *po
    cdef int *rt
    cdef int *ri
    cdef int *ro
    cdef int *bstart
    cdef int *bpos
    cdef int *rstart
    cdef int *rpos

    def __cinit__(self, walks, int ntri):
        cdef int c, j, m, total = 0, k, o
        self.n = len(walks)
        self.nkey = 9 * ntri
        for w in walks:
            total += len(w)
        self.off = <int *>malloc((self.n + 1) * sizeof(int))
        self.pt = <int *>malloc((total + 1) * sizeof(int))
        self.pi = <int *>malloc((total + 1) * sizeof(int))
        self.po = <int *>malloc((total + 1) * sizeof(int))
        self.rt = <int *>malloc((total + 1) * sizeof(int))
        self.ri = <int *>malloc((total + 1) * sizeof(int))
        self.ro = <int *>malloc((total + 1) * sizeof(int))
        self.bstart = <int *>calloc(self.n * (self.nkey + 1) + 1, sizeof(int))
        self.rstart = <int *>calloc(self.n * (self.nkey + 1) + 1, sizeof(int))
        self.bpos = <int *>malloc((total + 1) * sizeof(int))
        self.rpos = <int *>malloc((total + 1) * sizeof(int))
        self.off[0] = 0
        for c in range(self.n):
            w = walks[c]
            m = len(w)
            o = self.off[c]
            for j in range(m):
                self.pt[o + j], self.pi[o + j], self.po[o + j] = w[j]
            for j in range(m):
                self.rt[o + j] = self.pt[o + m - 1 - j]
                self.ri[o + j] = self.po[o + m - 1 - j]
                self.ro[o + j] = self.pi[o + m - 1 - j]
            self.off[c + 1] = o + m
            _bucket(self.pt + o, self.pi + o, self.po + o, m, self.nkey,
                    self.bstart + c * (self.nkey + 1), self.bpos + o)
            _bucket(self.rt + o, self.ri + o, self.ro + o, m, self.nkey,
                    self.rstart + c * (self.nkey + 1), self.rpos + o)

    def __dealloc__(self):
        free(self.off); free(self.pt); free(self.pi); free(self.po)
        free(self.rt); free(self.ri); free(self.ro)
        free(self.bstart); free(self.rstart); free(self.bpos); free(self.rpos)


cdef void _bucket(const int *t, const int *i, const int *o, int m, int nkey,
                  int *start, int *pos) noexcept nogil:
    cdef int j, k
    for k in range(nkey + 1):
        start[k] = 0
    for j in range(m):
        start[9 * t[j] + 3 * o[j] + i[j] + 1] += 1
    for k in range(nkey):
        start[k + 1] += start[k]
    # fill using a running cursor kept in the next slot, then restore
    for j in range(m):
        k = 9 * t[j] + 3 * o[j] + i[j]
        pos[start[k]] = j
        start[k] += 1
    for k in range(nkey, 0, -1):
        start[k] = start[k - 1]
    start[0] = 0


cdef int _count_dir(int n, const int *ta, const int *ia, const int *oa,
                    int m, const int *ib, const int *ob,
                    const int *start, const int *pos, int count, int bound) noexcept nogil:
    cdef int i, x, j, key, step, ia2, oa2, left_start, left_end
    for i in range(n):
        key = 9 * ta[i] + 3 * oa[i] + (3 - oa[i] - ia[i])
        for x in range(start[key], start[key + 1]):
            j = pos[x]
            left_start = ia[i] == (oa[i] + 1) % 3
            step = 1
            while step <= n + m:
                ia2 = ia[(i + step) % n]
                oa2 = oa[(i + step) % n]
                if oa2 != ob[(j + step) % m]:
                    left_end = oa2 == (ia2 + 2) % 3
                    if left_start != left_end:
                        count += 1
                        if count > bound:
                            return count
                    break
                step += 1
    return count


cdef int _pair(_Packed A, int a, _Packed B, int b, int bound) noexcept nogil:
    cdef int oa = A.off[a], n = A.off[a + 1] - A.off[a]
    cdef int ob = B.off[b], m = B.off[b + 1] - B.off[b]
    cdef int c
    if n == 0 or m == 0:
        return 0
    c = _count_dir(n, A.pt + oa, A.pi + oa, A.po + oa, m, B.pi + ob, B.po + ob,
                   B.bstart + b * (B.nkey + 1), B.bpos + ob, 0, bound)
    if c > bound:
        return c
    return _count_dir(n, A.pt + oa, A.pi + oa, A.po + oa, m, B.ri + ob, B.ro + ob,
                      B.rstart + b * (B.nkey + 1), B.rpos + ob, c, bound)


def close_pairs(rows, cols, int bound, bint same, int lo, int hi, int ntri=-1):
    """Pairs ``(i, j, c)`` with ``lift_crossings(rows[i], cols[j]) = c <= bound``."""
    if ntri < 0:
        ntri = 1 + max([p[0] for w in list(rows) + list(cols) for p in w] or [0])
    cdef _Packed A = _Packed(rows, ntri)
    cdef _Packed B = A if same else _Packed(cols, ntri)
    cdef int i, j, c, ncol = len(cols)
    out = []
    for i in range(lo, hi):
        for j in range(i + 1 if same else 0, ncol):
            c = _pair(A, i, B, j, bound)
            if c <= bound:
                out.append((i, j, c))
    return out
