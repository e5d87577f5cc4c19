"""Pure-Python hot kernels.

These mirror ``_ckernels.pyx`` function for function and are used when the
compiled extension is unavailable (or ``SEPGRAPH_PURE=1``).  All inputs are
flat integer sequences built by :func:`sepgraph.kernels.frame`:

* ``partner[s]``  side glued to side ``s = 3*t + k``
* ``edge[s]``     edge index of side ``s``
* ``fwd[s]``      1 if side ``s`` runs along its edge's orientation
* ``vert[s]``     vertex class at corner ``k`` of triangle ``t``
* ``marked[v]``   1 for boundary punctures
"""

BACKEND = "python"


def _corners(w, edge, t):
    a = w[edge[3 * t]]
    b = w[edge[3 * t + 1]]
    c = w[edge[3 * t + 2]]
    return ((c + a - b) >> 1, (a + b - c) >> 1, (b + c - a) >> 1)


def bad_triangle(ntri, edge, w):
    for t in range(ntri):
        a = w[edge[3 * t]]
        b = w[edge[3 * t + 1]]
        c = w[edge[3 * t + 2]]
        if a < 0 or b < 0 or c < 0 or (a + b + c) & 1 or a > b + c or b > a + c or c > a + b:
            return t
    return -1


def trace(ntri, nedge, partner, edge, fwd, w):
    """Split a normal multicurve into connected components.

    Returns ``(labels, ncomp, weights, walks, arcs, points)``: the component
    of each edge point, per-component weight vectors, the cyclic walk of exit
    sides of each component, one normal arc ``(t, corner, j)`` per component
    and the edge points where each step of the walk enters its triangle.
    """
    off = [0] * (nedge + 1)
    for e in range(nedge):
        off[e + 1] = off[e] + w[e]
    first = [-1] * nedge
    for s in range(3 * ntri):
        if fwd[s]:
            first[edge[s]] = s
    labels = [-1] * off[nedge]
    weights, walks, arcs, points = [], [], [], []
    ncomp = 0
    for e in range(nedge):
        for pos in range(w[e]):
            if labels[off[e] + pos] >= 0:
                continue
            c = ncomp
            ncomp += 1
            cw = [0] * nedge
            walk = []
            pts = []
            arc = None
            s, p = first[e], pos
            while True:
                es = edge[s]
                pid = off[es] + (p if fwd[s] else w[es] - 1 - p)
                if labels[pid] == c:
                    break
                labels[pid] = c
                pts.append(pid)
                cw[es] += 1
                t, k = divmod(s, 3)
                xk = _corners(w, edge, t)[k]
                if p < xk:
                    out = (k + 2) % 3
                    q = w[edge[3 * t + out]] - 1 - p
                    if arc is None:
                        arc = (t, k, p)
                else:
                    out = (k + 1) % 3
                    q = w[es] - 1 - p
                    if arc is None:
                        arc = (t, out, q)
                so = 3 * t + out
                walk.append(so)
                s = partner[so]
                p = w[edge[so]] - 1 - q
            weights.append(cw)
            walks.append(walk)
            arcs.append(arc)
            points.append(pts)
    return labels, ncomp, weights, walks, arcs, points


def regions(ntri, nedge, partner, edge, fwd, vert, nvert, marked, w, arcs):
    """Complementary regions of a normal multicurve.

    Returns ``(nreg, sides, chi, punct, tris, plabel)`` where ``sides[c]`` is
    the pair of regions on either side of component ``c``, ``chi`` the Euler
    characteristics, ``punct[r]`` the marked vertices inside region ``r``,
    ``tris[r]`` the sorted triangles it meets and ``plabel`` the region of
    every triangle piece.  Pieces of triangle ``t`` are numbered corner by
    corner, ``j`` counting from the corner, with the middle piece last.
    """
    base = [0] * (ntri + 1)
    xs = []
    for t in range(ntri):
        x = _corners(w, edge, t)
        xs.append(x)
        base[t + 1] = base[t] + x[0] + x[1] + x[2] + 1
    npiece = base[ntri]
    parent = list(range(npiece))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def piece(t, k, j):
        x = xs[t]
        if j >= x[k]:
            return base[t] + x[0] + x[1] + x[2]
        return base[t] + (0, x[0], x[0] + x[1])[k] + j

    def segment(s, q):
        t, k = divmod(s, 3)
        xk = xs[t][k]
        if q <= xk:
            return piece(t, k, q)
        return piece(t, (k + 1) % 3, w[edge[s]] - q)

    glued = []
    for s in range(3 * ntri):
        if not fwd[s]:
            continue
        o = partner[s]
        we = w[edge[s]]
        for q in range(we + 1):
            a, b = find(segment(s, q)), find(segment(o, we - q))
            if a != b:
                parent[a] = b
            glued.append(segment(s, q))
    label = {}
    for i in range(npiece):
        r = find(i)
        if r not in label:
            label[r] = len(label)
    nreg = len(label)
    chi = [0] * nreg
    punct = [[] for _ in range(nreg)]
    tris = [set() for _ in range(nreg)]
    for t in range(ntri):
        for i in range(base[t], base[t + 1]):
            r = label[find(i)]
            chi[r] += 1
            tris[r].add(t)
    for i in glued:
        chi[label[find(i)]] -= 1
    seen = [False] * nvert
    for s in range(3 * ntri):
        v = vert[s]
        if seen[v]:
            continue
        seen[v] = True
        t, k = divmod(s, 3)
        r = label[find(piece(t, k, 0))]
        if marked[v]:
            punct[r].append(v)
        else:
            chi[r] += 1
    sides = []
    for t, k, j in arcs:
        sides.append((label[find(piece(t, k, j))], label[find(piece(t, k, j + 1))]))
    plabel = [label[find(i)] for i in range(npiece)]
    return nreg, sides, chi, punct, [sorted(x) for x in tris], plabel


def passages(partner, walk):
    n = len(walk)
    out = []
    for i in range(n):
        s = walk[i]
        out.append((s // 3, partner[walk[i - 1]] % 3, s % 3))
    return out


def reverse_passages(ps):
    return [(t, o, i) for (t, i, o) in reversed(ps)]


def lift_crossings(pa, pb):
    """Linked lift pairs of two closed walks in the dual tree.

    ``pa`` and ``pb`` are passage lists ``(t, in, out)``.  A pair of lifts is
    counted once, at the first triangle of the segment the two lifts share.
    """
    n, m = len(pa), len(pb)
    if n == 0 or m == 0:
        return 0
    count = 0
    for ori in (pb, reverse_passages(pb)):
        index = {}
        for j, (t, i_, o) in enumerate(ori):
            index.setdefault((t, o), []).append(j)
        for i in range(n):
            ta, ia, oa = pa[i]
            for j in index.get((ta, oa), ()):
                ib = ori[j][1]
                if ia == ib:
                    continue
                left_start = ia == (oa + 1) % 3
                step = 1
                while step <= n + m:
                    _, ia2, oa2 = pa[(i + step) % n]
                    ob2 = ori[(j + step) % m][2]
                    if oa2 != ob2:
                        left_end = oa2 == (ia2 + 2) % 3
                        if left_start != left_end:
                            count += 1
                        break
                    step += 1
    return count


def _chords(w, edge, fwd, t, flag):
    """Chords of the normal arcs in triangle ``t`` as pairs of boundary keys.

    Points on side ``k`` sit at parameter ``(2i + 1) / 2w``.  Coinciding
    points of two curves are ordered by ``flag`` along the edge orientation,
    so both triangles at an edge agree.  Keys increase counter-clockwise.
    """
    x = _corners(w, edge, t)
    out = []
    for k in range(3):
        km = (k + 2) % 3
        wk = w[edge[3 * t + k]]
        wp = w[edge[3 * t + km]]
        for j in range(x[k]):
            a = (k, (2 * j + 1) / (2 * wk), flag ^ 1 ^ fwd[3 * t + k])
            b = (km, (2 * (wp - 1 - j) + 1) / (2 * wp), flag ^ 1 ^ fwd[3 * t + km])
            out.append((a, b) if a < b else (b, a))
    return out


def overlay_crossings(ntri, edge, fwd, wa, wb):
    """Crossings of the proportional drawings of two normal multicurves."""
    total = 0
    for t in range(ntri):
        ca = _chords(wa, edge, fwd, t, 0)
        if not ca:
            continue
        cb = _chords(wb, edge, fwd, t, 1)
        for lo, hi in ca:
            for r, s in cb:
                if (lo < r < hi) != (lo < s < hi):
                    total += 1
    return total


def _closing(ntri, nedge, edge):
    # triangles are checked once their highest-numbered edge is assigned
    close = [[] for _ in range(nedge)]
    for t in range(ntri):
        a, b, c = edge[3 * t], edge[3 * t + 1], edge[3 * t + 2]
        m = max(a, b, c)
        close[m].append(tuple(x for x in (a, b, c) if x != m))
    return close


def _range(close, w, e, bound):
    lo, hi, par = 0, bound, -1
    for y, z in close[e]:
        wy, wz = w[y], w[z]
        d = wy - wz if wy > wz else wz - wy
        if d > lo:
            lo = d
        if wy + wz < hi:
            hi = wy + wz
        p = (wy + wz) & 1
        if par >= 0 and par != p:
            return 1, 0, 1
        par = p
    if par >= 0:
        if (lo & 1) != par:
            lo += 1
        return lo, hi, 2
    return lo, hi, 1


def valid_vectors(ntri, nedge, edge, bound, start=None):
    """Valid normal weight vectors with entries <= bound in lexicographic order.

    With ``start`` the stream resumes strictly after that vector.
    """
    close = _closing(ntri, nedge, edge)
    w = [0] * nedge
    hi = [0] * nedge
    step = [1] * nedge
    if start is None:
        e = 0
    else:
        for e in range(nedge):
            _, hi[e], step[e] = _range(close, w, e, bound)
            w[e] = start[e]
        e = nedge - 1
        w[e] += step[e]
    descend = start is None
    while True:
        if not descend:
            # w[e] was just advanced; back up while it overflows
            while e >= 0 and w[e] > hi[e]:
                e -= 1
                if e >= 0:
                    w[e] += step[e]
            if e < 0:
                return
            e += 1
        descend = False
        while e < nedge:
            lo, hi[e], step[e] = _range(close, w, e, bound)
            if lo > hi[e]:
                break
            w[e] = lo
            e += 1
        if e == nedge:
            yield tuple(w)
        e -= 1
        w[e] += step[e]


def region_count(ntri, partner, edge, fwd, w):
    """Number of complementary regions of a normal multicurve."""
    base = [0] * (ntri + 1)
    xs = []
    for t in range(ntri):
        x = _corners(w, edge, t)
        xs.append(x)
        base[t + 1] = base[t] + x[0] + x[1] + x[2] + 1
    parent = list(range(base[ntri]))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def segment(s, q):
        t, k = divmod(s, 3)
        x = xs[t]
        if q > x[k]:
            k, q = (k + 1) % 3, w[edge[s]] - q
        if q >= x[k]:
            return base[t] + x[0] + x[1] + x[2]
        return base[t] + (0, x[0], x[0] + x[1])[k] + q

    n = base[ntri]
    for s in range(3 * ntri):
        if not fwd[s]:
            continue
        we = w[edge[s]]
        for q in range(we + 1):
            a, b = find(segment(s, q)), find(segment(partner[s], we - q))
            if a != b:
                parent[a] = b
                n -= 1
    return n


MULTI, CONNECTED, SEPARATING = 0, 1, 2


def scan_canonical(ntri, nedge, partner, edge, fwd, links, bound, mode, start, limit):
    """Canonical multicurves on an ideal triangulation, lexicographically.

    A vector is canonical when no component is a vertex link and no two
    components coincide.  ``mode`` keeps all of them, connected ones only or
    separating curves only.  Returns ``(items, resume)`` where ``resume`` is
    ``None`` once the range is exhausted.
    """
    connected = mode != MULTI
    links = [tuple(x) for x in links]
    out = []
    last = None
    for w in valid_vectors(ntri, nedge, edge, bound, start):
        last = w
        if not any(w):
            continue
        tr = trace(ntri, nedge, partner, edge, fwd, w)
        ncomp, comps = tr[1], tr[2]
        if connected and ncomp != 1:
            continue
        keys = [tuple(c) for c in comps]
        if len(set(keys)) != ncomp or any(k in links for k in keys):
            continue
        if mode == SEPARATING and region_count(ntri, partner, edge, fwd, w) < 2:
            continue
        out.append(w)
        if len(out) >= limit:
            return out, w
    return out, None


def _close(pa, pb, bound):
    c = lift_crossings(pa, pb)
    return c if c <= bound else -1


def close_pairs(rows, cols, bound, same, lo, hi, ntri=-1):
    """Pairs ``(i, j, c)`` with ``c = lift_crossings(rows[i], cols[j]) <= bound``.

    Rows ``lo <= i < hi`` are scanned; with ``same`` only ``j > i``.
    """
    out = []
    for i in range(lo, hi):
        for j in range(i + 1 if same else 0, len(cols)):
            c = _close(rows[i], cols[j], bound)
            if c >= 0:
                out.append((i, j, c))
    return out
