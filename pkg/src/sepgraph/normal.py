"""Multicurves in normal coordinates.

A multicurve is stored by its edge weights.  On a surface with boundary every
vertex is a puncture, the triangulation is ideal, and the weight vector of an
essential multicurve is a complete isotopy invariant.  On a closed surface the
single vertex is an ordinary point; there the stored vector is a reduced
representative obtained by sliding strands across the vertex (see
:func:`reduce_closed`), and isotopy is decided by the bigon engine.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Iterator

from . import kernels
from .surface import (
    SurfaceError,
    SurfaceSig,
    TopoType,
    Triangulation,
    build_surface,
)

MULTICURVE_SCHEMA = 1


class ValidityError(SurfaceError):
    """Edge weights that violate the triangle conditions."""


def check_weights(tri: Triangulation, w) -> tuple[int, ...]:
    w = tuple(int(x) for x in w)
    if len(w) != tri.num_edges:
        raise ValidityError(f"expected {tri.num_edges} weights, got {len(w)}")
    t = kernels.bad_triangle(kernels.frame(tri), w)
    if t >= 0:
        ws = [w[tri.edge_of[t][k]] for k in range(3)]
        raise ValidityError(f"triangle {t} has weights {ws}: needs even sum and triangle inequalities")
    return w


def vertex_link(tri: Triangulation, v: int) -> tuple[int, ...]:
    w = [0] * tri.num_edges
    for e in range(tri.num_edges):
        a, b = tri.edge_endpoints(e)
        w[e] = (a == v) + (b == v)
    return tuple(w)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


# ---------------------------------------------------------------- walks

def reduce_walk(partner, walk) -> list[int]:
    """Cyclically reduced form of a closed walk of exit sides."""
    out: list[int] = []
    for s in walk:
        if out and partner[out[-1]] == s:
            out.pop()
        else:
            out.append(s)
    i, j = 0, len(out) - 1
    while j > i and partner[out[j]] == out[i]:
        i += 1
        j -= 1
    return out[i : j + 1]


def walk_weights(fr, walk) -> tuple[int, ...]:
    w = [0] * fr.nedge
    for s in walk:
        w[fr.edge[s]] += 1
    return tuple(w)


# ---------------------------------------------------------------- analysis

@dataclass(frozen=True)
class Complement:
    """Complementary regions of a drawn multicurve."""

    chi: tuple[int, ...]
    punctures: tuple[tuple[int, ...], ...]
    triangles: tuple[tuple[int, ...], ...]
    sides: tuple[tuple[int, int], ...]  # per component: regions on its two sides
    pieces: tuple[int, ...] = ()  # region of every triangle piece
    base: tuple[int, ...] = ()  # first piece of each triangle
    corners: tuple[tuple[int, int, int], ...] = ()

    def piece(self, t: int, k: int, j: int) -> int:
        """Region of the piece ``j`` steps from corner ``k`` of triangle ``t``."""
        x = self.corners[t]
        if j >= x[k]:
            return self.pieces[self.base[t + 1] - 1]
        return self.pieces[self.base[t] + (0, x[0], x[0] + x[1])[k] + j]

    def centre(self, t: int) -> int:
        return self.pieces[self.base[t + 1] - 1]

    def boundary_count(self, r: int) -> int:
        n = len(self.punctures[r])
        for a, b in self.sides:
            n += (a == r) + (b == r)
        return n

    def topo(self, r: int) -> TopoType:
        nb = self.boundary_count(r)
        twice_genus = 2 - self.chi[r] - nb
        if twice_genus < 0 or twice_genus & 1:
            raise SurfaceError(f"region {r} has impossible invariants chi={self.chi[r]} b={nb}")
        return TopoType(twice_genus // 2, nb, len(self.punctures[r]))


@dataclass(frozen=True)
class Drawing:
    """A traced normal multicurve: components, walks and complement."""

    weights: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    walks: tuple[tuple[int, ...], ...]
    arcs: tuple
    labels: tuple
    points: tuple

    @classmethod
    def of(cls, tri: Triangulation, w) -> "Drawing":
        fr = kernels.frame(tri)
        labels, n, comps, walks, arcs, points = kernels.trace(fr, w)
        return cls(
            tuple(w),
            tuple(tuple(c) for c in comps),
            tuple(tuple(x) for x in walks),
            tuple(arcs),
            tuple(labels),
            tuple(tuple(p) for p in points),
        )

    def complement(self, tri: Triangulation) -> Complement:
        fr = kernels.frame(tri)
        nreg, sides, chi, punct, tris, plabel = kernels.regions(fr, self.weights, self.arcs)
        corners, base = [], [0]
        w = self.weights
        for t in range(fr.ntri):
            a, b, c = (w[fr.edge[3 * t + k]] for k in range(3))
            x = ((c + a - b) >> 1, (a + b - c) >> 1, (b + c - a) >> 1)
            corners.append(x)
            base.append(base[-1] + sum(x) + 1)
        return Complement(
            tuple(chi),
            tuple(tuple(p) for p in punct),
            tuple(tuple(t) for t in tris),
            tuple(tuple(s) for s in sides),
            tuple(plabel),
            tuple(base),
            tuple(corners),
        )


def _strip(tri: Triangulation, w) -> tuple[tuple[int, ...], dict]:
    """Remove trivial and peripheral components and merge parallel ones."""
    report = {"trivial": 0, "peripheral": 0, "parallel": 0}
    while any(w):
        dr = Drawing.of(tri, w)
        cp = dr.complement(tri)
        drop: dict[int, str] = {}
        by_region: dict[int, list[int]] = {}
        for c, (a, b) in enumerate(cp.sides):
            by_region.setdefault(a, []).append(c)
            by_region.setdefault(b, []).append(c)
        for r, comps in by_region.items():
            chi, np_ = cp.chi[r], len(cp.punctures[r])
            if len(comps) == 1 and np_ == 0 and chi == 1:
                drop.setdefault(comps[0], "trivial")
            elif len(comps) == 1 and np_ == 1 and chi == 0:
                drop.setdefault(comps[0], "peripheral")
            elif len(comps) == 2 and np_ == 0 and chi == 0 and comps[0] != comps[1]:
                drop.setdefault(max(comps), "parallel")
        if not drop:
            break
        for c, kind in drop.items():
            report[kind] += 1
            w = _sub(w, dr.components[c])
    return w, report


# ---------------------------------------------------------------- closed surfaces

def _slides(tri: Triangulation, w, dr: Drawing):
    """Strand slides across the interior vertex: ``(delta, start, length)``."""
    link = tri.vertex_links[0]
    d = len(link)
    fr = kernels.frame(tri)
    xs = []
    for t, k in link:
        a = w[fr.edge[3 * t + (k + 2) % 3]]
        b = w[fr.edge[3 * t + k]]
        c = w[fr.edge[3 * t + (k + 1) % 3]]
        xs.append((a + b - c) // 2)
    if all(x > 0 for x in xs):
        return []
    moves = []
    for i in range(d):
        if xs[i] > 0 and xs[i - 1] == 0:
            r = 0
            while xs[(i + r) % d] > 0:
                r += 1
            moves.append((d - 2 * (r + 1), i, r))
    return moves


def _apply_slide(tri: Triangulation, w, dr: Drawing, i: int, r: int) -> tuple[int, ...]:
    fr = kernels.frame(tri)
    link = tri.vertex_links[0]
    d = len(link)
    exits = [3 * t + k for t, k in link]  # exits[j] crosses from corner j to corner j+1
    t_i, k_i = link[i]
    s_in = 3 * t_i + (k_i + 2) % 3
    e = fr.edge[s_in]
    p = w[e] - 1
    pid = sum(w[:e]) + (p if fr.fwd[s_in] else w[e] - 1 - p)
    comp = dr.labels[pid]
    pts = dr.points[comp]
    walk = list(dr.walks[comp])
    n = len(walk)
    st = pts.index(pid)
    m = r + 1
    forward = fr.partner[walk[st - 1]] == s_in
    if forward:
        walk = walk[st - 1 :] + walk[: st - 1]
        assert walk[0] == exits[(i - 1) % d]
        new = [fr.partner[exits[(i - 2 - j) % d]] for j in range(d - m)]
    else:
        a = (st - 1 - r) % n
        walk = walk[a:] + walk[:a]
        assert walk[0] == fr.partner[exits[(i + r - 1) % d]]
        new = [exits[(i + r + j) % d] for j in range(d - m)]
    walk = new + walk[m:]
    walk = reduce_walk(fr.partner, walk)
    neww = walk_weights(fr, walk)
    return _add(_sub(w, dr.components[comp]), neww)


def _neighbours(tri: Triangulation, w):
    """Results of every single strand slide, reduced."""
    dr = Drawing.of(tri, w)
    return [_apply_slide(tri, w, dr, i, r) for _, i, r in _slides(tri, w, dr)]


def _descend(tri: Triangulation, w):
    while True:
        best = min(_neighbours(tri, w), key=lambda u: (sum(u), u), default=None)
        if best is None or sum(best) >= sum(w):
            return w
        w = best


PLATEAU_LIMIT = 5000


def closed_plateau(tri: Triangulation, w) -> tuple[tuple[int, ...], ...]:
    """Every vector reachable from a reduced ``w`` by equal-weight slides.

    These are the minimal-weight lifts of the curve to the punctured
    triangulation that the slide moves can see; sorted.
    """
    w = tuple(w)
    level = sum(w)
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for v in frontier:
            for u in _neighbours(tri, v):
                if sum(u) < level:
                    raise SurfaceError("vector is not reduced")
                if sum(u) == level and u not in seen:
                    seen.add(u)
                    nxt.append(u)
        if len(seen) > PLATEAU_LIMIT:
            raise SurfaceError("plateau exceeds the exploration limit")
        frontier = nxt
    return tuple(sorted(seen))


def reduce_closed(tri: Triangulation, w) -> tuple[int, ...]:
    """Reduced representative of a multicurve on a one-vertex closed surface.

    Greedy descent by weight-decreasing slides, then the lexicographically
    least vector on the plateau of equal-weight slides.
    """
    if tri.num_vertices != 1 or tri.is_ideal:
        raise SurfaceError("reduction across the vertex needs a one-vertex closed triangulation")
    w = _descend(tri, tuple(w))
    while True:
        level = sum(w)
        seen = {w}
        frontier = [w]
        lower = None
        while frontier and lower is None and len(seen) <= PLATEAU_LIMIT:
            nxt = []
            for v in frontier:
                for u in _neighbours(tri, v):
                    if sum(u) < level:
                        lower = u
                        break
                    if sum(u) == level and u not in seen:
                        seen.add(u)
                        nxt.append(u)
                if lower is not None:
                    break
            frontier = nxt
        if lower is None:
            return min(seen)
        w = _descend(tri, lower)


# ---------------------------------------------------------------- multicurves

@dataclass(frozen=True, eq=False)
class Multicurve:
    """Canonical essential multicurve.

    ``coords`` is the canonical key; ``components`` are the weight vectors of
    the components inside that drawing, sorted.
    """

    surface: Triangulation
    coords: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    report: tuple = field(default=(), compare=False)

    def __eq__(self, other):
        return (
            isinstance(other, Multicurve)
            and self.surface.sig == other.surface.sig
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.surface.sig, self.coords))

    def __lt__(self, other):
        return self.coords < other.coords

    def __len__(self):
        return len(self.components)

    def __bool__(self):
        return bool(self.components)

    def __repr__(self):
        return f"Multicurve({self.text})"

    @property
    def sig(self) -> SurfaceSig:
        return self.surface.sig

    @property
    def kinds(self) -> tuple[str, ...]:
        return ("essential",) * len(self.components)

    @property
    def is_curve(self) -> bool:
        return len(self.components) == 1

    @property
    def text(self) -> str:
        return f"{self.sig.genus},{self.sig.boundary}:" + ",".join(map(str, self.coords))

    def to_json(self) -> dict:
        return {"surfaceSig": [self.sig.genus, self.sig.boundary], "weights": list(self.coords)}

    @cached_property
    def drawing(self) -> Drawing:
        return Drawing.of(self.surface, self.coords)

    @cached_property
    def complement(self) -> Complement:
        return self.drawing.complement(self.surface)

    @cached_property
    def curves(self) -> tuple["Multicurve", ...]:
        """Each component as its own canonical curve, sorted by key."""
        if self.surface.is_ideal:
            return tuple(Multicurve(self.surface, c, (c,)) for c in self.components)
        return tuple(sorted({normalize(self.surface, c) for c in self.drawing.components}))

    @cached_property
    def keys(self) -> frozenset:
        return frozenset(c.coords for c in self.curves)

    def contains(self, other: "Multicurve") -> bool:
        return other.keys <= self.keys

    def without(self, curve: "Multicurve") -> "Multicurve":
        if not self.surface.is_ideal:
            raise SurfaceError("component removal is implemented on surfaces with boundary")
        if curve.coords not in self.components:
            raise SurfaceError(f"{curve.text} is not a component of {self.text}")
        return normalize(self.surface, _sub(self.coords, curve.coords))

    def union(self, other: "Multicurve") -> "Multicurve":
        """Union of disjoint multicurves (shared components kept once)."""
        if not self.surface.is_ideal:
            raise SurfaceError("union is implemented on surfaces with boundary")
        if intersection_number(self, other):
            raise SurfaceError(f"{self.text} and {other.text} intersect")
        return normalize(self.surface, _add(self.coords, other.coords))


def empty(tri: Triangulation) -> Multicurve:
    return Multicurve(tri, (0,) * tri.num_edges, ())


def normalize(tri: Triangulation, w) -> Multicurve:
    """Canonical multicurve of the essential part of a weight vector."""
    w = check_weights(tri, w)
    w, report = _strip(tri, w)
    if not tri.is_ideal and any(w):
        w = reduce_closed(tri, w)
    comps = tuple(sorted(Drawing.of(tri, w).components)) if any(w) else ()
    rep = tuple((k, v) for k, v in report.items() if v)
    return Multicurve(tri, w, comps, rep)


def parse_multicurve(text: str, tri: Triangulation | None = None) -> Multicurve:
    """Parse the canonical text form ``g,b:w1,...,wE``."""
    try:
        head, body = text.strip().split(":")
        sig = SurfaceSig.parse(head)
        w = [int(x) for x in body.split(",")] if body else []
    except ValueError:
        raise ValidityError(f"not a multicurve text form: {text!r}") from None
    if tri is None:
        tri = build_surface(sig)
    elif tri.sig != sig:
        raise ValidityError(f"{text!r} lives on {sig}, not {tri.sig}")
    return normalize(tri, w)


def from_json(doc: dict | str, tri: Triangulation | None = None) -> Multicurve:
    if isinstance(doc, str):
        doc = json.loads(doc)
    g, b = doc["surfaceSig"]
    return parse_multicurve(f"{g},{b}:" + ",".join(map(str, doc["weights"])), tri)


def cut_along(tri: Triangulation, m: Multicurve) -> list[tuple[int, TopoType]]:
    """Complement components of ``m`` as ``(region index, type)``.

    Regions are listed in canonical order: lexicographic on the sorted list of
    triangles each region meets.  Region indices refer to ``m.complement``.
    """
    if m.surface.sig != tri.sig:
        raise SurfaceError("multicurve lives on another surface")
    if not m:
        return [(0, TopoType(tri.sig.genus, tri.sig.boundary, tri.sig.boundary))]
    cp = m.complement
    order = sorted(range(len(cp.chi)), key=lambda r: cp.triangles[r])
    return [(r, cp.topo(r)) for r in order]


def complement_types(m: Multicurve) -> list[TopoType]:
    return [t for _, t in cut_along(m.surface, m)]


def is_separating(c: Multicurve) -> bool:
    if not c.is_curve:
        raise SurfaceError("separation is tested on connected curves")
    return len(cut_along(c.surface, c)) >= 2


# ---------------------------------------------------------------- intersection

def _passages(m: Multicurve):
    fr = kernels.frame(m.surface)
    return [kernels.passages(fr, list(wk)) for wk in m.drawing.walks]


def intersection_number(a: Multicurve, b: Multicurve) -> int:
    """Geometric intersection number, summed over component pairs."""
    if a.sig != b.sig:
        raise SurfaceError("curves live on different surfaces")
    if not a or not b:
        return 0
    if a.surface.is_ideal:
        total = 0
        pb = _passages(b)
        comps_b = b.drawing.components
        for ca, pa in zip(a.drawing.components, _passages(a)):
            for cb, q in zip(comps_b, pb):
                if ca != cb:
                    total += kernels.lift_crossings(pa, q)
        return total
    from .arrangement import minimal_position

    return minimal_position(a.surface, a.coords, b.coords).crossings


def mod2_intersection(a: Multicurve, b: Multicurve) -> int:
    """Parity of the crossings of any transverse drawing of ``a`` and ``b``."""
    if a.sig != b.sig:
        raise SurfaceError("curves live on different surfaces")
    return kernels.overlay_crossings(kernels.frame(a.surface), a.coords, b.coords) & 1


# ---------------------------------------------------------------- enumeration

@dataclass(frozen=True)
class Truncation:
    """Marker emitted when an enumeration stops at its item cap."""

    emitted: int
    resume_after: tuple[int, ...]

    def to_json(self) -> dict:
        return {"truncated": True, "emitted": self.emitted, "resumeAfter": list(self.resume_after)}


CHUNK = 4096


def _ideal_stream(tri: Triangulation, bound: int, mode: int):
    fr = kernels.frame(tri)
    links = [vertex_link(tri, v) for v in tri.punctures]
    start = None
    while True:
        items, start = kernels.impl.scan_canonical(
            fr.ntri, fr.nedge, fr.partner, fr.edge, fr.fwd, links, bound, mode, start, CHUNK
        )
        yield from items
        if start is None:
            return


def _closed_stream(tri: Triangulation, bound: int, mode: int):
    # every reduced representative is itself an ideal normal vector on the
    # paired punctured triangulation; a lift separates iff the curve does
    from .surface import paired_open

    lift = paired_open(tri)
    for w in _ideal_stream(lift, bound, mode):
        m = normalize(tri, w)
        if m.coords == w and (mode == kernels.MULTI or m.is_curve):
            yield w


def enumerate_multicurves(
    tri: Triangulation,
    max_weight: int,
    filter: Callable[[Multicurve], bool] | None = None,
    *,
    connected: bool = False,
    separating: bool = False,
    cap: int | None = None,
) -> Iterator[Multicurve | Truncation]:
    """Every canonical multicurve with all weights <= ``max_weight``.

    Output is lexicographic in the weight vector and deterministic.  With
    ``separating`` only separating curves are produced (filtered inside the
    kernel).  If ``cap`` items have been emitted a :class:`Truncation`
    marker ends the stream.
    """
    if max_weight < 0:
        raise ValueError("max_weight must be non-negative")
    stream = _ideal_stream if tri.is_ideal else _closed_stream
    mode = kernels.SEPARATING if separating else kernels.CONNECTED if connected else kernels.MULTI
    n = 0
    for w in stream(tri, max_weight, mode):
        if tri.is_ideal:
            m = Multicurve(tri, w, tuple(sorted(Drawing.of(tri, w).components)))
        else:
            m = normalize(tri, w)
        if filter is not None and not filter(m):
            continue
        if cap is not None and n >= cap:
            yield Truncation(n, w)
            return
        n += 1
        yield m


def collect(stream: Iterable) -> tuple[list[Multicurve], Truncation | None]:
    items, marker = [], None
    for x in stream:
        if isinstance(x, Truncation):
            marker = x
        else:
            items.append(x)
    return items, marker


def curves(tri: Triangulation, max_weight: int, filter=None, cap=None):
    return collect(enumerate_multicurves(tri, max_weight, filter, connected=True, cap=cap))


def separating_curves(tri: Triangulation, max_weight: int, cap=None):
    return collect(enumerate_multicurves(tri, max_weight, separating=True, cap=cap))


def _random_valid(fr, bound: int, rng) -> tuple[int, ...] | None:
    from ._pykernels import _closing, _range

    close = _closing(fr.ntri, fr.nedge, fr.edge)
    w = [0] * fr.nedge
    for e in range(fr.nedge):
        lo, hi, step = _range(close, w, e, bound)
        if lo > hi:
            return None
        w[e] = rng.choice(range(lo, hi + 1, step))
    return tuple(w)


def sample_multicurves(tri: Triangulation, max_weight: int, count: int, *, seed: int = 0, connected: bool = False):
    """A deterministic spread sample of the enumeration at ``max_weight``.

    Each draw resumes the lexicographic stream after a random valid weight
    vector and keeps the next canonical multicurve, so samples are spread
    over the whole range instead of its beginning.
    """
    import random

    if not tri.is_ideal:
        raise SurfaceError("sampling runs on surfaces with boundary")
    rng = random.Random(seed)
    fr = kernels.frame(tri)
    links = [vertex_link(tri, v) for v in tri.punctures]
    mode = kernels.CONNECTED if connected else kernels.MULTI
    out: dict[tuple, Multicurve] = {}
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        start = _random_valid(fr, max_weight, rng)
        if start is None:
            continue
        items, _ = kernels.impl.scan_canonical(
            fr.ntri, fr.nedge, fr.partner, fr.edge, fr.fwd, links, max_weight, mode, start, 1
        )
        for w in items:
            out.setdefault(w, Multicurve(tri, w, tuple(sorted(Drawing.of(tri, w).components))))
    return [out[k] for k in sorted(out)]
