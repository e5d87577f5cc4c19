"""Subsurface projections and curve graph distances inside a witness.

``project`` puts the multicurve and the definer of ``Y`` in minimal
position and reads the arcs of ``mu ∩ Y`` off the crossing sequences.  An
arc with ends on two different boundary circles gives the band sum of the
circles along it; an arc returning to one circle gives the two curves made
of the arc and either half of the circle.  Each candidate is a closed walk
in the dual graph, kept when it is simple, essential and not parallel to
``∂Y``.

Distances are breadth-first searches over a finite vertex set: curves of
``Y`` from a weight-bounded enumeration, the endpoints, and bridge curves
obtained by projecting one endpoint into the complement of the other.  A
found path bounds the distance from above; ``Unknown`` is returned when the
search gives up.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from . import pairs
from .normal import Multicurve, curves, cut_along, intersection_number
from .position import Meeting, region_of, simple_curve
from .surface import SurfaceError
from .witnesses import Subsurface, WholeSurface


class UnsupportedTarget(SurfaceError):
    """Projection to an annulus or a pair of pants."""


@dataclass(frozen=True)
class Unknown:
    radius: int

    def __str__(self):
        return f"≥{self.radius}"


@dataclass(frozen=True)
class ProjectionSet:
    target: Subsurface | WholeSurface
    curves: frozenset = field(default_factory=frozenset)

    def __bool__(self):
        return bool(self.curves)

    def sorted(self) -> list[Multicurve]:
        return sorted(self.curves)

    def to_json(self) -> dict:
        return {"target": self.target.to_json(), "curves": [c.text for c in self.sorted()]}


def _check_target(y):
    if isinstance(y, WholeSurface):
        return
    if y.topo.is_annulus:
        raise UnsupportedTarget("annular projections are not implemented")
    if y.topo.is_pants:
        raise UnsupportedTarget("a pair of pants carries no curves")
    if not y.definer.surface.is_ideal:
        raise SurfaceError("projections are computed on surfaces with boundary")


def inside(y: Subsurface, c: Multicurve) -> bool:
    """Whether the curve ``c`` is a non-peripheral curve of ``y``."""
    m = y.definer
    if c.coords in m.components:
        return False
    if any(intersection_number(c, b) for b in y.boundary):
        return False
    return region_of(m, c) == y.region


def project(mu: Multicurve, y: Subsurface | WholeSurface) -> ProjectionSet:
    _check_target(y)
    if isinstance(y, WholeSurface):
        return ProjectionSet(y, frozenset(mu.curves))
    m = y.definer
    tri = m.surface
    if mu.sig != m.sig:
        raise SurfaceError("multicurve and subsurface live on different surfaces")
    if not mu:
        return ProjectionSet(y)
    r = y.region
    bset = set(y.boundary_weights)
    meet = Meeting(mu, m)
    found: set[Multicurve] = set()
    for ci, seq in enumerate(meet.seq[0]):
        if not seq:
            w = mu.drawing.components[ci]
            if w in m.components:
                continue
            c = Multicurve(tri, w, (w,))
            if region_of(m, c) == r:
                found.add(c)
            continue
        n = len(seq)
        for idx, x in enumerate(seq):
            if meet.after(0, x) != r:
                continue
            z = seq[(idx + 1) % n]
            for c in _surgeries(meet, x, z):
                if c.coords not in bset:
                    found.add(c)
    return ProjectionSet(y, frozenset(found))


def _surgeries(meet: Meeting, x: int, z: int):
    tri = meet.tri
    partner = meet.fr.partner
    arc = meet.path(0, x, z) if x != z else meet.loop(0, x)
    back = [partner[s] for s in reversed(arc)]
    cands = []
    if meet.other_comp(0, x) == meet.other_comp(0, z):
        if x == z:
            cands += [arc, arc + meet.loop(1, x)]
        else:
            cands += [arc + meet.path(1, z, x, True), arc + meet.path(1, z, x, False)]
    else:
        for f1 in (True, False):
            for f2 in (True, False):
                cands.append(arc + meet.loop(1, z, f2) + back + meet.loop(1, x, f1))
    out = []
    for walk in cands:
        c = simple_curve(tri, walk)
        if c is not None:
            out.append(c)
    return out


# ---------------------------------------------------------------- distances

def edge_bound(y) -> int:
    """Intersection number of adjacent vertices in ``C(y)``."""
    t = y.topo
    if t.genus == 0 and t.total_boundary == 4:
        return 2
    if t.genus == 1 and t.total_boundary <= 1:
        return 1
    return 0


@lru_cache(maxsize=8)
def _enumerated(sig, bound: int):
    from .surface import build_surface

    cs, _ = curves(build_surface(sig), bound)
    return tuple(cs)


def ball(y: Subsurface, bound: int) -> list[Multicurve]:
    """Curves of ``y`` with every weight at most ``bound``."""
    cs = list(_enumerated(y.sig, bound))
    m = y.definer
    # a curve of y misses every component of the definer, not only ∂y
    others = list(m.curves)
    if others:
        hits = pairs.close_pairs(cs, 0, others=others)
        count: dict[int, int] = {}
        for i, _, _ in hits:
            count[i] = count.get(i, 0) + 1
        cs = [c for i, c in enumerate(cs) if count.get(i, 0) == len(others)]
    return [c for c in cs if c.coords not in m.components and region_of(m, c) == y.region]


def _complement_parts(y: Subsurface, a: Multicurve) -> list[Subsurface]:
    # components of y minus a with room for a curve
    m = y.definer
    u = m.union(a)
    cu, cm = u.complement, m.complement
    tri = m.surface
    out = []
    for i, (r, t) in enumerate(cut_along(tri, u)):
        if t.complexity < 1:
            continue
        for tt in range(tri.num_triangles):
            if cu.centre(tt) == r:
                if cm.centre(tt) == y.region:
                    out.append(Subsurface(u, i, t))
                break
    return out


def bridges(y: Subsurface, a: Multicurve, b: Multicurve) -> set[Multicurve]:
    """Curves of ``y`` disjoint from ``a`` built from arcs of ``b``, and vice versa."""
    out: set[Multicurve] = set()
    for p, q in ((a, b), (b, a)):
        for z in _complement_parts(y, p):
            out |= set(project(q, z).curves)
            for c in z.boundary:
                if c.coords not in y.definer.components:
                    out.add(c)
    return out


def curve_graph_distance(y, a: Multicurve, b: Multicurve, radius: int, *, bound: int = 2, extra=()) -> int | Unknown:
    """Breadth-first distance from ``a`` to ``b`` in a finite part of ``C(y)``."""
    if a == b:
        return 0
    if radius <= 0:
        return Unknown(radius)
    if isinstance(y, WholeSurface):
        raise UnsupportedTarget("distances are computed inside proper subsurfaces")
    eb = edge_bound(y)
    if intersection_number(a, b) == eb:
        return 1
    if radius == 1:
        return Unknown(1)
    verts = {a, b} | set(extra) | bridges(y, a, b)
    if bound > 0:
        verts |= set(ball(y, bound))
    verts = sorted(verts)
    index = {c: i for i, c in enumerate(verts)}
    adj: list[list[int]] = [[] for _ in verts]
    for i, j, c in pairs.close_pairs(verts, eb):
        if c == eb:
            adj[i].append(j)
            adj[j].append(i)
    src, dst = index[a], index[b]
    dist = {src: 0}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if dist[v] >= radius:
            continue
        for u in adj[v]:
            if u not in dist:
                dist[u] = dist[v] + 1
                if u == dst:
                    return dist[u]
                queue.append(u)
    return Unknown(radius)


def diameter(y, cs, radius: int = 4, bound: int = 2) -> int | Unknown:
    """Largest pairwise distance among ``cs``; ``Unknown`` when some pair is unresolved."""
    cs = sorted(set(cs))
    best: int | Unknown = 0
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            d = curve_graph_distance(y, cs[i], cs[j], radius, bound=bound)
            if isinstance(d, Unknown):
                return d
            best = max(best, d)
    return best


def dsum(x: Multicurve, y: Multicurve, sigma: int, pool, radius: int = 4, bound: int = 2) -> dict:
    """Thresholded sum of projection distances over a pool of witnesses."""
    terms = []
    total = 0
    lower = False
    for w in pool:
        px, py = project(x, w), project(y, w)
        if not px or not py:
            continue
        d = diameter(w, set(px.curves) | set(py.curves), radius, bound)
        if isinstance(d, Unknown):
            terms.append({"witness": w.to_json(), "dY": str(d)})
            lower = True
            total += d.radius if d.radius >= sigma else 0
        else:
            terms.append({"witness": w.to_json(), "dY": d})
            total += d if d >= sigma else 0
    return {"sigma": sigma, "terms": terms, "total": total, "totalIsLowerBound": lower}
