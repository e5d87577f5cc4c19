"""Graphs of multicurves on weight-bounded balls.

Every graph is built on an enumerated vertex set, so connectivity results
hold relative to the ball.  Vertices are kept sorted by canonical weight
vector and edges as sorted index pairs with a label, which makes exports
byte-stable.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from . import pairs
from .mcg import cap
from .normal import (
    Multicurve,
    Truncation,
    _sub,
    collect,
    enumerate_multicurves,
    intersection_number,
    normalize,
    separating_curves,
)
from .surface import SurfaceError, TopoType
from .witnesses import witness_regions

SCHEMA = 1


@dataclass
class ComplexGraph:
    kind: str
    params: dict
    vertices: list[Multicurve]
    edges: list[tuple[int, int, str]] = field(default_factory=list)
    truncation: Truncation | None = None

    def __post_init__(self):
        self._index = {v: i for i, v in enumerate(self.vertices)}

    def index(self, v: Multicurve) -> int | None:
        return self._index.get(v)

    def __contains__(self, v) -> bool:
        return v in self._index

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.vertices]
        for i, j, _ in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def edge_set(self) -> set[tuple[int, int]]:
        return {(i, j) for i, j, _ in self.edges}

    def components(self) -> list[list[int]]:
        parent = list(range(len(self.vertices)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j, _ in self.edges:
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for v in range(len(self.vertices)):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def path(self, a: int, b: int, limit: int | None = None) -> list[int] | None:
        """Shortest path of vertex indices, or ``None``."""
        if a == b:
            return [a]
        adj = self.adjacency()
        prev = {a: a}
        frontier = [a]
        depth = 0
        while frontier and (limit is None or depth < limit):
            depth += 1
            nxt = []
            for v in frontier:
                for u in adj[v]:
                    if u not in prev:
                        prev[u] = v
                        if u == b:
                            out = [b]
                            while out[-1] != a:
                                out.append(prev[out[-1]])
                            return out[::-1]
                        nxt.append(u)
            frontier = nxt
        return None

    def summary(self) -> dict:
        out = {
            "kind": self.kind,
            "params": self.params,
            "vertices": len(self.vertices),
            "edges": len(self.edges),
            "components": len(self.components()),
        }
        if self.truncation is not None:
            out["truncation"] = self.truncation.to_json()
        return out

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "kind": self.kind,
            "params": self.params,
            "vertices": [v.text for v in self.vertices],
            "edges": [[i, j, lab] for i, j, lab in self.edges],
        }
        if self.truncation is not None:
            out["truncation"] = self.truncation.to_json()
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1)

    def to_dot(self) -> str:
        lines = [f'graph "{self.kind}" {{']
        for i, v in enumerate(self.vertices):
            lines.append(f'  n{i} [label="{v.text}"];')
        for i, j, lab in self.edges:
            lines.append(f'  n{i} -- n{j} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _params(tri, max_weight, **extra) -> dict:
    out = {"surfaceSig": [tri.sig.genus, tri.sig.boundary], "maxWeight": max_weight}
    out.update(extra)
    return out


# ---------------------------------------------------------------- Sep_K

def build_sep_graph(tri, k: int, max_weight: int, *, jobs: int = 1, cap_items: int | None = None) -> ComplexGraph:
    """Separating curves at the bound, joined when they meet at most ``k`` times."""
    if not tri.sig.has_separating_curves:
        raise SurfaceError(f"{tri.sig} has no separating curves")
    seps, marker = separating_curves(tri, max_weight, cap=cap_items)
    seps.sort()
    label = "disjoint" if k == 0 else f"≤{k}-intersection"
    edges = [(i, j, "disjoint" if c == 0 else label) for i, j, c in pairs.close_pairs(seps, k, jobs=jobs)]
    return ComplexGraph("SepK", _params(tri, max_weight, K=k), seps, edges, marker)


# ---------------------------------------------------------------- helpers

def drop(m: Multicurve, i: int) -> Multicurve:
    """``m`` without its ``i``-th drawing component."""
    return normalize(m.surface, _sub(m.coords, m.drawing.components[i]))


def canonical_component(m: Multicurve, i: int) -> Multicurve:
    w = m.drawing.components[i]
    if m.surface.is_ideal:
        return Multicurve(m.surface, w, (w,))
    return normalize(m.surface, w)


def merged_region(m: Multicurve, i: int) -> tuple:
    """Type and boundary keys of the component of ``S \\ (m - c_i)`` holding ``c_i``."""
    cp = m.complement
    a, b = cp.sides[i]
    regs = {a, b}
    chi = sum(cp.chi[r] for r in regs)
    punct = sum(len(cp.punctures[r]) for r in regs)
    nb = punct
    keys = []
    for j, (p, q) in enumerate(cp.sides):
        if j == i:
            continue
        k = (p in regs) + (q in regs)
        if k:
            nb += k
            keys.append(canonical_component(m, j).coords)
    twice = 2 - chi - nb
    topo = TopoType(twice // 2, nb, punct)
    return topo, tuple(sorted(keys)), tuple(sorted(v for r in regs for v in cp.punctures[r]))


def flip_bound(t: TopoType) -> int:
    if t.genus == 0 and t.total_boundary == 4:
        return 2
    if t.genus == 1 and t.total_boundary == 1:
        return 1
    return 0


def union(m: Multicurve, n: Multicurve) -> Multicurve:
    if m.contains(n):
        return m
    if n.contains(m):
        return n
    return m.union(n)


# ---------------------------------------------------------------- K graph

def is_k_vertex(m: Multicurve) -> bool:
    return bool(m) and not witness_regions(m)


def build_k_graph(tri, max_weight: int, *, cap_items: int | None = None, extra=()) -> ComplexGraph:
    """Multicurves with no witness in the complement; add/remove and flip edges."""
    found, marker = collect(enumerate_multicurves(tri, max_weight, is_k_vertex, cap=cap_items))
    verts = sorted(set(found) | {m for m in extra if is_k_vertex(m)})
    index = {v: i for i, v in enumerate(verts)}
    edges: dict[tuple[int, int], str] = {}
    groups: dict[Multicurve, list[tuple[int, Multicurve, tuple]]] = {}
    for xi, x in enumerate(verts):
        for i in range(len(x)):
            z = drop(x, i)
            zi = index.get(z)
            if zi is not None:
                a, b = min(xi, zi), max(xi, zi)
                edges[(a, b)] = "remove" if a == xi else "add"
            groups.setdefault(z, []).append((xi, canonical_component(x, i), merged_region(x, i)))
    for z in sorted(groups):
        members = groups[z]
        for (xi, alpha, sa), (yi, beta, sb) in itertools.combinations(members, 2):
            if sa != sb or alpha == beta:
                continue
            if intersection_number(alpha, beta) == flip_bound(sa[0]):
                a, b = min(xi, yi), max(xi, yi)
                edges.setdefault((a, b), "flip")
    out = [(a, b, lab) for (a, b), lab in sorted(edges.items())]
    return ComplexGraph("Kgraph", _params(tri, max_weight), verts, out, marker)


# ---------------------------------------------------------------- DW and F

def is_dw_vertex(m: Multicurve) -> bool:
    """Whether the complement of ``m`` holds two disjoint witnesses."""
    if m.sig.boundary != 1:
        raise SurfaceError("the disjoint witness graph lives on S_(g,1)")
    g = m.sig.genus
    if len(m) not in (g + 1, g + 2):
        return False
    return len(witness_regions(m)) >= 2


def _dw_filter(m: Multicurve) -> bool:
    return is_dw_vertex(m)


def add_remove_edges(verts: list[Multicurve]) -> list[tuple[int, int, str]]:
    index = {v: i for i, v in enumerate(verts)}
    edges = {}
    for xi, x in enumerate(verts):
        for i in range(len(x)):
            zi = index.get(drop(x, i))
            if zi is not None:
                a, b = min(xi, zi), max(xi, zi)
                edges[(a, b)] = "remove" if a == xi else "add"
    return [(a, b, lab) for (a, b), lab in sorted(edges.items())]


def dw_neighbours(m: Multicurve, bound: int = 2) -> list[Multicurve]:
    """DW vertices one add or remove move from ``m``.

    Removals are exhaustive.  Added curves are searched among the curves of
    the witness holding ``∂S`` with weights at most ``bound``.
    """
    from .projections import ball
    from .witnesses import Subsurface

    out = set()
    for i in range(len(m)):
        z = drop(m, i)
        if is_dw_vertex(z):
            out.add(z)
    for i in witness_regions(m):
        y = Subsurface.of(m, i)
        if y.topo.surface_boundary != 1:
            continue
        for c in ball(y, bound):
            u = m.union(c)
            if is_dw_vertex(u):
                out.add(u)
    return sorted(out)


def build_dw_graph(
    tri, max_weight: int, *, cap_items: int | None = None, extra=(), grow: int = 0, bound: int = 2
) -> ComplexGraph:
    """DW vertices at the weight bound, plus ``grow`` layers of neighbours."""
    found, marker = collect(enumerate_multicurves(tri, max_weight, _dw_filter, cap=cap_items))
    verts = set(found) | {m for m in extra if is_dw_vertex(m)}
    layer = set(verts)
    for _ in range(grow):
        nxt = set()
        for m in sorted(layer):
            nxt |= set(dw_neighbours(m, bound)) - verts
        verts |= nxt
        layer = nxt
    verts = sorted(verts)
    params = _params(tri, max_weight, grow=grow) if grow else _params(tri, max_weight)
    return ComplexGraph("DW", params, verts, add_remove_edges(verts), marker)


@dataclass
class FiberReport:
    """Components of a DW ball against the cap images of their vertices."""

    components: int
    fibers: int
    mixed: list[list[str]]  # components meeting more than one fiber
    split: list[str]  # fibers spread over several components of the ball

    @property
    def consistent(self) -> bool:
        return not self.mixed

    def to_json(self) -> dict:
        return {
            "components": self.components,
            "fibers": self.fibers,
            "mixedComponents": self.mixed,
            "splitFibers": self.split,
        }


def fiber_report(dw: ComplexGraph) -> FiberReport:
    images = [cap(v) for v in dw.vertices]
    comps = dw.components()
    mixed = []
    where: dict[Multicurve, set[int]] = {}
    for ci, comp in enumerate(comps):
        seen = sorted({images[v] for v in comp})
        if len(seen) > 1:
            mixed.append([s.text for s in seen])
        for v in comp:
            where.setdefault(images[v], set()).add(ci)
    split = sorted(mu.text for mu, cs in where.items() if len(cs) > 1)
    return FiberReport(len(comps), len(where), mixed, split)


def multicurve_intersections(ms: list[Multicurve], bound: int) -> list[tuple[int, int, int]]:
    """Pairs of multicurves meeting at most ``bound`` times, summed over components."""
    comps = sorted({c for m in ms for c in m.curves})
    cindex = {c: i for i, c in enumerate(comps)}
    close = {(i, j): c for i, j, c in pairs.close_pairs(comps, bound)}
    out = []
    for a, b in itertools.combinations(range(len(ms)), 2):
        total = 0
        for c in ms[a].curves:
            for d in ms[b].curves:
                i, j = cindex[c], cindex[d]
                if i == j:
                    continue
                v = close.get((min(i, j), max(i, j)))
                if v is None:
                    total = bound + 1
                    break
                total += v
            if total > bound:
                break
        if total <= bound:
            out.append((a, b, total))
    return out


def build_f_graph(dw: ComplexGraph, bound: int = 4) -> ComplexGraph:
    """Cap images of the DW vertices, joined when they meet at most ``bound`` times."""
    imgs = sorted({cap(v) for v in dw.vertices})
    edges = [(a, b, f"≤{bound}-intersection") for a, b, _ in multicurve_intersections(imgs, bound)]
    params = dict(dw.params)
    params["K"] = bound
    return ComplexGraph("Fgraph", params, imgs, edges, dw.truncation)


# ---------------------------------------------------------------- product regions

@dataclass
class ProductRegion:
    base: Multicurve
    members: list[Multicurve]

    def contains(self, y: Multicurve) -> bool:
        return is_k_vertex(y) and y.contains(self.base)

    def to_json(self) -> dict:
        return {"base": self.base.text, "members": [m.text for m in self.members]}


def product_region(m: Multicurve, g: ComplexGraph) -> ProductRegion:
    if g.kind != "Kgraph":
        raise SurfaceError("product regions live in the K graph")
    return ProductRegion(m, [y for y in g.vertices if y.contains(m)])


@dataclass
class IntersectionCheck:
    holds: bool
    left: list[str]
    right: list[str]
    note: str = ""

    def to_json(self) -> dict:
        return {"holds": self.holds, "intersection": self.left, "union": self.right, "note": self.note}


def intersection_law(m: Multicurve, n: Multicurve, g: ComplexGraph) -> IntersectionCheck:
    """Compare ``P(m) ∩ P(n)`` with ``P(m ∪ n)`` on the members of ``g``."""
    pm, pn = product_region(m, g), product_region(n, g)
    both = sorted(set(pm.members) & set(pn.members))
    if intersection_number(m, n):
        return IntersectionCheck(
            not both, [y.text for y in both], [], "m and n cross, so no multicurve contains both"
        )
    u = union(m, n)
    pu = product_region(u, g).members
    return IntersectionCheck(both == sorted(pu), [y.text for y in both], [y.text for y in sorted(pu)])


def sub_multicurves(x: Multicurve, sizes) -> list[Multicurve]:
    cs = list(x.curves)
    out = []
    for k in sizes:
        for combo in itertools.combinations(cs, k):
            w = tuple(sum(col) for col in zip(*(c.coords for c in combo)))
            out.append(normalize(x.surface, w))
    return out


def thick_piece_member(x: Multicurve, mu: Multicurve) -> bool:
    """Whether some DW vertex inside ``x`` caps to ``mu``."""
    if x.sig.boundary != 1:
        raise SurfaceError("thick pieces are defined on S_(g,1)")
    g = x.sig.genus
    for m in sub_multicurves(x, (g + 1, g + 2)):
        if is_dw_vertex(m) and cap(m) == mu:
            return True
    return False
