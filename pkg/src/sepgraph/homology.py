"""Mod-2 homology classes of curves.

A normal multicurve is a 1-cycle in the dual graph of the triangulation
(triangles joined across edges) with coefficient ``w[e] mod 2`` on edge ``e``.
The surface minus its vertices retracts onto that graph, so its cycle space
is H1 with Z/2 coefficients.  On a closed one-vertex surface the vertex link
crosses every edge twice and vanishes mod 2, so the same space is H1 of the
closed surface.  Coordinates are read on the edges outside a fixed spanning
tree of the dual graph.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .normal import Multicurve
from .surface import SurfaceSig, Triangulation


@dataclass(frozen=True)
class Mod2Class:
    sig: SurfaceSig
    coefficients: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def __add__(self, other: "Mod2Class") -> "Mod2Class":
        return Mod2Class(self.sig, tuple(a ^ b for a, b in zip(self.coefficients, other.coefficients)))

    def scaled(self, k: int) -> "Mod2Class":
        return self if k & 1 else Mod2Class(self.sig, (0,) * len(self.coefficients))


def cotree_edges(tri: Triangulation) -> tuple[int, ...]:
    """Edges outside the breadth-first dual spanning tree from triangle 0."""
    cached = tri.__dict__.get("_cotree")
    if cached is not None:
        return cached
    seen = [False] * tri.num_triangles
    seen[0] = True
    tree = set()
    queue = deque([0])
    while queue:
        t = queue.popleft()
        for k in range(3):
            u, _ = tri.gluing[t][k]
            if not seen[u]:
                seen[u] = True
                tree.add(tri.edge_of[t][k])
                queue.append(u)
    out = tuple(e for e in range(tri.num_edges) if e not in tree)
    object.__setattr__(tri, "_cotree", out)
    return out


def rank(tri: Triangulation) -> int:
    g, b = tri.sig.genus, tri.sig.boundary
    return 2 * g + max(b - 1, 0)


def mod2_class(m: Multicurve) -> Mod2Class:
    """Class of a multicurve (the sum of its components)."""
    cot = cotree_edges(m.surface)
    return Mod2Class(m.sig, tuple(m.coords[e] & 1 for e in cot))


def span_rank(classes) -> int:
    """Dimension of the span of some classes, by elimination over Z/2."""
    rows = [int("".join(map(str, c.coefficients)) or "0", 2) for c in classes]
    basis: list[int] = []
    for r in rows:
        for v in basis:
            r = min(r, r ^ v)
        if r:
            basis.append(r)
    return len(basis)
