"""Combinatorial surfaces: signatures, fixed triangulations, complements of curves.

Every surface ``S_{g,b}`` is carried by one deterministic triangulation.  For
``b >= 1`` all vertices are boundary punctures, so the triangulation is ideal
and normal coordinates of essential multicurves are unique.  Closed surfaces
reuse the ``S_{g,1}`` triangulation with its single vertex re-marked as an
ordinary interior point; this pairing is what the capping map relies on.

Layout of the genus part: the standard ``4g``-gon with side word
``a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1`` is fanned from its corner ``P0``.
Triangle ``j`` has corners ``(P0, P_{j+1}, P_{j+2})``.  Extra punctures are
inserted by 1-to-3 splits, the first in triangle 0 and each later one in the
newest triangle adjacent to the previous puncture.

Conventions used throughout the package: triangle sides are numbered
counter-clockwise, side ``k`` runs from corner ``k`` to corner ``k+1``, and a
gluing ``(t, k) <-> (u, l)`` identifies corner ``k`` of ``t`` with corner
``l+1`` of ``u``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

PUNCTURE = "boundary-puncture"
INTERIOR = "interior"

TRIANGULATION_SCHEMA = 1


class SurfaceError(ValueError):
    """Raised for signatures or coordinates that do not describe a valid object."""


@dataclass(frozen=True, order=True)
class SurfaceSig:
    genus: int
    boundary: int

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0:
            raise SurfaceError(f"negative signature {self.genus},{self.boundary}")

    @property
    def complexity(self) -> int:
        return 3 * self.genus - 3 + self.boundary

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary

    @property
    def has_separating_curves(self) -> bool:
        return 2 * self.genus + self.boundary >= 4

    @classmethod
    def parse(cls, text: str) -> "SurfaceSig":
        try:
            g, b = (int(x) for x in str(text).split(","))
        except ValueError:
            raise SurfaceError(f"surface must look like 'g,b', got {text!r}") from None
        return cls(g, b)

    def __str__(self):
        return f"S_{{{self.genus},{self.boundary}}}"


@dataclass(frozen=True, order=True)
class TopoType:
    """Homeomorphism type of a complementary component.

    ``total_boundary`` counts every boundary circle of the component, both the
    sides of cut curves and boundary components of the ambient surface;
    ``surface_boundary`` counts only the latter.
    """

    genus: int
    total_boundary: int
    surface_boundary: int

    def __post_init__(self):
        if self.surface_boundary > self.total_boundary:
            raise SurfaceError(f"inconsistent topological type {self}")

    @property
    def planar(self) -> bool:
        return self.genus == 0

    @property
    def complexity(self) -> int:
        return 3 * self.genus - 3 + self.total_boundary

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.total_boundary

    @property
    def is_pants(self) -> bool:
        return self.genus == 0 and self.total_boundary == 3

    @property
    def is_annulus(self) -> bool:
        return self.genus == 0 and self.total_boundary == 2

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.genus, self.total_boundary, self.surface_boundary)

    def __str__(self):
        return f"S_{{{self.genus},{self.total_boundary}}}[{self.surface_boundary}]"


@dataclass(frozen=True)
class Triangulation:
    """An oriented triangulation with marked vertex classes.

    ``gluing[t][k]`` is the side ``(u, l)`` glued to side ``k`` of triangle ``t``.
    ``corners[t][k]`` is the vertex class of corner ``k``.
    """

    sig: SurfaceSig
    gluing: tuple[tuple[tuple[int, int], ...], ...]
    corners: tuple[tuple[int, ...], ...]
    marks: tuple[str, ...]
    # derived, filled in __post_init__
    edge_of: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    edge_sides: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        edge_of = [[-1, -1, -1] for _ in self.gluing]
        sides = []
        for t, row in enumerate(self.gluing):
            for k, (u, l) in enumerate(row):
                if self.gluing[u][l] != (t, k) or (u, l) == (t, k):
                    raise SurfaceError(f"gluing is not a fixed-point-free involution at {(t, k)}")
                if edge_of[t][k] < 0:
                    edge_of[t][k] = edge_of[u][l] = len(sides)
                    sides.append(((t, k), (u, l)))
        object.__setattr__(self, "edge_of", tuple(tuple(r) for r in edge_of))
        object.__setattr__(self, "edge_sides", tuple(sides))

    @property
    def num_triangles(self) -> int:
        return len(self.gluing)

    @property
    def num_edges(self) -> int:
        return len(self.edge_sides)

    @property
    def num_vertices(self) -> int:
        return len(self.marks)

    @property
    def euler_characteristic(self) -> int:
        # punctures are removed points, not vertices of the surface
        return self.num_vertices - len(self.punctures) - self.num_edges + self.num_triangles

    @property
    def punctures(self) -> tuple[int, ...]:
        return tuple(v for v, m in enumerate(self.marks) if m == PUNCTURE)

    @property
    def is_ideal(self) -> bool:
        return all(m == PUNCTURE for m in self.marks)

    def is_puncture(self, v: int) -> bool:
        return self.marks[v] == PUNCTURE

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        (t, k), _ = self.edge_sides[e]
        return self.corners[t][k], self.corners[t][(k + 1) % 3]

    def side_is_forward(self, t: int, k: int) -> bool:
        """Whether side ``k`` of ``t`` runs along the orientation of its edge."""
        return self.edge_sides[self.edge_of[t][k]][0] == (t, k)

    @cached_property
    def vertex_links(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """For each vertex, its corners ``(t, k)`` in cyclic order.

        The corner after ``(t, k)`` is reached by crossing side ``k``: if that
        side is glued to ``(u, l)`` the next corner is ``(u, l + 1)``.
        """
        seen = set()
        links: dict[int, list[tuple[int, int]]] = {}
        for t in range(self.num_triangles):
            for k in range(3):
                if (t, k) in seen:
                    continue
                cycle = []
                cur = (t, k)
                while cur not in seen:
                    seen.add(cur)
                    cycle.append(cur)
                    u, l = self.gluing[cur[0]][cur[1]]
                    cur = (u, (l + 1) % 3)
                links.setdefault(self.corners[t][k], []).append(cycle)
        out = []
        for v in range(self.num_vertices):
            cycles = links[v]
            if len(cycles) != 1:
                raise SurfaceError(f"vertex {v} has a disconnected link")
            out.append(tuple(cycles[0]))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "version": TRIANGULATION_SCHEMA,
            "sig": [self.sig.genus, self.sig.boundary],
            "triangles": [list(c) for c in self.corners],
            "gluing": [
                [t, k, u, l] for (t, k), (u, l) in self.edge_sides
            ],
            "vertexMarks": list(self.marks),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def _vertex_classes(gluing) -> list[list[int]]:
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t, row in enumerate(gluing):
        for k, (u, l) in enumerate(row):
            # corner k of t ~ corner l+1 of u, corner k+1 of t ~ corner l of u
            a, b = find((t, k)), find((u, (l + 1) % 3))
            parent[a] = b
            a, b = find((t, (k + 1) % 3)), find((u, l))
            parent[a] = b
    labels: dict = {}
    corners = []
    for t in range(len(gluing)):
        row = []
        for k in range(3):
            root = find((t, k))
            if root not in labels:
                labels[root] = len(labels)
            row.append(labels[root])
        corners.append(row)
    return corners


def _polygon_triangles(genus: int):
    """Fan triangulation of the standard 4g-gon, returned as a side dictionary."""
    n = 4 * genus
    tris = n - 2
    glue: dict[tuple[int, int], tuple[int, int]] = {}
    for j in range(tris - 1):
        glue[(j, 2)] = (j + 1, 0)
        glue[(j + 1, 0)] = (j, 2)

    def polygon_side(i):
        if i == 0:
            return (0, 0)
        if i == n - 1:
            return (tris - 1, 2)
        return (i - 1, 1)

    for h in range(genus):
        for i, partner in ((4 * h, 4 * h + 2), (4 * h + 1, 4 * h + 3)):
            s, p = polygon_side(i), polygon_side(partner)
            glue[s] = p
            glue[p] = s
    return tris, glue


def _sphere_triangles():
    # t0 = (0,1,2), t1 = (0,2,1); each side of t0 is glued to its reverse in t1
    glue = {}
    pairs = [((0, 0), (1, 2)), ((0, 1), (1, 1)), ((0, 2), (1, 0))]
    for a, b in pairs:
        glue[a] = b
        glue[b] = a
    return 2, glue


def _split(tris: int, glue: dict, t: int) -> tuple[int, dict]:
    """1-to-3 split of triangle ``t``: a new vertex joined to its three corners.

    Triangle ``t`` keeps side 0 and becomes (v0, v1, p); new triangles
    ``tris`` = (v1, v2, p) and ``tris + 1`` = (v2, v0, p).
    """
    old = {k: glue[(t, k)] for k in range(3)}
    a, b, c = t, tris, tris + 1
    new = dict(glue)
    for k in range(3):
        new.pop((t, k), None)
    outer = {0: (a, 0), 1: (b, 0), 2: (c, 0)}
    for k in range(3):
        side = outer[k]
        partner = old[k]
        if partner[0] == t:  # side glued to another side of the same triangle
            partner = outer[partner[1]]
        new[side] = partner
        new[partner] = side
    # inner spokes: side 1 of X runs v_{next} -> p, side 2 runs p -> v_this
    for x, y in ((a, b), (b, c), (c, a)):
        new[(x, 1)] = (y, 2)
        new[(y, 2)] = (x, 1)
    return tris + 2, new


def build_surface(sig: SurfaceSig | tuple[int, int]) -> Triangulation:
    """The fixed triangulation for ``S_{g,b}``; rejects signatures with ξ < 1."""
    if not isinstance(sig, SurfaceSig):
        sig = SurfaceSig(*sig)
    return _build(sig)


def split_history(sig: SurfaceSig) -> list[tuple[int, int]]:
    """The 1-to-3 splits used by :func:`build_surface` as ``(triangle, count before)``."""
    if sig.genus >= 1:
        tris, extra = 4 * sig.genus - 2, max(sig.boundary - 1, 0)
    else:
        tris, extra = 2, sig.boundary - 3
    order, target = [], 0
    for _ in range(extra):
        order.append((target, tris))
        tris += 2
        target = tris - 1
    return order


@lru_cache(maxsize=None)
def _build(sig: SurfaceSig) -> Triangulation:
    if sig.complexity < 1:
        raise SurfaceError(f"{sig} has complexity {sig.complexity}; no curve system exists")
    g, b = sig.genus, sig.boundary
    if g >= 1:
        tris, glue = _polygon_triangles(g)
        extra = max(b - 1, 0)
    else:
        tris, glue = _sphere_triangles()
        extra = b - 3
    target = 0
    for _ in range(extra):
        tris, glue = _split(tris, glue, target)
        target = tris - 1
    gluing = tuple(tuple(glue[(t, k)] for k in range(3)) for t in range(tris))
    corners = _vertex_classes(gluing)
    nv = 1 + max(max(r) for r in corners)
    marks = tuple(PUNCTURE if b >= 1 else INTERIOR for _ in range(nv))
    tri = Triangulation(sig, gluing, tuple(tuple(r) for r in corners), marks)
    n_p = len(tri.punctures)
    if tri.euler_characteristic != sig.euler_characteristic or n_p != b:
        raise SurfaceError(f"internal error: bad triangulation for {sig}")
    return tri


def paired_closed(tri: Triangulation) -> Triangulation:
    """The ``S_{g,0}`` triangulation sharing the combinatorics of ``S_{g,1}``."""
    if tri.sig.boundary != 1:
        raise SurfaceError("capping pairs S_{g,1} with S_{g,0} only")
    return build_surface(SurfaceSig(tri.sig.genus, 0))


def paired_open(tri: Triangulation) -> Triangulation:
    if tri.sig.boundary != 0:
        raise SurfaceError("only closed surfaces have a punctured partner")
    return build_surface(SurfaceSig(tri.sig.genus, 1))
