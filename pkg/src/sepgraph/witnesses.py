"""Witnesses for the separating curve graph.

A connected subsurface is a witness when every separating curve meets it.
Subsurfaces here are always complementary components of a multicurve, so
their identity comes from the canonical form of the defining multicurve.
The test looks at the pieces of ``S \\ Y``: a piece with genus, or with two
boundary components of ``S``, holds a separating curve missing ``Y``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import pairs
from .normal import (
    Multicurve,
    Truncation,
    collect,
    cut_along,
    enumerate_multicurves,
    is_separating,
    normalize,
)
from .surface import SurfaceError, SurfaceSig, TopoType, paired_open


class ClassificationError(SurfaceError):
    """A pair of disjoint witnesses that matches none of the known forms."""


@dataclass(frozen=True)
class WholeSurface:
    sig: SurfaceSig

    @property
    def topo(self) -> TopoType:
        return TopoType(self.sig.genus, self.sig.boundary, self.sig.boundary)

    @property
    def boundary(self) -> tuple:
        return ()

    @property
    def key(self) -> tuple:
        return ("whole", self.sig.genus, self.sig.boundary)

    def to_json(self) -> dict:
        return {"whole": True, "surfaceSig": [self.sig.genus, self.sig.boundary]}


@dataclass(frozen=True, eq=False)
class Subsurface:
    """Component ``index`` (in ``cut_along`` order) of the complement of ``definer``."""

    definer: Multicurve
    index: int
    topo: TopoType

    @classmethod
    def of(cls, m: Multicurve, index: int) -> "Subsurface":
        parts = cut_along(m.surface, m)
        if not 0 <= index < len(parts):
            raise SurfaceError(f"{m.text} has {len(parts)} complementary components, not {index + 1}")
        return cls(m, index, parts[index][1])

    @classmethod
    def from_json(cls, doc: dict, tri=None):
        from .normal import parse_multicurve

        if doc.get("whole"):
            return WholeSurface(SurfaceSig(*doc["surfaceSig"]))
        y = cls.of(parse_multicurve(doc["definer"], tri), int(doc["componentIndex"]))
        if list(y.topo.as_tuple()) != list(doc.get("topo", y.topo.as_tuple())):
            raise SurfaceError("recorded topological type does not match the definer")
        return y

    @property
    def sig(self) -> SurfaceSig:
        return self.definer.sig

    @cached_property
    def region(self) -> int:
        return cut_along(self.definer.surface, self.definer)[self.index][0]

    @cached_property
    def _sides(self):
        cp = self.definer.complement
        comps = self.definer.drawing.components
        return cp, comps

    @cached_property
    def boundary_weights(self) -> tuple[tuple[int, ...], ...]:
        """Weights of the adjacent definer components inside its drawing."""
        cp, comps = self._sides
        return tuple(sorted({comps[c] for c, s in enumerate(cp.sides) if self.region in s}))

    @cached_property
    def boundary(self) -> tuple[Multicurve, ...]:
        """Curves of the definer adjacent to this component, sorted."""
        tri = self.definer.surface
        return tuple(sorted(normalize(tri, w) for w in self.boundary_weights))

    @cached_property
    def key(self) -> tuple:
        # on a closed surface the two sides of a cut into two copies of the
        # same planar surface share this key; pairs are keyed as unordered
        # pairs, which stays unambiguous
        cp, _ = self._sides
        return (
            tuple(c.coords for c in self.boundary),
            self.topo.as_tuple(),
            tuple(cp.punctures[self.region]),
        )

    def __eq__(self, other):
        return isinstance(other, Subsurface) and self.sig == other.sig and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def pieces(self) -> list[TopoType]:
        """Components of the complement of this subsurface."""
        cp, comps = self._sides
        r = self.region
        n = len(cp.chi)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        annuli = 0
        for a, b in cp.sides:
            if a != r and b != r:
                parent[find(a)] = find(b)
            elif a == r and b == r:
                annuli += 1
        chi: dict[int, int] = {}
        nb: dict[int, int] = {}
        punct: dict[int, int] = {}
        for q in range(n):
            if q == r:
                continue
            z = find(q)
            chi[z] = chi.get(z, 0) + cp.chi[q]
            punct[z] = punct.get(z, 0) + len(cp.punctures[q])
            nb[z] = nb.get(z, 0) + len(cp.punctures[q])
        for a, b in cp.sides:
            if (a == r) != (b == r):
                z = find(b if a == r else a)
                nb[z] += 1
        out = [TopoType(0, 2, 0)] * annuli
        for z in sorted(chi):
            twice = 2 - chi[z] - nb[z]
            out.append(TopoType(twice // 2, nb[z], punct[z]))
        return out

    def to_json(self) -> dict:
        return {
            "definer": self.definer.text,
            "componentIndex": self.index,
            "topo": list(self.topo.as_tuple()),
        }


Witnessable = Subsurface | WholeSurface


def is_witness(y: Witnessable) -> bool:
    """Whether every separating curve of the ambient surface meets ``y``."""
    t = y.topo
    if t.complexity < 1 or t.is_pants or t.is_annulus:
        return False
    if isinstance(y, WholeSurface):
        return True
    return all(p.planar and p.surface_boundary <= 1 for p in y.pieces())


def witness_regions(m: Multicurve) -> list[int]:
    """Indices (in ``cut_along`` order) of the complement components that are witnesses."""
    parts = cut_along(m.surface, m)
    cand = [i for i, (_, t) in enumerate(parts) if t.complexity >= 1]
    return [i for i in cand if is_witness(Subsurface(m, i, parts[i][1]))]


# ---------------------------------------------------------------- certificates

def _inside_test(y: Subsurface):
    """Predicate on curves disjoint from ``∂y``: does the curve lie in ``y``?"""
    from .position import region_of

    m = y.definer
    tri = m.surface
    if not tri.is_ideal:
        lift = paired_open(tri)
        m = normalize(lift, m.coords)
        if m.coords != y.definer.coords:
            raise SurfaceError("definer does not lift to the punctured model")
    r = y.region
    bset = set(y.boundary_weights)

    def inside(c: Multicurve) -> bool:
        if c.coords in bset or c.coords in m.components:
            return False
        return region_of(m, c) == r

    return inside


def separating_escape(y: Subsurface, max_weight: int, cap: int = 20000) -> Multicurve | None:
    """A separating curve disjoint from ``y``, searched at growing weight bounds.

    A separating boundary curve of ``y`` can be pushed off it and is returned
    first.  On a closed surface the search runs on the punctured model, where
    the definer keeps its coordinates, and the capped curve is returned.
    """
    for c in y.boundary:
        if is_separating(c):
            return c
    tri = y.definer.surface
    closed = not tri.is_ideal
    work = paired_open(tri) if closed else tri
    inside = _inside_test(y)
    bnd = [normalize(work, w) for w in y.boundary_weights]
    for bound in range(1, max_weight + 1):
        seps, _ = collect(enumerate_multicurves(work, bound, separating=True, cap=cap))
        seps = [c for c in seps if max(c.coords) == bound or bound == 1]
        if not seps:
            continue
        hits = pairs.close_pairs(seps, 0, others=bnd) if bnd else []
        # a candidate must miss every boundary curve
        count: dict[int, int] = {}
        for i, _, _ in hits:
            count[i] = count.get(i, 0) + 1
        for i, c in enumerate(seps):
            if bnd and count.get(i, 0) != len(bnd):
                continue
            if c.coords in {b.coords for b in bnd}:
                continue
            if inside(c):
                continue
            if closed:
                cc = normalize(tri, c.coords)
                if not cc.is_curve or not is_separating(cc):
                    continue
                return cc
            return c
    return None


def witness_report(y: Witnessable, max_weight: int = 6) -> dict:
    verdict = is_witness(y)
    cert = None
    if not verdict and isinstance(y, Subsurface) and y.topo.complexity >= 1:
        c = separating_escape(y, max_weight)
        cert = {"separatingCurve": c.text} if c is not None else {"separatingCurve": None, "searchedTo": max_weight}
    return {"subsurface": y.to_json(), "verdict": verdict, "certificate": cert}


# ---------------------------------------------------------------- pairs

TAGS = ("closed-type", "two-boundary-type", "one-boundary-A", "one-boundary-B")


def classify_pair(w: Subsurface, y: Subsurface) -> str:
    """Which of the four known forms a pair of disjoint witnesses takes."""
    sig = w.sig
    g, b = sig.genus, sig.boundary
    shared = len({c.coords for c in w.boundary} & {c.coords for c in y.boundary})
    tw, ty = w.topo.as_tuple(), y.topo.as_tuple()
    small, big = (0, g + 1, 0), (0, g + 2, 1)
    if b == 0 and tw == ty == small and shared == g + 1:
        return "closed-type"
    if b == 2 and tw == ty == big and shared == g + 1:
        return "two-boundary-type"
    if b == 1 and {tw, ty} == {small, big} and shared == g + 1:
        return "one-boundary-A"
    if b == 1 and tw == ty == small and shared == g:
        return "one-boundary-B"
    raise ClassificationError(
        f"disjoint witnesses {w.topo} and {y.topo} sharing {shared} curves on {sig} match no known form"
    )


@dataclass(frozen=True)
class WitnessPair:
    first: Subsurface
    second: Subsurface
    tag: str

    def to_json(self) -> dict:
        return {"pair": [self.first.to_json(), self.second.to_json()], "tag": self.tag}


@dataclass
class PairSearch:
    pairs: list[WitnessPair]
    rank: int
    scanned: int
    truncation: Truncation | None
    exhaustive: bool = True

    def to_json(self) -> dict:
        out = {
            "pairs": [p.to_json() for p in self.pairs],
            "rank": self.rank,
            "scanned": self.scanned,
            "tags": {t: sum(p.tag == t for p in self.pairs) for t in TAGS},
            "exhaustive": self.exhaustive,
        }
        if self.truncation is not None:
            out["truncation"] = self.truncation.to_json()
        return out


def _quick_types(m: Multicurve) -> bool:
    # at least two complement components that could be witnesses
    parts = cut_along(m.surface, m)
    return sum(t.planar and t.complexity >= 1 for _, t in parts) >= 2


def search_pairs(
    tri, max_weight: int, cap: int | None = None, classify: bool = True, source=None
) -> PairSearch:
    """Disjoint witness pairs among complement components of enumerated multicurves.

    With ``source`` the given multicurves (those within the weight bound) are
    searched instead of the full enumeration, and the result is marked as
    not exhaustive.
    """
    sig = tri.sig
    best = 1 if sig.complexity >= 1 else 0
    seen: dict[tuple, WitnessPair] = {}
    scanned = 0
    marker = None
    if source is None:
        stream = enumerate_multicurves(tri, max_weight, cap=cap)
    else:
        stream = sorted({m for m in source if m.sig == sig and max(m.coords, default=0) <= max_weight})
    for m in stream:
        if isinstance(m, Truncation):
            marker = m
            break
        scanned += 1
        if len(m) < 2 or not _quick_types(m):
            continue
        wit = witness_regions(m)
        best = max(best, len(wit))
        for i, j in itertools.combinations(wit, 2):
            a, b = Subsurface.of(m, i), Subsurface.of(m, j)
            if b < a:
                a, b = b, a
            k = (a.key, b.key)
            if k in seen:
                continue
            tag = classify_pair(a, b) if classify else ""
            seen[k] = WitnessPair(a, b, tag)
    found = [seen[k] for k in sorted(seen)]
    return PairSearch(found, best, scanned, marker, source is None)


def disjoint_witness_pairs(tri, max_weight: int, cap: int | None = None, source=None) -> list[WitnessPair]:
    return search_pairs(tri, max_weight, cap, source=source).pairs


def rank_estimate(tri, max_weight: int, cap: int | None = None, source=None) -> int:
    """Largest number of pairwise disjoint witnesses among complement components."""
    return search_pairs(tri, max_weight, cap, classify=False, source=source).rank
