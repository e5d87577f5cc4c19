"""Certificates for connectivity and thickness arguments, and their validators.

Producers search; validators only re-check.  A validator reads the JSON
document, rebuilds every curve from its text form and re-verifies each
recorded claim with operations that do not share the producing search:
intersection numbers through the bigon engine, separation through mod-2
homology, vertex types through ``cut_along``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import pairs
from .arrangement import minimal_position
from .complexes import (
    ComplexGraph,
    build_dw_graph,
    build_f_graph,
    drop,
    is_dw_vertex,
    is_k_vertex,
    sub_multicurves,
    thick_piece_member,
)
from .homology import mod2_class
from .mcg import GeneratorSet, Letter, MappingWord, apply, cap, generators, point_push
from .normal import (
    Multicurve,
    _add,
    _sub,
    cut_along,
    intersection_number,
    is_separating,
    mod2_intersection,
    normalize,
    parse_multicurve,
    separating_curves,
    walk_weights,
)
from .position import Meeting, simple_curve
from .projections import ball, project
from .surface import SurfaceError, SurfaceSig, TopoType, build_surface, paired_open
from .witnesses import Subsurface, witness_regions

SCHEMA = 1


class CertificateError(SurfaceError):
    """A certificate document that cannot be read."""


class FiberError(SurfaceError):
    """Endpoints of a requested fiber path lie in different fibers."""


# ---------------------------------------------------------------- independent checks

def crossings(a: Multicurve, b: Multicurve) -> int:
    """Intersection number recomputed without the production formula."""
    if not a or not b:
        return 0
    if a.surface.is_ideal:
        return minimal_position(a.surface, a.coords, b.coords).crossings
    total = 0
    for c in a.curves:
        for d in b.curves:
            if c != d:
                hit = pairs.close_pairs([c], 10**6, others=[d])
                total += hit[0][2] if hit else 0
    return total


def separates(c: Multicurve) -> bool:
    if c.sig.boundary <= 1:
        return mod2_class(c).is_zero
    return len(cut_along(c.surface, c)) == 2


def dw_form(m: Multicurve) -> str | None:
    """Which of the two DW forms ``m`` takes, from complement types alone."""
    g = m.sig.genus
    small, big, pants = TopoType(0, g + 1, 0), TopoType(0, g + 2, 1), TopoType(0, 3, 1)
    types = sorted(t for _, t in cut_along(m.surface, m))
    if len(m) == g + 1 and types == sorted([small, big]):
        return "a"
    if len(m) == g + 2 and types == sorted([small, small, pants]):
        return "b"
    return None


def one_move(m: Multicurve, n: Multicurve) -> bool:
    big, small = (m, n) if len(m) > len(n) else (n, m)
    return len(big) == len(small) + 1 and small.keys < big.keys


# ---------------------------------------------------------------- Putman

def _orbit_type(c: Multicurve) -> tuple:
    return tuple(sorted(t.as_tuple() for _, t in cut_along(c.surface, c)))


def _handle_room(c: Multicurve) -> list[tuple]:
    # components that hold a handle-cutting curve other than their boundary
    return [
        t.as_tuple()
        for _, t in cut_along(c.surface, c)
        if t.genus >= 2 or (t.genus == 1 and t.total_boundary >= 2)
    ]


def _sep_edge(a: Multicurve, b: Multicurve, k: int) -> bool:
    return a != b and is_separating(a) and is_separating(b) and intersection_number(a, b) <= k


@dataclass
class PutmanCertificate:
    graph: dict
    base: Multicurve
    orbit: list[dict] = field(default_factory=list)
    moves: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "putman",
            "graph": self.graph,
            "base": self.base.text,
            "orbitCondition": self.orbit,
            "generatorCondition": self.moves,
            "failures": self.failures,
            "ok": self.ok,
        }


def _bridge(base: Multicurve, image: Multicurve, k: int, pool, bound: int = 4) -> Multicurve | None:
    """A separating curve within ``k`` of both ends, from ``pool`` then by search."""
    for c in pool:
        if c not in (base, image) and _sep_edge(c, base, k) and _sep_edge(c, image, k):
            return c
    tri = base.surface
    for w in range(1, bound + 1):
        seps, _ = separating_curves(tri, w, cap=50000)
        near = {i for i, _, _ in pairs.close_pairs(seps, k, others=[base])}
        both = {i for i, _, _ in pairs.close_pairs(seps, k, others=[image])} & near
        for i in sorted(both):
            if seps[i] not in (base, image):
                return seps[i]
    return None


def putman_check(g: ComplexGraph, gens: GeneratorSet | None, base: Multicurve, *, bridge_bound: int = 4) -> PutmanCertificate:
    """Both hypotheses of Putman's connectivity lemma on a separating curve graph ball.

    With generators, orbits of separating curves are matched by the types of
    their complements.  With ``gens`` empty the group is trivial and the
    orbit of the base is the base alone.
    """
    if g.kind != "SepK":
        raise SurfaceError("putman_check runs on separating curve graphs")
    k = g.params["K"]
    if base not in g:
        raise SurfaceError(f"base {base.text} is not a vertex of the graph")
    cert = PutmanCertificate(g.summary(), base)
    trivial = gens is None or not (gens.twists or gens.half_twists)
    comps = g.components()
    comp_of = {v: ci for ci, comp in enumerate(comps) for v in comp}
    adj = g.adjacency()
    bt = _orbit_type(base)
    for vi, v in enumerate(g.vertices):
        if trivial:
            if comp_of[vi] == comp_of[g.index(base)]:
                cert.orbit.append({"vertex": v.text, "evidence": "component of base"})
            else:
                cert.failures.append({"vertex": v.text, "reason": "orbit of the base misses its component"})
            continue
        if _orbit_type(v) == bt:
            cert.orbit.append({"vertex": v.text, "evidence": "orbit", "type": [list(t) for t in bt]})
            continue
        room = _handle_room(v)
        if not room:
            cert.failures.append({"vertex": v.text, "reason": "no complementary component holds a handle"})
            continue
        near = next((g.vertices[u] for u in adj[vi] if _orbit_type(g.vertices[u]) == bt), None)
        cert.orbit.append(
            {
                "vertex": v.text,
                "evidence": "adjacent",
                "handleComponent": list(room[0]),
                "witnessCurve": near.text if near is not None else None,
            }
        )
    if trivial:
        return cert
    letters = gens.letters()
    pool = [g.vertices[u] for u in adj[g.index(base)]]
    for x in letters:
        word = MappingWord((x,))
        image = apply(word, base, gens)
        entry = {"generator": word.text, "image": image.text}
        if image == base:
            entry["path"] = [base.text]
        elif _sep_edge(base, image, k):
            entry["path"] = [base.text, image.text]
        else:
            mid = _bridge(base, image, k, pool, bridge_bound)
            if mid is None:
                ii = g.index(image)
                path = g.path(g.index(base), ii) if ii is not None else None
                if path is None:
                    cert.failures.append({"generator": word.text, "reason": "no path from base to image"})
                    continue
                entry["path"] = [g.vertices[p].text for p in path]
            else:
                entry["path"] = [base.text, mid.text, image.text]
                entry["bridge"] = mid.text
        cert.moves.append(entry)
    return cert


def validate_putman(doc: dict) -> list[str]:
    problems = []
    k = doc["graph"]["params"]["K"]
    base = parse_multicurve(doc["base"])
    gens = generators(base.sig)
    if not separates(base):
        problems.append("base is not separating")
    bt = _orbit_type(base)
    for e in doc["orbitCondition"]:
        v = parse_multicurve(e["vertex"])
        if not separates(v):
            problems.append(f"{e['vertex']}: not separating")
        if e["evidence"] == "orbit" and _orbit_type(v) != bt:
            problems.append(f"{e['vertex']}: complement type differs from the base")
        elif e["evidence"] == "adjacent":
            types = [t.as_tuple() for _, t in cut_along(v.surface, v)]
            if tuple(e["handleComponent"]) not in types:
                problems.append(f"{e['vertex']}: recorded handle component is not a complementary component")
            h = TopoType(*e["handleComponent"])
            if not (h.genus >= 2 or (h.genus == 1 and h.total_boundary >= 2)):
                problems.append(f"{e['vertex']}: recorded component holds no handle")
            if e.get("witnessCurve"):
                w = parse_multicurve(e["witnessCurve"])
                if _orbit_type(w) != bt or crossings(v, w) > k or not separates(w):
                    problems.append(f"{e['vertex']}: witness curve fails")
    listed = sorted(e["generator"] for e in doc["generatorCondition"])
    if listed != sorted(MappingWord((x,)).text for x in gens.letters()):
        problems.append("generator condition does not cover the generating set")
    for e in doc["generatorCondition"]:
        word = MappingWord.parse(e["generator"])
        image = parse_multicurve(e["image"])
        if apply(word, base, gens) != image:
            problems.append(f"{e['generator']}: recorded image is wrong")
        x = word.letters[0]
        if x.kind == "t":
            c = gens.curve(x.name)
            if crossings(image, base) != crossings(base, c) ** 2:
                problems.append(f"{e['generator']}: twist identity fails")
        path = [parse_multicurve(t) for t in e["path"]]
        if path[0] != base or path[-1] != image:
            problems.append(f"{e['generator']}: path has wrong ends")
        for a, b in zip(path, path[1:]):
            if not (separates(a) and separates(b) and a != b and crossings(a, b) <= k):
                problems.append(f"{e['generator']}: bad edge {a.text} -- {b.text}")
    if doc.get("failures"):
        problems.append("certificate records failures")
    return problems


# ---------------------------------------------------------------- exceptional cases

EXCEPTIONAL = {SurfaceSig(1, 2), SurfaceSig(2, 0), SurfaceSig(2, 1)}


def _handle_datum(alpha: Multicurve, beta: Multicurve) -> dict | None:
    """The handle cut off by ``alpha`` and a curve in it meeting ``beta`` an odd number of times.

    On a closed surface the datum lives on the punctured model, where parity
    of intersection and separation are unchanged.
    """
    tri = alpha.surface
    work = tri if tri.is_ideal else paired_open(tri)
    a = normalize(work, alpha.coords)
    b = normalize(work, beta.coords)
    for i, (_, t) in enumerate(cut_along(work, a)):
        if t.genus == 1 and t.total_boundary == 1 and t.surface_boundary == 0:
            z = Subsurface.of(a, i)
            for gamma in ball(z, 2):
                if mod2_intersection(gamma, b):
                    return {
                        "alpha": a.text,
                        "beta": b.text,
                        "handle": z.to_json(),
                        "gamma": gamma.text,
                        "gammaBetaParity": 1,
                    }
    return None


def check_no_intersection_two(sig, max_weight: int, *, jobs: int = 1, spot: int = 3) -> dict:
    """No two enumerated separating curves meet exactly twice."""
    if not isinstance(sig, SurfaceSig):
        sig = SurfaceSig(*sig)
    if sig not in EXCEPTIONAL:
        raise SurfaceError(f"the check is stated for S_(1,2), S_(2,0), S_(2,1), not {sig}")
    tri = build_surface(sig)
    seps, marker = separating_curves(tri, max_weight)
    close = pairs.close_pairs(seps, 2, jobs=jobs)
    counts = {str(c): 0 for c in range(3)}
    bad = []
    for i, j, c in close:
        counts[str(c)] += 1
        if c == 2:
            bad.append([seps[i].text, seps[j].text])
    data = []
    if seps:
        from .normal import curves

        alpha = seps[0]
        pool, _ = curves(tri, min(max_weight, 3))
        for _, j, c in pairs.close_pairs([alpha], 2, others=pool):
            if c == 2 and len(data) < spot:
                d = _handle_datum(alpha, pool[j])
                if d is not None:
                    d["betaSeparating"] = is_separating(pool[j])
                    data.append(d)
    out = {
        "schema": SCHEMA,
        "kind": "no-double-intersection",
        "surfaceSig": [sig.genus, sig.boundary],
        "maxWeight": max_weight,
        "separatingCurves": len(seps),
        "pairsByIntersection": counts,
        "violations": bad,
        "handleData": data,
        "pass": not bad,
    }
    if marker is not None:
        out["truncation"] = marker.to_json()
    return out


# ---------------------------------------------------------------- fibers

@dataclass
class FiberPath:
    vertices: list[Multicurve]
    drops: list[int]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "fiber-path",
            "vertices": [v.text for v in self.vertices],
            "intersections": self.drops,
        }


def _dw_path_inside(u: Multicurve, m: Multicurve, n: Multicurve) -> list[Multicurve]:
    """Shortest add/remove path from ``m`` to ``n`` through DW vertices contained in ``u``."""
    g = u.sig.genus
    verts = sorted({s for s in sub_multicurves(u, range(g + 1, len(u) + 1)) if is_dw_vertex(s)})
    if m not in verts or n not in verts:
        raise FiberError("endpoints are not DW vertices inside their union")
    prev = {m: m}
    frontier = [m]
    while frontier and n not in prev:
        nxt = []
        for v in frontier:
            for w in verts:
                if w not in prev and one_move(v, w):
                    prev[w] = v
                    nxt.append(w)
        frontier = nxt
    if n not in prev:
        raise FiberError("no path inside the union")
    out = [n]
    while out[-1] != m:
        out.append(prev[out[-1]])
    return out[::-1]


def _peripheral(meet: Meeting, walk) -> bool:
    from .normal import reduce_walk, vertex_link

    tri = meet.tri
    red = reduce_walk(meet.fr.partner, walk)
    if not red:
        return False
    w = walk_weights(meet.fr, red)
    return any(w == tuple(vertex_link(tri, p)) for p in tri.punctures)


def _surgery(m: Multicurve, n: Multicurve):
    """Replace one curve of ``n`` across the puncture so that ``m`` meets it less."""
    meet = Meeting(m, n)
    k = meet.crossings
    fr = meet.fr
    target = cap(n)
    cands = []
    for comp, seq in enumerate(meet.seq[1]):
        if len(seq) < 2:
            continue
        for idx, x in enumerate(seq):
            y = seq[(idx + 1) % len(seq)]
            if meet.other_comp(1, x) != meet.other_comp(1, y):
                continue
            for fwd in (True, False):
                inner = meet.path(1, x, y, True) + meet.path(0, y, x, not fwd)
                rank = 0 if _peripheral(meet, inner) else 1
                cands.append((rank, meet.ov.cross[x][0], comp, idx, fwd, x, y))
    cands.sort(key=lambda c: c[:5])
    for _, _, comp, _, fwd, x, y in cands:
        walk = meet.path(0, x, y, fwd) + meet.path(1, y, x, True)
        b2 = simple_curve(meet.tri, walk)
        if b2 is None or intersection_number(b2, n):
            continue
        bw = walk_weights(fr, list(meet.walks[1][comp]))
        rest = _sub(n.coords, bw)
        # b' may already be in n, the other curve around the pants at ∂S
        n2 = normalize(meet.tri, rest if b2.coords in n.components else _add(rest, b2.coords))
        if not is_dw_vertex(n2):
            continue
        if intersection_number(m, n2) > k - 2 or cap(n2) != target:
            continue
        return n2
    return None


def fiber_path(m: Multicurve, n: Multicurve) -> FiberPath:
    """A DW path from ``m`` to ``n``, both in the fiber over one capped multicurve."""
    for v in (m, n):
        if not is_dw_vertex(v):
            raise FiberError(f"{v.text} is not a DW vertex")
    cm, cn = cap(m), cap(n)
    if cm != cn:
        raise FiberError(f"cap images differ: {cm.text} vs {cn.text}")
    if m == n:
        return FiberPath([m], [0])
    tail: list[Multicurve] = []
    drops = []
    cur = n
    k = intersection_number(m, cur)
    while k:
        drops.append(k)
        nxt = _surgery(m, cur)
        if nxt is None:
            raise FiberError(f"no boundary bigon surgery found at intersection {k}")
        step = _dw_path_inside(nxt.union(cur), nxt, cur)
        tail = step[1:] + tail
        cur = nxt
        k = intersection_number(m, cur)
    drops.append(0)
    head = _dw_path_inside(m.union(cur), m, cur) if m != cur else [m]
    return FiberPath(head + tail, drops)


def validate_fiber_path(doc: dict, ends: tuple[str, str] | None = None) -> list[str]:
    problems = []
    vs = [parse_multicurve(t) for t in doc["vertices"]]
    if ends is not None and (vs[0].text, vs[-1].text) != tuple(ends):
        problems.append("path has wrong ends")
    for v in vs:
        if dw_form(v) is None:
            problems.append(f"{v.text}: not a DW vertex")
    caps = {cap(v) for v in vs}
    if len(caps) != 1:
        problems.append("cap images vary along the path")
    for a, b in zip(vs, vs[1:]):
        if not one_move(a, b):
            problems.append(f"{a.text} -- {b.text}: not an add/remove move")
    seq = doc["intersections"]
    if any(x - y < 2 for x, y in zip(seq, seq[1:])):
        problems.append("intersection sequence does not drop by 2 each step")
    if seq and crossings(vs[0], vs[-1]) != seq[0]:
        problems.append("recorded starting intersection is wrong")
    return problems


# ---------------------------------------------------------------- admissible extensions

def admissible(y: Subsurface, alpha: Multicurve) -> bool:
    """No component of ``y`` cut along ``alpha`` is a pair of pants around ``∂S``."""
    m = y.definer
    u = m.union(alpha)
    cu, cm = u.complement, m.complement
    tri = m.surface
    pants = TopoType(0, 3, 1)
    for r, t in cut_along(tri, u):
        tt = next(i for i in range(tri.num_triangles) if cu.centre(i) == r)
        if cm.centre(tt) == y.region and t == pants:
            return False
    return True


def _pick(y: Subsurface, other: Multicurve, bound: int) -> Multicurve | None:
    cands = set(project(other, y).curves) | set(ball(y, bound))
    scored = sorted((intersection_number(c, other), c) for c in cands if admissible(y, c))
    return scored[0][1] if scored else None


def _extend(m: Multicurve, other: Multicurve, bound: int) -> tuple[Multicurve, list[dict]]:
    x = m
    picks = []
    while True:
        wit = witness_regions(x)
        if not wit:
            return x, picks
        y = Subsurface.of(x, wit[0])
        a = _pick(y, other, bound)
        if a is None:
            raise SurfaceError(f"no admissible curve found in {y.topo} of {x.text}")
        picks.append({"witness": y.to_json(), "curve": a.text, "meets": intersection_number(a, other)})
        x = x.union(a)


@dataclass
class Extension:
    m: Multicurve
    m2: Multicurve
    x: Multicurve
    x2: Multicurve
    picks: list[dict]
    picks2: list[dict]

    @property
    def x_m2(self) -> int:
        return intersection_number(self.x, self.m2)

    @property
    def x_x2(self) -> int:
        return intersection_number(self.x, self.x2)

    def to_json(self) -> dict:
        return {
            "m": self.m.text,
            "mNext": self.m2.text,
            "x": self.x.text,
            "xNext": self.x2.text,
            "picks": self.picks,
            "picksNext": self.picks2,
            "iXmNext": self.x_m2,
            "iXxNext": self.x_x2,
        }


def admissible_extension(m: Multicurve, m2: Multicurve, *, bound: int = 2) -> Extension:
    """Points ``x ⊇ m`` and ``x2 ⊇ m2`` of the two product regions, close to each other."""
    for v in (m, m2):
        if not is_dw_vertex(v):
            raise SurfaceError(f"{v.text} is not a DW vertex")
    if intersection_number(m, m2) > 4:
        raise SurfaceError("admissible extensions need i(m, m') <= 4")
    x, p1 = _extend(m, m2, bound)
    x2, p2 = _extend(m2, x, bound)
    return Extension(m, m2, x, x2, p1, p2)


# ---------------------------------------------------------------- 𝔉 generators

def humphries_base(genus: int, max_weight: int = 2) -> Multicurve:
    """A capped DW vertex meeting every Humphries curve at most twice."""
    if genus < 3:
        raise SurfaceError("the capped DW graph needs genus at least 3")
    dw = build_dw_graph(build_surface((genus, 1)), max_weight)
    gens = generators((genus, 0))
    best = None
    for mu in sorted({cap(v) for v in dw.vertices}):
        ii = [intersection_number(mu, c) for c in gens.twists.values()]
        if max(ii) <= 2:
            key = (sum(ii), mu.coords)
            if best is None or key < best[0]:
                best = (key, mu)
    if best is None:
        raise SurfaceError(f"no base multicurve at weight {max_weight}")
    return best[1]


def f_generator_check(genus: int) -> dict:
    mu = humphries_base(genus)
    gens = generators((genus, 0))
    rows = []
    for x in gens.letters():
        word = MappingWord((x,))
        image = apply(word, mu, gens)
        rows.append({"generator": word.text, "image": image.text, "intersection": intersection_number(mu, image)})
    return {
        "schema": SCHEMA,
        "kind": "f-generators",
        "genus": genus,
        "base": mu.text,
        "generators": rows,
        "pass": all(r["intersection"] <= 4 for r in rows),
    }


# ---------------------------------------------------------------- thick chains

@dataclass
class ChainCertificate:
    path: list[Multicurve]
    steps: list[dict]

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "kind": "thick-chain",
            "path": [mu.text for mu in self.path],
            "steps": self.steps,
        }


def _lifts_close(fiber_a, fiber_b, bound: int = 4):
    best = None
    for m in fiber_a:
        for n in fiber_b:
            i = intersection_number(m, n)
            if i <= bound and (best is None or (i, m, n) < best):
                best = (i, m, n)
    return best


def _push_word(x: Multicurve, x2: Multicurve) -> MappingWord:
    tri = x.surface
    for i in range(1, 2 * tri.sig.genus + 1):
        w = point_push(f"L{i}", tri)
        if apply(w, x) != x and apply(w, x2) != x2:
            return MappingWord((Letter("push", f"L{i}", 1),))
    raise SurfaceError("every catalogue push fixes the extension")


def thick_chain(mu: Multicurve, mu2: Multicurve, dw: ComplexGraph, *, orbit: int = 2) -> ChainCertificate:
    """An 𝔉-path from ``mu`` to ``mu2`` with a certified common region per edge."""
    f = build_f_graph(dw)
    a, b = f.index(mu), f.index(mu2)
    if a is None or b is None:
        raise SurfaceError("endpoints are not in the enumerated 𝔉 ball")
    idx = f.path(a, b)
    if idx is None:
        raise SurfaceError("no 𝔉-path inside the ball")
    path = [f.vertices[i] for i in idx]
    fibers: dict[Multicurve, list[Multicurve]] = {}
    for v in dw.vertices:
        fibers.setdefault(cap(v), []).append(v)
    steps = []
    for p, q in zip(path, path[1:]):
        found = _lifts_close(fibers[p], fibers[q])
        if found is None:
            raise SurfaceError(f"no lifts meeting at most 4 times over {p.text} -- {q.text}")
        _, m, m2 = found
        ext = admissible_extension(m, m2)
        word = _push_word(ext.x, ext.x2)
        fam = []
        x, x2 = ext.x, ext.x2
        for k in range(1, orbit + 1):
            x, x2 = apply(word, x), apply(word, x2)
            fam.append({"power": k, "x": x.text, "xNext": x2.text, "intersection": intersection_number(x, x2)})
        step = ext.to_json()
        step.update({"mu": p.text, "muNext": q.text, "push": word.text, "family": fam})
        steps.append(step)
    return ChainCertificate(path, steps)


def validate_chain(doc: dict) -> list[str]:
    problems = []
    path = [parse_multicurve(t) for t in doc["path"]]
    if len(doc["steps"]) != max(len(path) - 1, 0):
        problems.append("step count does not match the path")
    for s, (p, q) in zip(doc["steps"], zip(path, path[1:])):
        tag = f"{s['mu']} -> {s['muNext']}"
        if (s["mu"], s["muNext"]) != (p.text, q.text):
            problems.append(f"{tag}: step does not follow the path")
        if crossings(p, q) > 4:
            problems.append(f"{tag}: not an 𝔉 edge")
        m, m2 = parse_multicurve(s["m"]), parse_multicurve(s["mNext"])
        x, x2 = parse_multicurve(s["x"]), parse_multicurve(s["xNext"])
        for v, mu in ((m, p), (m2, q)):
            if dw_form(v) is None or cap(v) != mu:
                problems.append(f"{tag}: {v.text} is not a DW vertex over {mu.text}")
        for v, base in ((x, m), (x2, m2)):
            if not v.contains(base) or not is_k_vertex(v):
                problems.append(f"{tag}: {v.text} is not in the product region of {base.text}")
        ixm, ixx = crossings(x, m2), crossings(x, x2)
        if ixm != s["iXmNext"] or ixm > 8:
            problems.append(f"{tag}: i(x, m') = {ixm}")
        if ixx != s["iXxNext"] or ixx > 20:
            problems.append(f"{tag}: i(x, x') = {ixx}")
        word = MappingWord.parse(s["push"])
        if any(t.kind != "push" for t in word.letters):
            problems.append(f"{tag}: family generator is not a point push")
        cx, cx2 = x, x2
        seen = {x}
        for e in s["family"]:
            cx, cx2 = apply(word, cx), apply(word, cx2)
            if (cx.text, cx2.text) != (e["x"], e["xNext"]):
                problems.append(f"{tag}: family member {e['power']} is wrong")
            if cx in seen:
                problems.append(f"{tag}: push orbit repeats")
            seen.add(cx)
            if not (thick_piece_member(cx, p) and thick_piece_member(cx2, q)):
                problems.append(f"{tag}: family member {e['power']} leaves the thick pieces")
            if crossings(cx, cx2) != ixx:
                problems.append(f"{tag}: family member {e['power']} changes the intersection")
    return problems


# ---------------------------------------------------------------- dispatch

def validate(doc: dict) -> list[str]:
    """Problems found in a certificate document; empty when it checks out."""
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise CertificateError("not a certificate of a known schema version")
    kind = doc.get("kind")
    try:
        if kind == "putman":
            return validate_putman(doc)
        if kind == "fiber-path":
            return validate_fiber_path(doc)
        if kind == "thick-chain":
            return validate_chain(doc)
        if kind == "no-double-intersection":
            return _validate_double(doc)
        if kind == "f-generators":
            return _validate_generators(doc)
    except (KeyError, TypeError, IndexError) as exc:
        raise CertificateError(f"malformed {kind} certificate: {exc}") from None
    raise CertificateError(f"unknown certificate kind {kind!r}")


def _validate_double(doc: dict) -> list[str]:
    problems = []
    if doc["violations"] or not doc["pass"]:
        problems.append("report records pairs meeting twice")
    for d in doc["handleData"]:
        alpha, beta, gamma = (parse_multicurve(d[k]) for k in ("alpha", "beta", "gamma"))
        if crossings(alpha, beta) != 2:
            problems.append(f"{d['beta']}: does not meet alpha twice")
        if crossings(alpha, gamma):
            problems.append(f"{d['gamma']}: leaves the handle")
        if not mod2_intersection(gamma, beta):
            problems.append(f"{d['gamma']}: meets beta an even number of times")
        if separates(beta):
            problems.append(f"{d['beta']}: separating curve meeting alpha twice")
    return problems


def _validate_generators(doc: dict) -> list[str]:
    problems = []
    mu = parse_multicurve(doc["base"])
    gens = generators(mu.sig)
    for r in doc["generators"]:
        image = parse_multicurve(r["image"])
        if apply(MappingWord.parse(r["generator"]), mu, gens) != image:
            problems.append(f"{r['generator']}: recorded image is wrong")
        i = crossings(mu, image)
        if i != r["intersection"] or i > 4:
            problems.append(f"{r['generator']}: intersection {i}")
    return problems
