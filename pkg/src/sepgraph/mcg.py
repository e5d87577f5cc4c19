"""Mapping classes acting on multicurves.

Curves move as closed walks in the dual graph of the triangulation: a walk is
the cyclic list of sides through which it leaves each triangle.  A Dehn twist
splices a copy of the twisting curve into the walk at every crossing of a
drawing of the two curves; a half twist rewrites every passage across its
arc.  Reducing the walk gives the normal coordinates of the image.  Closed
surfaces are handled on the once-punctured model and capped afterwards.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from .arrangement import Overlay
from .normal import (
    Multicurve,
    ValidityError,
    intersection_number,
    normalize,
    reduce_walk,
    vertex_link,
    walk_weights,
)
from .surface import (
    SurfaceError,
    SurfaceSig,
    Triangulation,
    build_surface,
    paired_closed,
    paired_open,
    split_history,
)


class WordError(ValueError):
    """A mapping word that cannot be parsed or applied."""


# ---------------------------------------------------------------- walks

def _walks(tri: Triangulation, w):
    fr = kernels.frame(tri)
    return kernels.trace(fr, w)


def _loop(walk, i, forward, partner):
    n = len(walk)
    if forward:
        return list(walk[i:]) + list(walk[:i])
    return [partner[walk[(i - 1 - j) % n]] for j in range(n)]


def _ccw_between(p, q, k):
    return p < k < q if p < q else (k > p or k < q)


def twist_coords(tri: Triangulation, a, c, power: int = 1) -> tuple[int, ...]:
    """Weights of ``T_c^power(a)`` on an ideal triangulation, before normalizing.

    ``c`` must be connected.  Positive powers turn left into ``c`` at every
    crossing.
    """
    fr = kernels.frame(tri)
    a = tuple(a)
    for _ in range(abs(power)):
        a = _twist_once(tri, fr, a, tuple(c), power > 0)
    return a


def _twist_once(tri, fr, a, c, left):
    if not any(a):
        return a
    ov = Overlay(tri, a, c)
    if not ov.cross:
        return a
    _, _, _, wa, _, pa = ov.traces[0]
    _, nc, _, wc, _, pc = ov.traces[1]
    if nc != 1:
        raise SurfaceError("twisting curve must be connected")
    wc, pc = wc[0], pc[0]
    chord_at = {}
    c_step = {}
    for t, chs in enumerate(ov.chords):
        for ch in chs:
            if ch.colour == 0:
                chord_at[(t, ch.plo)] = ch
                chord_at[(t, ch.phi)] = ch
    for i, pid in enumerate(pc):
        c_step[(wc[i] // 3, pid)] = i
    total = [0] * fr.nedge
    for walk, pts in zip(wa, pa):
        n = len(walk)
        out = []
        for j in range(n):
            t = walk[j] // 3
            ch = chord_at[(t, pts[j])]
            order = ch.crossings if ch.plo == pts[j] else ch.crossings[::-1]
            p, q = (ch.lo, ch.hi) if ch.plo == pts[j] else (ch.hi, ch.lo)
            for x in order:
                cc = ov.chords[t][ov.cross[x][2]]
                right = cc.lo if _ccw_between(p, q, cc.lo) else cc.hi
                target = cc.hi if right is cc.lo else cc.lo
                if not left:
                    target = right
                i = c_step.get((t, cc.plo))
                entry = cc.plo
                if i is None:
                    i = c_step[(t, cc.phi)]
                    entry = cc.phi
                target_pid = cc.plo if target is cc.lo else cc.phi
                out.extend(_loop(wc, i, target_pid != entry, fr.partner))
            out.append(walk[j])
        for s in reduce_walk(fr.partner, out):
            total[fr.edge[s]] += 1
    return tuple(total)


def _around(tri: Triangulation, start, stop) -> list[int]:
    """Exit sides around a vertex, in link order, from corner ``start`` to ``stop``."""
    for link in tri.vertex_links:
        if start in link:
            break
    i = link.index(start)
    out = []
    while link[i % len(link)] != stop:
        t, k = link[i % len(link)]
        out.append(3 * t + k)
        i += 1
    return out


def _half_paths(tri: Triangulation, e: int, power: int):
    """Exit sides crossing ``e`` and their replacements under the half twist."""
    (tl, k), (tr, l) = tri.edge_sides[e]
    fr = kernels.frame(tri)
    q_rl = [fr.partner[s] for s in reversed(_around(tri, (tl, (k + 1) % 3), (tr, l)))]
    p_rl = _around(tri, (tr, (l + 1) % 3), (tl, k))
    lr = 3 * tl + k
    rl = 3 * tr + l
    first, last = (p_rl, q_rl) if power > 0 else (q_rl, p_rl)
    r_to_l = first + [lr] + last
    l_to_r = [fr.partner[s] for s in reversed(r_to_l)]
    return {rl: r_to_l, lr: l_to_r}


def half_twist_coords(tri: Triangulation, e: int, a, power: int = 1) -> tuple[int, ...]:
    """Weights of the image of ``a`` under a power of the half twist along ``e``.

    ``e`` must join two different punctures.  A passage from the right
    triangle of ``e`` to the left one becomes: around the tail of ``e``, back
    across ``e``, around the head.  The inverse swaps head and tail, and the
    square is the left twist about the boundary of a neighbourhood of ``e``.
    """
    p, q = tri.edge_endpoints(e)
    if p == q:
        raise SurfaceError(f"edge {e} is a loop; half twists need an arc between punctures")
    fr = kernels.frame(tri)
    subst = _half_paths(tri, e, power)
    a = tuple(a)
    for _ in range(abs(power)):
        if not any(a):
            return a
        total = [0] * fr.nedge
        for walk in _walks(tri, a)[3]:
            out = []
            for s in walk:
                out.extend(subst.get(s, (s,)))
            for s in reduce_walk(fr.partner, out):
                total[fr.edge[s]] += 1
        a = tuple(total)
    return a


# ---------------------------------------------------------------- generator curves

def _fan_walk(genus: int, chords) -> list[int]:
    """Dual walk of a closed path of chords in the fan-triangulated 4g-gon.

    Each chord ``(i, j)`` enters the polygon through side ``i`` and leaves
    through side ``j``; the next chord starts at the side glued to ``j``.
    """
    n = 4 * genus
    tris = n - 2

    def home(i):
        if i == 0:
            return 0, 0
        if i == n - 1:
            return tris - 1, 2
        return i - 1, 1

    walk = []
    for i, j in chords:
        a, b = home(i)[0], home(j)[0]
        while a < b:
            walk.append(3 * a + 2)
            a += 1
        while a > b:
            walk.append(3 * a)
            a -= 1
        t, k = home(j)
        walk.append(3 * t + k)
    return walk


def _lift_split(walk, partner_old, t, n):
    """Rewrite a reduced walk across the 1-to-3 split of triangle ``t``."""
    xs = (t, n, n + 1)
    m = len(walk)
    out = []
    for idx in range(m):
        s = walk[idx]
        if s // 3 != t:
            out.append(s)
            continue
        j = s % 3
        i = partner_old[walk[idx - 1]] % 3
        if j == (i + 2) % 3:
            out += [3 * xs[i] + 2, 3 * xs[j]]
        else:
            out += [3 * xs[i] + 1, 3 * xs[j]]
    return out


def _split_all(sig: SurfaceSig, walk):
    """Carry a walk on the unsplit model to the triangulation of ``sig``."""
    g = sig.genus
    tri = build_surface(SurfaceSig(g, 1) if g else SurfaceSig(0, 3))
    for step, (t, n) in enumerate(split_history(sig)):
        fr = kernels.frame(tri)
        walk = _lift_split(walk, fr.partner, t, n)
        tri = build_surface(SurfaceSig(g, 2 + step) if g else SurfaceSig(0, 4 + step))
    return tri, walk


def _inverse_walk(partner, walk):
    return [partner[s] for s in reversed(walk)]


def _curve_from_walk(sig: SurfaceSig, walk) -> Multicurve:
    base = build_surface(SurfaceSig(sig.genus, 1))
    tri, walk = _split_all(sig, reduce_walk(kernels.frame(base).partner, walk))
    fr = kernels.frame(tri)
    w = walk_weights(fr, reduce_walk(fr.partner, walk))
    if sig.boundary == 0:
        tri = build_surface(sig)
    return normalize(tri, w)


def _handle_chords(genus: int):
    x = [[(4 * h, 4 * h + 2)] for h in range(genus)]
    y = [[(4 * h + 1, 4 * h + 3)] for h in range(genus)]
    z = [[(4 * h, 4 * h + 6), (4 * h + 4, 4 * h + 2)] for h in range(genus - 1)]
    return x, y, z


def arc_boundary(tri: Triangulation, e: int) -> Multicurve:
    """Boundary of a neighbourhood of an edge joining two punctures."""
    p, q = tri.edge_endpoints(e)
    w = [a + b for a, b in zip(vertex_link(tri, p), vertex_link(tri, q))]
    w[e] = 0
    return normalize(tri, w)


def _search(tri: Triangulation, accept, bounds=(1, 2, 3, 4)) -> Multicurve | None:
    from .normal import curves

    for bound in bounds:
        found = [c for c in curves(tri, bound)[0] if accept(c)]
        if found:
            return min(found, key=lambda c: (sum(c.coords), c.coords))
    return None


def _walk_of(curve: Multicurve) -> list[int]:
    (walk,) = curve.drawing.walks
    return list(walk)


def _cuts_handle(c: Multicurve) -> bool:
    from .normal import cut_along

    return c.is_curve and any(
        t.genus == 1 and t.total_boundary == 1 and t.surface_boundary == 0
        for _, t in cut_along(c.surface, c)
    )


@lru_cache(maxsize=None)
def _chain_walks(genus: int) -> tuple:
    """Walks on ``S_{genus,1}`` of the chain c_1..c_2g, the curve c_0 and the base curve."""
    if genus == 0:
        return (), None, None
    base = build_surface(SurfaceSig(genus, 1))
    partner = kernels.frame(base).partner
    x, y, z = _handle_chords(genus)
    wx = [_fan_walk(genus, ch) for ch in x]
    wy = [_fan_walk(genus, ch) for ch in y]
    chain = [wx[0], wy[0]]
    fixed = [_curve_from_walk(base.sig, wx[0]), _curve_from_walk(base.sig, wy[0])]
    extra = _curve_from_walk(base.sig, wx[1]) if genus >= 2 else None
    for h in range(genus - 1):
        ya, yb = fixed[-1], _curve_from_walk(base.sig, wy[h + 1])
        if h == 0:
            zw = _fan_walk(genus, z[0])
        else:
            # the polygon connectors of neighbouring gaps cross; take the
            # lightest curve with the connector's intersection pattern
            others = fixed[:-1] + [extra] + [
                _curve_from_walk(base.sig, w) for w in wy[h + 2 :]
            ]

            def ok(c, ya=ya, yb=yb, others=others):
                return (
                    c.is_curve
                    and intersection_number(c, ya) == 1
                    and intersection_number(c, yb) == 1
                    and not any(intersection_number(c, o) for o in others)
                )

            zw = _walk_of(_search(base, ok))
        chain += [zw, wy[h + 1]]
        fixed += [_curve_from_walk(base.sig, zw), yb]
    c0 = wx[1] if genus >= 2 else None
    # the base curve bounds a neighbourhood of the last handle's x and y
    hx, hy = wx[-1], wy[-1]
    common = sorted({s // 3 for s in hx} & {s // 3 for s in hy})
    t = common[-1]

    def rot(w):
        i = [s // 3 for s in w].index(t)
        return w[i:] + w[:i]

    hx, hy = rot(hx), rot(hy)
    alpha = hx + hy + _inverse_walk(partner, hx) + _inverse_walk(partner, hy)
    return tuple(tuple(w) for w in chain), c0, reduce_walk(partner, alpha)


@dataclass(frozen=True)
class GeneratorSet:
    """Twist curves and half twists generating the mapping class group.

    ``twists`` maps ``t1, t2, ...`` to curves: the Humphries chain, the extra
    Humphries curve meeting the fourth chain curve, and for several punctures
    one curve per puncture beyond the first, isotopic to ``t1`` across it.
    ``half_twists`` maps ``hij`` to an edge joining punctures ``i`` and ``j``.
    """

    surface: Triangulation
    twists: dict
    half_twists: dict
    base: Multicurve | None  # None when S has no separating curves

    def curve(self, name: str) -> Multicurve:
        try:
            return self.twists[name]
        except KeyError:
            raise WordError(f"no twist generator {name!r} on {self.surface.sig}") from None

    def letters(self) -> list["Letter"]:
        out = []
        for name in self.twists:
            out += [Letter("t", name, 1), Letter("t", name, -1)]
        for name in self.half_twists:
            out += [Letter("h", name, 1), Letter("h", name, -1)]
        return out

    def loops(self) -> list[str]:
        if self.surface.sig.boundary != 1:
            return []
        return [f"L{i + 1}" for i in range(2 * self.surface.sig.genus)]


@lru_cache(maxsize=None)
def generators(sig: SurfaceSig | tuple[int, int]) -> GeneratorSet:
    if not isinstance(sig, SurfaceSig):
        sig = SurfaceSig(*sig)
    tri = build_surface(sig)
    g, b = sig.genus, sig.boundary
    twists: dict[str, Multicurve] = {}
    halves: dict[str, int] = {}
    pairs = []
    if b >= 2:
        for i in range(b - 1):
            e = next(
                e for e in range(tri.num_edges)
                if set(tri.edge_endpoints(e)) == {tri.punctures[i], tri.punctures[i + 1]}
            )
            pairs.append(e)
            halves[f"h{i + 1}{i + 2}" if b <= 9 else f"h{i + 1}-{i + 2}"] = e
    if g == 0:
        for e in pairs:
            twists[f"t{len(twists) + 1}"] = arc_boundary(tri, e)
        base = twists["t1"]
    else:
        chain, c0, alpha = _chain_walks(g)
        for w in chain:
            twists[f"t{len(twists) + 1}"] = _curve_from_walk(sig, list(w))
        if c0 is not None:
            twists[f"t{len(twists) + 1}"] = _curve_from_walk(sig, list(c0))
        if g >= 2:
            base = _curve_from_walk(sig, alpha)
        else:
            x0, y0 = twists["t1"], twists["t2"]
            base = _search(
                tri,
                lambda c: _cuts_handle(c)
                and not intersection_number(c, x0)
                and not intersection_number(c, y0),
            )
        if b >= 2:
            twists.update(_puncture_curves(tri, list(twists.values())))
    for name, c in twists.items():
        if not c.is_curve:
            raise SurfaceError(f"internal error: generator {name} on {sig} is not a curve")
    if not sig.has_separating_curves:
        base = None
    elif base is None or not base.is_curve:
        raise SurfaceError(f"internal error: no base curve on {sig}")
    return GeneratorSet(tri, twists, halves, base)


def _puncture_curves(tri: Triangulation, chain) -> dict:
    from .normal import cut_along

    x0, y0 = chain[0], chain[1]
    rest = chain[2:]
    out = {}
    b = tri.sig.boundary
    for j in range(1, b):
        def ok(c, j=j):
            if not c.is_curve or c == x0 or intersection_number(c, x0):
                return False
            if intersection_number(c, y0) != 1 or any(intersection_number(c, r) for r in rest):
                return False
            m = c.union(x0)
            return any(
                t.genus == 0 and t.total_boundary == j + 2 and t.surface_boundary == j
                for _, t in cut_along(tri, m)
            )

        c = _search(tri, ok)
        if c is None:
            raise SurfaceError(f"internal error: no puncture curve {j} on {tri.sig}")
        out[f"t{len(chain) + j}"] = c
    return out


# ---------------------------------------------------------------- words

@dataclass(frozen=True)
class Letter:
    kind: str  # "t" twist, "h" half twist, "push" point push, "c" twist about a given curve
    name: str
    exp: int = 1
    curve: Multicurve | None = None

    def inverse(self) -> "Letter":
        return Letter(self.kind, self.name, -self.exp, self.curve)

    @property
    def text(self) -> str:
        if self.kind == "push":
            head = f"push:{self.name}"
        elif self.kind == "c":
            head = f"c[{self.curve.text}]"
        else:
            head = self.name
        return head if self.exp == 1 else head + "^-1"


_TOKEN = re.compile(r"^(?:(t\d+)|(h\d+(?:-\d+)?)|push:(L\d+)|c\[([^\]]+)\])(\^-1|\^1)?$")


@dataclass(frozen=True)
class MappingWord:
    """A word in the generators, applied left to right."""

    letters: tuple[Letter, ...] = ()

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: "MappingWord") -> "MappingWord":
        return MappingWord(self.letters + other.letters)

    def inverse(self) -> "MappingWord":
        return MappingWord(tuple(x.inverse() for x in reversed(self.letters)))

    @property
    def text(self) -> str:
        return " ".join(x.text for x in self.letters)

    def __str__(self):
        return self.text or "id"

    @classmethod
    def parse(cls, text: str) -> "MappingWord":
        letters = []
        for tok in text.split():
            if tok == "id":
                continue
            m = _TOKEN.match(tok)
            if not m:
                raise WordError(f"bad word token {tok!r}")
            exp = -1 if m.group(5) == "^-1" else 1
            if m.group(1):
                letters.append(Letter("t", m.group(1), exp))
            elif m.group(2):
                letters.append(Letter("h", m.group(2), exp))
            elif m.group(3):
                letters.append(Letter("push", m.group(3), exp))
            else:
                from .normal import parse_multicurve

                letters.append(Letter("c", "c", exp, parse_multicurve(m.group(4))))
        return cls(tuple(letters))


def _ideal(m: Multicurve) -> Triangulation:
    return m.surface if m.surface.is_ideal else paired_open(m.surface)


def twist(c: Multicurve, m: Multicurve, power: int = 1) -> Multicurve:
    """``T_c^power(m)``."""
    if c.sig != m.sig:
        raise SurfaceError("curves live on different surfaces")
    if not c.is_curve:
        raise SurfaceError("twisting curve must be connected")
    if not m or power == 0:
        return m
    return normalize(m.surface, twist_coords(_ideal(m), m.coords, c.coords, power))


def half_twist(gens: GeneratorSet, name: str, m: Multicurve, power: int = 1) -> Multicurve:
    if m.sig.boundary < 2:
        raise WordError(f"half twists need at least two boundary components, not {m.sig}")
    try:
        e = gens.half_twists[name]
    except KeyError:
        raise WordError(f"no half twist {name!r} on {m.sig}") from None
    if not m:
        return m
    return normalize(m.surface, half_twist_coords(m.surface, e, m.coords, power))


def loop_edge(tri: Triangulation, loop: str) -> int:
    """Edge of the catalogue loop ``L1 .. L2g``: the sides of the 4g-gon."""
    g = tri.sig.genus
    m = re.fullmatch(r"L(\d+)", loop)
    if not m or not 1 <= int(m.group(1)) <= 2 * g:
        raise WordError(f"loop {loop!r} is not in the catalogue L1..L{2 * g}")
    i = int(m.group(1)) - 1
    side = 4 * (i // 2) + i % 2
    n, tris = 4 * g, 4 * g - 2
    t, k = (0, 0) if side == 0 else ((tris - 1, 2) if side == n - 1 else (side - 1, 1))
    return tri.edge_of[t][k]


def push_curves(tri: Triangulation, loop: str) -> tuple[Multicurve, Multicurve]:
    """The two boundary curves of a neighbourhood of ``loop`` together with the puncture."""
    if tri.sig.boundary != 1:
        raise WordError(f"point pushes are defined on S_(g,1), not {tri.sig}")
    e = loop_edge(tri, loop)
    (tl, k), (tr, l) = tri.edge_sides[e]
    fr = kernels.frame(tri)
    out = []
    for start, stop in (((tl, (k + 1) % 3), (tl, k)), ((tr, (l + 1) % 3), (tr, l))):
        walk = reduce_walk(fr.partner, _around(tri, start, stop))
        out.append(normalize(tri, walk_weights(fr, walk)))
    return out[0], out[1]


def point_push(loop: str, tri: Triangulation | SurfaceSig | tuple) -> MappingWord:
    """``T_{γ1} T_{γ2}^-1`` for the catalogue loop; ``L0`` is the trivial loop."""
    if not isinstance(tri, Triangulation):
        tri = build_surface(tri)
    if loop in ("L0", "trivial"):
        return MappingWord()
    g1, g2 = push_curves(tri, loop)
    return MappingWord((Letter("c", "c", 1, g1), Letter("c", "c", -1, g2)))


def apply(word: MappingWord | str, m: Multicurve, gens: GeneratorSet | None = None) -> Multicurve:
    """Image of ``m`` under ``word``, letters applied left to right."""
    if isinstance(word, str):
        word = MappingWord.parse(word)
    if gens is None and any(x.kind in ("t", "h") for x in word.letters):
        gens = generators(m.sig)
    for x in word.letters:
        if x.kind == "t":
            m = twist(gens.curve(x.name), m, x.exp)
        elif x.kind == "c":
            if x.curve.sig != m.sig:
                raise WordError(f"curve {x.curve.text} is not on {m.sig}")
            m = twist(x.curve, m, x.exp)
        elif x.kind == "h":
            m = half_twist(gens, x.name, m, x.exp)
        else:
            w = point_push(x.name, m.surface)
            m = apply(w if x.exp > 0 else w.inverse(), m)
    return m


def cap(m: Multicurve) -> Multicurve:
    """Image under the map forgetting the puncture of ``S_(g,1)``."""
    if m.sig.boundary != 1:
        raise SurfaceError(f"capping needs one boundary component, not {m.sig}")
    return normalize(paired_closed(m.surface), m.coords)


def capped_word(word: MappingWord) -> MappingWord:
    """The word on the closed surface; pushes become trivial."""
    out = []
    for x in word.letters:
        if x.kind == "push":
            continue
        if x.kind == "c":
            out.append(Letter("c", "c", x.exp, cap(x.curve)))
        else:
            out.append(x)
    return MappingWord(tuple(out))
