"""Crossing sequences of two multicurves in minimal position.

The bigon engine removes crossings in pairs without redrawing anything, so
the surviving crossings keep their places on the original chords.  Reading
them along each curve gives the cyclic order in which the curves meet after
the isotopy, and the walk steps between two crossings give the homotopy class
of the connecting arc.  Everything here works on surfaces with boundary,
where closed walks in the dual graph are free homotopy classes.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .arrangement import Arrangement, Overlay
from .normal import Multicurve, ValidityError, check_weights, normalize, reduce_walk, walk_weights
from .surface import SurfaceError


@dataclass(frozen=True)
class Spot:
    """Where a crossing sits on one curve: component, walk step, order in step."""

    comp: int
    step: int
    order: int
    up: bool  # the chord is run from its low endpoint to its high one


class Meeting:
    """Minimal-position crossings of ``a`` (colour 0) and ``b`` (colour 1)."""

    def __init__(self, a: Multicurve, b: Multicurve):
        tri = a.surface
        if not tri.is_ideal:
            raise SurfaceError("crossing sequences need a surface with boundary")
        self.tri = tri
        self.curves = (a, b)
        ov = self.ov = Overlay(tri, a.coords, b.coords)
        arr = self.arr = Arrangement(ov).reduce()
        fr = self.fr = ov.fr
        self.walks = (ov.traces[0][3], ov.traces[1][3])
        self.spot: tuple[dict, dict] = ({}, {})
        steps: list[list[list[list[int]]]] = []
        for colour in (0, 1):
            _, ncomp, _, walks, _, points = ov.traces[colour]
            entry = {}
            for comp, pts in enumerate(points):
                wk = walks[comp]
                for i, pid in enumerate(pts):
                    entry[(wk[i] // 3, fr.partner[wk[i - 1]] % 3, pid)] = (comp, i)
            per = [[[] for _ in walks[c]] for c in range(ncomp)]
            for t, chs in enumerate(ov.chords):
                for c in chs:
                    if c.colour != colour:
                        continue
                    hit = entry.get((t, c.lo[0], c.plo))
                    up = hit is not None
                    xs = c.crossings
                    if not up:
                        hit = entry[(t, c.hi[0], c.phi)]
                        xs = xs[::-1]
                    comp, i = hit
                    per[comp][i] = list(xs)
                    for order, x in enumerate(xs):
                        self.spot[colour][x] = Spot(comp, i, order, up)
            steps.append(per)
        self.seq = tuple(
            [[x for st in comp for x in st if arr.alive[x]] for comp in steps[colour]]
            for colour in (0, 1)
        )
        self._complements = (a.drawing.complement(tri), b.drawing.complement(tri))

    @property
    def crossings(self) -> int:
        return self.arr.crossings

    def after(self, colour: int, x: int) -> int:
        """Region of the other multicurve entered just after ``x`` going forward."""
        ov = self.ov
        t, ia, ib = ov.cross[x]
        chs = ov.chords[t]
        mine, other = (chs[ia], chs[ib]) if colour == 0 else (chs[ib], chs[ia])
        k, j = other.corner
        corner_in = other.lo < (k, -1.0, 0) < other.hi
        exit_key = mine.hi if self.spot[colour][x].up else mine.lo
        exit_in = other.lo < exit_key < other.hi
        cp = self._complements[1 - colour]
        return cp.piece(t, k, j if exit_in == corner_in else j + 1)

    def other_comp(self, colour: int, x: int) -> int:
        return self.spot[1 - colour][x].comp

    # ------------------------------------------------------------ walks

    def path(self, colour: int, x: int, y: int, forward: bool = True) -> list[int]:
        """Exit sides along ``colour`` from crossing ``x`` to crossing ``y``."""
        sx, sy = self.spot[colour][x], self.spot[colour][y]
        if sx.comp != sy.comp:
            raise SurfaceError("crossings lie on different components")
        wk = self.walks[colour][sx.comp]
        n = len(wk)
        partner = self.fr.partner
        if forward:
            if sx.step == sy.step and sy.order > sx.order:
                return []
            span = (sy.step - sx.step) % n or n
            return [wk[(sx.step + i) % n] for i in range(span)]
        if sx.step == sy.step and sy.order < sx.order:
            return []
        span = (sx.step - sy.step) % n or n
        return [partner[wk[(sx.step - 1 - i) % n]] for i in range(span)]

    def loop(self, colour: int, x: int, forward: bool = True) -> list[int]:
        """The whole component of ``colour`` through ``x``, starting and ending at ``x``."""
        sp = self.spot[colour][x]
        wk = self.walks[colour][sp.comp]
        n = len(wk)
        if forward:
            return [wk[(sp.step + i) % n] for i in range(n)]
        partner = self.fr.partner
        return [partner[wk[(sp.step - 1 - i) % n]] for i in range(n)]


def simple_curve(tri, walk) -> Multicurve | None:
    """The simple curve carried by a closed walk, or ``None`` if it is not simple."""
    fr = kernels.frame(tri)
    red = reduce_walk(fr.partner, walk)
    if not red:
        return None
    w = walk_weights(fr, red)
    try:
        check_weights(tri, w)
    except ValidityError:
        return None
    _, ncomp, _, walks, _, _ = kernels.trace(fr, w)
    if ncomp != 1:
        return None
    got = list(walks[0])
    if not (_rotation(got, red) or _rotation(got, [fr.partner[s] for s in reversed(red)])):
        return None
    c = normalize(tri, w)
    return c if c.is_curve else None


def _rotation(a: list, b: list) -> bool:
    if len(a) != len(b):
        return False
    n = len(a)
    doubled = a + a
    return any(doubled[i : i + n] == b for i in range(n) if doubled[i] == b[0])


def region_of(m: Multicurve, c: Multicurve) -> int:
    """Region of ``m.complement`` holding a curve ``c`` disjoint from ``m``.

    ``c`` must not be a component of ``m``.  In the drawing of ``m ∪ c`` each
    side of ``c`` is a region with a middle piece of some triangle, and that
    middle piece sits inside the middle piece of the same triangle for ``m``.
    """
    tri = m.surface
    if c.coords in m.components:
        raise SurfaceError("curve is a component of the multicurve")
    if not m:
        return 0
    u = m.union(c)
    dr = u.drawing
    idx = dr.components.index(c.coords) if c.coords in dr.components else None
    if idx is None:
        raise SurfaceError("curve is parallel to a component")
    cu = dr.complement(tri)
    cm = m.complement
    for r in cu.sides[idx]:
        for t in range(tri.num_triangles):
            if cu.centre(t) == r:
                return cm.centre(t)
    raise SurfaceError("no middle piece next to the curve")
