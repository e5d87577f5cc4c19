"""All-pairs search for curves that meet at most a few times.

On a surface with boundary the intersection number of two curves is the
linking count of their lifted walks, which the kernels evaluate with an early
exit once the count passes the bound.

On a closed surface each reduced curve is replaced by its plateau of
minimal-weight lifts to the punctured triangulation.  If two curves are in
minimal position on the punctured surface but not on the closed one, the
face around the puncture is a bigon; pushing whichever side crosses fewer
edge germs across the puncture is a single strand slide that does not raise
that curve's weight, so it stays on its plateau and the count drops by two.
Hence the closed intersection number is the minimum over plateau pairs.
"""
from __future__ import annotations

import multiprocessing as mp
from concurrent.futures import ProcessPoolExecutor

from . import kernels
from .normal import Drawing, Multicurve, closed_plateau
from .surface import SurfaceError, paired_open


def lifts(c: Multicurve) -> list[list[tuple[int, int, int]]]:
    """Passage lists of the lifts of a curve used by the pair kernel."""
    if not c.is_curve:
        raise SurfaceError("pair search runs on connected curves")
    tri = c.surface
    if tri.is_ideal:
        fr = kernels.frame(tri)
        return [kernels.passages(fr, list(c.drawing.walks[0]))]
    lift = paired_open(tri)
    fr = kernels.frame(lift)
    out = []
    for w in closed_plateau(tri, c.coords):
        out.append(kernels.passages(fr, list(Drawing.of(lift, w).walks[0])))
    return out


_STATE: dict = {}


def _work(span):
    lo, hi = span
    st = _STATE
    return kernels.close_pairs(st["rows"], st["cols"], st["bound"], st["same"], lo, hi, st["ntri"])


def _spans(n: int, same: bool, parts: int) -> list[tuple[int, int]]:
    # equal shares of the pair triangle (or rectangle)
    if n == 0:
        return []
    cost = [(n - i - 1) if same else 1 for i in range(n)]
    total = sum(cost) or 1
    spans, lo, acc = [], 0, 0
    for i, c in enumerate(cost):
        acc += c
        if acc * parts >= total * (len(spans) + 1) and i + 1 < n:
            spans.append((lo, i + 1))
            lo = i + 1
    spans.append((lo, n))
    return spans


def _expand(curves):
    rows, owner = [], []
    for k, c in enumerate(curves):
        for p in lifts(c):
            rows.append(p)
            owner.append(k)
    return rows, owner


def close_pairs(curves, bound: int, *, others=None, jobs: int = 1) -> list[tuple[int, int, int]]:
    """Sorted ``(i, j, c)`` with ``c = i(curves[i], x[j]) <= bound``.

    ``x`` is ``others`` when given, otherwise ``curves`` itself with ``i < j``.
    Work is split into row ranges over ``jobs`` processes; the merge restores
    the sorted order, so output does not depend on ``jobs``.
    """
    curves = list(curves)
    if not curves:
        return []
    tri = curves[0].surface
    ntri = (tri if tri.is_ideal else paired_open(tri)).num_triangles
    rows, owner = _expand(curves)
    same = others is None
    if same:
        cols, cowner = rows, owner
    else:
        cols, cowner = _expand(list(others))
    _STATE.update(rows=rows, cols=cols, bound=bound, same=same, ntri=ntri)
    try:
        if jobs <= 1 or len(rows) < 256:
            raw = _work((0, len(rows)))
        else:
            spans = _spans(len(rows), same, 4 * jobs)
            ctx = mp.get_context("fork")
            with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as ex:
                raw = [x for part in ex.map(_work, spans) for x in part]
    finally:
        _STATE.clear()
    best: dict[tuple[int, int], int] = {}
    for i, j, c in raw:
        a, b = owner[i], cowner[j]
        if same:
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
        key = (a, b)
        if c < best.get(key, bound + 1):
            best[key] = c
    return sorted((a, b, c) for (a, b), c in best.items())
