"""Backend selection for the hot kernels.

The compiled extension is preferred; ``SEPGRAPH_PURE=1`` forces the
pure-Python fallback.  Both expose the same functions.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from . import _pykernels

if os.environ.get("SEPGRAPH_PURE", "") not in ("", "0"):
    impl = _pykernels
else:
    try:
        from . import _ckernels as impl
    except ImportError:  # extension not built
        impl = _pykernels

BACKEND = impl.BACKEND
MULTI, CONNECTED, SEPARATING = impl.MULTI, impl.CONNECTED, impl.SEPARATING


@dataclass(frozen=True)
class Frame:
    """Flat arrays describing a triangulation, consumed by the kernels."""

    ntri: int
    nedge: int
    nvert: int
    partner: tuple
    edge: tuple
    fwd: tuple
    vert: tuple
    marked: tuple


def frame(tri) -> Frame:
    cached = tri.__dict__.get("_frame")
    if cached is not None:
        return cached
    partner, edge, fwd, vert = [], [], [], []
    for t in range(tri.num_triangles):
        for k in range(3):
            u, l = tri.gluing[t][k]
            partner.append(3 * u + l)
            edge.append(tri.edge_of[t][k])
            fwd.append(1 if tri.side_is_forward(t, k) else 0)
            vert.append(tri.corners[t][k])
    fr = Frame(
        tri.num_triangles,
        tri.num_edges,
        tri.num_vertices,
        tuple(partner),
        tuple(edge),
        tuple(fwd),
        tuple(vert),
        tuple(1 if tri.is_puncture(v) else 0 for v in range(tri.num_vertices)),
    )
    object.__setattr__(tri, "_frame", fr)
    return fr


def bad_triangle(fr: Frame, w) -> int:
    return impl.bad_triangle(fr.ntri, fr.edge, w)


def trace(fr: Frame, w):
    return impl.trace(fr.ntri, fr.nedge, fr.partner, fr.edge, fr.fwd, w)


def regions(fr: Frame, w, arcs):
    return impl.regions(
        fr.ntri, fr.nedge, fr.partner, fr.edge, fr.fwd, fr.vert, fr.nvert, fr.marked, w, arcs
    )


def passages(fr: Frame, walk):
    return impl.passages(fr.partner, walk)


def lift_crossings(pa, pb) -> int:
    return impl.lift_crossings(pa, pb)


def overlay_crossings(fr: Frame, wa, wb) -> int:
    return impl.overlay_crossings(fr.ntri, fr.edge, fr.fwd, wa, wb)


def valid_vectors(fr: Frame, bound: int):
    return impl.valid_vectors(fr.ntri, fr.nedge, fr.edge, bound)


def region_count(fr: Frame, w) -> int:
    return impl.region_count(fr.ntri, fr.partner, fr.edge, fr.fwd, w)


def close_pairs(rows, cols, bound: int, same: bool, lo: int = 0, hi: int | None = None, ntri: int = -1):
    """``(i, j, c)`` for lifted passage lists meeting at most ``bound`` times."""
    return impl.close_pairs(rows, cols, bound, same, lo, len(rows) if hi is None else hi, ntri)
