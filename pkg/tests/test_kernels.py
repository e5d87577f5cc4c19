import os
import subprocess
import sys

import pytest

from sepgraph import _pykernels, build_surface, kernels
from sepgraph.normal import curves, vertex_link

try:
    from sepgraph import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="extension not built")


def args(tri):
    fr = kernels.frame(tri)
    return fr, [vertex_link(tri, v) for v in tri.punctures]


@needs_c
@pytest.mark.parametrize("sig,bound", [((1, 2), 3), ((2, 1), 3), ((0, 5), 3)])
@pytest.mark.parametrize("mode", [kernels.MULTI, kernels.CONNECTED, kernels.SEPARATING])
def test_scan_agrees(sig, bound, mode):
    fr, links = args(build_surface(sig))
    out = []
    for impl in (_pykernels, _ckernels):
        items, nxt = impl.scan_canonical(fr.ntri, fr.nedge, fr.partner, fr.edge, fr.fwd, links, bound, mode, None, 10**6)
        assert nxt is None
        out.append([tuple(x) for x in items])
    assert out[0] == out[1]


@needs_c
def test_scan_resumes(s21):
    fr, links = args(s21)
    full, _ = _ckernels.scan_canonical(fr.ntri, fr.nedge, fr.partner, fr.edge, fr.fwd, links, 3, kernels.MULTI, None, 10**6)
    got, start = [], None
    while True:
        items, start = _ckernels.scan_canonical(fr.ntri, fr.nedge, fr.partner, fr.edge, fr.fwd, links, 3, kernels.MULTI, start, 50)
        got += items
        if start is None:
            break
    assert [tuple(x) for x in got] == [tuple(x) for x in full]


def norm(x):
    if isinstance(x, (list, tuple)):
        return [norm(y) for y in x]
    return x


@needs_c
def test_overlay_and_trace_agree(s21):
    fr = kernels.frame(s21)
    cs = curves(s21, 3)[0][:40]
    for a in cs:
        ta = _pykernels.trace(fr.ntri, fr.nedge, fr.partner, fr.edge, fr.fwd, a.coords)
        tc = _ckernels.trace(fr.ntri, fr.nedge, fr.partner, fr.edge, fr.fwd, a.coords)
        assert norm(ta) == norm(tc)
        for b in cs[:10]:
            assert _pykernels.overlay_crossings(fr.ntri, fr.edge, fr.fwd, a.coords, b.coords) == \
                _ckernels.overlay_crossings(fr.ntri, fr.edge, fr.fwd, a.coords, b.coords)


@needs_c
def test_region_count_agrees(s21):
    fr = kernels.frame(s21)
    for m in curves(s21, 4)[0][:60]:
        assert _pykernels.region_count(fr.ntri, fr.partner, fr.edge, fr.fwd, m.coords) == \
            _ckernels.region_count(fr.ntri, fr.partner, fr.edge, fr.fwd, m.coords)


def test_bad_triangle(torus):
    fr = kernels.frame(torus)
    assert kernels.bad_triangle(fr, (1, 1, 0)) == -1
    assert kernels.bad_triangle(fr, (1, 0, 0)) >= 0


def test_pure_switch():
    env = dict(os.environ, SEPGRAPH_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from sepgraph import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    ).stdout.strip()
    assert out == _pykernels.BACKEND


def test_pure_backend_end_to_end():
    code = (
        "from sepgraph import build_surface\n"
        "from sepgraph.normal import separating_curves\n"
        "print(len(separating_curves(build_surface((2, 1)), 4)[0]))\n"
    )
    env = dict(os.environ, SEPGRAPH_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "114"
