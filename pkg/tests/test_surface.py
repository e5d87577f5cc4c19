import json

import pytest

from sepgraph import SurfaceError, SurfaceSig, TopoType, build_surface
from sepgraph.surface import paired_closed, paired_open


@pytest.mark.parametrize(
    "sig,chi,punct",
    [((1, 1), -1, 1), ((3, 1), -5, 1), ((2, 0), -2, 0), ((1, 2), -2, 2), ((0, 5), -3, 5), ((3, 0), -4, 0)],
)
def test_euler_characteristic(sig, chi, punct):
    tri = build_surface(sig)
    assert tri.euler_characteristic == chi
    assert len(tri.punctures) == punct


def test_sig_invariants():
    s = SurfaceSig(2, 1)
    assert s.complexity == 4
    assert s.has_separating_curves
    assert not SurfaceSig(1, 2).complexity < 0
    assert SurfaceSig(1, 1).has_separating_curves is False
    assert SurfaceSig(0, 4).has_separating_curves
    assert SurfaceSig.parse("3,1") == SurfaceSig(3, 1)


@pytest.mark.parametrize("sig", [(0, 0), (0, 2), (0, 3)])
def test_rejects_surfaces_without_curves(sig):
    with pytest.raises(SurfaceError):
        build_surface(sig)


def test_negative_sig_rejected():
    with pytest.raises(SurfaceError):
        SurfaceSig(-1, 2)


def test_deterministic_serialization():
    a = build_surface((2, 1)).dumps()
    b = build_surface(SurfaceSig(2, 1)).dumps()
    assert a == b
    doc = json.loads(a)
    assert list(doc)[:2] == ["version", "sig"] or "sig" in doc
    assert "gluing" in doc and "triangles" in doc


def test_gluing_is_involution():
    tri = build_surface((2, 2))
    for t, row in enumerate(tri.gluing):
        for k, (u, l) in enumerate(row):
            assert (u, l) != (t, k)
            assert tri.gluing[u][l] == (t, k)


def test_paired_models():
    tri = build_surface((2, 1))
    closed = paired_closed(tri)
    assert closed.sig == SurfaceSig(2, 0)
    assert paired_open(closed).sig == SurfaceSig(2, 1)
    assert closed.num_edges == tri.num_edges


def test_topotype():
    t = TopoType(0, 3, 1)
    assert t.planar and t.is_pants
    assert TopoType(1, 1, 0).euler_characteristic == -1
    with pytest.raises((SurfaceError, ValueError)):
        TopoType(0, 1, 2)
