import pytest

from sepgraph import SurfaceError, SurfaceSig, build_surface, cut_along, intersection_number, is_separating
from sepgraph.complexes import build_dw_graph, dw_neighbours
from sepgraph.normal import collect, enumerate_multicurves
from sepgraph.witnesses import (
    ClassificationError,
    Subsurface,
    WholeSurface,
    classify_pair,
    is_witness,
    search_pairs,
    separating_escape,
    witness_regions,
    witness_report,
)


def test_whole_surface_is_witness():
    assert is_witness(WholeSurface(SurfaceSig(2, 1)))
    assert WholeSurface(SurfaceSig(2, 1)).to_json()["whole"] is True


def test_handle_complements_are_not_witnesses(gens21):
    b = gens21.base
    for i in range(2):
        y = Subsurface.of(b, i)
        assert not is_witness(y)
        rep = witness_report(y, 4)
        c = rep["certificate"]["separatingCurve"]
        assert c is not None
        assert rep["verdict"] is False


def test_escape_curve_misses_subsurface(gens31):
    y = Subsurface.of(gens31.base, 0)
    c = separating_escape(y, 4)
    assert c is not None and is_separating(c)
    assert intersection_number(c, gens31.base) == 0


def test_subsurface_index_checked(gens21):
    with pytest.raises(SurfaceError):
        Subsurface.of(gens21.base, 5)


@pytest.fixture(scope="module")
def dw_vertex(s31):
    return build_dw_graph(s31, 2).vertices[0]


def test_subsurface_json_round_trip(dw_vertex):
    mu = dw_vertex
    for i in witness_regions(mu):
        y = Subsurface.of(mu, i)
        z = Subsurface.from_json(y.to_json())
        assert z == y and z.topo == y.topo


def test_dw_vertex_has_two_witnesses(dw_vertex):
    mu = dw_vertex
    wit = witness_regions(mu)
    assert len(wit) == 2
    a, b = (Subsurface.of(mu, i) for i in wit)
    assert a.topo.planar and b.topo.planar
    assert classify_pair(*sorted([a, b])) in ("one-boundary-A", "one-boundary-B")


def test_type_b_vertex(dw_vertex):
    mu = dw_vertex
    forms = set()
    for n in dw_neighbours(mu):
        wit = witness_regions(n)
        if len(wit) >= 2:
            forms.add(classify_pair(*sorted(Subsurface.of(n, i) for i in wit[:2])))
    assert "one-boundary-B" in forms


def test_unknown_form_rejected(gens31):
    y = Subsurface.of(gens31.base, 0)
    with pytest.raises(ClassificationError):
        classify_pair(y, y)


def test_pants_and_annulus_not_witnesses(s21):
    for m in collect(enumerate_multicurves(s21, 2))[0]:
        for i, (_, t) in enumerate(cut_along(s21, m)):
            if t.is_pants:
                assert not is_witness(Subsurface(m, i, t))


def test_small_searches():
    r = search_pairs(build_surface((2, 1)), 4)
    assert r.pairs == [] and r.rank == 1
    r = search_pairs(build_surface((1, 2)), 3)
    assert r.pairs == []
    doc = r.to_json()
    assert set(doc["tags"]) == {"closed-type", "two-boundary-type", "one-boundary-A", "one-boundary-B"}


def test_capped_search_reports_truncation():
    r = search_pairs(build_surface((3, 1)), 4, cap=500)
    assert r.truncation is not None
    assert "truncation" in r.to_json()


def test_genus_three_small_search():
    r = search_pairs(build_surface((3, 1)), 2)
    assert r.rank == 2
    assert {p.tag for p in r.pairs} <= {"one-boundary-A", "one-boundary-B"}
    assert r.pairs
