import copy
import json
import random

import pytest

from sepgraph import SurfaceError, build_surface, intersection_number, is_separating, parse_multicurve
from sepgraph.complexes import build_dw_graph, build_f_graph, build_sep_graph, is_dw_vertex, thick_piece_member
from sepgraph.mcg import apply, cap, generators, point_push
from sepgraph.normal import curves
from sepgraph.verifiers import (
    CertificateError,
    FiberError,
    admissible_extension,
    check_no_intersection_two,
    crossings,
    dw_form,
    f_generator_check,
    fiber_path,
    humphries_base,
    one_move,
    putman_check,
    separates,
    thick_chain,
    validate,
    validate_fiber_path,
)


@pytest.fixture(scope="module")
def dw(s31):
    return build_dw_graph(s31, 2, grow=1)


@pytest.fixture(scope="module")
def moved_pairs(dw, s31):
    out = []
    for loop in ("L1", "L2", "L3", "L4", "L5", "L6"):
        w = point_push(loop, s31)
        for m in dw.vertices[::7]:
            n = apply(w, m)
            if n != m:
                out.append((m, n))
    return out


def test_crossings_agree_with_intersection_number(s21):
    rng = random.Random(2)
    cs = curves(s21, 3)[0]
    for _ in range(40):
        a, b = rng.sample(cs, 2)
        assert crossings(a, b) == intersection_number(a, b)


def test_crossings_closed():
    g = generators((2, 0)).twists
    assert crossings(g["t1"], g["t2"]) == 1
    assert crossings(g["t1"], g["t3"]) == 0


def test_separates_agrees(s21):
    for c in curves(s21, 3)[0]:
        assert separates(c) == is_separating(c)


def test_dw_form_and_one_move(dw):
    forms = {dw_form(v) for v in dw.vertices}
    assert forms == {"a", "b"}
    for i, j, _ in dw.edges[:30]:
        assert one_move(dw.vertices[i], dw.vertices[j])
    v = dw.vertices[0]
    assert not one_move(v, v)


def test_putman_certificate_validates(gens21, s21):
    g = build_sep_graph(s21, 4, 4)
    cert = putman_check(g, gens21, gens21.base)
    assert cert.ok
    doc = json.loads(json.dumps(cert.to_json()))
    assert validate(doc) == []


def test_putman_trivial_generators(s21, gens21):
    g = build_sep_graph(s21, 4, 4)
    cert = putman_check(g, None, gens21.base)
    # with the trivial group every vertex must share the base's component
    assert cert.ok == (len(g.components()) == 1)
    g0 = build_sep_graph(s21, 0, 4)
    cert = putman_check(g0, None, gens21.base)
    assert len(g0.components()) > 1 and not cert.ok
    assert cert.to_json()["failures"]


def test_putman_tampering_detected(gens21, s21):
    g = build_sep_graph(s21, 4, 4)
    doc = putman_check(g, gens21, gens21.base).to_json()
    bad = copy.deepcopy(doc)
    bad["generatorCondition"] = bad["generatorCondition"][1:]
    assert validate(bad)
    moved = [k for k, e in enumerate(doc["generatorCondition"]) if len(e["path"]) > 1]
    assert moved
    bad = copy.deepcopy(doc)
    e = bad["generatorCondition"][moved[0]]
    e["path"] = [e["path"][0], e["path"][-1]] if len(e["path"]) > 2 else e["path"]
    e["image"] = doc["base"]
    assert validate(bad)


def test_putman_bridges_genus_three(s31, gens31):
    g = build_sep_graph(s31, 0, 3)
    cert = putman_check(g, gens31, gens31.base)
    assert cert.ok
    doc = cert.to_json()
    for e in doc["generatorCondition"]:
        image = parse_multicurve(e["image"]) if "image" in e else None
        if image is not None and image != gens31.base:
            alpha2 = parse_multicurve(e["bridge"])
            assert intersection_number(alpha2, gens31.base) == 0
            assert intersection_number(alpha2, image) == 0
            assert is_separating(alpha2)
    assert validate(doc) == []


def test_no_double_intersection_small():
    for sig in ((1, 2), (2, 1), (2, 0)):
        doc = check_no_intersection_two(sig, 5)
        assert doc["pass"] and doc["pairsByIntersection"]["2"] == 0
        assert validate(doc) == []
    doc = check_no_intersection_two((2, 1), 5)
    assert doc["handleData"]
    for d in doc["handleData"]:
        assert not is_separating(parse_multicurve(d["beta"]))


def test_no_double_intersection_other_surface():
    with pytest.raises(SurfaceError):
        check_no_intersection_two((3, 1), 3)


def test_no_double_tampered():
    doc = check_no_intersection_two((2, 1), 4)
    doc["violations"] = [["x", "y"]]
    assert validate(doc)


def test_fiber_paths(moved_pairs):
    assert len(moved_pairs) >= 5
    for m, n in moved_pairs[:8]:
        fp = fiber_path(m, n)
        doc = fp.to_json()
        assert validate_fiber_path(doc, (m.text, n.text)) == []
        assert fp.drops == sorted(fp.drops, reverse=True) and fp.drops[-1] == 0
        assert all(cap(v) == cap(m) for v in fp.vertices)


def test_fiber_path_tampered(moved_pairs):
    m, n = moved_pairs[0]
    doc = fiber_path(m, n).to_json()
    bad = copy.deepcopy(doc)
    bad["vertices"] = [bad["vertices"][0], bad["vertices"][-1]]
    if len(doc["vertices"]) > 2:
        assert validate(bad)
    assert validate_fiber_path(doc, (n.text, m.text))


def test_fiber_path_rejects_other_fibers(dw):
    caps = {}
    for v in dw.vertices:
        caps.setdefault(cap(v), v)
    a, b = list(caps.values())[:2]
    with pytest.raises(FiberError):
        fiber_path(a, b)


def test_fiber_path_trivial(dw):
    v = dw.vertices[0]
    assert fiber_path(v, v).vertices == [v]


def test_humphries_base_and_generators():
    mu = humphries_base(3)
    assert mu.sig.boundary == 0
    doc = f_generator_check(3)
    assert doc["pass"]
    assert len(doc["generators"]) == 2 * len(generators((3, 0)).twists)
    assert validate(doc) == []
    bad = copy.deepcopy(doc)
    bad["generators"][0]["intersection"] += 1
    assert validate(bad)
    with pytest.raises(SurfaceError):
        humphries_base(2)


@pytest.fixture(scope="module")
def f_edge(dw):
    f = build_f_graph(dw)
    i, j, _ = f.edges[0]
    return f.vertices[i], f.vertices[j]


def test_admissible_extension(dw, f_edge):
    mu, mu2 = f_edge
    m = next(v for v in dw.vertices if cap(v) == mu)
    m2 = next(v for v in dw.vertices if cap(v) == mu2 and intersection_number(v, m) <= 4)
    e = admissible_extension(m, m2)
    assert e.x.contains(m) and e.x2.contains(m2)
    assert e.x_m2 <= 8 and e.x_x2 <= 20
    assert thick_piece_member(e.x, mu) and thick_piece_member(e.x2, mu2)


def test_admissible_extension_rejects(dw, gens31):
    with pytest.raises(SurfaceError):
        admissible_extension(gens31.base, dw.vertices[0])


def test_thick_chain(dw, f_edge):
    cert = thick_chain(*f_edge, dw)
    doc = json.loads(json.dumps(cert.to_json()))
    assert validate(doc) == []
    bad = copy.deepcopy(doc)
    bad["steps"][0]["x"], bad["steps"][0]["xNext"] = bad["steps"][0]["xNext"], bad["steps"][0]["x"]
    assert validate(bad)


def test_validate_rejects_garbage():
    with pytest.raises(CertificateError):
        validate({"schema": 99})
    with pytest.raises(CertificateError):
        validate({"schema": 1, "kind": "nonsense"})
    with pytest.raises(CertificateError):
        validate({"schema": 1, "kind": "putman"})
    with pytest.raises(CertificateError):
        validate([])
