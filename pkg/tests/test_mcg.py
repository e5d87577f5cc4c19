import random

import pytest

from sepgraph import build_surface, intersection_number, is_separating
from sepgraph.mcg import (
    MappingWord,
    WordError,
    apply,
    cap,
    capped_word,
    generators,
    point_push,
    push_curves,
    twist,
)
from sepgraph.normal import curves, enumerate_multicurves, collect


def random_word(gens, rng, length):
    letters = gens.letters()
    return MappingWord(tuple(rng.choice(letters) for _ in range(length)))


@pytest.mark.parametrize("sig", [(1, 1), (2, 1), (3, 1), (2, 0), (1, 2), (0, 5)])
def test_generators_are_curves(sig):
    g = generators(sig)
    assert g.twists
    assert all(c.is_curve for c in g.twists.values())
    assert bool(g.half_twists) == (sig[1] >= 2)
    assert g.base.is_curve if sig != (1, 1) else g.base is None


def test_humphries_chain_pattern(gens31):
    t = gens31.twists
    chain = [t[f"t{i}"] for i in range(1, 7)]
    for i, a in enumerate(chain):
        for j, b in enumerate(chain):
            if i < j:
                assert intersection_number(a, b) == (1 if j == i + 1 else 0)
    assert intersection_number(t["t7"], t["t4"]) == 1
    assert all(intersection_number(t["t7"], chain[k]) == 0 for k in (0, 1, 2, 4, 5))


def test_base_cuts_off_handle(gens31):
    assert is_separating(gens31.base)


def test_disjoint_twist_is_identity(gens21):
    t1, t3 = gens21.twists["t1"], gens21.twists["t3"]
    assert twist(t1, t3) == t3
    assert twist(t1, t1) == t1


def test_twist_identity_small(gens21, s21):
    rng = random.Random(5)
    cs = curves(s21, 2)[0]
    for _ in range(15):
        a = rng.choice(cs)
        c = rng.choice(list(gens21.twists.values()))
        k = intersection_number(a, c)
        for n in (1, -1, 2):
            assert intersection_number(twist(c, a, n), a) == abs(n) * k * k


def test_word_round_trip(gens21, s21):
    rng = random.Random(9)
    ms = collect(enumerate_multicurves(s21, 2))[0]
    for _ in range(40):
        w = random_word(gens21, rng, rng.randint(1, 4))
        m = rng.choice(ms)
        assert apply(w.inverse(), apply(w, m)) == m


def test_half_twist_round_trip():
    g = generators((1, 2))
    for m in collect(enumerate_multicurves(g.surface, 2))[0][:40]:
        assert apply("h12^-1", apply("h12", m)) == m
        assert apply("h12 h12", m) == apply(MappingWord.parse("h12").__add__(MappingWord.parse("h12")), m)


def test_half_twist_needs_two_boundaries(gens21):
    with pytest.raises(WordError):
        apply("h12", gens21.base)


def test_word_parse_and_text():
    w = MappingWord.parse("t1 t2^-1 push:L3 h12")
    assert w.text == "t1 t2^-1 push:L3 h12"
    assert w.inverse().text == "h12^-1 push:L3^-1 t2 t1^-1"
    assert str(MappingWord.parse("id")) == "id"
    with pytest.raises(WordError):
        MappingWord.parse("q7")


def test_unknown_generator(gens21):
    with pytest.raises(WordError):
        apply("t9", gens21.base)


def test_trivial_push_is_identity():
    assert len(point_push("L0", (3, 1))) == 0


def test_push_catalogue_errors():
    with pytest.raises(WordError):
        point_push("L9", (3, 1))
    with pytest.raises(WordError):
        push_curves(build_surface((2, 0)), "L1")


def test_push_curves_cobound_annulus_with_puncture(s31):
    g1, g2 = push_curves(s31, "L1")
    assert g1 != g2
    assert intersection_number(g1, g2) == 0
    assert cap(g1) == cap(g2)


@pytest.mark.parametrize("loop", ["L1", "L2", "L3", "L4", "L5", "L6"])
def test_push_preserves_cap(s31, loop):
    w = point_push(loop, s31)
    for m in collect(enumerate_multicurves(s31, 2, cap=40))[0]:
        assert cap(apply(w, m)) == cap(m)


def test_push_moves_something(s31):
    w = point_push("L1", s31)
    ms = curves(s31, 2)[0][::40]
    assert any(apply(w, m) != m for m in ms)


def test_capped_word_drops_pushes():
    assert capped_word(MappingWord.parse("t1 push:L2 t3^-1")).text == "t1 t3^-1"


def test_cap_requires_one_boundary(gens21):
    with pytest.raises(Exception):
        cap(generators((1, 2)).base)
    assert cap(gens21.base).sig.boundary == 0
