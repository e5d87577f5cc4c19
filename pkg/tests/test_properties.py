from hypothesis import HealthCheck, given, settings, strategies as st

from sepgraph import build_surface, cut_along, intersection_number, normalize
from sepgraph.mcg import MappingWord, apply, generators
from sepgraph.normal import collect, curves, enumerate_multicurves, mod2_intersection

S21 = build_surface((2, 1))
CURVES = curves(S21, 3)[0]
MULTI = collect(enumerate_multicurves(S21, 3))[0]
GENS = generators((2, 1))
LETTERS = GENS.letters()

curve = st.sampled_from(CURVES)
multi = st.sampled_from(MULTI)
word = st.lists(st.sampled_from(LETTERS), min_size=1, max_size=3).map(lambda xs: MappingWord(tuple(xs)))
common = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@common
@given(multi)
def test_normalize_idempotent(m):
    assert normalize(S21, m.coords) == m


@common
@given(multi)
def test_euler_characteristic_additive(m):
    parts = cut_along(S21, m)
    assert sum(t.euler_characteristic for _, t in parts) == S21.sig.euler_characteristic
    assert sum(t.total_boundary for _, t in parts) == 1 + 2 * len(m)


@common
@given(curve, curve)
def test_intersection_symmetric_and_parity(a, b):
    i = intersection_number(a, b)
    assert i == intersection_number(b, a) >= 0
    assert mod2_intersection(a, b) == i % 2


@common
@given(word, multi)
def test_word_inverse(w, m):
    assert apply(w.inverse(), apply(w, m, GENS), GENS) == m


@common
@given(word, curve, curve)
def test_equivariance(w, a, b):
    assert intersection_number(apply(w, a, GENS), apply(w, b, GENS)) == intersection_number(a, b)


@common
@given(word, multi)
def test_images_stay_canonical(w, m):
    im = apply(w, m, GENS)
    assert len(im) == len(m)
    assert normalize(S21, im.coords) == im
