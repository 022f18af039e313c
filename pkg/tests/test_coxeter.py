from hypothesis import given
from hypothesis import strategies as st

import coxeter
from coxeter import RootDatum, StandardLevi, all_levis

perms3 = st.permutations([0, 1, 2]).map(tuple)


def test_weyl_group_orders():
    assert len(RootDatum.gl(2).elements) == 2
    assert len(RootDatum.gl(3).elements) == 6
    assert len(RootDatum.of_type("A1xA1").elements) == 4


def test_longest_element_gl3():
    w0 = RootDatum.gl(3).longest
    assert w0 == (2, 1, 0)
    assert coxeter.length(w0) == 3


def test_positive_roots_of_gl3():
    assert set(RootDatum.gl(3).positive_roots) == {(0, 1), (0, 2), (1, 2)}


@given(perms3)
def test_reduced_word_round_trip(w):
    word = coxeter.reduced_word(w)
    assert len(word) == coxeter.length(w)
    assert coxeter.from_word(3, word) == w


@given(perms3, perms3)
def test_length_subadditive(a, b):
    assert coxeter.length(coxeter.compose(a, b)) <= coxeter.length(a) + coxeter.length(b)


@given(perms3)
def test_inverse_preserves_length(w):
    assert coxeter.length(coxeter.invert(w)) == coxeter.length(w)
    assert coxeter.compose(w, coxeter.invert(w)) == coxeter.identity_perm(3)


def test_all_levis_of_gl3():
    levis = all_levis(RootDatum.gl(3))
    assert len(levis) == 4
    assert sum(1 for levi in levis if levi.is_full) == 1
    assert sum(1 for levi in levis if levi.is_torus) == 1


def test_coset_decomposition_counts():
    datum = RootDatum.gl(3)
    for levi in all_levis(datum):
        assert len(levi.min_coset_reps) * len(levi.weyl_elements) == len(datum.elements)


@given(perms3)
def test_split_right_factorises(w):
    levi = StandardLevi.of(RootDatum.gl(3), {1})
    m, d = levi.split_right(w)
    assert levi.contains(m)
    assert d in levi.min_coset_reps
    assert coxeter.compose(m, d) == w
    assert coxeter.length(w) == coxeter.length(m) + coxeter.length(d)


def test_conjugate_levi_swaps_simple_roots():
    datum = RootDatum.gl(3)
    assert StandardLevi.of(datum, {1}).conjugate.J == frozenset({2})
    assert StandardLevi.of(datum, {2}).conjugate.J == frozenset({1})
    assert StandardLevi.of(datum, ()).conjugate.J == frozenset()


def test_unipotent_roots_of_borel():
    levi = StandardLevi.of(RootDatum.gl(2), ())
    assert levi.unipotent_roots == ((0, 1),)


def test_levi_positivity_of_translations():
    levi = StandardLevi.of(RootDatum.gl(2), ())
    identity = coxeter.identity_perm(2)
    assert coxeter.is_levi_positive((1, 0), identity, levi)
    assert not coxeter.is_levi_negative((1, 0), identity, levi)
    assert coxeter.is_levi_positive((1, 1), identity, levi)
    assert coxeter.is_levi_negative((1, 1), identity, levi)
