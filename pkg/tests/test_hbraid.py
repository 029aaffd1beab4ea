import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homotopy.errors import InputError
from homotopy.hbraid import (
    Clasp,
    ConjugatingAutomorphism,
    GeneratorLink,
    LongitudeScanner,
    clasp,
    clasp_automorphism,
    clasper,
    clasper_automorphism,
    clasper_longitude,
    compose,
    elementary_clasps,
    expand_word,
    longitudes,
    point_push,
    transported_meridian,
    word_automorphism,
)
from homotopy.rcfalg import FreeWord, left_normed_commutator, magnus_expand
from homotopy.scheme import ComponentDecomposition, ComponentId, IndexSequence, enumerate_all_levels

from tests.strategies import SMALL_AMBIENTS, links

THREE = ComponentDecomposition((1, 1, 1))
FOUR = ComponentDecomposition((1, 1, 1, 1))

BORROMEAN = (
    clasp((1, 1), (3, 1)),
    clasp((2, 1), (3, 1)),
    clasp((1, 1), (3, 1), -1),
    clasp((2, 1), (3, 1), -1),
)


def test_generator_validation():
    with pytest.raises(InputError):
        Clasp(ComponentId(1, 1), ComponentId(1, 1))
    with pytest.raises(InputError):
        GeneratorLink(Clasp(ComponentId(1, 1), ComponentId(2, 1)), 0)
    with pytest.raises(InputError):
        clasper([(2, 1), (1, 1), (3, 1)])
    with pytest.raises(InputError):
        clasper([(2, 1), (1, 1)])
    assert isinstance(clasper([(1, 1), (2, 1)]).kind, Clasp)
    assert str(clasper([(1, 1), (2, 1), (3, 1)], -1)) == "t((1,1),(2,1),(3,1))^-1"
    assert str(clasp((1, 1), (2, 1))) == "a((1,1),(2,1))"


def test_point_push_reverses_the_loop():
    loop = left_normed_commutator([(1, 1), (2, 1)])
    steps = point_push(ComponentId(3, 1), loop)
    assert [(str(a), str(b), s) for a, b, s in steps] == [
        ("(2,1)", "(3,1)", -1),
        ("(1,1)", "(3,1)", -1),
        ("(2,1)", "(3,1)", 1),
        ("(1,1)", "(3,1)", 1),
    ]
    with pytest.raises(InputError):
        point_push(ComponentId(1, 1), FreeWord.generator((1, 1)))


def test_inverse_clasper_reverses_its_clasps():
    g = clasper([(1, 1), (2, 1), (3, 1)])
    forward = elementary_clasps(g)
    backward = elementary_clasps(g.inverse())
    assert backward == [(a, b, -s) for a, b, s in reversed(forward)]


@pytest.mark.parametrize("low, high", [((1, 1), (2, 1)), ((1, 1), (3, 1)), ((2, 1), (4, 1)), ((1, 1), (4, 1))])
@pytest.mark.parametrize("sign", [1, -1])
def test_clasp_action_fixes_the_boundary_word_exactly(low, high, sign):
    phi = clasp_automorphism(ComponentId(*low), ComponentId(*high), sign, FOUR)
    assert phi.preserves_boundary(exact=True)


@pytest.mark.parametrize("low, high", [((1, 1), (2, 1)), ((1, 1), (4, 1))])
def test_opposite_clasps_cancel(low, high):
    c, d = ComponentId(*low), ComponentId(*high)
    assert compose(clasp_automorphism(c, d, 1, FOUR), clasp_automorphism(c, d, -1, FOUR)).is_identity()
    assert compose(clasp_automorphism(c, d, -1, FOUR), clasp_automorphism(c, d, 1, FOUR)).is_identity()


def test_clasper_action_preserves_boundary():
    phi = clasper_automorphism(IndexSequence.of((1, 1), (2, 1), (3, 1)), 1, THREE)
    assert phi.preserves_boundary()
    assert not phi.is_identity()


def test_identity_automorphism():
    ident = ConjugatingAutomorphism.identity(THREE)
    assert ident.is_identity()
    assert ident.boundary_word() == FreeWord.generator((1, 1)) * FreeWord.generator((2, 1)) * FreeWord.generator((3, 1))


# Conjugator words grow quickly with length, so these stay short.
@given(links(max_length=4, claspers=False))
def test_scanner_longitudes_are_the_conjugators(link):
    ambient = link.ambient
    phi = word_automorphism(link.word, ambient)
    scanner = LongitudeScanner(ambient)
    scanner.push_word(link.word)
    for c in ambient.components:
        assert scanner.raw_longitude(c) == magnus_expand(phi.conjugator(c), ambient, ambient.m - 1)


@given(st.sampled_from(SMALL_AMBIENTS + [FOUR]).flatmap(lambda d: links(ambient=d, max_length=5)))
def test_claspers_pushed_whole_match_their_clasps(link):
    ambient = link.ambient
    whole = LongitudeScanner(ambient)
    whole.push_word(link.word)
    piecewise = LongitudeScanner(ambient)
    for low, high, sign in expand_word(link.word):
        piecewise.push_elementary(low, high, sign)
    for c in ambient.components:
        assert whole.raw_longitude(c) == piecewise.raw_longitude(c)


@settings(max_examples=10)
@given(links(ambient=THREE, max_length=3))
def test_scanner_follows_the_free_group_action_through_claspers(link):
    phi = word_automorphism(link.word, THREE)
    scanner = LongitudeScanner(THREE)
    scanner.push_word(link.word)
    for c in THREE.components:
        assert scanner.raw_longitude(c) == magnus_expand(phi.conjugator(c), THREE, 2)


@given(links(max_length=4, claspers=False))
def test_word_action_preserves_boundary(link):
    assert word_automorphism(link.word, link.ambient).preserves_boundary()


def test_borromean_triple_invariant():
    scanner = LongitudeScanner(THREE)
    scanner.push_word(BORROMEAN)
    assert scanner.mu([ComponentId(1, 1), ComponentId(2, 1), ComponentId(3, 1)]) == -1
    for J in enumerate_all_levels(THREE):
        if J.level == 1:
            assert scanner.mu(J.entries) == 0


@pytest.mark.parametrize("ambient", [THREE, FOUR])
def test_each_clasper_reads_only_its_own_sequence(ambient):
    for J in enumerate_all_levels(ambient):
        scanner = LongitudeScanner(ambient)
        scanner.push(clasper(J))
        for I in enumerate_all_levels(ambient):
            if I.level <= J.level:
                assert scanner.mu(I.entries) == (1 if I == J else 0), (str(J), str(I))


def test_clasper_longitude_is_the_commutator_loop():
    J = IndexSequence.of((1, 1), (2, 1), (3, 1))
    insertion = clasper_longitude(J, -1)
    assert insertion.strand == ComponentId(3, 1)
    assert insertion.word == left_normed_commutator(J.head).inverse()
    own = longitudes([clasper(J, -1)], THREE)[ComponentId(3, 1)]
    assert own.coefficient(J.head) == -1


def test_transported_meridian_through_a_clasp():
    word = [clasp((1, 1), (2, 1))]
    two = ComponentDecomposition((1, 1))
    meridian = transported_meridian(word, ComponentId(1, 1), two)
    inverse_action = word_automorphism([clasp((1, 1), (2, 1), -1)], two)
    assert meridian == inverse_action.image(ComponentId(1, 1))
    assert magnus_expand(meridian, two).coefficient([ComponentId(1, 1)]) == 1
    assert transported_meridian([], ComponentId(2, 1), THREE) == FreeWord.generator((2, 1))
