import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics.free_groups import FreeGroupElement

from homotopy.errors import DomainError, InputError
from homotopy.rcfalg import (
    FreeWord,
    GeneratorSymbol,
    TruncatedSeries,
    algebra_dimension,
    commutator,
    conjugate,
    left_normed_commutator,
    magnus_expand,
    rcf_equal,
    series_algebra,
)
from homotopy.scheme import ComponentDecomposition, ComponentId

from tests.strategies import SMALL_AMBIENTS, decompositions, free_words, signs


def x(color, index=1, exp=1):
    return FreeWord.generator((color, index), exp)


def test_words_are_freely_reduced():
    w = x(1) * x(2) * x(2, exp=-1) * x(1, exp=-1)
    assert len(w) == 0
    assert not w
    assert str(w) == "1"
    assert str(x(1) * x(2, exp=-1)) == "x11 x21^-1"
    assert (x(1) * x(2)) ** -1 == x(2, exp=-1) * x(1, exp=-1)


def test_left_normed_commutator():
    assert left_normed_commutator([(1, 1)]) == x(1)
    assert left_normed_commutator([(1, 1), (2, 1)]) == commutator(x(1), x(2))
    assert left_normed_commutator([(1, 1), (2, 1), (3, 1)]) == commutator(commutator(x(1), x(2)), x(3))
    with pytest.raises(InputError):
        left_normed_commutator([])


def test_substitute_and_delete():
    w = x(1) * x(2) * x(1, exp=-1)
    images = {GeneratorSymbol(ComponentId(1, 1)): x(3)}
    assert w.substitute(images) == x(3) * x(2) * x(3, exp=-1)
    assert w.delete([GeneratorSymbol(ComponentId(1, 1))]) == x(2)


def test_expansion_of_a_generator_prints():
    d = ComponentDecomposition((1, 1))
    assert str(magnus_expand(x(1), d)) == "1 + X11"
    assert magnus_expand(x(1, exp=-1), d).coefficient([ComponentId(1, 1)]) == -1


def test_same_color_generators_commute_but_others_do_not():
    assert rcf_equal(x(1, 1) * x(1, 2), x(1, 2) * x(1, 1), ComponentDecomposition((2,)))
    assert not rcf_equal(x(1) * x(2), x(2) * x(1), ComponentDecomposition((1, 1)))


@pytest.mark.parametrize("counts, expected", [((1,), 2), ((1, 1), 5), ((2,), 3), ((1, 1, 1), 16), ((2, 1), 8)])
def test_algebra_dimension(counts, expected):
    d = ComponentDecomposition(counts)
    assert algebra_dimension(d) == expected
    assert len(series_algebra(d)) == expected


@given(decompositions(min_colors=1, max_colors=4, max_strands=3))
def test_dimension_formula_matches_basis(d):
    assert algebra_dimension(d) == len(series_algebra(d))


@st.composite
def ambient_and_words(draw, count=2):
    ambient = draw(st.sampled_from(SMALL_AMBIENTS))
    return (ambient,) + tuple(draw(free_words(ambient)) for _ in range(count))


@given(ambient_and_words())
def test_expansion_is_multiplicative(args):
    ambient, u, v = args
    assert magnus_expand(u * v, ambient) == magnus_expand(u, ambient) * magnus_expand(v, ambient)


@given(ambient_and_words(), st.data())
def test_conjugates_of_one_color_commute(args, data):
    ambient, g, h = args
    color = data.draw(st.integers(1, ambient.m))
    strands = ambient.strands_of(color)
    a = data.draw(st.sampled_from(strands))
    b = data.draw(st.sampled_from(strands))
    u = conjugate(FreeWord.generator(a), g)
    v = conjugate(FreeWord.generator(b), h)
    assert magnus_expand(commutator(u, v), ambient) == TruncatedSeries.one(series_algebra(ambient))


@given(ambient_and_words(count=1))
def test_series_inverse(args):
    ambient, u = args
    series = magnus_expand(u, ambient)
    one = TruncatedSeries.one(series_algebra(ambient))
    assert series * series.inverse() == one
    assert series.inverse() == magnus_expand(u.inverse(), ambient)


def test_inverse_needs_unit_constant():
    algebra = series_algebra(ComponentDecomposition((1, 1)))
    with pytest.raises(DomainError):
        TruncatedSeries(algebra, {0: 2}).inverse()


def test_from_coefficients_rejects_repeated_colors():
    algebra = series_algebra(ComponentDecomposition((2, 1)))
    with pytest.raises(InputError):
        TruncatedSeries.from_coefficients(algebra, {(ComponentId(1, 1), ComponentId(1, 2)): 1})


def test_barred_symbols_resolve_in_the_doubled_decomposition():
    base = ComponentDecomposition((2, 1))
    doubled = base.doubled()
    assert GeneratorSymbol(ComponentId(1, 1), barred=True).resolve(doubled) == ComponentId(2, 1)
    assert GeneratorSymbol(ComponentId(2, 1), barred=True).resolve(doubled) == ComponentId(1, 1)
    assert GeneratorSymbol(ComponentId(2, 1)).resolve(doubled) == ComponentId(4, 1)
    with pytest.raises(InputError):
        GeneratorSymbol(ComponentId(1, 1), barred=True).resolve(base)
    assert str(GeneratorSymbol(ComponentId(1, 2), barred=True)) == "x~12"


@settings(max_examples=10)
@given(st.data())
def test_expansion_over_doubled_decomposition(data):
    base = ComponentDecomposition((1, 1))
    doubled = base.doubled()
    w = FreeWord(
        tuple(
            (GeneratorSymbol(ComponentId(c, 1), bar), e)
            for c, bar, e in data.draw(
                st.lists(st.tuples(st.integers(1, 2), st.booleans(), st.sampled_from((1, -1))), max_size=6)
            )
        )
    )
    series = magnus_expand(w, doubled)
    assert series.constant == 1
    assert series * magnus_expand(w.inverse(), doubled) == TruncatedSeries.one(series_algebra(doubled))


def test_words_wrap_sympy_free_group_elements():
    w = x(1) ** 3 * x(2, exp=-1)
    assert isinstance(w.element, FreeGroupElement)
    assert len(w) == 4
    s1, s2 = GeneratorSymbol(ComponentId(1, 1)), GeneratorSymbol(ComponentId(2, 1))
    assert w.syllables() == ((s1, 3), (s2, -1))
    assert w.letters == ((s1, 1), (s1, 1), (s1, 1), (s2, -1))
    assert (x(1) * x(3)) * x(1, exp=-1) == conjugate(x(3), x(1))


def test_commutator_puts_inverses_last():
    a, b = x(1), x(2)
    assert str(commutator(a, b)) == "x11 x21 x11^-1 x21^-1"
    assert commutator(a, b) != a.inverse() * b.inverse() * a * b
    assert commutator(a, b).inverse() == commutator(b, a)


def test_substitution_is_simultaneous():
    swap = {GeneratorSymbol(ComponentId(1, 1)): x(2), GeneratorSymbol(ComponentId(2, 1)): x(1)}
    assert (x(1) * x(2, exp=-1)).substitute(swap) == x(2) * x(1, exp=-1)


def test_expansion_of_powers_uses_syllables():
    d = ComponentDecomposition((1, 1))
    series = magnus_expand(x(1) ** 5 * x(2) ** -3, d)
    assert series.coefficient([ComponentId(1, 1)]) == 5
    assert series.coefficient([ComponentId(1, 1), ComponentId(2, 1)]) == -15


# Two strands of distinct colors: the reduced group is the Heisenberg group.
# Words are collected into a^p b^q c^r with c = a b a^-1 b^-1 central and b a = a b c^-1.


def _collect(word):
    p = q = r = 0
    for sym, e in word.letters:
        if sym.component.color == 1:
            r -= q * e
            p += e
        else:
            q += e
    return p, q, r


_A, _B = ComponentId(1, 1), ComponentId(2, 1)
TWO = ComponentDecomposition((1, 1))


@given(free_words(TWO, max_length=10))
def test_expansion_matches_collected_form(w):
    p, q, r = _collect(w)
    series = magnus_expand(w, TWO)
    assert series.coefficient([_A]) == p
    assert series.coefficient([_B]) == q
    assert series.coefficient([_A, _B]) == p * q + r
    assert series.coefficient([_B, _A]) == -r


@given(free_words(TWO, max_length=6), free_words(TWO, max_length=6))
def test_rcf_equality_matches_collected_form(u, v):
    assert rcf_equal(u, v, TWO) == (_collect(u) == _collect(v))


def test_short_words_split_into_the_same_classes():
    letters = [(GeneratorSymbol(c), e) for c in (_A, _B) for e in (1, -1)]
    by_collection, by_expansion = {}, {}
    for length in range(5):
        for combo in itertools.product(letters, repeat=length):
            w = FreeWord(combo)
            key = frozenset(magnus_expand(w, TWO).terms.items())
            by_collection.setdefault(_collect(w), set()).add(key)
            by_expansion.setdefault(key, set()).add(_collect(w))
    assert all(len(keys) == 1 for keys in by_collection.values())
    assert all(len(forms) == 1 for forms in by_expansion.values())


# Breadth-first rewriting with the defining relations: a letter commutes with any
# conjugate of a letter of its own color. Every step keeps or shortens the word.


def _rewrites(word):
    n = len(word)
    for i in range(n - 1):
        if word[i][0] == word[i + 1][0] and word[i][1] == -word[i + 1][1]:
            yield word[:i] + word[i + 2 :]
    for i in range(n):
        for j in range(i + 1, n):
            w = word[i + 1 : j]
            back = tuple((s, -e) for s, e in reversed(w))
            end = j + 1 + len(w)
            if end > n or word[j + 1 : end] != back:
                continue
            a, b = word[i], word[j]
            if a[0].component.color == b[0].component.color:
                # a w b w^-1  ->  w b w^-1 a
                yield word[:i] + w + (b,) + back + (a,) + word[end:]
    for i in range(n):
        for j in range(i, n):
            w = word[i:j]
            back = tuple((s, -e) for s, e in reversed(w))
            end = j + 1 + len(w)
            if end >= n or word[j + 1 : end] != back:
                continue
            b, a = word[j], word[end]
            if a[0].component.color == b[0].component.color:
                # w b w^-1 a  ->  a w b w^-1
                yield word[:i] + (a,) + w + (b,) + back + word[end + 1 :]


def _orbit(word):
    seen = {word}
    frontier = [word]
    while frontier:
        nxt = []
        for current in frontier:
            for out in _rewrites(current):
                if out not in seen:
                    seen.add(out)
                    nxt.append(out)
        frontier = nxt
    return seen


def _raw_words(ambient, max_length):
    return st.lists(
        st.tuples(st.sampled_from(ambient.components).map(GeneratorSymbol), signs), max_size=max_length
    ).map(tuple)


@settings(max_examples=30)
@given(st.sampled_from([TWO, ComponentDecomposition((2, 1)), ComponentDecomposition((1, 1, 1))]).flatmap(
    lambda d: st.tuples(st.just(d), _raw_words(d, 6), st.randoms(use_true_random=False))
))
def test_rewritten_words_stay_equal(args):
    ambient, word, rng = args
    orbit = sorted(_orbit(word))
    other = rng.choice(orbit)
    assert rcf_equal(FreeWord(word), FreeWord(other), ambient)


@settings(max_examples=30)
@given(st.sampled_from([TWO, ComponentDecomposition((2, 1)), ComponentDecomposition((1, 1, 1))]).flatmap(
    lambda d: st.tuples(st.just(d), _raw_words(d, 6), _raw_words(d, 6))
))
def test_rewriting_never_joins_words_the_expansion_separates(args):
    ambient, u, v = args
    if not rcf_equal(FreeWord(u), FreeWord(v), ambient):
        assert _orbit(u).isdisjoint(_orbit(v))
