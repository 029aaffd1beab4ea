"""Generator string links and their action on meridians.

Every generator is realised as a pure braid in the clasps ``A_cd`` (``c < d`` in
global strand order), acting on the free group by

    x_c -> (x_c x_d) x_c (x_c x_d)^-1
    x_r -> [x_c, x_d] x_r [x_c, x_d]^-1      for c < r < d
    x_d -> x_c x_d x_c^-1

which fixes the boundary product ``x_11 x_12 ... x_{m l_m}``. A word
``u_1 ... u_r`` acts by ``phi_{u_1} o ... o phi_{u_r}``; writing the action as
``x_c -> lambda_c x_c lambda_c^-1``, the conjugator ``lambda_c`` is the
longitude of strand ``c``.

A clasper ``T_J`` pushes the last strand of ``J`` around the loop
``b_J = [[x_{j0}, x_{j1}], ...]``, so its only invariant at its level is
``mu(J) = +1``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from homotopy.errors import AmbientMismatchError, InputError
from homotopy.rcfalg import (
    FreeWord,
    GeneratorSymbol,
    Terms,
    TruncatedSeries,
    commutator,
    left_normed_commutator,
    rcf_equal,
    series_algebra,
)
from homotopy.scheme import ComponentDecomposition, ComponentId, IndexSequence

logger = logging.getLogger(__name__)

# (low component, high component, sign) of one elementary clasp A_cd^sign.
Elementary = Tuple[ComponentId, ComponentId, int]


@dataclass(frozen=True, order=True)
class Clasp:
    c: ComponentId
    d: ComponentId

    def __post_init__(self) -> None:
        c, d = ComponentId(*self.c), ComponentId(*self.d)
        if c == d:
            raise InputError(f"a clasp needs two distinct strands, got {c} twice")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    @property
    def components(self) -> Tuple[ComponentId, ...]:
        return (self.c, self.d)

    def __str__(self) -> str:
        return f"a({self.c},{self.d})"


@dataclass(frozen=True, order=True)
class Clasper:
    sequence: IndexSequence

    def __post_init__(self) -> None:
        if not isinstance(self.sequence, IndexSequence):
            object.__setattr__(self, "sequence", IndexSequence(tuple(self.sequence)))
        if self.sequence.level < 2:
            raise InputError(f"clasper {self.sequence} must have at least three entries; use a clasp")
        if not self.sequence.is_canonical():
            raise InputError(
                f"clasper {self.sequence} must start below and end above all of its interior entries"
            )

    @property
    def components(self) -> Tuple[ComponentId, ...]:
        return self.sequence.entries

    def __str__(self) -> str:
        return "t(" + ",".join(str(e) for e in self.sequence.entries) + ")"


@dataclass(frozen=True)
class GeneratorLink:
    kind: Union[Clasp, Clasper]
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise InputError(f"generator sign must be +1 or -1, got {self.sign!r}")

    @property
    def components(self) -> Tuple[ComponentId, ...]:
        return self.kind.components

    def touches(self, components: Iterable[ComponentId]) -> bool:
        return not set(self.components).isdisjoint(components)

    def inverse(self) -> "GeneratorLink":
        return GeneratorLink(self.kind, -self.sign)

    def validate(self, decomposition: ComponentDecomposition) -> None:
        for c in self.components:
            decomposition.validate(c)

    def __str__(self) -> str:
        return str(self.kind) if self.sign == 1 else f"{self.kind}^-1"


def clasp(c: Sequence[int], d: Sequence[int], sign: int = 1) -> GeneratorLink:
    return GeneratorLink(Clasp(ComponentId(*c), ComponentId(*d)), sign)


def clasper(sequence: Union[IndexSequence, Sequence[Sequence[int]]], sign: int = 1) -> GeneratorLink:
    """``T_J^sign``; a two-entry sequence is the clasp of its entries."""
    if not isinstance(sequence, IndexSequence):
        sequence = IndexSequence(tuple(ComponentId(*e) for e in sequence))
    if sequence.level == 1:
        first, last = sequence.entries
        if not first < last:
            raise InputError(f"sequence {sequence} must be increasing")
        return GeneratorLink(Clasp(first, last), sign)
    return GeneratorLink(Clasper(sequence), sign)


def _ordered(a: ComponentId, b: ComponentId) -> Tuple[ComponentId, ComponentId]:
    return (a, b) if a < b else (b, a)


def point_push(strand: ComponentId, loop: FreeWord) -> List[Elementary]:
    """Elementary clasps dragging ``strand`` around ``loop``.

    The longitude of ``strand`` (with its own color deleted) becomes ``loop``;
    the loop letters are consumed last-first because longitudes accumulate on
    the left.
    """
    out: List[Elementary] = []
    for sym, exp in reversed(loop.letters):
        if sym.barred or sym.component == strand:
            raise InputError(f"cannot push {strand} around {sym}")
        low, high = _ordered(sym.component, strand)
        out.append((low, high, exp))
    return out


def elementary_clasps(g: GeneratorLink) -> List[Elementary]:
    if isinstance(g.kind, Clasp):
        low, high = _ordered(g.kind.c, g.kind.d)
        return [(low, high, g.sign)]
    seq = g.kind.sequence
    word = point_push(seq.last, left_normed_commutator(seq.head))
    if g.sign == 1:
        return word
    return [(low, high, -s) for low, high, s in reversed(word)]


def expand_word(word: Iterable[GeneratorLink]) -> List[Elementary]:
    out: List[Elementary] = []
    for g in word:
        out.extend(elementary_clasps(g))
    return out


@dataclass(frozen=True)
class LongitudeInsertion:
    strand: ComponentId
    word: FreeWord


def clasper_longitude(sequence: IndexSequence, sign: int = 1) -> LongitudeInsertion:
    """The longitude ``b_J^sign`` that ``T_J^sign`` inserts on its last strand."""
    g = clasper(sequence, sign)
    b = left_normed_commutator(g.components[:-1])
    return LongitudeInsertion(g.components[-1], b if sign == 1 else b.inverse())


def _x(c: ComponentId, exp: int = 1) -> FreeWord:
    return FreeWord.generator(GeneratorSymbol(c), exp)


@dataclass(frozen=True)
class ConjugatingAutomorphism:
    """``x_c -> w_c x_c w_c^-1``; strands without an entry have ``w_c = 1``."""

    ambient: ComponentDecomposition
    conjugators: Mapping[ComponentId, FreeWord] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for c, w in self.conjugators.items():
            self.ambient.validate(c)
            if w:
                clean[ComponentId(*c)] = w
        object.__setattr__(self, "conjugators", clean)

    @classmethod
    def identity(cls, ambient: ComponentDecomposition) -> "ConjugatingAutomorphism":
        return cls(ambient)

    def conjugator(self, c: ComponentId) -> FreeWord:
        return self.conjugators.get(ComponentId(*c), FreeWord())

    def image(self, c: ComponentId) -> FreeWord:
        w = self.conjugator(c)
        return w * _x(c) * w.inverse()

    def apply(self, word: FreeWord) -> FreeWord:
        images = {GeneratorSymbol(c): self.image(c) for c in self.conjugators}
        return word.substitute(images)

    def boundary_word(self) -> FreeWord:
        out = FreeWord()
        for c in self.ambient.components:
            out = out * _x(c)
        return out

    def preserves_boundary(self, exact: bool = False) -> bool:
        product = self.boundary_word()
        image = self.apply(product)
        if exact:
            return image == product
        return rcf_equal(image, product, self.ambient)

    def is_identity(self) -> bool:
        return all(rcf_equal(self.image(c), _x(c), self.ambient) for c in self.ambient.components)

    def equivalent(self, other: "ConjugatingAutomorphism") -> bool:
        if self.ambient != other.ambient:
            raise AmbientMismatchError("automorphisms over different decompositions")
        return all(rcf_equal(self.image(c), other.image(c), self.ambient) for c in self.ambient.components)


def clasp_automorphism(
    c: ComponentId, d: ComponentId, sign: int, decomposition: ComponentDecomposition
) -> ConjugatingAutomorphism:
    c, d = ComponentId(*c), ComponentId(*d)
    if c == d:
        raise InputError(f"a clasp needs two distinct strands, got {c} twice")
    if sign not in (1, -1):
        raise InputError(f"clasp sign must be +1 or -1, got {sign!r}")
    low, high = _ordered(c, d)
    lo, hi = decomposition.position(low), decomposition.position(high)
    xc, xd = _x(low), _x(high)
    if sign == 1:
        w_low, w_mid, w_high = xc * xd, commutator(xc, xd), xc
    else:
        w_low = xd.inverse()
        w_mid = xd.inverse() * xc.inverse() * xd * xc
        w_high = xd.inverse() * xc.inverse()
    conj = {low: w_low, high: w_high}
    for r in decomposition.components[lo + 1 : hi]:
        conj[r] = w_mid
    return ConjugatingAutomorphism(decomposition, conj)


def compose(phi: ConjugatingAutomorphism, psi: ConjugatingAutomorphism) -> ConjugatingAutomorphism:
    """``x -> phi(psi(x))``: the action of phi's string link stacked over psi's."""
    if phi.ambient != psi.ambient:
        raise AmbientMismatchError(f"cannot compose automorphisms over {phi.ambient} and {psi.ambient}")
    conj = {c: phi.apply(psi.conjugator(c)) * phi.conjugator(c) for c in phi.ambient.components}
    return ConjugatingAutomorphism(phi.ambient, conj)


def word_automorphism(
    word: Iterable[GeneratorLink], decomposition: ComponentDecomposition
) -> ConjugatingAutomorphism:
    out = ConjugatingAutomorphism.identity(decomposition)
    for low, high, sign in expand_word(word):
        out = compose(out, clasp_automorphism(low, high, sign, decomposition))
    return out


def generator_automorphism(g: GeneratorLink, decomposition: ComponentDecomposition) -> ConjugatingAutomorphism:
    g.validate(decomposition)
    return word_automorphism([g], decomposition)


def clasper_automorphism(
    sequence: IndexSequence, sign: int, decomposition: ComponentDecomposition
) -> ConjugatingAutomorphism:
    return generator_automorphism(clasper(sequence, sign), decomposition)


class LongitudeScanner:
    """Running longitudes of a word, kept as truncated series.

    Holds ``lambda_c`` and its inverse for every strand. Appending ``A_cd``
    replaces ``lambda_s`` by ``Phi(w_s) lambda_s`` where ``Phi`` is the action
    of the word so far and ``Phi(x_a) = lambda_a (1 + X_a) lambda_a^-1``.
    Claspers are appended in one step from their longitudes over the empty
    word, computed once per decomposition.
    """

    def __init__(self, decomposition: ComponentDecomposition, max_degree: Optional[int] = None) -> None:
        self.decomposition = decomposition
        cap = decomposition.m - 1 if max_degree is None else max_degree
        self.algebra = series_algebra(decomposition, cap)
        self._lam: List[Dict[int, int]] = [{0: 1} for _ in range(decomposition.n)]
        self._inv: List[Dict[int, int]] = [{0: 1} for _ in range(decomposition.n)]
        self.steps = 0

    def copy(self) -> "LongitudeScanner":
        other = LongitudeScanner.__new__(LongitudeScanner)
        other.decomposition = self.decomposition
        other.algebra = self.algebra
        other._lam = list(self._lam)
        other._inv = list(self._inv)
        other.steps = self.steps
        return other

    def push(self, g: GeneratorLink) -> None:
        if isinstance(g.kind, Clasp):
            for low, high, sign in elementary_clasps(g):
                self.push_elementary(low, high, sign)
        else:
            self._push_effect(_generator_effect(self.decomposition, self.algebra.max_degree, g))

    def push_word(self, word: Iterable[GeneratorLink]) -> None:
        for g in word:
            self.push(g)

    def push_elementary(self, low: ComponentId, high: ComponentId, sign: int) -> None:
        position = self.decomposition.position
        self._push_clasp(position(low), position(high), sign)

    def _push_clasp(self, c: int, d: int, sign: int) -> None:
        alg = self.algebra
        mul = alg.mul_terms
        lam, inv = self._lam, self._inv

        p = mul(alg.times_variable(lam[c], c, 1), inv[c])
        p_inv = mul(alg.times_variable(lam[c], c, -1), inv[c])
        q = mul(alg.times_variable(lam[d], d, 1), inv[d])
        q_inv = mul(alg.times_variable(lam[d], d, -1), inv[d])

        if sign == 1:
            s_c, s_c_inv = mul(p, q), mul(q_inv, p_inv)
            s_d, s_d_inv = p, p_inv
            if d - c > 1:
                s_r = mul(s_c, mul(p_inv, q_inv))
                s_r_inv = mul(mul(q, p), s_c_inv)
        else:
            s_c, s_c_inv = q_inv, q
            s_d, s_d_inv = mul(q_inv, p_inv), mul(p, q)
            if d - c > 1:
                s_r = mul(s_d, mul(q, p))
                s_r_inv = mul(mul(p_inv, q_inv), s_d_inv)

        lam[c], inv[c] = mul(s_c, lam[c]), mul(inv[c], s_c_inv)
        lam[d], inv[d] = mul(s_d, lam[d]), mul(inv[d], s_d_inv)
        for r in range(c + 1, d):
            lam[r], inv[r] = mul(s_r, lam[r]), mul(inv[r], s_r_inv)
        self.steps += 1

    def _push_effect(self, effect: "GeneratorEffect") -> None:
        """Append a generator whose own longitudes (from the identity) are ``effect``.

        The new ``lambda_s`` is ``Phi(w_s) lambda_s``; ``Phi`` acts on series by
        ``X_a -> lambda_a X_a lambda_a^-1``, evaluated monomial by monomial along
        the prefix tree of the basis.
        """
        alg = self.algebra
        mul = alg.mul_terms
        lam, inv = self._lam, self._inv
        monomials, index = alg.monomials, alg.index
        shifted: Dict[int, Terms] = {}
        images: Dict[int, Terms] = {0: {0: 1}}

        def shift(a: int) -> Terms:
            y = shifted.get(a)
            if y is None:
                p = mul(alg.times_variable(lam[a], a, 1), inv[a])
                y = shifted[a] = {k: v for k, v in p.items() if k}
            return y

        def image(idx: int) -> Terms:
            out = images.get(idx)
            if out is None:
                mono = monomials[idx]
                out = images[idx] = mul(image(index[mono[:-1]]), shift(mono[-1]))
            return out

        def substitute(terms: Terms) -> Terms:
            out: Terms = {}
            for idx, v in terms.items():
                for k, w in image(idx).items():
                    out[k] = out.get(k, 0) + v * w
            return {k: v for k, v in out.items() if v}

        # every image is taken under the action before this generator
        updates = [(pos, substitute(w), substitute(w_inv)) for pos, w, w_inv in effect]
        for pos, s, s_inv in updates:
            lam[pos], inv[pos] = mul(s, lam[pos]), mul(inv[pos], s_inv)
        self.steps += 1

        self.steps += 1

    def raw_longitude(self, c: ComponentId) -> TruncatedSeries:
        return TruncatedSeries(self.algebra, self._lam[self.decomposition.position(c)])

    def longitude(self, c: ComponentId) -> TruncatedSeries:
        """Longitude of ``c`` with its own color's variables projected to zero."""
        pos = self.decomposition.position(c)
        return TruncatedSeries(self.algebra, self.algebra.project_terms(self._lam[pos], [ComponentId(*c).color]))

    def longitudes(self) -> Dict[ComponentId, TruncatedSeries]:
        return {c: self.longitude(c) for c in self.decomposition.components}

    def mu(self, entries: Sequence[ComponentId]) -> int:
        """Coefficient of ``X_{e_0} ... X_{e_{k-1}}`` in the longitude of ``e_k``."""
        position = self.decomposition.position
        key = tuple(position(e) for e in entries[:-1])
        idx = self.algebra.index.get(key)
        if idx is None:
            return 0
        return self._lam[position(entries[-1])].get(idx, 0)


# (strand position, lambda, lambda^-1) for every strand a generator moves.
GeneratorEffect = Tuple[Tuple[int, Terms, Terms], ...]


@lru_cache(maxsize=4096)
def _generator_effect(decomposition: ComponentDecomposition, max_degree: int, g: GeneratorLink) -> GeneratorEffect:
    scanner = LongitudeScanner(decomposition, max_degree)
    for low, high, sign in elementary_clasps(g):
        scanner.push_elementary(low, high, sign)
    return tuple(
        (pos, lam, inv) for pos, (lam, inv) in enumerate(zip(scanner._lam, scanner._inv)) if lam != {0: 1}
    )


def longitudes(word: Iterable[GeneratorLink], decomposition: ComponentDecomposition) -> Dict[ComponentId, TruncatedSeries]:
    scanner = LongitudeScanner(decomposition)
    for g in word:
        g.validate(decomposition)
        scanner.push(g)
    return scanner.longitudes()


def transported_meridian(
    word: Sequence[GeneratorLink], source: ComponentId, decomposition: ComponentDecomposition
) -> FreeWord:
    """``theta^-1 x_source theta`` for the string link ``theta`` given by ``word``."""
    inverse_word = [g.inverse() for g in reversed(list(word))]
    return word_automorphism(inverse_word, decomposition).image(source)
