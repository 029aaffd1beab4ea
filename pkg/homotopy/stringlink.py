"""Colored string links as generator words.

A :class:`ColoredStringLink` is an immutable word over clasps and claspers.
Its longitudes and Milnor invariant vector are computed lazily and cached on
the instance; two links are CL-homotopic exactly when their invariant vectors
agree, and :func:`canonical_form` picks the clasper word representing a class.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, NamedTuple, Sequence, Tuple, Union

from homotopy.errors import AmbientMismatchError, InputError
from homotopy.hbraid import (
    Clasp,
    Clasper,
    GeneratorLink,
    LongitudeScanner,
    clasp,
    clasper,
    point_push,
)
from homotopy.rcfalg import TruncatedSeries, left_normed_commutator
from homotopy.scheme import (
    ComponentDecomposition,
    ComponentId,
    IndexSequence,
    drop_color,
    enumerate_all_levels,
    enumerate_canonical_sequences,
    restore_color,
)

logger = logging.getLogger(__name__)

SequenceLike = Union[IndexSequence, Sequence[Sequence[int]]]


def _as_sequence(seq: SequenceLike) -> IndexSequence:
    if isinstance(seq, IndexSequence):
        return seq
    return IndexSequence(tuple(ComponentId(*e) for e in seq))


class InvariantVector:
    """Milnor invariants indexed by every sequence of ``J_1, ..., J_{m-1}``."""

    __slots__ = ("ambient", "_values")

    def __init__(self, ambient: ComponentDecomposition, values: Mapping[IndexSequence, int]) -> None:
        self.ambient = ambient
        keys = enumerate_all_levels(ambient)
        if set(values) - set(keys):
            raise InputError("invariant vector has keys outside the canonical sequences")
        self._values: Dict[IndexSequence, int] = {k: int(values.get(k, 0)) for k in keys}

    @classmethod
    def zero(cls, ambient: ComponentDecomposition) -> "InvariantVector":
        return cls(ambient, {})

    def __getitem__(self, seq: SequenceLike) -> int:
        return self._values[_as_sequence(seq)]

    def __iter__(self) -> Iterator[IndexSequence]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def items(self):
        return self._values.items()

    def level(self, k: int) -> Dict[IndexSequence, int]:
        return {J: v for J, v in self._values.items() if J.level == k}

    def nonzero(self) -> Dict[IndexSequence, int]:
        return {J: v for J, v in self._values.items() if v}

    def key(self) -> Tuple[int, ...]:
        return tuple(self._values.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InvariantVector):
            return NotImplemented
        return self.ambient == other.ambient and self._values == other._values

    def __hash__(self) -> int:
        return hash((self.ambient, self.key()))

    def __repr__(self) -> str:
        inner = ", ".join(f"{J}: {v}" for J, v in self.nonzero().items())
        return f"InvariantVector({self.ambient}; {inner or 'zero'})"


@dataclass(frozen=True, eq=False)
class ColoredStringLink:
    ambient: ComponentDecomposition
    word: Tuple[GeneratorLink, ...] = ()
    _cache: Dict[str, object] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        word = tuple(self.word)
        for g in word:
            g.validate(self.ambient)
        object.__setattr__(self, "word", word)

    @classmethod
    def trivial(cls, ambient: ComponentDecomposition) -> "ColoredStringLink":
        return cls(ambient, ())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ColoredStringLink):
            return NotImplemented
        return self.ambient == other.ambient and self.word == other.word

    def __hash__(self) -> int:
        return hash((self.ambient, self.word))

    def __len__(self) -> int:
        return len(self.word)

    def __mul__(self, other: "ColoredStringLink") -> "ColoredStringLink":
        return compose(self, other)

    def __str__(self) -> str:
        return " ".join(str(g) for g in self.word) or "1"

    def _scanner(self) -> LongitudeScanner:
        scanner = self._cache.get("scanner")
        if scanner is None:
            scanner = LongitudeScanner(self.ambient)
            scanner.push_word(self.word)
            self._cache["scanner"] = scanner
        return scanner

    def longitudes(self) -> Dict[ComponentId, TruncatedSeries]:
        return self._scanner().longitudes()

    def longitude(self, c: ComponentId) -> TruncatedSeries:
        return self._scanner().longitude(c)

    def invariant_vector(self) -> InvariantVector:
        vector = self._cache.get("vector")
        if vector is None:
            scanner = self._scanner()
            vector = InvariantVector(
                self.ambient, {J: scanner.mu(J.entries) for J in enumerate_all_levels(self.ambient)}
            )
            self._cache["vector"] = vector
        return vector

    def mu(self, seq: SequenceLike) -> int:
        seq = _as_sequence(seq)
        seq.validate(self.ambient)
        return self._scanner().mu(seq.entries)


def _same_ambient(a: ColoredStringLink, b: ColoredStringLink) -> None:
    if a.ambient != b.ambient:
        raise AmbientMismatchError(f"string links over {a.ambient} and {b.ambient} cannot be combined")


def compose(a: ColoredStringLink, b: ColoredStringLink) -> ColoredStringLink:
    """``a`` stacked over ``b``; reuses ``a``'s longitude scan when present."""
    _same_ambient(a, b)
    out = ColoredStringLink(a.ambient, a.word + b.word)
    seed = a._cache.get("scanner")
    if seed is not None:
        scanner = seed.copy()
        scanner.push_word(b.word)
        out._cache["scanner"] = scanner
    return out


def invert(a: ColoredStringLink) -> ColoredStringLink:
    return ColoredStringLink(a.ambient, tuple(g.inverse() for g in reversed(a.word)))


def invariant_vector(a: ColoredStringLink) -> InvariantVector:
    return a.invariant_vector()


def mu(a: ColoredStringLink, seq: SequenceLike) -> int:
    """Milnor invariant of any sequence with distinct colors, canonical or not."""
    return a.mu(seq)


def _append_copies(scanner: LongitudeScanner, g: GeneratorLink, count: int, word: List[GeneratorLink]) -> None:
    for _ in range(count):
        word.append(g)
        scanner.push(g)


def canonical_form(a: ColoredStringLink) -> ColoredStringLink:
    """The clasper word ``Sigma_1 ... Sigma_{m-1}`` with ``a``'s invariants."""
    out = a._cache.get("canonical")
    if out is None:
        out = realize(a.invariant_vector())
        a._cache["canonical"] = out
    return out


def realize(target: InvariantVector) -> ColoredStringLink:
    """The canonical clasper word with invariant vector ``target``.

    Level ``k`` exponents are the target invariants minus those of the
    product of the lower levels; claspers of one level do not disturb each
    other's coordinates at that level. The top level is read by nothing
    after it, so it is appended without scanning.
    """
    ambient = target.ambient
    scanner = LongitudeScanner(ambient)
    word: List[GeneratorLink] = []
    top = ambient.m - 1
    for k in range(1, ambient.m):
        exponents = [(J, target[J] - scanner.mu(J.entries)) for J in enumerate_canonical_sequences(ambient, k)]
        for J, x in exponents:
            if not x:
                continue
            g = clasper(J, 1 if x > 0 else -1)
            if k == top:
                word.extend([g] * abs(x))
            else:
                _append_copies(scanner, g, abs(x), word)
    out = ColoredStringLink(ambient, tuple(word))
    out._cache["vector"] = target
    out._cache["canonical"] = out
    return out


def cl_homotopic(a: ColoredStringLink, b: ColoredStringLink) -> bool:
    _same_ambient(a, b)
    return a.invariant_vector() == b.invariant_vector()


def omit(a: ColoredStringLink, components: Iterable[ComponentId]) -> ColoredStringLink:
    """Delete every generator touching ``components`` (forget those strands)."""
    doomed = {ComponentId(*c) for c in components}
    return ColoredStringLink(a.ambient, tuple(g for g in a.word if not g.touches(doomed)))


def relabel(g: GeneratorLink, fn: Callable[[ComponentId], ComponentId]) -> GeneratorLink:
    if isinstance(g.kind, Clasp):
        return GeneratorLink(Clasp(fn(g.kind.c), fn(g.kind.d)), g.sign)
    return GeneratorLink(Clasper(IndexSequence(tuple(fn(e) for e in g.kind.sequence))), g.sign)


class Decomposition(NamedTuple):
    theta: ColoredStringLink
    tail: Tuple[TruncatedSeries, ...]
    color: int


def decompose(a: ColoredStringLink, color: int) -> Decomposition:
    """Split ``a`` into the sub-link without ``color`` and that color's longitudes."""
    strands = a.ambient.strands_of(color)
    reduced = a.ambient.without_color(color)
    theta_word = tuple(relabel(g, lambda c: drop_color(c, color)) for g in omit(a, strands).word)
    tail = tuple(a.longitude(c) for c in strands)
    return Decomposition(ColoredStringLink(reduced, theta_word), tail, color)


def _loop_shapes(ambient: ComponentDecomposition, color: int, degree: int) -> List[Tuple[ComponentId, ...]]:
    others = [c for c in ambient.components if c.color != color]
    shapes: List[Tuple[ComponentId, ...]] = []

    def extend(prefix: Tuple[ComponentId, ...], used: frozenset) -> None:
        if len(prefix) == degree:
            shapes.append(prefix)
            return
        for c in others:
            if c.color not in used and c > prefix[0]:
                extend(prefix + (c,), used | {c.color})

    for first in others:
        extend((first,), frozenset({first.color}))
    return sorted(shapes)


def reassemble(decomposition: Decomposition) -> ColoredStringLink:
    """Inverse of :func:`decompose`: lift theta and push each color strand along its longitude."""
    color = decomposition.color
    reduced = decomposition.theta.ambient.counts
    if not decomposition.tail or not 1 <= color <= len(reduced) + 1:
        raise InputError(f"cannot reinsert color {color} with {len(decomposition.tail)} strands")
    ambient = ComponentDecomposition(reduced[: color - 1] + (len(decomposition.tail),) + reduced[color - 1 :])
    strands = ambient.strands_of(color)
    word: List[GeneratorLink] = [relabel(g, lambda c: restore_color(c, color)) for g in decomposition.theta.word]
    scanner = LongitudeScanner(ambient)
    scanner.push_word(word)
    algebra = scanner.algebra
    for strand, target in zip(strands, decomposition.tail):
        if target.ambient != ambient:
            raise AmbientMismatchError(f"longitude over {target.ambient} does not fit {ambient}")
        for degree in range(1, ambient.m):
            current = scanner.longitude(strand)
            corrections = []
            for shape in _loop_shapes(ambient, color, degree):
                idx = algebra.monomial_index(shape)
                x = target.terms.get(idx, 0) - current.terms.get(idx, 0)
                if x:
                    corrections.append((shape, x))
            for shape, x in corrections:
                for low, high, sign in point_push(strand, left_normed_commutator(shape) ** x):
                    _append_copies(scanner, clasp(low, high, sign), 1, word)
    out = ColoredStringLink(ambient, tuple(word))
    out._cache["scanner"] = scanner
    return out
