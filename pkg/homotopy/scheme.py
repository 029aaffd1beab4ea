"""Component decompositions, component ids and admissible index sequences.

A decomposition ``(l_1, ..., l_m)`` says that color ``i`` carries ``l_i``
strands. Strands are ordered lexicographically by ``(color, index)`` and that
order is the global strand order used everywhere else in the package.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from homotopy.errors import InputError


class ComponentId(NamedTuple):
    color: int
    index: int

    def __str__(self) -> str:
        return f"({self.color},{self.index})"


@dataclass(frozen=True)
class ComponentDecomposition:
    counts: Tuple[int, ...]
    # Set on decompositions produced by doubled(); the base resolves barred symbols.
    base: Optional["ComponentDecomposition"] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        counts = tuple(self.counts)
        if not counts:
            raise InputError("a decomposition needs at least one color")
        for c in counts:
            if isinstance(c, bool) or not isinstance(c, int) or c < 1:
                raise InputError(f"strand counts must be positive integers, got {c!r}")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def parse(cls, text: str) -> "ComponentDecomposition":
        parts = text.replace(",", " ").split()
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise InputError(f"invalid colors specification {text!r}") from exc

    @property
    def m(self) -> int:
        return len(self.counts)

    @property
    def n(self) -> int:
        return sum(self.counts)

    @cached_property
    def components(self) -> Tuple[ComponentId, ...]:
        return tuple(
            ComponentId(i, j)
            for i, count in enumerate(self.counts, start=1)
            for j in range(1, count + 1)
        )

    @cached_property
    def _positions(self) -> Dict[ComponentId, int]:
        return {c: pos for pos, c in enumerate(self.components)}

    def __contains__(self, c: object) -> bool:
        return c in self._positions

    def position(self, c: ComponentId) -> int:
        """0-based position of ``c`` in the global strand order."""
        self.validate(c)
        return self._positions[ComponentId(*c)]

    def validate(self, c: ComponentId) -> None:
        if ComponentId(*c) not in self._positions:
            raise InputError(f"component {c} is out of range for colors {self}")

    def strands_of(self, color: int) -> Tuple[ComponentId, ...]:
        if not 1 <= color <= self.m:
            raise InputError(f"color {color} is out of range for colors {self}")
        return tuple(ComponentId(color, j) for j in range(1, self.counts[color - 1] + 1))

    def without_color(self, color: int) -> "ComponentDecomposition":
        """The decomposition with ``color`` removed; raises when nothing would remain."""
        self.strands_of(color)
        rest = self.counts[: color - 1] + self.counts[color:]
        if not rest:
            raise InputError("cannot remove the only color")
        return ComponentDecomposition(rest)

    def doubled(self) -> "ComponentDecomposition":
        """The decomposition of barred colors m..1 followed by colors 1..m."""
        return ComponentDecomposition(tuple(reversed(self.counts)) + self.counts, base=self)

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.counts)


def drop_color(c: ComponentId, color: int) -> ComponentId:
    """Renumber ``c`` for the decomposition with ``color`` removed."""
    if c.color == color:
        raise InputError(f"component {c} belongs to the removed color {color}")
    return ComponentId(c.color - 1, c.index) if c.color > color else c


def restore_color(c: ComponentId, color: int) -> ComponentId:
    """Inverse of :func:`drop_color`."""
    return ComponentId(c.color + 1, c.index) if c.color >= color else c


@dataclass(frozen=True, order=True)
class IndexSequence:
    entries: Tuple[ComponentId, ...]

    def __post_init__(self) -> None:
        entries = tuple(ComponentId(*e) for e in self.entries)
        if len(entries) < 2:
            raise InputError("an index sequence needs at least two entries")
        colors = [e.color for e in entries]
        if len(set(colors)) != len(colors):
            raise InputError(f"index sequence {_fmt(entries)} repeats a color")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *pairs: Sequence[int]) -> "IndexSequence":
        return cls(tuple(ComponentId(*p) for p in pairs))

    @property
    def level(self) -> int:
        return len(self.entries) - 1

    @property
    def last(self) -> ComponentId:
        return self.entries[-1]

    @property
    def head(self) -> Tuple[ComponentId, ...]:
        return self.entries[:-1]

    def is_canonical(self) -> bool:
        """First entry below every interior entry, last entry above all of them."""
        first, last = self.entries[0], self.entries[-1]
        return all(first < e < last for e in self.entries[1:-1]) and first < last

    def validate(self, decomposition: ComponentDecomposition) -> None:
        for e in self.entries:
            decomposition.validate(e)

    def flattened(self) -> List[List[int]]:
        return [[e.color, e.index] for e in self.entries]

    def __iter__(self) -> Iterator[ComponentId]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return _fmt(self.entries)


def _fmt(entries: Iterable[ComponentId]) -> str:
    return "".join(str(ComponentId(*e)) for e in entries)


def _color_distinct_subsets(decomposition: ComponentDecomposition, size: int) -> Iterator[Tuple[ComponentId, ...]]:
    for colors in itertools.combinations(range(1, decomposition.m + 1), size):
        for choice in itertools.product(*(decomposition.strands_of(i) for i in colors)):
            yield tuple(sorted(choice))


def enumerate_canonical_sequences(decomposition: ComponentDecomposition, k: int) -> List[IndexSequence]:
    """All sequences of ``J_k``, sorted lexicographically on their entries."""
    if k < 1 or k + 1 > decomposition.m:
        return []
    out = []
    for subset in _color_distinct_subsets(decomposition, k + 1):
        first, last = subset[0], subset[-1]
        for interior in itertools.permutations(subset[1:-1]):
            out.append(IndexSequence((first,) + interior + (last,)))
    out.sort()
    return out


def enumerate_all_levels(decomposition: ComponentDecomposition) -> List[IndexSequence]:
    out: List[IndexSequence] = []
    for k in range(1, decomposition.m):
        out.extend(enumerate_canonical_sequences(decomposition, k))
    return out


def invariant_count(decomposition: ComponentDecomposition, level: Optional[int] = None) -> int:
    if level is not None:
        return len(enumerate_canonical_sequences(decomposition, level))
    return sum(len(enumerate_canonical_sequences(decomposition, k)) for k in range(1, decomposition.m))


def nu(n: int) -> int:
    """Number of homotopy invariants of an ``n``-component link."""
    return sum(math.factorial(k - 2) * math.comb(n, k) for k in range(2, n + 1))
