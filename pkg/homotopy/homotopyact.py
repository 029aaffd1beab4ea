"""Closure-preserving moves on colored string links.

The basic move conjugates the longitude of one strand ``(i,j)`` by the
meridian of another strand ``(s,t)``. On a word ``sigma`` with sub-link
``theta`` (``sigma`` with strand ``(i,j)`` forgotten) it is

    sigma  ->  theta A theta^-1 sigma A^-1,        A = clasp((s,t), (i,j))^sign

i.e. strand ``(i,j)`` is pushed once more around ``(s,t)`` at the bottom and
once less at the top. Closures of both sides are CL-homotopic. Every move
returns a canonical form, so its result is a class representative.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

from homotopy.errors import InputError
from homotopy.hbraid import clasp, transported_meridian
from homotopy.scheme import ComponentDecomposition, ComponentId
from homotopy.stringlink import ColoredStringLink, canonical_form, compose, invert, omit

logger = logging.getLogger(__name__)


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise InputError(f"move sign must be +1 or -1, got {sign!r}")


def partial_conjugation(
    a: ColoredStringLink, source: ComponentId, target: ComponentId, sign: int
) -> ColoredStringLink:
    """Conjugate the longitude of ``target`` by the meridian of ``source``.

    Accepts same-color pairs too; those act trivially on classes.
    """
    source, target = ComponentId(*source), ComponentId(*target)
    a.ambient.validate(source)
    a.ambient.validate(target)
    _check_sign(sign)
    if source == target:
        raise InputError(f"cannot conjugate {target} by its own meridian")
    base = canonical_form(a)
    theta = omit(base, [target])
    push = ColoredStringLink(a.ambient, (clasp(source, target, sign),))
    moved = compose(compose(compose(theta, push), invert(theta)), compose(base, invert(push)))
    return canonical_form(moved)


@dataclass(frozen=True)
class SclGenerator:
    """``(x~_st, x~_st)_ij``: conjugate strand ``target`` by strand ``source``."""

    source: ComponentId
    target: ComponentId
    sign: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "source", ComponentId(*self.source))
        object.__setattr__(self, "target", ComponentId(*self.target))
        _check_sign(self.sign)
        if self.source.color == self.target.color:
            raise InputError(f"generator {self.source}->{self.target} joins strands of one color")

    def validate(self, ambient: ComponentDecomposition) -> None:
        ambient.validate(self.source)
        ambient.validate(self.target)

    def inverse(self) -> "SclGenerator":
        return SclGenerator(self.source, self.target, -self.sign)

    def apply(self, a: ColoredStringLink) -> ColoredStringLink:
        return apply_scl(self, a)

    def sort_key(self) -> Tuple:
        return (0, self.source, self.target, -self.sign)

    def describe(self) -> Dict[str, object]:
        return {"move": "scl", "source": list(self.source), "target": list(self.target), "sign": self.sign}

    def __str__(self) -> str:
        return f"scl {self.source}->{self.target} {self.sign:+d}"


@dataclass(frozen=True)
class SgGenerator:
    """``(x~_st, x~_st)_i``: conjugate every strand of color ``target_color``."""

    source: ComponentId
    target_color: int
    sign: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "source", ComponentId(*self.source))
        _check_sign(self.sign)
        if self.source.color == self.target_color:
            raise InputError(f"generator {self.source}->color {self.target_color} stays inside one color")

    def validate(self, ambient: ComponentDecomposition) -> None:
        ambient.validate(self.source)
        ambient.strands_of(self.target_color)

    def inverse(self) -> "SgGenerator":
        return SgGenerator(self.source, self.target_color, -self.sign)

    def apply(self, a: ColoredStringLink) -> ColoredStringLink:
        return apply_sg(self, a)

    def sort_key(self) -> Tuple:
        return (1, self.source, self.target_color, -self.sign)

    def describe(self) -> Dict[str, object]:
        return {"move": "sg", "source": list(self.source), "target_color": self.target_color, "sign": self.sign}

    def __str__(self) -> str:
        return f"sg {self.source}->{self.target_color} {self.sign:+d}"


@dataclass(frozen=True)
class ConjugationGenerator:
    """``(x~_st, x_st)_ij``: conjugate the whole string link by the clasp of the two strands."""

    source: ComponentId
    target: ComponentId
    sign: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "source", ComponentId(*self.source))
        object.__setattr__(self, "target", ComponentId(*self.target))
        _check_sign(self.sign)
        if self.source.color == self.target.color:
            raise InputError(f"generator {self.source}->{self.target} joins strands of one color")

    def validate(self, ambient: ComponentDecomposition) -> None:
        ambient.validate(self.source)
        ambient.validate(self.target)

    def inverse(self) -> "ConjugationGenerator":
        return ConjugationGenerator(self.source, self.target, -self.sign)

    def apply(self, a: ColoredStringLink) -> ColoredStringLink:
        return apply_conjugation(self, a)

    def sort_key(self) -> Tuple:
        return (2, self.source, self.target, -self.sign)

    def describe(self) -> Dict[str, object]:
        return {"move": "conj", "source": list(self.source), "target": list(self.target), "sign": self.sign}

    def __str__(self) -> str:
        return f"conj {self.source}->{self.target} {self.sign:+d}"


Move = Union[SclGenerator, SgGenerator, ConjugationGenerator]


def apply_scl(g: SclGenerator, a: ColoredStringLink) -> ColoredStringLink:
    g.validate(a.ambient)
    return partial_conjugation(a, g.source, g.target, g.sign)


def apply_sg(g: SgGenerator, a: ColoredStringLink) -> ColoredStringLink:
    """One partial conjugation per strand of ``g.target_color``.

    Sign +1 walks the strands ``(i,1), ..., (i,l_i)``; sign -1 walks them in
    reverse, so ``g.inverse()`` undoes ``g`` word for word. The strands are
    distinct targets, so either order gives the same class.
    """
    g.validate(a.ambient)
    targets = a.ambient.strands_of(g.target_color)
    if g.sign == -1:
        targets = tuple(reversed(targets))
    out = a
    for target in targets:
        out = partial_conjugation(out, g.source, target, g.sign)
    return out


def apply_conjugation(g: ConjugationGenerator, a: ColoredStringLink) -> ColoredStringLink:
    g.validate(a.ambient)
    push = ColoredStringLink(a.ambient, (clasp(g.source, g.target, g.sign),))
    return canonical_form(compose(compose(push, a), invert(push)))


def apply_scl_companion(g: SclGenerator, a: ColoredStringLink) -> ColoredStringLink:
    """``(x_st, x_st)_ij``: conjugate by the source meridian transported through theta.

    Realised as one partial conjugation per letter of the transported
    meridian, innermost (last) letter first; same-color letters are skipped.
    """
    g.validate(a.ambient)
    theta = omit(canonical_form(a), [g.target])
    meridian = transported_meridian(theta.word, g.source, a.ambient)
    if g.sign == -1:
        meridian = meridian.inverse()
    out = a
    for sym, exp in reversed(meridian.letters):
        if sym.component.color == g.target.color:
            continue
        out = partial_conjugation(out, sym.component, g.target, exp)
    return canonical_form(out)


def scl_generator_set(
    ambient: ComponentDecomposition, include_conjugations: bool = False
) -> List[Move]:
    comps = ambient.components
    moves: List[Move] = [
        SclGenerator(source, target, sign)
        for source in comps
        for target in comps
        if source.color != target.color
        for sign in (1, -1)
    ]
    if include_conjugations:
        moves.extend(
            ConjugationGenerator(source, target, sign)
            for source in comps
            for target in comps
            if source < target and source.color != target.color
            for sign in (1, -1)
        )
    return moves


def sg_generator_set(ambient: ComponentDecomposition) -> List[SgGenerator]:
    return [
        SgGenerator(source, color, sign)
        for source in ambient.components
        for color in range(1, ambient.m + 1)
        if color != source.color
        for sign in (1, -1)
    ]


def star_identity_sides(
    a: ColoredStringLink, strand: ComponentId, color: int
) -> Tuple[ColoredStringLink, ColoredStringLink]:
    """Both sides of the identity relating a strand circling a whole color to that color circling the strand.

    Left: conjugate ``strand`` by the product of every meridian of ``color``.
    Right: the sg move of ``strand`` on ``color`` with sign -1.
    """
    strand = ComponentId(*strand)
    left = a
    for source in reversed(a.ambient.strands_of(color)):
        left = partial_conjugation(left, source, strand, 1)
    right = apply_sg(SgGenerator(strand, color, -1), a)
    return left, right
