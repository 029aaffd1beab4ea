"""Free words on meridians and the color-squarefree truncated Magnus algebra.

Elements of the reduced colored free group RCF(l) are compared through their
Magnus expansion ``x -> 1 + X`` in noncommuting variables, where any monomial
that uses a color twice is dropped. Monomials are stored as tuples of strand
positions (global strand order) and series as sparse ``{monomial index: int}``
maps over a :class:`SeriesAlgebra` that owns the monomial basis. Words
themselves are sympy free group elements wrapped by :class:`FreeWord`.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from sympy import Symbol
from sympy.combinatorics.free_groups import FreeGroup, FreeGroupElement, free_group

from homotopy.errors import AmbientMismatchError, DomainError, InputError
from homotopy.scheme import ComponentDecomposition, ComponentId

Monomial = Tuple[ComponentId, ...]
Terms = Dict[int, int]


class GeneratorSymbol(NamedTuple):
    component: ComponentId
    barred: bool = False

    def resolve(self, decomposition: ComponentDecomposition) -> ComponentId:
        """The component this symbol names inside ``decomposition``.

        Over a doubled decomposition barred color ``i`` sits at position
        ``m - i + 1`` and unbarred color ``i`` at ``m + i``.
        """
        c = ComponentId(*self.component)
        base = decomposition.base
        if base is None:
            if self.barred:
                raise InputError(f"barred generator {self} needs a doubled decomposition")
            decomposition.validate(c)
            return c
        base.validate(c)
        if self.barred:
            return ComponentId(base.m - c.color + 1, c.index)
        return ComponentId(base.m + c.color, c.index)

    def __str__(self) -> str:
        bar = "~" if self.barred else ""
        return f"x{bar}{self.component.color}{self.component.index}"


Letter = Tuple[GeneratorSymbol, int]
SymbolLike = Union[GeneratorSymbol, ComponentId, Tuple[int, int]]


def as_symbol(s: SymbolLike) -> GeneratorSymbol:
    if isinstance(s, GeneratorSymbol):
        return s
    return GeneratorSymbol(ComponentId(*s))


def _symbol_name(s: GeneratorSymbol) -> str:
    bar = "b" if s.barred else ""
    return f"x{bar}{s.component.color}_{s.component.index}"


class _Alphabet(NamedTuple):
    group: FreeGroup
    generators: Dict[GeneratorSymbol, FreeGroupElement]
    names: Dict[Symbol, GeneratorSymbol]


@lru_cache(maxsize=512)
def _alphabet(symbols: Tuple[GeneratorSymbol, ...]) -> _Alphabet:
    names = [Symbol(_symbol_name(s)) for s in symbols]
    group, *gens = free_group(names)
    return _Alphabet(group, dict(zip(symbols, gens)), dict(zip(names, symbols)))


def _merged(*alphabets: _Alphabet) -> _Alphabet:
    symbols = set()
    for a in alphabets:
        symbols.update(a.generators)
    return _alphabet(tuple(sorted(symbols)))


class FreeWord:
    """A freely reduced word in meridian generators.

    Backed by a sympy free group element over the symbols the word has seen;
    words over different alphabets are lifted into the union before combining.
    """

    __slots__ = ("alphabet", "element", "_letters")

    def __init__(self, letters: Iterable[Tuple[SymbolLike, int]] = ()) -> None:
        pairs = [(as_symbol(s), e) for s, e in letters]
        for _, e in pairs:
            if e not in (1, -1):
                raise InputError(f"letter exponents must be +1 or -1, got {e!r}")
        alphabet = _alphabet(tuple(sorted({s for s, _ in pairs})))
        element = alphabet.group.identity
        for s, e in pairs:
            element = element * alphabet.generators[s] ** e
        self._bind(alphabet, element)

    def _bind(self, alphabet: _Alphabet, element: FreeGroupElement) -> None:
        self.alphabet = alphabet
        self.element = element
        self._letters: Optional[Tuple[Letter, ...]] = None

    @classmethod
    def _wrap(cls, alphabet: _Alphabet, element: FreeGroupElement) -> "FreeWord":
        out = cls.__new__(cls)
        out._bind(alphabet, element)
        return out

    @classmethod
    def generator(cls, s: SymbolLike, exp: int = 1) -> "FreeWord":
        return cls(((as_symbol(s), exp),))

    def _lift(self, alphabet: _Alphabet) -> FreeGroupElement:
        if alphabet is self.alphabet:
            return self.element
        # a reduced word stays reduced in a larger free group on the same symbols
        return alphabet.group.dtype(self.element.array_form)

    @property
    def letters(self) -> Tuple[Letter, ...]:
        if self._letters is None:
            names = self.alphabet.names
            self._letters = tuple(
                (names[sym], 1 if e > 0 else -1) for sym, e in self.element.array_form for _ in range(abs(e))
            )
        return self._letters

    def inverse(self) -> "FreeWord":
        return FreeWord._wrap(self.alphabet, self.element.inverse())

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        alphabet = self.alphabet if other.alphabet is self.alphabet else _merged(self.alphabet, other.alphabet)
        return FreeWord._wrap(alphabet, self._lift(alphabet) * other._lift(alphabet))

    def __pow__(self, k: int) -> "FreeWord":
        return FreeWord._wrap(self.alphabet, self.element ** k)

    def __len__(self) -> int:
        return len(self.element)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return not self.element.is_identity

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FreeWord):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def syllables(self) -> Tuple[Tuple[GeneratorSymbol, int], ...]:
        """Maximal runs of one generator as (symbol, exponent) pairs."""
        names = self.alphabet.names
        return tuple((names[sym], e) for sym, e in self.element.array_form)

    def symbols(self) -> set:
        return {s for s, _ in self.letters}

    def substitute(self, images: Mapping[GeneratorSymbol, "FreeWord"]) -> "FreeWord":
        """Replace each generator by its image simultaneously; unmapped generators stay."""
        alphabet = _merged(self.alphabet, *(w.alphabet for w in images.values()))
        lifted = {s: w._lift(alphabet) for s, w in images.items()}
        out = alphabet.group.identity
        for sym, e in self.element.array_form:
            s = self.alphabet.names[sym]
            out = out * lifted.get(s, alphabet.generators[s]) ** e
        return FreeWord._wrap(alphabet, out)

    def delete(self, doomed: Iterable[GeneratorSymbol]) -> "FreeWord":
        """Kill the given generators (the quotient sending them to 1)."""
        gens = self.alphabet.generators
        killed = [gens[s] for s in doomed if s in gens]
        if not killed:
            return self
        return FreeWord._wrap(self.alphabet, self.element.eliminate_words(killed))

    def __str__(self) -> str:
        if not self:
            return "1"
        return " ".join(str(s) if e == 1 else f"{s}^-1" for s, e in self.letters)

    def __repr__(self) -> str:
        return f"FreeWord({self})"


def conjugate(w: FreeWord, by: FreeWord) -> FreeWord:
    return by * w * by.inverse()


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    """``a b a^-1 b^-1``; sympy's own ``commutator`` is ``a^-1 b^-1 a b``."""
    return a * b * a.inverse() * b.inverse()


def left_normed_commutator(symbols: Sequence[SymbolLike]) -> FreeWord:
    """``[[...[s1, s2], ...], sk]``; a single symbol gives the generator itself."""
    if not symbols:
        raise InputError("left-normed commutator of no symbols")
    out = FreeWord.generator(symbols[0])
    for s in symbols[1:]:
        out = commutator(out, FreeWord.generator(s))
    return out


class SeriesAlgebra:
    """Basis and multiplication tables of the truncated algebra over a decomposition.

    ``max_degree`` caps monomial length below the natural bound ``m``; the cap
    is a quotient by an ideal, so products stay exact in low degrees.
    """

    def __init__(self, decomposition: ComponentDecomposition, max_degree: Optional[int] = None) -> None:
        self.decomposition = decomposition
        m = decomposition.m
        self.max_degree = m if max_degree is None else max(0, min(max_degree, m))
        comps = decomposition.components
        self.components = comps
        self.strand_colors = [c.color for c in comps]
        n = len(comps)

        monomials: List[Tuple[int, ...]] = [()]
        frontier: List[Tuple[int, ...]] = [()]
        for _ in range(self.max_degree):
            nxt = []
            for mono in frontier:
                used = {self.strand_colors[s] for s in mono}
                nxt.extend(mono + (s,) for s in range(n) if self.strand_colors[s] not in used)
            monomials.extend(nxt)
            frontier = nxt
        self.monomials = monomials
        self.index = {mono: i for i, mono in enumerate(monomials)}
        self.masks = [sum(1 << self.strand_colors[s] for s in mono) for mono in monomials]
        self._append = [[self.index.get(mono + (s,), -1) for s in range(n)] for mono in monomials]

        # Every product monomial arises from its split points, so tables are linear in the basis.
        partners: List[List[Tuple[int, int]]] = [[] for _ in monomials]
        product: Dict[Tuple[int, int], int] = {}
        for k, mono in enumerate(monomials):
            for cut in range(len(mono) + 1):
                i, j = self.index[mono[:cut]], self.index[mono[cut:]]
                partners[i].append((j, k))
                product[(i, j)] = k
        self._partners = partners
        self._partner_sizes = [len(p) for p in partners]
        self._product = product

    def __reduce__(self):
        return (series_algebra, (self.decomposition, self.max_degree))

    def __len__(self) -> int:
        return len(self.monomials)

    def strand(self, c: ComponentId) -> int:
        return self.decomposition.position(c)

    def monomial_index(self, monomial: Sequence[ComponentId]) -> Optional[int]:
        key = tuple(self.strand(c) for c in monomial)
        return self.index.get(key)

    def monomial(self, idx: int) -> Monomial:
        return tuple(self.components[s] for s in self.monomials[idx])

    # Raw term arithmetic; callers own the dicts.

    def mul_terms(self, a: Terms, b: Terms) -> Terms:
        out: Terms = {}
        if len(a) * len(b) <= sum(self._partner_sizes[i] for i in a):
            product = self._product
            for i, ai in a.items():
                for j, bj in b.items():
                    k = product.get((i, j))
                    if k is not None:
                        out[k] = out.get(k, 0) + ai * bj
        else:
            partners = self._partners
            for i, ai in a.items():
                for j, k in partners[i]:
                    bj = b.get(j)
                    if bj:
                        out[k] = out.get(k, 0) + ai * bj
        return {k: v for k, v in out.items() if v}

    def times_variable(self, a: Terms, strand: int, sign: int) -> Terms:
        """``a * (1 + sign * X_strand)``; also ``a * (1 + X_strand)^sign`` since ``X_strand^2 = 0``."""
        out = dict(a)
        append = self._append
        for i, ai in a.items():
            k = append[i][strand]
            if k >= 0:
                out[k] = out.get(k, 0) + sign * ai
        return {k: v for k, v in out.items() if v}

    def add_terms(self, a: Terms, b: Terms, scale: int = 1) -> Terms:
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, 0) + scale * v
        return {k: v for k, v in out.items() if v}

    def project_terms(self, a: Terms, colors: Iterable[int]) -> Terms:
        mask = sum(1 << c for c in colors)
        return {k: v for k, v in a.items() if not self.masks[k] & mask}


@lru_cache(maxsize=64)
def series_algebra(decomposition: ComponentDecomposition, max_degree: Optional[int] = None) -> SeriesAlgebra:
    return SeriesAlgebra(decomposition, max_degree)


class TruncatedSeries:
    """An element of the truncated algebra; immutable once built."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: SeriesAlgebra, terms: Mapping[int, int]) -> None:
        self.algebra = algebra
        self.terms: Terms = {k: v for k, v in terms.items() if v}

    @classmethod
    def one(cls, algebra: SeriesAlgebra) -> "TruncatedSeries":
        return cls(algebra, {0: 1})

    @classmethod
    def from_coefficients(cls, algebra: SeriesAlgebra, coefficients: Mapping[Monomial, int]) -> "TruncatedSeries":
        terms: Terms = {}
        for mono, v in coefficients.items():
            idx = algebra.monomial_index(mono)
            if idx is None:
                raise InputError(f"monomial {''.join(map(str, mono))} is not color-squarefree")
            terms[idx] = terms.get(idx, 0) + v
        return cls(algebra, terms)

    @property
    def ambient(self) -> ComponentDecomposition:
        return self.algebra.decomposition

    @property
    def constant(self) -> int:
        return self.terms.get(0, 0)

    def coefficient(self, monomial: Sequence[ComponentId]) -> int:
        idx = self.algebra.monomial_index(monomial)
        return 0 if idx is None else self.terms.get(idx, 0)

    def coefficients(self) -> Dict[Monomial, int]:
        return {self.algebra.monomial(k): v for k, v in sorted(self.terms.items())}

    def degree_part(self, degree: int) -> "TruncatedSeries":
        monos = self.algebra.monomials
        return TruncatedSeries(self.algebra, {k: v for k, v in self.terms.items() if len(monos[k]) == degree})

    def project_out_colors(self, colors: Iterable[int]) -> "TruncatedSeries":
        return TruncatedSeries(self.algebra, self.algebra.project_terms(self.terms, colors))

    def _check(self, other: "TruncatedSeries") -> None:
        if self.algebra is not other.algebra:
            if (self.ambient, self.algebra.max_degree) != (other.ambient, other.algebra.max_degree):
                raise AmbientMismatchError(f"series over {self.ambient} and {other.ambient} cannot be combined")

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.algebra, self.algebra.mul_terms(self.terms, other.terms))

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.algebra, self.algebra.add_terms(self.terms, other.terms))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.algebra, self.algebra.add_terms(self.terms, other.terms, -1))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.algebra, {k: -v for k, v in self.terms.items()})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.ambient == other.ambient and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ambient, frozenset(self.terms.items())))

    def inverse(self) -> "TruncatedSeries":
        return series_inverse(self)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items()):
            name = "".join(_variable_name(c) for c in self.algebra.monomial(k))
            if not name:
                parts.append(str(v))
            elif v == 1:
                parts.append(name)
            elif v == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{v}{name}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


def _variable_name(c: ComponentId) -> str:
    if c.color < 10 and c.index < 10:
        return f"X{c.color}{c.index}"
    return f"X({c.color},{c.index})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_inverse(a: TruncatedSeries) -> TruncatedSeries:
    if a.constant != 1:
        raise DomainError(f"series with constant term {a.constant} is not invertible")
    algebra = a.algebra
    nilpotent = {k: -v for k, v in a.terms.items() if k != 0}
    result: Terms = {0: 1}
    power: Terms = {0: 1}
    while True:
        power = algebra.mul_terms(power, nilpotent)
        if not power:
            break
        result = algebra.add_terms(result, power)
    return TruncatedSeries(algebra, result)


def magnus_expand(
    w: FreeWord, decomposition: ComponentDecomposition, max_degree: Optional[int] = None
) -> TruncatedSeries:
    algebra = series_algebra(decomposition, max_degree)
    terms: Terms = {0: 1}
    for sym, exp in w.syllables():
        strand = algebra.strand(sym.resolve(decomposition))
        terms = algebra.times_variable(terms, strand, exp)
    return TruncatedSeries(algebra, terms)


def rcf_equal(u: FreeWord, v: FreeWord, decomposition: ComponentDecomposition) -> bool:
    return magnus_expand(u, decomposition) == magnus_expand(v, decomposition)


def algebra_dimension(decomposition: ComponentDecomposition) -> int:
    """Number of color-squarefree monomials: sum over k of k! e_k(l_1, ..., l_m)."""
    elementary = [1]
    for count in decomposition.counts:
        elementary = [a + count * b for a, b in zip(elementary + [0], [0] + elementary)]
    total, factorial = 0, 1
    for k, e in enumerate(elementary):
        if k:
            factorial *= k
        total += factorial * e
    return total
