"""Text documents for colored string links and bouquet graphs.

A link document is a ``colors:`` header followed by a generator word::

    # name: borromean
    colors: 1 1 1
    a((1,1),(3,1)) a((2,1),(3,1)) a((1,1),(3,1))^-1 a((2,1),(3,1))^-1

A graph document replaces the header with per-component Euler counts
``graph: (V,E) (V,E) ...`` (or keeps a ``colors:`` header). Comments run from
``#`` to the end of the line; ``# name:`` and ``# comment:`` comments are kept
as metadata. Every error carries the 1-based line and column it was found at.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Tuple

from homotopy.decide import bouquet_reduction
from homotopy.errors import InputError, ParseError
from homotopy.hbraid import Clasp, GeneratorLink, clasper
from homotopy.scheme import ComponentDecomposition, ComponentId
from homotopy.stringlink import ColoredStringLink

from utils.config import get_settings

_TOKEN_RE = re.compile(
    r"(?P<comment>\#[^\n]*)"
    r"|(?P<newline>\n)"
    r"|(?P<space>[ \t\r]+)"
    r"|(?P<int>[+-]?\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9-]*)"
    r"|(?P<punct>[():,^])"
)
_META_RE = re.compile(r"#\s*(name|comment)\s*:\s*(.*?)\s*$")


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> Tuple[List[Token], dict]:
    """Split ``text`` into tokens; returns the tokens and the metadata comments."""
    tokens: List[Token] = []
    meta: dict = {}
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        column = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = m.lastgroup
        if kind == "comment":
            hit = _META_RE.match(m.group())
            if hit and hit.group(1) not in meta:
                meta[hit.group(1)] = hit.group(2)
        elif kind == "newline":
            tokens.append(Token("newline", "\n", line, column))
            line, line_start = line + 1, m.end()
        elif kind != "space":
            tokens.append(Token(kind, m.group(), line, column))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens, meta


class _Cursor:
    def __init__(self, tokens: List[Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def skip_newlines(self) -> None:
        while self.peek().kind == "newline":
            self.next()

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            wanted = repr(text) if text is not None else kind
            raise ParseError(f"expected {wanted}, found {_describe(tok)}", tok.line, tok.column)
        return tok

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.column)


def _describe(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "newline":
        return "end of line"
    return repr(tok.text)


def _natural(cur: _Cursor, what: str) -> int:
    tok = cur.next()
    if tok.kind != "int" or tok.text[0] in "+-":
        raise cur.error(f"expected {what}, found {_describe(tok)}", tok)
    return int(tok.text)


def _pair(cur: _Cursor, what: str) -> Tuple[int, int]:
    cur.expect("punct", "(")
    first = _natural(cur, what)
    cur.expect("punct", ",")
    second = _natural(cur, what)
    cur.expect("punct", ")")
    return first, second


def _header_counts(cur: _Cursor) -> List[int]:
    counts: List[int] = []
    while cur.peek().kind == "int":
        counts.append(_natural(cur, "a strand count"))
    if not counts:
        raise cur.error("header lists no strand counts")
    return counts


def _end_of_header(cur: _Cursor) -> None:
    tok = cur.peek()
    if tok.kind not in ("newline", "eof"):
        raise cur.error(f"unexpected {_describe(tok)} in header", tok)
    cur.skip_newlines()


def _component(cur: _Cursor, decomposition: ComponentDecomposition) -> ComponentId:
    tok = cur.peek()
    c = ComponentId(*_pair(cur, "a color or strand index"))
    if c not in decomposition:
        raise cur.error(f"component {c} is out of range for colors {decomposition}", tok)
    return c


def _generator(cur: _Cursor, decomposition: ComponentDecomposition) -> GeneratorLink:
    tok = cur.next()
    if tok.kind != "name" or tok.text not in ("a", "t"):
        raise cur.error(f"unknown generator {_describe(tok)}", tok)
    cur.expect("punct", "(")
    comps = [_component(cur, decomposition)]
    while cur.peek().text == ",":
        cur.next()
        comps.append(_component(cur, decomposition))
    cur.expect("punct", ")")
    try:
        if tok.text == "a":
            if len(comps) != 2:
                raise InputError(f"a clasp joins exactly two components, got {len(comps)}")
            return GeneratorLink(Clasp(*comps))
        if len(comps) < 2:
            raise InputError("a clasper needs at least two components")
        return clasper(comps)
    except InputError as exc:
        raise cur.error(str(exc), tok) from exc


def _word(cur: _Cursor, decomposition: ComponentDecomposition, max_exponent: int) -> Tuple[GeneratorLink, ...]:
    word: List[GeneratorLink] = []
    while True:
        cur.skip_newlines()
        if cur.peek().kind == "eof":
            return tuple(word)
        g = _generator(cur, decomposition)
        exp = 1
        if cur.peek().text == "^":
            cur.next()
            tok = cur.next()
            if tok.kind != "int":
                raise cur.error(f"expected an exponent, found {_describe(tok)}", tok)
            exp = int(tok.text)
            if exp == 0:
                raise cur.error("exponent 0 is not allowed; drop the generator instead", tok)
            if abs(exp) > max_exponent:
                raise cur.error(f"exponent {exp} exceeds the limit of {max_exponent}", tok)
        base = g if exp > 0 else g.inverse()
        word.extend([base] * abs(exp))


def _colors_header(cur: _Cursor) -> ComponentDecomposition:
    tok = cur.peek()
    counts = _header_counts(cur)
    try:
        return ComponentDecomposition(tuple(counts))
    except InputError as exc:
        raise cur.error(str(exc), tok) from exc


@dataclass(frozen=True)
class LinkDocument:
    decomposition: ComponentDecomposition
    word: Tuple[GeneratorLink, ...] = ()
    name: Optional[str] = None
    comment: Optional[str] = None

    def to_link(self) -> ColoredStringLink:
        return ColoredStringLink(self.decomposition, self.word)


@dataclass(frozen=True)
class GraphDocument:
    decomposition: ComponentDecomposition
    word: Tuple[GeneratorLink, ...] = ()
    euler: Optional[Tuple[Tuple[int, int], ...]] = None
    name: Optional[str] = None
    comment: Optional[str] = None

    def to_link(self) -> ColoredStringLink:
        return ColoredStringLink(self.decomposition, self.word)


def _exponent_limit(max_exponent: Optional[int]) -> int:
    return get_settings().max_exponent if max_exponent is None else max_exponent


def parse_link(text: str, max_exponent: Optional[int] = None) -> LinkDocument:
    tokens, meta = tokenize(text)
    cur = _Cursor(tokens)
    cur.skip_newlines()
    cur.expect("name", "colors")
    cur.expect("punct", ":")
    decomposition = _colors_header(cur)
    _end_of_header(cur)
    word = _word(cur, decomposition, _exponent_limit(max_exponent))
    return LinkDocument(decomposition, word, meta.get("name"), meta.get("comment"))


def parse_graph(text: str, max_exponent: Optional[int] = None) -> GraphDocument:
    tokens, meta = tokenize(text)
    cur = _Cursor(tokens)
    cur.skip_newlines()
    tok = cur.next()
    if tok.kind != "name" or tok.text not in ("graph", "colors"):
        raise cur.error(f"expected 'graph' or 'colors', found {_describe(tok)}", tok)
    cur.expect("punct", ":")
    euler = None
    if tok.text == "colors":
        decomposition = _colors_header(cur)
    else:
        start = cur.peek()
        pairs = []
        while cur.peek().text == "(":
            pairs.append(_pair(cur, "a vertex or edge count"))
        if not pairs:
            raise cur.error("graph header lists no components")
        euler = tuple(pairs)
        try:
            decomposition = bouquet_reduction(euler)
        except InputError as exc:
            raise cur.error(str(exc), start) from exc
    _end_of_header(cur)
    word = _word(cur, decomposition, _exponent_limit(max_exponent))
    return GraphDocument(decomposition, word, euler, meta.get("name"), meta.get("comment"))


def _runs(word: Tuple[GeneratorLink, ...]) -> Iterator[Tuple[object, int]]:
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        yield word[i].kind, word[i].sign * (j - i)
        i = j


def serialize_word(word: Tuple[GeneratorLink, ...]) -> str:
    """Normalized word text; runs of one generator collapse to ``g^k``."""
    return " ".join(str(kind) if exp == 1 else f"{kind}^{exp}" for kind, exp in _runs(word))


def _metadata_lines(name: Optional[str], comment: Optional[str]) -> List[str]:
    lines = []
    if name is not None:
        lines.append(f"# name: {name}")
    if comment is not None:
        lines.append(f"# comment: {comment}")
    return lines


def serialize_link(doc: LinkDocument) -> str:
    lines = _metadata_lines(doc.name, doc.comment)
    lines.append(f"colors: {doc.decomposition}")
    if doc.word:
        lines.append(serialize_word(doc.word))
    return "\n".join(lines) + "\n"


def serialize_graph(doc: GraphDocument) -> str:
    lines = _metadata_lines(doc.name, doc.comment)
    if doc.euler is not None:
        lines.append("graph: " + " ".join(f"({v},{e})" for v, e in doc.euler))
    else:
        lines.append(f"colors: {doc.decomposition}")
    if doc.word:
        lines.append(serialize_word(doc.word))
    return "\n".join(lines) + "\n"


def link_from(link: ColoredStringLink, name: Optional[str] = None) -> LinkDocument:
    return LinkDocument(link.ambient, link.word, name)
