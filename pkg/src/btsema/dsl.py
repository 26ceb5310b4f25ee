"""S-expression tree files (``.bt``): parser, canonical printer, DOT export.

Grammar::

    tree    := sexpr
    sexpr   := "(" keyword attr* child* ")"
    attr    := ":" ident (integer | string | success | failure)

``action`` and ``condition`` take a bare name right after the keyword; their
attributes become leaf parameters. ``;`` starts a comment.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

from .core import Response
from .errors import ParseError
from .treespec import (
    ALL_KINDS,
    ATTR_NAME_RE,
    INT_RE,
    LEAF_KINDS,
    REQUIRED_ATTR,
    AttrValue,
    TreeSpec,
)

_OPEN, _CLOSE, _STRING, _INT, _ATTR, _SYMBOL, _EOF = range(7)
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}
_BARE_VALUES = {"success": Response.SUCCESS, "failure": Response.FAILURE}


class _Token(NamedTuple):
    type: int
    text: str
    value: object
    line: int
    col: int


def _tokenize(text: str) -> Iterator[_Token]:
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r":
            i, col = i + 1, col + 1
            continue
        if ch == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "(":
            yield _Token(_OPEN, ch, None, line, col)
            i, col = i + 1, col + 1
            continue
        if ch == ")":
            yield _Token(_CLOSE, ch, None, line, col)
            i, col = i + 1, col + 1
            continue
        if ch == '"':
            start_line, start_col = line, col
            out = []
            i, col = i + 1, col + 1
            while True:
                if i >= n or text[i] == "\n":
                    raise ParseError("unterminated string", start_line, start_col)
                ch = text[i]
                if ch == '"':
                    i, col = i + 1, col + 1
                    break
                if ch == "\\":
                    esc = text[i + 1] if i + 1 < n else ""
                    if esc not in _ESCAPES:
                        raise ParseError(f"unknown escape \\{esc}", line, col)
                    out.append(_ESCAPES[esc])
                    i, col = i + 2, col + 2
                    continue
                out.append(ch)
                i, col = i + 1, col + 1
            value = "".join(out)
            yield _Token(_STRING, value, value, start_line, start_col)
            continue
        start = i
        while i < n and text[i] not in ' \t\r\n()";':
            i += 1
        word = text[start:i]
        if word.startswith(":"):
            if not ATTR_NAME_RE.match(word[1:]):
                raise ParseError(f"bad attribute name {word!r}", line, col)
            yield _Token(_ATTR, word, word[1:], line, col)
        elif INT_RE.match(word):
            yield _Token(_INT, word, int(word), line, col)
        else:
            yield _Token(_SYMBOL, word, word, line, col)
        col += i - start
    yield _Token(_EOF, "", None, line, col)


class _Parser:
    def __init__(self, text: str):
        self.tokens = list(_tokenize(text))
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self) -> TreeSpec:
        tok = self.peek()
        if tok.type == _EOF:
            raise ParseError("empty input, expected '('", tok.line, tok.col)
        spec = self.sexpr()
        tok = self.peek()
        if tok.type == _CLOSE:
            raise ParseError("unbalanced ')'", tok.line, tok.col)
        if tok.type != _EOF:
            raise ParseError(f"unexpected {tok.text!r} after the tree", tok.line, tok.col)
        return spec

    def sexpr(self) -> TreeSpec:
        open_tok = self.next()
        if open_tok.type != _OPEN:
            raise ParseError(f"expected '(', got {open_tok.text!r}", open_tok.line, open_tok.col)
        kw = self.next()
        if kw.type != _SYMBOL:
            raise ParseError("expected a node keyword after '('", kw.line, kw.col)
        if kw.value not in ALL_KINDS:
            raise ParseError(f"unknown keyword {kw.text!r}", kw.line, kw.col)
        spec = TreeSpec(kw.value, pos=(open_tok.line, open_tok.col))
        if spec.is_leaf:
            name = self.next()
            if name.type != _SYMBOL:
                raise ParseError(f"{kw.value} needs a name", name.line, name.col)
            spec.name = name.value

        while self.peek().type == _ATTR:
            attr = self.next()
            key = attr.value
            if key in spec.attrs:
                raise ParseError(f"duplicate attribute :{key}", attr.line, attr.col)
            if not spec.is_leaf and REQUIRED_ATTR.get(spec.kind) != key:
                raise ParseError(f"unknown attribute :{key} for {spec.kind}", attr.line, attr.col)
            spec.attrs[key] = self.value()

        while True:
            tok = self.peek()
            if tok.type == _OPEN:
                spec.children.append(self.sexpr())
            elif tok.type == _CLOSE:
                self.next()
                break
            elif tok.type == _EOF:
                raise ParseError("unbalanced '(': missing ')'", open_tok.line, open_tok.col)
            elif tok.type == _ATTR:
                raise ParseError("attributes must precede children", tok.line, tok.col)
            else:
                raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.col)

        required = REQUIRED_ATTR.get(spec.kind)
        if required is not None and required not in spec.attrs:
            raise ParseError(
                f"{spec.kind} is missing :{required}", open_tok.line, open_tok.col
            )
        return spec

    def value(self) -> AttrValue:
        tok = self.next()
        if tok.type in (_INT, _STRING):
            return tok.value
        if tok.type == _SYMBOL and tok.value in _BARE_VALUES:
            return _BARE_VALUES[tok.value]
        raise ParseError(
            f"attribute value must be an integer, a string, success or failure; got {tok.text!r}",
            tok.line,
            tok.col,
        )


def parse_tree(text: str) -> TreeSpec:
    """Parse one tree. Raises :class:`ParseError` with a line:col position."""
    return _Parser(text).parse()


def format_value(value: AttrValue) -> str:
    if isinstance(value, Response):
        return value.value.lower()
    if isinstance(value, bool):
        raise TypeError("boolean attribute values have no DSL spelling")
    if isinstance(value, int):
        return str(value)
    out = value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")
    return f'"{out}"'


def _head(spec: TreeSpec) -> str:
    parts = [spec.kind]
    if spec.is_leaf:
        parts.append(spec.name)
    for key in sorted(spec.attrs):
        parts.append(f":{key} {format_value(spec.attrs[key])}")
    return " ".join(parts)


def print_tree(spec: TreeSpec) -> str:
    """Canonical text: one node per line, two-space indent, sorted attributes."""
    lines: list[str] = []

    def emit(s: TreeSpec, depth: int) -> None:
        pad = "  " * depth
        if not s.children:
            lines.append(f"{pad}({_head(s)})")
            return
        lines.append(f"{pad}({_head(s)}")
        for c in s.children:
            emit(c, depth + 1)
        lines[-1] += ")"

    emit(spec, 0)
    return "\n".join(lines) + "\n"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


_DOT_ATTR_LABEL = {"threshold": "k"}
_DOT_SHAPES = {"action": "box", "condition": "ellipse"}


def dot_label(spec: TreeSpec) -> str:
    parts = [spec.kind]
    if spec.is_leaf:
        parts.append(spec.name)
    for key in sorted(spec.attrs):
        value = spec.attrs[key]
        if isinstance(value, Response):
            shown = value.value.lower()
        elif isinstance(value, str) and spec.is_leaf:
            shown = format_value(value)
        else:
            shown = str(value)
        parts.append(f"{_DOT_ATTR_LABEL.get(key, key)}={shown}")
    return " ".join(parts)


def export_dot(spec: TreeSpec, graph_name: str = "bt") -> str:
    """Graphviz source: nodes numbered in pre-order, edges in child order."""
    nodes: list[str] = []
    edges: list[str] = []
    counter = 0

    def visit(s: TreeSpec) -> int:
        nonlocal counter
        me = counter
        counter += 1
        shape = _DOT_SHAPES.get(s.kind, "box" if s.children else "plaintext")
        style = "" if s.is_leaf else ', style="rounded"'
        nodes.append(f'  n{me} [label="{_dot_escape(dot_label(s))}", shape={shape}{style}];')
        for c in s.children:
            edges.append(f"  n{me} -> n{counter};")
            visit(c)
        return me

    visit(spec)
    body = "\n".join(nodes + edges)
    return f"digraph {graph_name} {{\n  ordering=out;\n{body}\n}}\n"
