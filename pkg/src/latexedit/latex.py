"""LaTeX math tokenizer, parser and canonicalizer.

Semantically identical formulas are mapped to a single textual form:
subscripts serialized before superscripts, ``\\over`` rewritten to
``\\frac``, ``\\label{...}`` stripped, single-token script arguments
braced.  The lexer is lossless and the parser never aborts on the kind
of malformed markup found in real post bodies; it repairs what it can
and records a diagnostic for each repair.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

OPERATOR_CHARS = set("+-=*/<>|,.!?:;'`@#%&~")


class ParseError(Exception):
    """Raised when a token stream cannot be repaired into a tree."""


class TokenKind(enum.Enum):
    COMMAND = "command"
    LETTER = "letter"
    DIGIT = "digit"
    OPERATOR = "operator"
    OPEN_BRACE = "open_brace"
    CLOSE_BRACE = "close_brace"
    SUBSCRIPT = "subscript"
    SUPERSCRIPT = "superscript"
    DOLLAR = "dollar"
    WHITESPACE = "whitespace"
    OTHER = "other"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str


def tokenize(s: str) -> list[Token]:
    """Lossless lexing: concatenating token texts reproduces ``s``.

    Multi-letter commands are single tokens; each digit is its own
    token (numbers are treated at character level).  Unknown characters
    become OTHER tokens, never errors.
    """
    tokens: list[Token] = []
    i = 0
    n = len(s)
    while i < n:
        c = s[i]
        if c == "\\":
            j = i + 1
            while j < n and s[j].isalpha():
                j += 1
            if j > i + 1:
                tokens.append(Token(TokenKind.COMMAND, s[i:j]))
                i = j
            elif j < n:
                # escaped single character, e.g. "\{" or "\\"
                tokens.append(Token(TokenKind.OTHER, s[i : j + 1]))
                i = j + 1
            else:
                tokens.append(Token(TokenKind.OTHER, c))
                i += 1
        elif c.isspace():
            j = i
            while j < n and s[j].isspace():
                j += 1
            tokens.append(Token(TokenKind.WHITESPACE, s[i:j]))
            i = j
        elif c == "{":
            tokens.append(Token(TokenKind.OPEN_BRACE, c))
            i += 1
        elif c == "}":
            tokens.append(Token(TokenKind.CLOSE_BRACE, c))
            i += 1
        elif c == "_":
            tokens.append(Token(TokenKind.SUBSCRIPT, c))
            i += 1
        elif c == "^":
            tokens.append(Token(TokenKind.SUPERSCRIPT, c))
            i += 1
        elif c == "$":
            tokens.append(Token(TokenKind.DOLLAR, c))
            i += 1
        elif c.isdigit():
            tokens.append(Token(TokenKind.DIGIT, c))
            i += 1
        elif c.isalpha() and c.isascii():
            tokens.append(Token(TokenKind.LETTER, c))
            i += 1
        elif c in OPERATOR_CHARS:
            tokens.append(Token(TokenKind.OPERATOR, c))
            i += 1
        else:
            tokens.append(Token(TokenKind.OTHER, c))
            i += 1
    return tokens


# --- formula tree ---------------------------------------------------------


@dataclass(frozen=True)
class FormulaNode:
    pass


@dataclass(frozen=True)
class Atom(FormulaNode):
    token: Token | str

    @property
    def text(self) -> str:
        return self.token.text if isinstance(self.token, Token) else self.token


@dataclass(frozen=True)
class Row(FormulaNode):
    children: tuple[FormulaNode, ...]


@dataclass(frozen=True)
class Group(FormulaNode):
    child: FormulaNode


@dataclass(frozen=True)
class Frac(FormulaNode):
    numerator: FormulaNode
    denominator: FormulaNode


@dataclass(frozen=True)
class Sqrt(FormulaNode):
    radicand: FormulaNode
    index: Optional[FormulaNode] = None


@dataclass(frozen=True)
class Script(FormulaNode):
    base: FormulaNode
    sub: Optional[FormulaNode] = None
    sup: Optional[FormulaNode] = None
    sup_first: bool = False  # source order, kept for reorder_scripts=False


@dataclass(frozen=True)
class Cmd(FormulaNode):
    name: str
    args: tuple[FormulaNode, ...] = ()


@dataclass
class ParseResult:
    node: FormulaNode
    diagnostics: list[str] = field(default_factory=list)


@dataclass
class CanonConfig:
    reorder_scripts: bool = True
    over_to_frac: bool = True
    strip_labels: bool = True
    brace_single_scripts: bool = True


# argument counts for commands the parser gives structure to
_ARG_COUNTS = {"\\frac": 2, "\\label": 1, "\\sqrt": 1}

_EMPTY_ATOM = Atom(Token(TokenKind.OTHER, ""))


class _Parser:
    def __init__(self, tokens: list[Token], config: CanonConfig):
        # whitespace and dollar delimiters are not structural
        self.tokens = [
            t
            for t in tokens
            if t.kind not in (TokenKind.WHITESPACE, TokenKind.DOLLAR)
        ]
        self.pos = 0
        self.config = config
        self.diagnostics: list[str] = []

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def parse_sequence(self, until_close: bool) -> FormulaNode:
        items: list[FormulaNode] = []
        while True:
            t = self.peek()
            if t is None:
                if until_close:
                    self.diagnostics.append("unclosed brace")
                break
            if t.kind is TokenKind.CLOSE_BRACE:
                if until_close:
                    self.next()
                    break
                self.diagnostics.append("stray closing brace dropped")
                self.next()
                continue
            if t.kind is TokenKind.COMMAND and t.text == "\\over" and self.config.over_to_frac:
                # TeX semantics: the whole enclosing group splits at \over
                self.next()
                numerator = _as_row(items)
                denominator = self.parse_sequence(until_close)
                return Frac(numerator, denominator)
            items.append(self.parse_item())
        return _as_row(items)

    def parse_item(self) -> FormulaNode:
        t = self.peek()
        assert t is not None
        if t.kind is TokenKind.OPEN_BRACE:
            self.next()
            node: FormulaNode = Group(self.parse_sequence(until_close=True))
        elif t.kind is TokenKind.COMMAND:
            node = self.parse_command()
        elif t.kind in (TokenKind.SUBSCRIPT, TokenKind.SUPERSCRIPT):
            self.diagnostics.append("script with no base")
            node = _EMPTY_ATOM
        else:
            self.next()
            node = Atom(t)
        # attach any trailing scripts
        while True:
            t = self.peek()
            if t is None or t.kind not in (TokenKind.SUBSCRIPT, TokenKind.SUPERSCRIPT):
                break
            self.next()
            arg = self.parse_arg(t.text)
            if t.kind is TokenKind.SUBSCRIPT:
                if isinstance(node, Script) and node.sub is None:
                    node = Script(node.base, sub=arg, sup=node.sup, sup_first=node.sup is not None)
                else:
                    node = Script(node, sub=arg)
            else:
                if isinstance(node, Script) and node.sup is None:
                    node = Script(node.base, sub=node.sub, sup=arg, sup_first=False)
                else:
                    node = Script(node, sup=arg, sup_first=True)
        return node

    def parse_command(self) -> FormulaNode:
        t = self.next()
        name = t.text
        if name == "\\sqrt":
            index = None
            nxt = self.peek()
            if nxt is not None and nxt.text == "[":
                self.next()
                idx_items: list[FormulaNode] = []
                while True:
                    nxt = self.peek()
                    if nxt is None:
                        self.diagnostics.append("unclosed sqrt index")
                        break
                    if nxt.text == "]":
                        self.next()
                        break
                    idx_items.append(self.parse_item())
                index = _as_row(idx_items)
            radicand = self.parse_arg(name)
            return Sqrt(radicand, index)
        argc = _ARG_COUNTS.get(name)
        if argc is None:
            return Cmd(name)
        args = []
        for k in range(argc):
            if self.peek() is None:
                if not args:
                    raise ParseError(f"{name} with no arguments at end of input")
                self.diagnostics.append(f"{name} missing argument {k + 1}")
                args.append(_EMPTY_ATOM)
            else:
                args.append(self.parse_arg(name))
        if name == "\\frac":
            return Frac(args[0], args[1])
        return Cmd(name, tuple(args))

    def parse_arg(self, owner: str) -> FormulaNode:
        """One argument: a braced group's content, or a single item."""
        t = self.peek()
        if t is None:
            self.diagnostics.append(f"missing argument for {owner}")
            return _EMPTY_ATOM
        if t.kind is TokenKind.OPEN_BRACE:
            self.next()
            return self.parse_sequence(until_close=True)
        if t.kind is TokenKind.COMMAND:
            return self.parse_command()
        if t.kind in (TokenKind.SUBSCRIPT, TokenKind.SUPERSCRIPT, TokenKind.CLOSE_BRACE):
            self.diagnostics.append(f"missing argument for {owner}")
            return _EMPTY_ATOM
        self.next()
        return Atom(t)


def _as_row(items: list[FormulaNode]) -> FormulaNode:
    flat: list[FormulaNode] = []
    for it in items:
        if isinstance(it, Row):
            flat.extend(it.children)
        else:
            flat.append(it)
    if len(flat) == 1:
        return flat[0]
    return Row(tuple(flat))


def parse(tokens: list[Token], config: Optional[CanonConfig] = None) -> ParseResult:
    """Parse a token sequence into a formula tree.

    Recovery rules: an unclosed "{" closes at end of input, a stray "}"
    is dropped, and "^"/"_" with no base attaches to an empty atom.
    Each repair is reported in the result's diagnostics.
    """
    p = _Parser(tokens, config or CanonConfig())
    node = p.parse_sequence(until_close=False)
    return ParseResult(node, p.diagnostics)


# --- canonical transform and serialization --------------------------------


def _is_empty(node: FormulaNode) -> bool:
    if isinstance(node, Atom):
        return node.text == ""
    if isinstance(node, Row):
        return all(_is_empty(c) for c in node.children)
    if isinstance(node, Group):
        return _is_empty(node.child)
    return False


def _transform(node: FormulaNode, config: CanonConfig) -> Optional[FormulaNode]:
    if isinstance(node, Atom):
        # a dangling backslash at end of input carries no content and
        # would merge with a following brace on the next parse
        return None if node.text == "\\" else node
    if isinstance(node, Row):
        kept = []
        for c in node.children:
            t = _transform(c, config)
            if t is not None:
                kept.append(t)
        return _as_row(kept) if kept else None
    if isinstance(node, Group):
        inner = _transform(node.child, config)
        while isinstance(inner, Group):  # collapse redundant nesting
            inner = inner.child
        return Group(inner if inner is not None else _as_row([]))
    if isinstance(node, Frac):
        return Frac(
            _transform(node.numerator, config) or _as_row([]),
            _transform(node.denominator, config) or _as_row([]),
        )
    if isinstance(node, Sqrt):
        idx = _transform(node.index, config) if node.index is not None else None
        return Sqrt(_transform(node.radicand, config) or _as_row([]), idx)
    if isinstance(node, Script):
        base = _transform(node.base, config) or _EMPTY_ATOM
        sub = _transform(node.sub, config) if node.sub is not None else None
        sup = _transform(node.sup, config) if node.sup is not None else None
        # empty script arguments carry no content; drop them so "^{}"
        # and a bare "^" canonicalize the same way
        if sub is not None and _is_empty(sub):
            sub = None
        if sup is not None and _is_empty(sup):
            sup = None
        if sub is None and sup is None:
            return base if not _is_empty(base) else None
        # flatten stacked scripts when the slots do not clash, so the
        # repaired "_^1_1" and the straightforward "_1^1" meet
        while (
            isinstance(base, Script)
            and not (base.sub is not None and sub is not None)
            and not (base.sup is not None and sup is not None)
        ):
            sub = sub if sub is not None else base.sub
            sup = sup if sup is not None else base.sup
            base = base.base
        sup_first = node.sup_first and not config.reorder_scripts
        return Script(base, sub=sub, sup=sup, sup_first=sup_first)
    if isinstance(node, Cmd):
        if node.name == "\\label" and config.strip_labels:
            return None
        return Cmd(node.name, tuple(_transform(a, config) or _as_row([]) for a in node.args))
    return node


def _needs_space(left: str, right: str) -> bool:
    # "\sin x" must not serialize to "\sinx"
    if not left or not right:
        return False
    if not right[0].isalpha():
        return False
    i = len(left)
    while i > 0 and left[i - 1].isalpha():
        i -= 1
    return i > 0 and left[i - 1] == "\\"


def _concat(parts: list[str]) -> str:
    out = ""
    for p in parts:
        if not p:
            continue
        if _needs_space(out, p):
            out += " "
        out += p
    return out


def serialize(node: FormulaNode, config: Optional[CanonConfig] = None) -> str:
    """Canonical textual form; reparsing yields a structurally equal tree."""
    cfg = config or CanonConfig()
    return _serialize(node, cfg)


def _braced(node: FormulaNode, cfg: CanonConfig) -> str:
    inner = node
    while True:
        if isinstance(inner, Group):
            inner = inner.child
        elif isinstance(inner, Row) and len(inner.children) == 1:
            inner = inner.children[0]
        else:
            break
    return "{" + _serialize(inner, cfg) + "}"


def _serialize(node: FormulaNode, cfg: CanonConfig) -> str:
    if isinstance(node, Atom):
        return node.text
    if isinstance(node, Row):
        if len(node.children) == 1:
            return _serialize(node.children[0], cfg)
        return _concat([_serialize(c, cfg) for c in node.children])
    if isinstance(node, Group):
        return "{" + _serialize(node.child, cfg) + "}"
    if isinstance(node, Frac):
        return "\\frac" + _braced(node.numerator, cfg) + _braced(node.denominator, cfg)
    if isinstance(node, Sqrt):
        idx = "[" + _serialize(node.index, cfg) + "]" if node.index is not None else ""
        return "\\sqrt" + idx + _braced(node.radicand, cfg)
    if isinstance(node, Script):
        parts = [_serialize(node.base, cfg)]
        scripts = []
        if node.sub is not None:
            scripts.append(("_", node.sub))
        if node.sup is not None:
            scripts.append(("^", node.sup))
        if not cfg.reorder_scripts and node.sup_first:
            scripts.reverse()
        for mark, arg in scripts:
            if cfg.brace_single_scripts:
                parts.append(mark + _braced(arg, cfg))
            else:
                text = _serialize(arg.child if isinstance(arg, Group) else arg, cfg)
                parts.append(mark + (text if len(text) == 1 else "{" + text + "}"))
        return _concat(parts)
    if isinstance(node, Cmd):
        return _concat(["\\" + node.name.lstrip("\\")] + [_braced(a, cfg) for a in node.args])
    raise TypeError(f"cannot serialize {node!r}")


def canonicalize(s: str, config: Optional[CanonConfig] = None) -> str:
    """Deterministic canonical form of a LaTeX math string.

    Idempotent: canonicalize(canonicalize(s)) == canonicalize(s).
    """
    cfg = config or CanonConfig()
    result = parse(tokenize(s), cfg)
    node = _transform(result.node, cfg)
    if node is None:
        return ""
    return serialize(node, cfg)
