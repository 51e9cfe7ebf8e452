"""Sentence normalization: collapse non-math runs to COMMON_WORDS (and
optionally numbers to NUM_k) so the edit engine sees short math-focused
inputs, with an exact map back to the original tokens."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Sequence

COMMON_WORDS = "COMMON_WORDS"
_NUM_RE = re.compile(r"NUM_\d+")

# characters whose presence marks a token as mathematical
MATH_TOKEN_CHARS = set("$+-=*/^_\\{}()<>|")

# bare (backslash-less) command words too common as English prose to count
_PROSE_EXCLUDED = {"in", "over"}

# words never treated as short math variables by the bridging heuristics
_STOPWORDS = {
    "a", "i", "an", "am", "as", "at", "be", "by", "d", "do", "eg", "go",
    "he", "hi", "ie", "if", "in", "is", "it", "me", "my", "no", "of",
    "oh", "ok", "on", "or", "so", "to", "up", "us", "we",
}


class PlaceholderMismatch(Exception):
    """Edited template's placeholder count differs from the map."""


class SpanReason(enum.Enum):
    DOLLAR_DELIMITED = "dollar_delimited"
    OPERATOR_RUN = "operator_run"
    COMMAND_TOKEN = "command_token"
    VARIABLE_RUN = "variable_run"
    NUMBER_TOKEN = "number_token"


@dataclass(frozen=True)
class MathSpan:
    start_token: int
    end_token: int  # exclusive
    reason: SpanReason


@dataclass
class NormalizedSentence:
    template: list[str]
    placeholder_map: list[str] = field(default_factory=list)

    @property
    def text(self) -> str:
        return " ".join(self.template)


def load_command_words(path: Optional[str] = None) -> frozenset[str]:
    """Known math command words, one per line (UTF-8)."""
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
    else:
        raw = (
            resources.files("latexedit.data")
            .joinpath("command_words.txt")
            .read_text("utf-8")
        )
    return frozenset(w.strip().lower() for w in raw.splitlines() if w.strip())


_DEFAULT_COMMANDS = load_command_words()

_NUMBER_RE = re.compile(r"\d+(\.\d+)?")


def _is_number(tok: str) -> bool:
    return _NUMBER_RE.fullmatch(tok) is not None


def _token_reason(tok: str, commands: frozenset[str]) -> Optional[SpanReason]:
    if _is_placeholder(tok):
        return None
    if any(c in MATH_TOKEN_CHARS for c in tok):
        return SpanReason.OPERATOR_RUN
    if _is_number(tok):
        return SpanReason.NUMBER_TOKEN
    if len(tok) == 1 and tok.isalpha() and tok.isascii():
        return SpanReason.VARIABLE_RUN
    word = tok.lower()
    if word.startswith("\\"):
        word = word[1:]
        if word in commands:
            return SpanReason.COMMAND_TOKEN
    elif word in commands and word not in _PROSE_EXCLUDED:
        return SpanReason.COMMAND_TOKEN
    # command word glued to digits, e.g. "root2" or "log10"
    stripped = word.rstrip("0123456789")
    if stripped != word and stripped in commands and stripped not in _PROSE_EXCLUDED:
        return SpanReason.COMMAND_TOKEN
    # short letter-digit mixes like "2p" or "2ix" read as variables
    if (
        len(tok) <= 3
        and tok.isalnum()
        and tok.isascii()
        and any(c.isdigit() for c in tok)
        and any(c.isalpha() for c in tok)
    ):
        return SpanReason.VARIABLE_RUN
    return None


def detect_math_spans(
    tokens: Sequence[str], commands: Optional[frozenset[str]] = None
) -> list[MathSpan]:
    """Mark mathematical tokens and merge them into maximal spans.

    Tokens inside $...$ regions are math regardless of content.  A
    single short non-math token flanked by math tokens is absorbed into
    the surrounding run (variables such as "py" in "y + py = px").
    """
    cmds = commands or _DEFAULT_COMMANDS
    n = len(tokens)
    reasons: list[Optional[SpanReason]] = [None] * n

    in_dollar = False
    for i, tok in enumerate(tokens):
        quotes = tok.count("$")
        if in_dollar or quotes:
            reasons[i] = SpanReason.DOLLAR_DELIMITED
        if quotes % 2 == 1:
            in_dollar = not in_dollar
        if reasons[i] is None:
            reasons[i] = _token_reason(tok, cmds)

    # bridging: lone short alphanumerics between math neighbours join the run
    for i in range(1, n - 1):
        if reasons[i] is not None:
            continue
        tok = tokens[i]
        if (
            reasons[i - 1] is not None
            and reasons[i + 1] is not None
            and len(tok) <= 2
            and tok.isalnum()
            and tok.isascii()
            and tok.lower() not in _STOPWORDS
        ):
            reasons[i] = SpanReason.VARIABLE_RUN

    spans: list[MathSpan] = []
    i = 0
    while i < n:
        if reasons[i] is None:
            i += 1
            continue
        j = i
        while j < n and reasons[j] is not None:
            j += 1
        spans.append(MathSpan(i, j, reasons[i]))
        i = j
    return spans


def normalize(
    sentence: str,
    normalize_numbers: bool = False,
    commands: Optional[frozenset[str]] = None,
) -> NormalizedSentence:
    """Collapse each maximal non-math run to one COMMON_WORDS token.

    With ``normalize_numbers``, standalone number tokens outside $...$
    regions become NUM_k.  Whitespace is canonicalized to single spaces;
    the placeholder map restores every collapsed run verbatim.
    """
    tokens = sentence.split()
    spans = detect_math_spans(tokens, commands)
    math_idx = set()
    for s in spans:
        math_idx.update(range(s.start_token, s.end_token))

    template: list[str] = []
    placeholder_map: list[str] = []
    num_k = 0
    i = 0
    in_dollar = False
    while i < len(tokens):
        if i in math_idx:
            tok = tokens[i]
            if (
                normalize_numbers
                and not in_dollar
                and "$" not in tok
                and _is_number(tok)
            ):
                template.append(f"NUM_{num_k}")
                placeholder_map.append(tok)
                num_k += 1
            else:
                template.append(tok)
            if tok.count("$") % 2 == 1:
                in_dollar = not in_dollar
            i += 1
        else:
            j = i
            while j < len(tokens) and j not in math_idx:
                j += 1
            template.append(COMMON_WORDS)
            placeholder_map.append(" ".join(tokens[i:j]))
            i = j
    return NormalizedSentence(template, placeholder_map)


def _is_placeholder(tok: str) -> bool:
    return tok == COMMON_WORDS or _NUM_RE.fullmatch(tok) is not None


def denormalize(template: Sequence[str], placeholder_map: Sequence[str]) -> str:
    """Substitute placeholders positionally; math content comes from the
    (possibly edited) template."""
    expected = sum(1 for t in template if _is_placeholder(t))
    if expected != len(placeholder_map):
        raise PlaceholderMismatch(
            f"template has {expected} placeholders, map has {len(placeholder_map)}"
        )
    out: list[str] = []
    it = iter(placeholder_map)
    for tok in template:
        if _is_placeholder(tok):
            run = next(it)
            if run:
                out.append(run)
        else:
            out.append(tok)
    return " ".join(out)
