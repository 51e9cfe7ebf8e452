"""Textual edit suggestions: mine token-substitution rules from aligned
pairs, apply them to normalized sentences, and post-process candidates.

The neural model of the original pipeline is replaced by this mined-rule
engine behind an adapter contract, so a trained model can be plugged in
without touching the pipeline.
"""

from __future__ import annotations

import difflib
import json
import subprocess
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional, Protocol, Sequence

from .distance import levenshtein
from .miner import EditType, SentencePair, classify_edit, split_sentences
from .normalizer import (
    COMMON_WORDS,
    NormalizedSentence,
    PlaceholderMismatch,
    _is_placeholder,
    detect_math_spans,
    normalize,
    denormalize,
)

# operator characters that make a math run worth wrapping in $...$
_WRAP_OPERATORS = set("+-=*/^_<>|")


@dataclass(frozen=True)
class EditRule:
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]
    support: int = 1
    context_left: Optional[str] = None
    context_right: Optional[str] = None


@dataclass
class Candidate:
    text: str
    score: float
    source: str = "rules"  # rules | adapter | file


@dataclass
class Suggestion:
    sentence_index: int
    original: str
    suggested: str
    edit_types: set[EditType] = field(default_factory=set)
    confidence: float = 0.0


class ModelAdapter(Protocol):
    def candidates(self, normalized: str) -> list[Candidate]: ...


# --- rule mining -------------------------------------------------------------


def _needs_context(lhs: tuple[str, ...]) -> bool:
    # single-character replacements like "*" are too ambiguous bare
    return len(lhs) == 1 and len(lhs[0]) == 1


def mine_rules(
    pairs: Iterable[SentencePair],
    min_support: int = 3,
    normalize_inputs: bool = True,
) -> list[EditRule]:
    """LCS token diffs of each pair yield (lhs -> rhs) replacements.

    Replacements spanning a placeholder are skipped; ambiguous
    single-character rules keep their neighbour tokens as context.
    """
    counts: Counter[tuple] = Counter()
    for pair in pairs:
        if normalize_inputs:
            o = normalize(pair.original).template
            e = normalize(pair.edited).template
        else:
            o = pair.original.split()
            e = pair.edited.split()
        matcher = difflib.SequenceMatcher(a=o, b=e, autojunk=False)
        opcodes = matcher.get_opcodes()
        edits: list[tuple[int, int, int, int]] = [
            (i1, i2, j1, j2) for tag, i1, i2, j1, j2 in opcodes if tag == "replace"
        ]
        # wrap edits (e.g. "p" -> "$ p $") show up as insert/equal/insert;
        # fold them into a single replacement around the equal run
        for a, b, c in zip(opcodes, opcodes[1:], opcodes[2:]):
            if (
                a[0] == "insert"
                and b[0] == "equal"
                and c[0] == "insert"
                and b[2] - b[1] <= 2
            ):
                edits.append((b[1], b[2], a[3], c[4]))
        for i1, i2, j1, j2 in edits:
            lhs = tuple(o[i1:i2])
            rhs = tuple(e[j1:j2])
            if lhs == rhs or not lhs or not rhs:
                continue
            if any(_is_placeholder(t) for t in lhs + rhs):
                continue
            ctx_l = o[i1 - 1] if i1 > 0 else None
            ctx_r = o[i2] if i2 < len(o) else None
            if _needs_context(lhs):
                counts[(lhs, rhs, ctx_l, ctx_r)] += 1
            else:
                counts[(lhs, rhs, None, None)] += 1
    rules = [
        EditRule(lhs, rhs, support, ctx_l, ctx_r)
        for (lhs, rhs, ctx_l, ctx_r), support in counts.items()
        if support >= min_support
    ]
    rules.sort(key=lambda r: (-r.support, -len(r.lhs), r.lhs, r.rhs))
    return rules


def write_rules(rules: Iterable[EditRule], fh: IO[str]) -> None:
    for r in rules:
        fh.write(
            json.dumps(
                {
                    "lhs": list(r.lhs),
                    "rhs": list(r.rhs),
                    "support": r.support,
                    "context_left": r.context_left,
                    "context_right": r.context_right,
                },
                ensure_ascii=False,
            )
            + "\n"
        )


def read_rules(fh: IO[str]) -> list[EditRule]:
    rules = []
    for line in fh:
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        rules.append(
            EditRule(
                tuple(obj["lhs"]),
                tuple(obj["rhs"]),
                int(obj.get("support", 1)),
                obj.get("context_left"),
                obj.get("context_right"),
            )
        )
    return rules


# --- rule application ---------------------------------------------------------


def _dollar_regions(tokens: Sequence[str]) -> list[bool]:
    """Per-token flag: inside (or part of) a $-delimited region."""
    flags = [False] * len(tokens)
    in_dollar = False
    for i, tok in enumerate(tokens):
        quotes = tok.count("$")
        if in_dollar or quotes:
            flags[i] = True
        if quotes % 2 == 1:
            in_dollar = not in_dollar
    return flags


def _apply_rule_pass(
    tokens: list[str], rules: Sequence[EditRule]
) -> tuple[list[str], int, list[EditRule]]:
    """Greedy non-overlapping application: longest lhs first, leftmost
    first; context must match when present.  Rules that introduce "$"
    never fire inside an existing dollar region."""
    ordered = sorted(rules, key=lambda r: (-len(r.lhs), -r.support))
    used = [False] * len(tokens)
    replacements: list[tuple[int, int, EditRule]] = []
    dollar = _dollar_regions(tokens)
    for rule in ordered:
        k = len(rule.lhs)
        introduces_dollar = any("$" in t for t in rule.rhs)
        for i in range(0, len(tokens) - k + 1):
            if tuple(tokens[i : i + k]) != rule.lhs:
                continue
            if any(used[i : i + k]):
                continue
            if any(_is_placeholder(t) for t in tokens[i : i + k]):
                continue
            if introduces_dollar and any(dollar[i : i + k]):
                continue
            if rule.context_left is not None:
                if i == 0 or tokens[i - 1] != rule.context_left:
                    continue
            if rule.context_right is not None:
                if i + k >= len(tokens) or tokens[i + k] != rule.context_right:
                    continue
            for j in range(i, i + k):
                used[j] = True
            replacements.append((i, i + k, rule))
    if not replacements:
        return list(tokens), 0, []
    replacements.sort(key=lambda t: t[0])
    out: list[str] = []
    pos = 0
    total_support = 0
    applied = []
    for start, end, rule in replacements:
        out.extend(tokens[pos:start])
        out.extend(rule.rhs)
        pos = end
        total_support += rule.support
        applied.append(rule)
    out.extend(tokens[pos:])
    return out, total_support, applied


def _wrap_math_runs(tokens: list[str]) -> list[str]:
    """Wrap maximal detected math runs that are not already dollar
    delimited and that contain at least one operator or command."""
    dollar = _dollar_regions(tokens)
    spans = detect_math_spans(tokens)
    out: list[str] = []
    pos = 0
    for span in spans:
        idx = range(span.start_token, span.end_token)
        if any(dollar[i] for i in idx):
            continue
        run = tokens[span.start_token : span.end_token]
        if not any(
            t in _WRAP_OPERATORS or t.startswith("\\") or any(c in _WRAP_OPERATORS for c in t)
            for t in run
        ):
            continue
        out.extend(tokens[pos : span.start_token])
        out.append("$")
        out.extend(run)
        out.append("$")
        pos = span.end_token
    out.extend(tokens[pos:])
    return out


def apply_rules(
    sentence: str, rules: Sequence[EditRule], max_candidates: int = 5
) -> list[Candidate]:
    """Candidates for a normalized sentence, ordered by total support of
    the applied rules.  Returns [] when nothing fires and no bare math
    needs wrapping."""
    tokens = sentence.split()
    rewritten, support, applied = _apply_rule_pass(tokens, rules)
    variants: list[tuple[list[str], float]] = []
    wrapped = _wrap_math_runs(rewritten)
    if wrapped != tokens:
        variants.append((wrapped, support + (0.5 if wrapped != rewritten else 0.0)))
    if rewritten != tokens and rewritten != wrapped:
        variants.append((rewritten, float(support)))
    wrap_only = _wrap_math_runs(list(tokens))
    if wrap_only != tokens and wrap_only not in [v for v, _ in variants]:
        variants.append((wrap_only, 0.5))
    variants.sort(key=lambda v: -v[1])
    seen: set[str] = set()
    out = []
    for toks, score in variants[:max_candidates]:
        text = " ".join(toks)
        if text in seen or text == sentence:
            continue
        seen.add(text)
        out.append(Candidate(text, score, source="rules"))
    return out


# --- post-processing -----------------------------------------------------------


def postprocess(sentence: str) -> str:
    """Collapse duplicated "$$" / ". . ." artifacts and balance braces
    and dollars.  Balanced inputs come back untouched."""
    s = sentence
    while "$$" in s:
        s = s.replace("$$", "$")
    while ". . ." in s:
        s = s.replace(". . .", ". .")
    # drop unmatched closers, then append missing ones
    depth = 0
    chars: list[str] = []
    for c in s:
        if c == "{":
            depth += 1
        elif c == "}":
            if depth == 0:
                continue
            depth -= 1
        chars.append(c)
    s = "".join(chars)
    if depth > 0:
        closers = "}" * depth
        if s.endswith("$"):
            s = s[:-1] + closers + "$"
        else:
            s += closers
    if s.count("$") % 2 == 1:
        s += "$"
    return s


# --- suggestion pipeline ---------------------------------------------------------


def _pick_best(original: str, candidates: list[Candidate]) -> Optional[Candidate]:
    if not candidates:
        return None
    # ties broken by shorter edit distance to the original
    return min(
        candidates,
        key=lambda c: (-c.score, levenshtein(c.text.split(), original.split())),
    )


def suggest_edits(
    body: str,
    rules: Sequence[EditRule],
    adapter: Optional[ModelAdapter] = None,
    diagnostics: Optional[list[str]] = None,
) -> list[Suggestion]:
    """Per-sentence pipeline: normalize, generate candidates (adapter if
    present, mined rules otherwise), denormalize, post-process."""
    suggestions = []
    for idx, sentence in enumerate(split_sentences(body)):
        norm = normalize(sentence, normalize_numbers=adapter is not None)
        if adapter is not None:
            candidates = adapter.candidates(norm.text)[:5]
        else:
            candidates = apply_rules(norm.text, rules)
        best = _pick_best(sentence, candidates)
        if best is None:
            continue
        try:
            restored = denormalize(best.text.split(), norm.placeholder_map)
        except PlaceholderMismatch as exc:
            if diagnostics is not None:
                diagnostics.append(f"sentence {idx}: {exc}")
            continue
        suggested = postprocess(restored)
        if suggested == sentence:
            continue
        score = max(best.score, 0.0)
        suggestions.append(
            Suggestion(
                sentence_index=idx,
                original=sentence,
                suggested=suggested,
                edit_types=classify_edit(sentence, suggested),
                confidence=score / (score + 1.0),
            )
        )
    return suggestions


def apply_suggestions(body: str, suggestions: Iterable[Suggestion]) -> str:
    """Replace each suggested sentence in the body text."""
    out = body
    for s in suggestions:
        out = out.replace(s.original, s.suggested, 1)
    return out


# --- external adapter over standard streams --------------------------------------


class SubprocessAdapter:
    """Line-delimited JSON request/response over a child process:
    request {id, normalized}; response {id, candidates:[{text, score}]}."""

    def __init__(self, argv: Sequence[str]):
        self.proc = subprocess.Popen(
            list(argv),
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            bufsize=1,
        )
        self._next_id = 0

    def candidates(self, normalized: str) -> list[Candidate]:
        assert self.proc.stdin is not None and self.proc.stdout is not None
        req_id = self._next_id
        self._next_id += 1
        self.proc.stdin.write(json.dumps({"id": req_id, "normalized": normalized}) + "\n")
        self.proc.stdin.flush()
        line = self.proc.stdout.readline()
        if not line:
            return []
        resp = json.loads(line)
        if resp.get("id") != req_id:
            return []
        return [
            Candidate(c["text"], float(c.get("score", 0.0)), source="adapter")
            for c in resp.get("candidates", [])
        ]

    def close(self) -> None:
        if self.proc.stdin:
            self.proc.stdin.close()
        self.proc.wait(timeout=5)

    def __enter__(self) -> "SubprocessAdapter":
        return self

    def __exit__(self, *exc) -> None:
        self.close()
