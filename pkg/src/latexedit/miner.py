"""Edit-history mining: revision ingestion, sentence alignment, formula
extraction, edit-type classification and comment phrase detection."""

from __future__ import annotations

import enum
import re
import xml.etree.ElementTree as ET
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator, Optional

from .distance import levenshtein, text_similarity
from .latex import canonicalize, ParseError

# PostHistoryTypeId values that carry a post body
_BODY_TYPES = {2: "initial", 5: "edit", 8: "rollback"}


class FormatError(Exception):
    pass


class EditType(str, enum.Enum):
    LATEXIFICATION = "latexification"
    LATEX_REVISION = "latex_revision"
    SCREENSHOT_TRANSCRIPTION = "screenshot_transcription"
    OTHER = "other"


@dataclass
class PostRevision:
    post_id: int
    revision_index: int  # contiguous per post, starting at 1
    body: str
    comment: Optional[str] = None
    is_question: bool = False
    is_rollback: bool = False


@dataclass
class SentencePair:
    original: str
    edited: str
    similarity: float
    post_id: int
    edit_types: set[EditType] = field(default_factory=set)


@dataclass
class MinerConfig:
    align_threshold: float = 0.9
    min_chars: int = 10
    max_chars: int = 256
    phrase_theta: int = 10
    phrase_score_threshold: float = 10.0
    include_rollbacks: bool = True


@dataclass
class DumpDiagnostics:
    rows_read: int = 0
    rows_skipped: int = 0
    rows_malformed: int = 0
    messages: list[str] = field(default_factory=list)


_ROW_RE = re.compile(r"<row\b[^>]*/>")


def parse_dump(
    stream: IO[bytes] | IO[str], diagnostics: Optional[DumpDiagnostics] = None
) -> Iterator[PostRevision]:
    """Read a Stack Exchange PostHistory dump (one <row .../> per line).

    Only body-carrying rows (initial body, edit body, rollback) are
    yielded, with a contiguous revision_index per post.  Malformed rows
    are skipped and counted in the diagnostics.
    """
    diag = diagnostics if diagnostics is not None else DumpDiagnostics()
    counters: dict[int, int] = {}
    for raw in stream:
        line = raw.decode("utf-8") if isinstance(raw, bytes) else raw
        m = _ROW_RE.search(line)
        if not m:
            continue
        diag.rows_read += 1
        try:
            elem = ET.fromstring(m.group(0))
            type_id = int(elem.attrib["PostHistoryTypeId"])
            post_id = int(elem.attrib["PostId"])
        except (ET.ParseError, KeyError, ValueError) as exc:
            diag.rows_malformed += 1
            diag.messages.append(f"malformed row skipped: {exc}")
            continue
        if type_id not in _BODY_TYPES:
            diag.rows_skipped += 1
            continue
        body = elem.attrib.get("Text", "")
        counters[post_id] = counters.get(post_id, 0) + 1
        yield PostRevision(
            post_id=post_id,
            revision_index=counters[post_id],
            body=body,
            comment=elem.attrib.get("Comment"),
            is_question=elem.attrib.get("PostTypeId") == "1",
            is_rollback=type_id == 8,
        )


# --- sentence splitting ----------------------------------------------------

_EQ_BEGIN = "\\begin{equation}"
_EQ_END = "\\end{equation}"


def split_sentences(body: str) -> list[str]:
    """Split on ".", "?", "!" and blank lines, never inside a $...$ span
    or an equation environment.  Terminal punctuation is retained."""
    sentences: list[str] = []
    buf: list[str] = []
    in_dollar = False
    eq_depth = 0
    i = 0
    n = len(body)

    def flush() -> None:
        text = "".join(buf).strip()
        if text:
            sentences.append(text)
        buf.clear()

    while i < n:
        if body.startswith(_EQ_BEGIN, i):
            eq_depth += 1
            buf.append(_EQ_BEGIN)
            i += len(_EQ_BEGIN)
            continue
        if body.startswith(_EQ_END, i) and eq_depth > 0:
            eq_depth -= 1
            buf.append(_EQ_END)
            i += len(_EQ_END)
            continue
        c = body[i]
        if c == "$" and eq_depth == 0:
            in_dollar = not in_dollar
            buf.append(c)
            i += 1
            continue
        in_math = in_dollar or eq_depth > 0
        if not in_math and c in ".?!" and (i + 1 == n or body[i + 1] in " \t\n"):
            buf.append(c)
            i += 1
            flush()
            continue
        if not in_math and c == "\n":
            # blank line ends a sentence
            j = i
            while j < n and body[j] in " \t\n":
                j += 1
                if body[i:j].count("\n") >= 2:
                    break
            if body[i:j].count("\n") >= 2:
                flush()
                i = j
                continue
        buf.append(c)
        i += 1
    flush()
    return sentences


# --- alignment and filtering -----------------------------------------------


def align(
    o_list: list[str],
    e_list: list[str],
    threshold: float = 0.9,
    post_id: int = 0,
) -> list[SentencePair]:
    """Greedy one-to-one alignment by descending similarity.

    Identical sentences carry no edit and are excluded.
    """
    scored = []
    for i, o in enumerate(o_list):
        for j, e in enumerate(e_list):
            if o == e:
                continue
            sim = text_similarity(o, e)
            if sim >= threshold:
                scored.append((sim, i, j))
    scored.sort(key=lambda t: (-t[0], t[1], t[2]))
    used_o: set[int] = set()
    used_e: set[int] = set()
    pairs = []
    for sim, i, j in scored:
        if i in used_o or j in used_e:
            continue
        used_o.add(i)
        used_e.add(j)
        pairs.append(SentencePair(o_list[i], e_list[j], sim, post_id))
    pairs.sort(key=lambda p: o_list.index(p.original))
    return pairs


_DOLLAR_SPAN_RE = re.compile(r"\$([^$]*?)\$")
_EQUATION_RE = re.compile(r"\\begin\{equation\}(.*?)\\end\{equation\}", re.DOTALL)

# characters that make a snippet "mathematical" for noise filtering
_MATH_CHARS = set("+-=*/^_<>|\\")


def _raw_math_spans(text: str) -> list[str]:
    """All $...$ and equation-environment contents, unfiltered."""
    spans = [m.group(1) for m in _EQUATION_RE.finditer(text)]
    without_eq = _EQUATION_RE.sub(" ", text)
    spans.extend(m.group(1) for m in _DOLLAR_SPAN_RE.finditer(without_eq))
    return spans


def _canonical_formulas(text: str) -> list[str]:
    out = []
    for span in _raw_math_spans(text):
        try:
            out.append(canonicalize(span))
        except ParseError:
            out.append(span.strip())
    return out


def extract_formulas(
    body: str, min_chars: int = 10, max_chars: int = 256
) -> list[str]:
    """Formula contents in document order, noise-filtered: at least one
    math character, deduplicated, length within [min_chars, max_chars]."""
    seen: set[str] = set()
    out: list[str] = []
    for span in _raw_math_spans(body):
        if not (min_chars <= len(span) <= max_chars):
            continue
        if not any(c in _MATH_CHARS or c.isdigit() for c in span):
            continue
        if span in seen:
            continue
        seen.add(span)
        out.append(span)
    return out


def filter_pairs(pairs: Iterable[SentencePair], config: MinerConfig) -> list[SentencePair]:
    """Keep pairs where (a) a side contains a formula or the edit
    introduces one, (b) the canonicalized formula content differs, and
    (c) both sides are within the configured length band."""
    kept = []
    for p in pairs:
        if not (config.min_chars <= len(p.original) <= config.max_chars):
            continue
        if not (config.min_chars <= len(p.edited) <= config.max_chars):
            continue
        fo = _canonical_formulas(p.original)
        fe = _canonical_formulas(p.edited)
        if not fo and not fe:
            continue
        if fo == fe:
            continue
        kept.append(p)
    return kept


# --- edit-type classification ----------------------------------------------

_IMAGE_LINK_RE = re.compile(
    r"(!\[[^\]]*\]\([^)]+\.(?:png|jpe?g|gif|bmp|tiff?)\))"
    r"|(<img\b[^>]*>)"
    r"|(\bhttps?://\S+\.(?:png|jpe?g|gif|bmp|tiff?)\b)",
    re.IGNORECASE,
)


def _strip_markup(span: str) -> str:
    """Reduce a LaTeX span to comparable plain text."""
    s = span.replace("\\", " ").replace("{", " ").replace("}", " ")
    return re.sub(r"\s+", "", s).lower()


def _approximates(span: str, original: str) -> bool:
    """True when the de-latexified span resembles a window of the
    original's plain text (outside of math spans)."""
    needle = _strip_markup(span)
    if not needle:
        return False
    hay = re.sub(r"\s+", "", _DOLLAR_SPAN_RE.sub(" ", original)).lower()
    if needle in hay:
        return True
    k = len(needle)
    if not hay:
        return False
    lengths = [n for n in (k - 1, k, k + 1, k + 2) if n >= 1]
    for start in range(0, max(1, len(hay) - max(1, k // 2) + 1)):
        for n in lengths:
            window = hay[start : start + n]
            if window and text_similarity(needle, window) >= 0.5:
                return True
    return False


def classify_edit(original: str, edited: str) -> set[EditType]:
    """Label an aligned pair with the math-specific edit types it shows."""
    types: set[EditType] = set()
    if original == edited:
        return {EditType.OTHER}

    orig_spans = _raw_math_spans(original)
    edit_spans = _raw_math_spans(edited)
    orig_canon = _canonical_formulas(original)
    edit_canon = _canonical_formulas(edited)

    # screenshot transcription: an image link replaced by a math span
    orig_links = _IMAGE_LINK_RE.findall(original)
    edit_links = _IMAGE_LINK_RE.findall(edited)
    if orig_links and len(edit_links) < len(orig_links) and edit_spans:
        types.add(EditType.SCREENSHOT_TRANSCRIPTION)

    # latex revision: spans at aligned positions with differing tokens
    if orig_canon and edit_canon:
        if len(orig_canon) == len(edit_canon):
            if any(fo != fe for fo, fe in zip(orig_canon, edit_canon)):
                types.add(EditType.LATEX_REVISION)
        else:
            # span count changed: look for a modified (similar but unequal) span
            edit_only = [f for f in edit_canon if f not in set(orig_canon)]
            for fo in orig_canon:
                if fo in set(edit_canon):
                    continue
                if any(text_similarity(fo, fe) >= 0.6 for fe in edit_only):
                    types.add(EditType.LATEX_REVISION)
                    break

    # latexification: a new span approximating plain math in the original
    if EditType.SCREENSHOT_TRANSCRIPTION not in types:
        orig_set = set(orig_canon)
        for span, canon in zip(edit_spans, edit_canon):
            if canon in orig_set:
                continue
            if _approximates(span, original):
                types.add(EditType.LATEXIFICATION)
                break

    if not types:
        types.add(EditType.OTHER)
    return types


# --- comment phrase detection -----------------------------------------------


def detect_phrases(
    comments: Iterable[str],
    theta: int = 10,
    score_threshold: float = 10.0,
) -> list[tuple[str, str, float]]:
    """Score consecutive word pairs in preprocessed comments.

    score = (count(w1,w2) - theta) / (count(w1) * count(w2)) * N where N
    is the vocabulary size.  Bigrams with joint count <= theta are never
    emitted.
    """
    unigrams: Counter[str] = Counter()
    bigrams: Counter[tuple[str, str]] = Counter()
    for comment in comments:
        words = comment.split()
        unigrams.update(words)
        bigrams.update(zip(words, words[1:]))
    vocab = len(unigrams)
    results = []
    for (w1, w2), joint in bigrams.items():
        if joint <= theta:
            continue
        score = (joint - theta) / (unigrams[w1] * unigrams[w2]) * vocab
        if score >= score_threshold:
            results.append((w1, w2, score))
    results.sort(key=lambda t: (-t[2], t[0], t[1]))
    return results


# --- whole-pipeline convenience ----------------------------------------------


def mine_pairs(
    revisions: Iterable[PostRevision], config: Optional[MinerConfig] = None
) -> list[SentencePair]:
    """Align consecutive revisions of each post into classified pairs."""
    cfg = config or MinerConfig()
    by_post: dict[int, list[PostRevision]] = {}
    for rev in revisions:
        by_post.setdefault(rev.post_id, []).append(rev)
    all_pairs: list[SentencePair] = []
    for post_id in sorted(by_post):
        revs = sorted(by_post[post_id], key=lambda r: r.revision_index)
        for before, after in zip(revs, revs[1:]):
            if after.is_rollback and not cfg.include_rollbacks:
                continue
            pairs = align(
                split_sentences(before.body),
                split_sentences(after.body),
                cfg.align_threshold,
                post_id=post_id,
            )
            for p in filter_pairs(pairs, cfg):
                p.edit_types = classify_edit(p.original, p.edited)
                all_pairs.append(p)
    return all_pairs
