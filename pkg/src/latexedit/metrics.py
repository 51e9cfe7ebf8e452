"""Corpus evaluation: BLEU, GLEU (the reference-based error-correction
variant), and textual/visual evaluation reports."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .latex import ParseError, canonicalize
from .miner import SentencePair, _DOLLAR_SPAN_RE
from .rules import Candidate, EditRule, ModelAdapter, suggest_edits
from .visual import SimilarityOptions, image_similarity, rerank

MAX_N = 4


class EmptyCorpus(Exception):
    pass


@dataclass
class EvalReport:
    bleu: float
    gleu: Optional[float] = None
    image_similarity_mean: Optional[float] = None
    n_examples: int = 0
    exact_match_rate: Optional[float] = None
    per_example: list[dict] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)

    def to_json(self) -> str:
        payload = {
            "bleu": self.bleu,
            "gleu": self.gleu,
            "image_similarity_mean": self.image_similarity_mean,
            "n_examples": self.n_examples,
            "exact_match_rate": self.exact_match_rate,
            "per_example": self.per_example,
            "failures": self.failures,
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def _ngrams(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def _clipped_matches(hyp: Sequence[str], ref: Sequence[str], n: int) -> int:
    h = _ngrams(hyp, n)
    r = _ngrams(ref, n)
    return sum(min(c, r[g]) for g, c in h.items())


def _brevity_penalty(hyp_len: int, ref_len: int) -> float:
    if hyp_len == 0:
        return 0.0
    if hyp_len >= ref_len:
        return 1.0
    return math.exp(1.0 - ref_len / hyp_len)


def bleu(
    hypotheses: Sequence[Sequence[str]],
    references: Sequence[Sequence[str]],
    max_n: int = MAX_N,
) -> float:
    """Corpus-level BLEU in [0, 100]: clipped modified n-gram precisions,
    geometric mean, brevity penalty."""
    if not hypotheses or len(hypotheses) != len(references):
        raise EmptyCorpus("need equal, non-empty hypothesis/reference lists")
    log_sum = 0.0
    for n in range(1, max_n + 1):
        matches = sum(_clipped_matches(h, r, n) for h, r in zip(hypotheses, references))
        total = sum(max(0, len(h) - n + 1) for h in hypotheses)
        if matches == 0 or total == 0:
            return 0.0
        log_sum += math.log(matches / total)
    hyp_len = sum(len(h) for h in hypotheses)
    ref_len = sum(len(r) for r in references)
    return 100.0 * _brevity_penalty(hyp_len, ref_len) * math.exp(log_sum / max_n)


def sentence_bleu(
    hypothesis: Sequence[str], reference: Sequence[str], max_n: int = MAX_N
) -> float:
    """Sentence-level BLEU with add-one smoothing of zero numerators for
    n >= 2 (corpus-level reporting stays unsmoothed)."""
    log_sum = 0.0
    for n in range(1, max_n + 1):
        matches = _clipped_matches(hypothesis, reference, n)
        total = max(0, len(hypothesis) - n + 1)
        if total == 0:
            return 0.0
        if matches == 0:
            if n == 1:
                return 0.0
            matches, total = 1, total + 1
        log_sum += math.log(matches / total)
    return 100.0 * _brevity_penalty(len(hypothesis), len(reference)) * math.exp(log_sum / max_n)


def _source_penalty(
    hyp: Sequence[str], src: Sequence[str], ref: Sequence[str], n: int
) -> int:
    """Counts of n-grams present in hyp and source but absent from ref."""
    h = _ngrams(hyp, n)
    s = _ngrams(src, n)
    r = _ngrams(ref, n)
    return sum(min(c, s[g]) for g, c in h.items() if g in s and g not in r)


def gleu(
    sources: Sequence[Sequence[str]],
    hypotheses: Sequence[Sequence[str]],
    references: Sequence[Sequence[str]],
    max_n: int = MAX_N,
) -> float:
    """Reference-based GLEU for error correction: hypothesis n-grams kept
    from the source but absent from the reference are subtracted from
    the match count (floored at zero)."""
    if not hypotheses or not (len(sources) == len(hypotheses) == len(references)):
        raise EmptyCorpus("need equal, non-empty source/hypothesis/reference lists")
    log_sum = 0.0
    for n in range(1, max_n + 1):
        numerator = 0
        total = 0
        for s, h, r in zip(sources, hypotheses, references):
            numerator += _clipped_matches(h, r, n) - _source_penalty(h, s, r, n)
            total += max(0, len(h) - n + 1)
        numerator = max(0, numerator)
        if numerator == 0 or total == 0:
            return 0.0
        log_sum += math.log(numerator / total)
    hyp_len = sum(len(h) for h in hypotheses)
    ref_len = sum(len(r) for r in references)
    return 100.0 * _brevity_penalty(hyp_len, ref_len) * math.exp(log_sum / max_n)


def metric_tokens(sentence: str) -> list[str]:
    """Whitespace tokens after canonicalizing each $...$ span, so
    "\\frac{a}{b}" and "\\frac {a} {b}" score identically."""

    def canon(m):
        try:
            return "$" + canonicalize(m.group(1)) + "$"
        except ParseError:
            return m.group(0)

    return _DOLLAR_SPAN_RE.sub(canon, sentence).split()


def latex_metric_tokens(formula: str) -> list[str]:
    """Lexer-level tokens of a bare LaTeX formula, for scoring formula
    hypotheses where whitespace is not meaningful."""
    from .latex import tokenize

    return [t.text for t in tokenize(formula) if t.text.strip()]


def evaluate_textual(
    corpus: Sequence[SentencePair],
    rules: Sequence[EditRule] = (),
    adapter: Optional[ModelAdapter] = None,
) -> EvalReport:
    """Run the suggestion path on each original sentence and score the
    results against the edited references.  Sentences with no suggestion
    score the original as hypothesis."""
    if not corpus:
        raise EmptyCorpus("empty corpus")
    sources, hyps, refs = [], [], []
    per_example = []
    exact = 0
    for i, pair in enumerate(corpus):
        suggestions = suggest_edits(pair.original, rules, adapter)
        hyp_text = suggestions[0].suggested if suggestions else pair.original
        src = metric_tokens(pair.original)
        hyp = metric_tokens(hyp_text)
        ref = metric_tokens(pair.edited)
        sources.append(src)
        hyps.append(hyp)
        refs.append(ref)
        if hyp == ref:
            exact += 1
        per_example.append(
            {
                "id": i,
                "scores": {
                    "bleu": sentence_bleu(hyp, ref),
                    "exact_match": float(hyp == ref),
                },
            }
        )
    return EvalReport(
        bleu=bleu(hyps, refs),
        gleu=gleu(sources, hyps, refs),
        n_examples=len(corpus),
        exact_match_rate=exact / len(corpus),
        per_example=per_example,
    )


def evaluate_visual(
    items: Sequence[tuple],
    candidate_source: Callable[[int], Sequence[Candidate]],
    renderer=None,
) -> EvalReport:
    """items: (bitmap, reference_latex) pairs; candidate_source(i) yields
    the candidates for item i.  Re-ranking selects the hypothesis; BLEU
    is computed over LaTeX tokens and image similarity between the
    rendered selection and the input."""
    if not items:
        raise EmptyCorpus("empty item list")
    hyps, refs = [], []
    sims = []
    per_example = []
    failures = []
    eval_opts = SimilarityOptions(drop_blank_columns=True)
    for i, (bitmap, reference) in enumerate(items):
        candidates = list(candidate_source(i))
        if not candidates:
            failures.append({"id": i, "error": "no candidates"})
            continue
        kwargs = {"renderer": renderer} if renderer is not None else {}
        ranked = rerank(bitmap, candidates[:5], **kwargs)
        best = ranked[0]
        hyp = latex_metric_tokens(best.candidate.text)
        ref = latex_metric_tokens(reference)
        hyps.append(hyp)
        refs.append(ref)
        sim = None
        if best.rendered is not None:
            sim = image_similarity(bitmap, best.rendered, eval_opts)
            sims.append(sim)
        per_example.append(
            {
                "id": i,
                "scores": {
                    "bleu": sentence_bleu(hyp, ref),
                    "image_similarity": sim,
                    "selected": best.candidate.text,
                },
            }
        )
    if not hyps:
        raise EmptyCorpus("every item failed")
    return EvalReport(
        bleu=bleu(hyps, refs),
        image_similarity_mean=sum(sims) / len(sims) if sims else None,
        n_examples=len(per_example),
        exact_match_rate=sum(1 for h, r in zip(hyps, refs) if h == r) / len(hyps),
        per_example=per_example,
        failures=failures,
    )
