"""Command-line interface: mine edit pairs from a revision dump, suggest
edits for a post, evaluate against a corpus, render formulas, and run the
local review service."""

from __future__ import annotations

import difflib
import json
import os
import sys

import click

from .latex import ParseError
from .metrics import EmptyCorpus, evaluate_textual, evaluate_visual
from .miner import (
    DumpDiagnostics,
    MinerConfig,
    SentencePair,
    detect_phrases,
    mine_pairs,
    parse_dump,
)
from .render import FormatError, RenderOptions, UnsupportedGlyph, read_pbm, render, write_pbm
from .rules import Candidate, mine_rules, read_rules, suggest_edits, write_rules

EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3


def _seed(default: int = 0) -> int:
    raw = os.environ.get("LATEXEDIT_SEED")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise click.ClickException(f"LATEXEDIT_SEED must be an integer, got {raw!r}")


def _open_or_die(path: str, mode: str = "r"):
    try:
        return open(path, mode, **({} if "b" in mode else {"encoding": "utf-8"}))
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)


@click.group()
def main() -> None:
    """Mine, suggest, evaluate, render, and review LaTeX edits."""


@main.command()
@click.option("--dump", "dump_path", required=True, help="PostHistory XML dump")
@click.option("--out", "out_path", required=True, help="mined sentence pairs (JSONL)")
@click.option("--rules-out", "rules_path", default=None, help="also mine rewrite rules to this JSONL file")
@click.option("--phrases-out", "phrases_path", default=None, help="write detected phrases (JSONL)")
@click.option("--align-threshold", default=0.9, show_default=True)
@click.option("--min-chars", default=10, show_default=True)
@click.option("--max-chars", default=256, show_default=True)
@click.option("--min-support", default=3, show_default=True, help="rule support cutoff")
@click.option("--exclude-rollbacks", is_flag=True, default=False)
def mine(dump_path, out_path, rules_path, phrases_path, align_threshold, min_chars, max_chars, min_support, exclude_rollbacks):
    """Extract classified sentence-edit pairs from a revision dump."""
    config = MinerConfig(
        align_threshold=align_threshold,
        min_chars=min_chars,
        max_chars=max_chars,
        include_rollbacks=not exclude_rollbacks,
    )
    diag = DumpDiagnostics()
    with _open_or_die(dump_path, "rb") as fh:
        pairs = mine_pairs(parse_dump(fh, diag), config)
    with open(out_path, "w", encoding="utf-8") as out:
        for p in pairs:
            out.write(
                json.dumps(
                    {
                        "post_id": p.post_id,
                        "original": p.original,
                        "edited": p.edited,
                        "similarity": p.similarity,
                        "edit_types": sorted(t.value for t in p.edit_types),
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
    if rules_path:
        rules = mine_rules(pairs, min_support=min_support)
        with open(rules_path, "w", encoding="utf-8") as out:
            write_rules(rules, out)
        click.echo(f"rules mined: {len(rules)}")
    if phrases_path:
        sentences = [p.edited for p in pairs]
        phrases = detect_phrases(sentences, config.phrase_theta, config.phrase_score_threshold)
        with open(phrases_path, "w", encoding="utf-8") as out:
            for w1, w2, score in phrases:
                out.write(json.dumps({"phrase": [w1, w2], "score": score}) + "\n")
        click.echo(f"phrases detected: {len(phrases)}")
    counts = {}
    for p in pairs:
        for t in p.edit_types:
            counts[t.value] = counts.get(t.value, 0) + 1
    click.echo(f"rows read: {diag.rows_read}, skipped: {diag.rows_skipped}, malformed: {diag.rows_malformed}")
    click.echo(f"pairs mined: {len(pairs)}")
    for name in sorted(counts):
        click.echo(f"  {name}: {counts[name]}")


@main.command()
@click.option("--post", "post_path", required=True, help="text file with the post body")
@click.option("--rules", "rules_path", required=True, help="mined rules (JSONL)")
@click.option("--json", "as_json", is_flag=True, default=False, help="emit suggestions as JSON")
def suggest(post_path, rules_path, as_json):
    """Print suggested edits for a post, as a diff or as JSON."""
    with _open_or_die(post_path) as fh:
        body = fh.read()
    with _open_or_die(rules_path) as fh:
        rules = read_rules(fh)
    suggestions = suggest_edits(body, rules)
    if as_json:
        click.echo(
            json.dumps(
                [
                    {
                        "sentence_index": s.sentence_index,
                        "original": s.original,
                        "suggested": s.suggested,
                        "edit_types": sorted(t.value for t in s.edit_types),
                        "confidence": s.confidence,
                    }
                    for s in suggestions
                ],
                ensure_ascii=False,
                indent=1,
            )
        )
        return
    if not suggestions:
        click.echo("no suggestions")
        return
    for s in suggestions:
        diff = difflib.unified_diff(
            [s.original], [s.suggested],
            fromfile=f"sentence {s.sentence_index}",
            tofile=f"sentence {s.sentence_index} (suggested)",
            lineterm="",
        )
        for line in diff:
            click.echo(line)


def _load_pairs(path: str) -> list[SentencePair]:
    pairs = []
    with _open_or_die(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            pairs.append(
                SentencePair(
                    original=row["original"],
                    edited=row["edited"],
                    similarity=row.get("similarity", 0.0),
                    post_id=row.get("post_id", 0),
                )
            )
    return pairs


@main.command(name="eval")
@click.option("--track", type=click.Choice(["textual", "visual"]), required=True)
@click.option("--corpus", "corpus_path", required=True, help="JSONL evaluation corpus")
@click.option("--rules", "rules_path", default=None, help="mined rules (textual track)")
@click.option("--report", "report_path", default=None, help="write the full report as JSON")
def eval_cmd(track, corpus_path, rules_path, report_path):
    """Score suggestions against a reference corpus."""
    try:
        if track == "textual":
            pairs = _load_pairs(corpus_path)
            rules = []
            if rules_path:
                with _open_or_die(rules_path) as fh:
                    rules = read_rules(fh)
            report = evaluate_textual(pairs, rules)
        else:
            items, candidate_lists = [], []
            with _open_or_die(corpus_path) as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    row = json.loads(line)
                    with _open_or_die(row["image"], "rb") as img:
                        bitmap = read_pbm(img.read())
                    items.append((bitmap, row["reference"]))
                    candidate_lists.append(
                        [Candidate(text=c, score=0.0, source="corpus") for c in row["candidates"]]
                    )
            report = evaluate_visual(items, lambda i: candidate_lists[i])
    except (EmptyCorpus, FormatError, KeyError, json.JSONDecodeError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    click.echo(f"examples: {report.n_examples}")
    click.echo(f"BLEU: {report.bleu:.4f}")
    if report.gleu is not None:
        click.echo(f"GLEU: {report.gleu:.4f}")
    if report.image_similarity_mean is not None:
        click.echo(f"image similarity: {report.image_similarity_mean:.4f}")
    click.echo(f"exact match rate: {report.exact_match_rate:.4f}")
    if report_path:
        with open(report_path, "w", encoding="utf-8") as out:
            out.write(report.to_json())


@main.command(name="render")
@click.option("--formula", required=True, help="LaTeX source to rasterize")
@click.option("--out", "out_path", required=True, help="output PBM path")
@click.option("--scale", default=1, show_default=True)
@click.option("--seed", default=None, type=int, help="overrides LATEXEDIT_SEED")
@click.option("--augment", is_flag=True, default=False, help="randomize scale/padding")
@click.option("--binary", is_flag=True, default=False, help="write packed (P4) PBM")
def render_cmd(formula, out_path, scale, seed, augment, binary):
    """Rasterize a formula to a PBM image."""
    options = RenderOptions(
        scale=scale,
        seed=seed if seed is not None else _seed(),
        augment=augment,
    )
    try:
        bitmap = render(formula, options)
    except UnsupportedGlyph as exc:
        click.echo(f"unsupported symbol: {exc}", err=True)
        sys.exit(EXIT_UNSUPPORTED)
    except ParseError as exc:
        click.echo(f"parse error: {exc}", err=True)
        sys.exit(EXIT_USAGE)
    with open(out_path, "wb") as out:
        out.write(write_pbm(bitmap, binary=binary))
    click.echo(f"{bitmap.width}x{bitmap.height} -> {out_path}")


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--session", "session_path", required=True, help="session state file (JSON)")
@click.option("--corpus", "corpus_path", required=True, help="JSONL posts: {post_id, body}")
@click.option("--rules", "rules_path", required=True, help="mined rules (JSONL)")
@click.option("--static", "static_dir", default=None, help="directory with the review UI build")
def serve(port, host, session_path, corpus_path, rules_path, static_dir):
    """Run the local review service."""
    import uvicorn

    from .service import SessionStore, create_app

    with _open_or_die(rules_path) as fh:
        rules = read_rules(fh)
    posts = []
    with _open_or_die(corpus_path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            row = json.loads(line)
            posts.append((int(row["post_id"]), row["body"]))
    store = SessionStore(session_path)
    store.populate(posts, rules)
    if static_dir is None:
        bundled = os.path.join(os.path.dirname(__file__), "..", "..", "frontend", "dist")
        if os.path.isdir(bundled):
            static_dir = bundled
    app = create_app(store, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
