"""Rule mining, application, and suggestion pipeline tests."""

import io
import json
import sys

from latexedit.miner import SentencePair
from latexedit.rules import (
    EditRule,
    SubprocessAdapter,
    apply_rules,
    apply_suggestions,
    mine_rules,
    postprocess,
    read_rules,
    suggest_edits,
    write_rules,
)


def _pairs(n, orig, edit):
    return [SentencePair(orig, edit, 0.0, i) for i in range(n)]


def test_mine_rules_counts_support():
    rules = mine_rules(_pairs(5, "take the root of x", "take the \\sqrt of x"), 3)
    assert any(r.lhs == ("root",) and r.rhs == ("\\sqrt",) and r.support == 5 for r in rules)


def test_mine_rules_multiple_rewrites():
    pairs = _pairs(3, "a * b", "a \\cdot b") + _pairs(3, "take log ( x )", "take \\log ( x )")
    rules = mine_rules(pairs, 3)
    mined = {(r.lhs, r.rhs) for r in rules}
    assert (("*",), ("\\cdot",)) in mined
    assert (("log",), ("\\log",)) in mined


def test_mine_rules_support_cutoff():
    assert mine_rules(_pairs(1, "a * b", "a \\cdot b"), 2) == []


def test_mine_rules_sorted_by_support_then_length():
    pairs = _pairs(5, "a * b", "a \\cdot b") + _pairs(3, "u v w + 1", "u x w + 1")
    rules = mine_rules(pairs, 2)
    supports = [r.support for r in rules]
    assert supports == sorted(supports, reverse=True)


def test_rules_round_trip_through_jsonl():
    rules = mine_rules(_pairs(3, "a * b", "a \\cdot b"), 3)
    buf = io.StringIO()
    write_rules(rules, buf)
    buf.seek(0)
    assert read_rules(buf) == rules


def test_apply_rules_respects_dollar_regions(rule_pairs):
    rules = mine_rules(rule_pairs, 3)
    # "p" inside an existing math region must not be wrapped again
    out = apply_rules("COMMON_WORDS $ p $ 1", rules)
    assert all("$ $ p $ $" not in c.text for c in out)


def test_apply_rules_empty_when_nothing_matches():
    assert apply_rules("COMMON_WORDS", []) == []


def test_apply_rules_wraps_operator_runs():
    out = apply_rules("COMMON_WORDS y + py = px - 2p COMMON_WORDS", [])
    assert out and "$ y + py = px - 2p $" in out[0].text


def test_apply_rules_leaves_bare_parens_alone():
    assert apply_rules("COMMON_WORDS ( s ) COMMON_WORDS", []) == []


def test_apply_rules_table_examples(rule_pairs):
    rules = mine_rules(rule_pairs, 3)
    out = apply_rules("COMMON_WORDS y + py = px - 2p COMMON_WORDS ( s ) COMMON_WORDS p 1", rules)
    assert out[0].text == "COMMON_WORDS $ y + py = px - 2p $ COMMON_WORDS ( s ) COMMON_WORDS $ p $ 1"
    out = apply_rules("x - root2", rules)
    assert out[0].text == "$x-\\sqrt{2}$"


def test_postprocess_examples():
    assert postprocess("a $$ b") == "a $ b$"  # collapsed then rebalanced
    assert postprocess("x . . . y") == "x . . y"
    assert postprocess("$x^{2$") == "$x^{2}$"
    assert postprocess("a } b") == "a  b"
    assert postprocess("balanced $x$ already") == "balanced $x$ already"


def test_postprocess_idempotent():
    for s in ["a $$ b", "$x^{2$", "a } b", "x , { y", "$a$ $b"]:
        once = postprocess(s)
        assert postprocess(once) == once


def test_suggest_edits_full_pipeline(rule_pairs):
    rules = mine_rules(rule_pairs, 3)
    body = "formula: y + py = px - 2p for which value ( s ) of p 1"
    out = suggest_edits(body, rules)
    assert len(out) == 1
    assert out[0].suggested == (
        "formula: $ y + py = px - 2p $ for which value ( s ) of $ p $ 1"
    )
    assert out[0].suggested != out[0].original
    assert 0.0 <= out[0].confidence <= 1.0


def test_suggest_edits_variable_wrap(rule_pairs):
    rules = mine_rules(rule_pairs, 3)
    out = suggest_edits("' i ' is part of the ratio", rules)
    assert out and "$ i $" in out[0].suggested


def test_suggest_edits_prose_yields_nothing(rule_pairs):
    rules = mine_rules(rule_pairs, 3)
    assert suggest_edits("nothing mathematical about this text at all", rules) == []


def test_suggest_edits_canonical_formula_unchanged(rule_pairs):
    rules = mine_rules(rule_pairs, 3)
    assert suggest_edits("$x-\\sqrt{2}$", rules) == []


def test_suggest_edits_twice_is_fixed_point(rule_pairs):
    rules = mine_rules(rule_pairs, 3)
    body = "formula: y + py = px - 2p for which value ( s ) of p 1. Also x - root2 here."
    once = apply_suggestions(body, suggest_edits(body, rules))
    twice = apply_suggestions(once, suggest_edits(once, rules))
    assert once != body
    assert twice == once


ADAPTER_SCRIPT = r"""
import json, sys
for line in sys.stdin:
    req = json.loads(line)
    text = req["normalized"].replace("alpha", "\\alpha")
    print(json.dumps({"id": req["id"], "candidates": [{"text": text, "score": 1.0}]}))
    sys.stdout.flush()
"""


def test_subprocess_adapter_round_trip(tmp_path):
    script = tmp_path / "adapter.py"
    script.write_text(ADAPTER_SCRIPT)
    with SubprocessAdapter([sys.executable, str(script)]) as adapter:
        cands = adapter.candidates("x + alpha")
        assert cands[0].text == "x + \\alpha"


def test_rule_is_hashable_and_frozen():
    r = EditRule(("a",), ("b",), 3, None, None)
    assert r in {r}
