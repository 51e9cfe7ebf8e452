"""Tokenizer, parser, and canonicalizer tests."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latexedit.latex import (
    Atom,
    CanonConfig,
    Frac,
    Group,
    ParseError,
    Row,
    Script,
    Sqrt,
    canonicalize,
    parse,
    serialize,
    tokenize,
)


def test_tokenize_frac():
    toks = [t.text for t in tokenize("\\frac{a}{b}") if t.text.strip()]
    assert toks == ["\\frac", "{", "a", "}", "{", "b", "}"]


def test_tokenize_sqrt_expression():
    toks = [t.text for t in tokenize("x-\\sqrt{2}") if t.text.strip()]
    assert toks == ["x", "-", "\\sqrt", "{", "2", "}"]


def test_tokenize_scripts():
    toks = [t.text for t in tokenize("A_{2}^{c}") if t.text.strip()]
    assert toks == ["A", "_", "{", "2", "}", "^", "{", "c", "}"]


def test_digits_are_individual_tokens():
    toks = [t.text for t in tokenize("2026")]
    assert toks == ["2", "0", "2", "6"]


@given(st.text(max_size=200))
def test_lossless_lexing(s):
    assert "".join(t.text for t in tokenize(s)) == s


def test_parse_frac():
    result = parse(tokenize("\\frac{a}{b}"))
    node = result.node
    if isinstance(node, Row) and len(node.children) == 1:
        node = node.children[0]
    assert isinstance(node, Frac)


def test_parse_script_both_orders():
    r1 = parse(tokenize("x^2_i"))
    node = r1.node
    if isinstance(node, Row) and len(node.children) == 1:
        node = node.children[0]
    assert isinstance(node, Script)
    assert node.sub is not None and node.sup is not None


def test_parse_recovers_unclosed_brace():
    result = parse(tokenize("{a"))
    assert any("unclosed brace" in d for d in result.diagnostics)


def test_parse_drops_stray_close_brace():
    result = parse(tokenize("a}b"))
    assert serialize(result.node).replace(" ", "") == "ab"


def test_frac_without_args_is_an_error():
    with pytest.raises(ParseError):
        parse(tokenize("\\frac"))


def test_canonicalize_script_order():
    assert canonicalize("A^{c}_{2}") == "A_{2}^{c}"


def test_canonicalize_over():
    assert canonicalize("a \\over b") == "\\frac{a}{b}"


def test_canonicalize_strips_labels():
    assert canonicalize("x=y\\label{eq1}") == "x=y"


def test_canonicalize_script_order_invariance():
    assert canonicalize("A^{c}_{2}") == canonicalize("A_{2}^{c}")


def test_canonicalize_braces_single_scripts():
    assert canonicalize("x^2") == "x^{2}"


def test_canon_config_flags_are_independent():
    cfg = CanonConfig(strip_labels=False)
    assert "\\label" in canonicalize("x\\label{e}", cfg)
    cfg = CanonConfig(reorder_scripts=False)
    assert canonicalize("A^{c}_{2}", cfg) == "A^{c}_{2}"


def test_serialize_examples():
    assert serialize(Frac(Atom("a"), Atom("b"))) == "\\frac{a}{b}"
    assert serialize(Script(Atom("x"), sub=Atom("1"))) == "x_{1}"
    assert serialize(Sqrt(Atom("2"))) == "\\sqrt{2}"


def random_tree(rng, depth=0):
    choices = ["atom", "row", "group", "frac", "sqrt", "script"]
    kind = rng.choice(choices) if depth < 6 else "atom"
    if kind == "atom":
        return Atom(rng.choice("abcxyz12+-="))
    if kind == "row":
        return Row([random_tree(rng, depth + 1) for _ in range(rng.randint(1, 3))])
    if kind == "group":
        return Group(random_tree(rng, depth + 1))
    if kind == "frac":
        return Frac(random_tree(rng, depth + 1), random_tree(rng, depth + 1))
    if kind == "sqrt":
        return Sqrt(random_tree(rng, depth + 1))
    return Script(
        Atom(rng.choice("abcxyz")),
        sub=random_tree(rng, depth + 1) if rng.random() < 0.7 else None,
        sup=random_tree(rng, depth + 1) if rng.random() < 0.7 else None,
    )


def test_canonical_idempotence_on_random_trees():
    rng = random.Random(7)
    for _ in range(300):
        src = serialize(random_tree(rng))
        once = canonicalize(src)
        assert canonicalize(once) == once


def test_serialize_parse_round_trip_on_random_trees():
    rng = random.Random(42)
    for _ in range(1000):
        tree = random_tree(rng)
        text = serialize(tree)
        reparsed = parse(tokenize(text))
        assert serialize(reparsed.node) == text


@settings(max_examples=200)
@given(st.text(alphabet="abxy12+-=^_{}\\ ", max_size=40))
def test_canonicalize_idempotent_on_arbitrary_input(s):
    try:
        once = canonicalize(s)
    except ParseError:
        return
    assert canonicalize(once) == once
