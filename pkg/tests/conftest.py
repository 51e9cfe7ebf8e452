"""Shared fixtures: a synthetic revision-history dump with known edits,
and a small corpus of sentence pairs for rule mining."""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import quoteattr

import pytest

from latexedit.miner import EditType, SentencePair


@dataclass
class ExpectedPair:
    post_id: int
    original: str
    edited: str
    edit_types: frozenset[str]


def _latexification_bodies(pid: int) -> tuple[str, str, str, str]:
    orig_sent = (
        f"In problem {pid} we simplify the whole expression x - root2 that "
        "appears in the denominator of this fraction here."
    )
    edit_sent = (
        f"In problem {pid} we simplify the whole expression $x-\\sqrt{{2}}$ that "
        "appears in the denominator of this fraction here."
    )
    anchor = "The second sentence never changes between the two revisions."
    return orig_sent, edit_sent, f"{orig_sent} {anchor}", f"{edit_sent} {anchor}"


def _revision_bodies(pid: int) -> tuple[str, str, str, str]:
    orig_sent = (
        f"Starting from identity number {pid} namely $x+y=x$ we substitute "
        "the known values and simplify both sides carefully."
    )
    edit_sent = (
        f"Starting from identity number {pid} namely $x+y=z$ we substitute "
        "the known values and simplify both sides carefully."
    )
    anchor = "This anchor sentence is shared by both revisions of the post."
    return orig_sent, edit_sent, f"{orig_sent} {anchor}", f"{edit_sent} {anchor}"


def _screenshot_bodies(pid: int) -> tuple[str, str, str, str]:
    orig_sent = (
        f"The equation number {pid} shown in ![](a.png) describes how the "
        "population grows over several generations of the model."
    )
    edit_sent = (
        f"The equation number {pid} shown in $x^{{2}}+1$ describes how the "
        "population grows over several generations of the model."
    )
    anchor = "A closing remark that stays identical across the edit."
    return orig_sent, edit_sent, f"{orig_sent} {anchor}", f"{edit_sent} {anchor}"


def build_fixture_dump() -> tuple[str, list[ExpectedPair]]:
    """A 100-post dump with exactly 60 minable pairs (20 per edit type)
    plus 40 distractor posts that must yield nothing."""
    rows: list[str] = []
    expected: list[ExpectedPair] = []
    row_id = 0

    def add_row(post_id: int, type_id: int, body: str) -> None:
        nonlocal row_id
        row_id += 1
        rows.append(
            f'  <row Id="{row_id}" PostId="{post_id}" '
            f'PostHistoryTypeId="{type_id}" Text={quoteattr(body)} />'
        )

    makers = {
        EditType.LATEXIFICATION: _latexification_bodies,
        EditType.LATEX_REVISION: _revision_bodies,
        EditType.SCREENSHOT_TRANSCRIPTION: _screenshot_bodies,
    }
    pid = 0
    for edit_type, maker in makers.items():
        for _ in range(20):
            pid += 1
            orig_sent, edit_sent, orig_body, edit_body = maker(pid)
            add_row(pid, 2, orig_body)
            add_row(pid, 5, edit_body)
            expected.append(
                ExpectedPair(pid, orig_sent, edit_sent, frozenset({edit_type.value}))
            )
    # 61-70: prose-only edits (no formulas -> filtered out)
    for _ in range(10):
        pid += 1
        add_row(pid, 2, f"Post {pid} originally said something plain and wordy here.")
        add_row(pid, 5, f"Post {pid} originally said something plain and tidy here.")
    # 71-80: single revision, nothing to align
    for _ in range(10):
        pid += 1
        add_row(pid, 2, f"Post {pid} has a single revision with $x+y=z$ inside it.")
    # 81-90: identical re-save
    for _ in range(10):
        pid += 1
        body = f"Post {pid} keeps the same body with $a+b=c$ across both rows."
        add_row(pid, 2, body)
        add_row(pid, 5, body)
    # 91-95: over-long edited sentences (len > 256 -> filtered out)
    for _ in range(5):
        pid += 1
        filler = "a very long run of words " * 12
        add_row(pid, 2, f"Post {pid} {filler} ends with $x+y=x$ in the middle of it all.")
        add_row(pid, 5, f"Post {pid} {filler} ends with $x+y=z$ in the middle of it all.")
    # 96-100: title edits (type 4) and close comments (type 10) only
    for _ in range(5):
        pid += 1
        add_row(pid, 4, f"Title of post {pid}")
        add_row(pid, 10, "closed")
    # one malformed row: must be skipped, not fatal
    rows.append('  <row Id="9999" PostId="oops" PostHistoryTypeId="5" Text="bad" />')
    xml = "<?xml version=\"1.0\"?>\n<posthistory>\n" + "\n".join(rows) + "\n</posthistory>\n"
    return xml, expected


@pytest.fixture(scope="session")
def fixture_dump() -> tuple[str, list[ExpectedPair]]:
    return build_fixture_dump()


def build_rule_pairs() -> list[SentencePair]:
    """Pairs whose mined rules reproduce the target rewrites: plain
    "x - root2" to "$x-\\sqrt{2}$", and single variables wrapped in $."""
    pairs = []
    for _ in range(3):
        pairs.append(SentencePair("x - root2", "$x-\\sqrt{2}$", 0.0, 1))
        pairs.append(SentencePair("value of p 1", "value of $ p $ 1", 0.0, 2))
        pairs.append(SentencePair("where i is imaginary", "where $ i $ is imaginary", 0.0, 3))
    return pairs


@pytest.fixture(scope="session")
def rule_pairs() -> list[SentencePair]:
    return build_rule_pairs()
