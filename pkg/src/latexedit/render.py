"""Deterministic rasterizer for LaTeX formulas.

A box-and-baseline layout over an embedded fixed bitmap font replaces
the external pdfLaTeX pipeline: identical inputs and seeds yield
bit-identical monochrome bitmaps.  An external-renderer hook (child
process writing PBM to stdout) is available for fidelity experiments.
"""

from __future__ import annotations

import subprocess
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import latex
from .fontdata import GLYPHS, GLYPH_BASELINE, GLYPH_HEIGHT, GLYPH_WIDTH
from .latex import (
    Atom,
    Cmd,
    FormulaNode,
    Frac,
    Group,
    ParseError,
    Row,
    Script,
    Sqrt,
)

SCRIPT_RATIO = 0.7
SUPERSCRIPT_RAISE = 0.40  # fraction of base height
SUBSCRIPT_DROP = 0.25

# multi-letter commands drawn as a sequence of letter glyphs
_WORD_COMMANDS = {"\\sin", "\\cos", "\\log"}


class UnsupportedGlyph(Exception):
    def __init__(self, symbol: str):
        super().__init__(f"no glyph for {symbol!r}")
        self.symbol = symbol


class FormatError(Exception):
    pass


@dataclass
class Bitmap:
    """Monochrome raster; pixel 0 = black ink, 1 = white."""

    pixels: np.ndarray  # uint8, shape (height, width)

    def __post_init__(self) -> None:
        assert self.pixels.ndim == 2 and self.pixels.size >= 1

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def bits(self) -> list[int]:
        """Row-major bit sequence, 0 = black, 1 = white."""
        return self.pixels.flatten().tolist()

    @property
    def is_blank(self) -> bool:
        return bool((self.pixels == 1).all())

    @classmethod
    def blank(cls, width: int, height: int) -> "Bitmap":
        return cls(np.ones((height, width), dtype=np.uint8))

    @classmethod
    def from_gray(cls, gray: np.ndarray, threshold: float = 0.5) -> "Bitmap":
        """Binarize a grayscale array (any numeric range) at a fraction
        of its maximum intensity."""
        arr = np.asarray(gray, dtype=np.float64)
        peak = arr.max() if arr.size else 1.0
        if peak <= 0:
            return cls(np.zeros_like(arr, dtype=np.uint8))
        return cls((arr > threshold * peak).astype(np.uint8))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Bitmap) and np.array_equal(self.pixels, other.pixels)


@dataclass
class LayoutBox:
    width: int
    height: int
    baseline: int  # pixels from top
    bitmap: Bitmap


@dataclass
class RenderOptions:
    scale: int = 1
    padding: int = 2
    seed: int = 0
    augment: bool = False


class _Lcg:
    """Small deterministic generator for seeded augmentation."""

    def __init__(self, seed: int):
        self.state = (seed * 2654435761 + 1) % (1 << 31)

    def next(self, bound: int) -> int:
        self.state = (1103515245 * self.state + 12345) % (1 << 31)
        return self.state % bound


def _glyph_bitmap(key: str) -> np.ndarray:
    rows = GLYPHS.get(key)
    if rows is None:
        raise UnsupportedGlyph(key)
    out = np.ones((GLYPH_HEIGHT, GLYPH_WIDTH), dtype=np.uint8)
    for y, mask in enumerate(rows):
        for x in range(GLYPH_WIDTH):
            if mask & (1 << (GLYPH_WIDTH - 1 - x)):
                out[y, x] = 0
    return out


def _box_from_array(arr: np.ndarray, baseline: int) -> LayoutBox:
    return LayoutBox(arr.shape[1], arr.shape[0], baseline, Bitmap(arr))


def _glyph_box(key: str) -> LayoutBox:
    return _box_from_array(_glyph_bitmap(key), GLYPH_BASELINE)


def _hstack(boxes: Sequence[LayoutBox], gap: int = 0) -> LayoutBox:
    if not boxes:
        return _box_from_array(np.ones((GLYPH_HEIGHT, 1), dtype=np.uint8), GLYPH_BASELINE)
    above = max(b.baseline for b in boxes)
    below = max(b.height - b.baseline for b in boxes)
    height = above + below
    width = sum(b.width for b in boxes) + gap * (len(boxes) - 1)
    canvas = np.ones((height, width), dtype=np.uint8)
    x = 0
    for b in boxes:
        y = above - b.baseline
        canvas[y : y + b.height, x : x + b.width] = b.bitmap.pixels
        x += b.width + gap
    return _box_from_array(canvas, above)


def _shrink(box: LayoutBox, ratio: float) -> LayoutBox:
    h = max(1, round(box.height * ratio))
    w = max(1, round(box.width * ratio))
    ys = (np.arange(h) * box.height // h).astype(int)
    xs = (np.arange(w) * box.width // w).astype(int)
    arr = box.bitmap.pixels[np.ix_(ys, xs)]
    return _box_from_array(arr, max(0, round(box.baseline * ratio)))


def layout(node: FormulaNode, options: Optional[RenderOptions] = None) -> LayoutBox:
    """Recursive box layout: rows align baselines, fractions stack over a
    full-width rule, scripts shrink and offset, radicals get a hook and
    an overbar."""
    opts = options or RenderOptions()
    if isinstance(node, Atom):
        text = node.text
        if text == "" or text.isspace():
            return _box_from_array(np.ones((GLYPH_HEIGHT, 2), dtype=np.uint8), GLYPH_BASELINE)
        if len(text) == 1:
            return _glyph_box(text)
        return _hstack([_glyph_box(c) for c in text])
    if isinstance(node, Row):
        return _hstack([layout(c, opts) for c in node.children], gap=1)
    if isinstance(node, Group):
        return layout(node.child, opts)
    if isinstance(node, Frac):
        num = layout(node.numerator, opts)
        den = layout(node.denominator, opts)
        width = max(num.width, den.width) + 2
        height = num.height + den.height + 3
        canvas = np.ones((height, width), dtype=np.uint8)
        canvas[0 : num.height, (width - num.width) // 2 : (width - num.width) // 2 + num.width] = num.bitmap.pixels
        rule_y = num.height + 1
        canvas[rule_y, :] = 0
        y0 = num.height + 3
        canvas[y0 : y0 + den.height, (width - den.width) // 2 : (width - den.width) // 2 + den.width] = den.bitmap.pixels
        return _box_from_array(canvas, rule_y)
    if isinstance(node, Sqrt):
        rad = layout(node.radicand, opts)
        hook_w = 6
        height = rad.height + 2
        width = hook_w + rad.width + 1
        canvas = np.ones((height, width), dtype=np.uint8)
        canvas[2:, hook_w : hook_w + rad.width] = rad.bitmap.pixels
        canvas[0, hook_w - 1 : width] = 0  # overbar
        # radical hook: diagonal stroke rising to meet the overbar
        for y in range(height):
            x = (height - 1 - y) * (hook_w - 1) // max(1, height - 1)
            canvas[y, hook_w - 1 - x] = 0
        box = _box_from_array(canvas, rad.baseline + 2)
        if node.index is not None:
            idx = _shrink(layout(node.index, opts), SCRIPT_RATIO)
            return _hstack([idx, box])
        return box
    if isinstance(node, Script):
        base = layout(node.base, opts)
        pieces = [base]
        scripts = []
        if node.sub is not None:
            sub = _shrink(layout(node.sub, opts), SCRIPT_RATIO)
            drop = round(base.height * SUBSCRIPT_DROP)
            # baseline such that the sub sits below the base baseline
            scripts.append(LayoutBox(sub.width, sub.height, sub.baseline - drop, sub.bitmap))
        if node.sup is not None:
            sup = _shrink(layout(node.sup, opts), SCRIPT_RATIO)
            raise_px = round(base.height * SUPERSCRIPT_RAISE)
            scripts.append(LayoutBox(sup.width, sup.height, sup.baseline + raise_px, sup.bitmap))
        return _hstack(pieces + scripts)
    if isinstance(node, Cmd):
        if node.name in _WORD_COMMANDS:
            word = node.name[1:]
            box = _hstack([_glyph_box(c) for c in word])
            if node.args:
                box = _hstack([box] + [layout(a, opts) for a in node.args], gap=1)
            return box
        if node.name in GLYPHS and not node.args:
            return _glyph_box(node.name)
        raise UnsupportedGlyph(node.name)
    raise UnsupportedGlyph(repr(node))


def _upscale(arr: np.ndarray, factor: int) -> np.ndarray:
    if factor == 1:
        return arr
    return np.kron(arr, np.ones((factor, factor), dtype=np.uint8))


def _pad(arr: np.ndarray, padding: int) -> np.ndarray:
    if padding == 0:
        return arr
    return np.pad(arr, padding, constant_values=1)


def render(latex_src: str, options: Optional[RenderOptions] = None) -> Bitmap:
    """Rasterize a formula; identical (source, options, seed) inputs
    produce bit-identical bitmaps."""
    opts = options or RenderOptions()
    scale = opts.scale
    padding = opts.padding
    if opts.augment:
        rng = _Lcg(opts.seed)
        scale = 1 + rng.next(3)
        padding = rng.next(5)
    result = latex.parse(latex.tokenize(latex_src))
    box = layout(result.node, opts)
    arr = _pad(_upscale(box.bitmap.pixels, scale), padding)
    return Bitmap(arr)


# --- portable bitmap I/O -----------------------------------------------------


def write_pbm(bitmap: Bitmap, binary: bool = False) -> bytes:
    """Serialize to PBM.  PBM uses 1 = black, the inverse of the
    internal 0 = black convention."""
    ink = (1 - bitmap.pixels).astype(np.uint8)
    header = f"P4\n{bitmap.width} {bitmap.height}\n" if binary else f"P1\n{bitmap.width} {bitmap.height}\n"
    if binary:
        packed = np.packbits(ink, axis=1)
        return header.encode("ascii") + packed.tobytes()
    lines = "\n".join(" ".join(str(v) for v in row) for row in ink)
    return header.encode("ascii") + lines.encode("ascii") + b"\n"


def read_pbm(data: bytes) -> Bitmap:
    if len(data) < 2 or data[:1] != b"P" or data[1:2] not in (b"1", b"4"):
        raise FormatError("not a P1/P4 portable bitmap")
    magic = data[:2].decode("ascii")
    # header tokens: magic, width, height (comments start with '#')
    pos = 2
    fields: list[int] = []
    while len(fields) < 2:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] != b"\n":
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        tok = data[start:pos]
        if not tok.isdigit():
            raise FormatError(f"bad header token {tok!r}")
        fields.append(int(tok))
    width, height = fields
    if width < 1 or height < 1:
        raise FormatError("degenerate dimensions")
    if magic == "P1":
        body = data[pos:].decode("ascii", errors="replace")
        values = [c for c in body if c in "01"]
        if len(values) < width * height:
            raise FormatError("truncated P1 body")
        ink = np.array([int(c) for c in values[: width * height]], dtype=np.uint8)
        ink = ink.reshape(height, width)
    else:
        pos += 1  # single whitespace after header
        row_bytes = (width + 7) // 8
        body = data[pos : pos + row_bytes * height]
        if len(body) < row_bytes * height:
            raise FormatError("truncated P4 body")
        packed = np.frombuffer(body, dtype=np.uint8).reshape(height, row_bytes)
        ink = np.unpackbits(packed, axis=1)[:, :width]
    return Bitmap((1 - ink).astype(np.uint8))


def external_render(argv: Sequence[str], latex_src: str, timeout: float = 30.0) -> Bitmap:
    """Hook for an external renderer: the child process is invoked with
    the formula appended to argv and must write PBM to stdout."""
    proc = subprocess.run(
        list(argv) + [latex_src], capture_output=True, timeout=timeout, check=True
    )
    return read_pbm(proc.stdout)
