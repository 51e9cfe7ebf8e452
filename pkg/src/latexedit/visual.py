"""Image similarity over column binary codes, and similarity-based
re-ranking of candidate LaTeX sequences against an input bitmap.

Bitmaps are cropped to their ink bounding box, height-normalized to 64
pixels, and each column's 64 bits become one code; the distance between
two images is then a plain sequence edit distance over codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .distance import levenshtein
from .latex import ParseError
from .render import Bitmap, RenderOptions, UnsupportedGlyph, render
from .rules import Candidate

TARGET_HEIGHT = 64

_BLANK_CODE = b"\xff" * (TARGET_HEIGHT // 8)


class HeightMismatch(Exception):
    pass


@dataclass
class SimilarityOptions:
    drop_blank_columns: bool = True  # evaluation default; off for re-ranking
    binarize_threshold: float = 0.5


@dataclass
class ColumnCodes:
    codes: list[bytes]

    def __len__(self) -> int:
        return len(self.codes)


@dataclass
class RankedCandidate:
    candidate: Candidate
    rendered: Optional[Bitmap]
    similarity: float  # -1 when rendering failed


def crop_resize(bitmap: Bitmap) -> Bitmap:
    """Crop to the ink bounding box and nearest-neighbor resize to
    height 64, width scaled proportionally (minimum 1).  All-white
    input degenerates to a 1x64 white bitmap."""
    ink_rows = np.where((bitmap.pixels == 0).any(axis=1))[0]
    ink_cols = np.where((bitmap.pixels == 0).any(axis=0))[0]
    if ink_rows.size == 0:
        return Bitmap.blank(1, TARGET_HEIGHT)
    box = bitmap.pixels[
        ink_rows[0] : ink_rows[-1] + 1, ink_cols[0] : ink_cols[-1] + 1
    ]
    h, w = box.shape
    new_w = max(1, round(w * TARGET_HEIGHT / h))
    ys = (np.arange(TARGET_HEIGHT) * h // TARGET_HEIGHT).astype(int)
    xs = (np.arange(new_w) * w // new_w).astype(int)
    return Bitmap(box[np.ix_(ys, xs)])


def column_encode(bitmap: Bitmap, options: Optional[SimilarityOptions] = None) -> ColumnCodes:
    """One code per column, top bit most significant; blank (all-white)
    columns are removed when the option asks for it."""
    opts = options or SimilarityOptions()
    if bitmap.height != TARGET_HEIGHT:
        raise HeightMismatch(f"height {bitmap.height}, expected {TARGET_HEIGHT}")
    packed = np.packbits(bitmap.pixels, axis=0)  # shape (8, width)
    codes = [packed[:, j].tobytes() for j in range(bitmap.width)]
    if opts.drop_blank_columns:
        codes = [c for c in codes if c != _BLANK_CODE]
    return ColumnCodes(codes)


def image_similarity(
    b1: Bitmap, b2: Bitmap, options: Optional[SimilarityOptions] = None
) -> float:
    """1 - dist/max(len) over the two column-code sequences; symmetric
    and in [0, 1]."""
    opts = options or SimilarityOptions()
    c1 = column_encode(crop_resize(b1), opts).codes
    c2 = column_encode(crop_resize(b2), opts).codes
    m = max(len(c1), len(c2))
    if m == 0:
        return 1.0
    return 1.0 - levenshtein(c1, c2) / m


def rerank(
    original: Bitmap,
    candidates: Sequence[Candidate],
    options: Optional[SimilarityOptions] = None,
    renderer: Callable[[str], Bitmap] = lambda s: render(s, RenderOptions()),
) -> list[RankedCandidate]:
    """Render each candidate and sort by similarity to the input image,
    descending.  Render failures score -1; ties (and the all-failed
    case) keep the input's model-score order."""
    opts = options or SimilarityOptions(drop_blank_columns=False)
    ranked = []
    for cand in candidates:
        try:
            img = renderer(cand.text)
        except (ParseError, UnsupportedGlyph, ValueError):
            ranked.append(RankedCandidate(cand, None, -1.0))
            continue
        ranked.append(RankedCandidate(cand, img, image_similarity(original, img, opts)))
    ranked.sort(key=lambda r: -r.similarity)  # stable: ties keep input order
    return ranked
