"""Embedded fixed 8x16 monochrome glyph font.

Each glyph is 16 row masks, most significant bit = leftmost pixel,
set bit = ink.  Baseline sits at row 12 from the top.
"""

GLYPH_WIDTH = 8
GLYPH_HEIGHT = 16
GLYPH_BASELINE = 12

GLYPHS = {
    '!': (0, 0, 0, 0, 24, 24, 24, 24, 24, 16, 0, 24, 24, 0, 0, 0),
    '$': (0, 0, 0, 0, 0, 60, 96, 64, 56, 12, 2, 66, 60, 0, 0, 0),
    '(': (0, 0, 8, 8, 24, 16, 16, 16, 16, 16, 16, 24, 8, 8, 0, 0),
    ')': (0, 0, 32, 16, 16, 8, 8, 8, 8, 8, 8, 16, 16, 32, 0, 0),
    '*': (0, 0, 0, 0, 0, 64, 56, 56, 64, 0, 0, 0, 0, 0, 0, 0),
    '+': (0, 0, 0, 0, 0, 16, 16, 16, 126, 16, 16, 16, 0, 0, 0, 0),
    ',': (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 24, 24, 16, 16, 0),
    '-': (0, 0, 0, 0, 0, 0, 0, 0, 0, 60, 0, 0, 0, 0, 0, 0),
    '.': (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 24, 24, 0, 0, 0),
    '/': (0, 0, 0, 0, 6, 4, 4, 8, 8, 16, 16, 32, 32, 96, 64, 0),
    '0': (0, 0, 0, 0, 60, 100, 70, 66, 90, 66, 70, 100, 60, 0, 0, 0),
    '1': (0, 0, 0, 0, 56, 8, 8, 8, 8, 8, 8, 8, 62, 0, 0, 0),
    '2': (0, 0, 0, 0, 56, 68, 6, 4, 12, 24, 48, 96, 126, 0, 0, 0),
    '3': (0, 0, 0, 0, 56, 68, 6, 4, 60, 4, 2, 70, 60, 0, 0, 0),
    '4': (0, 0, 0, 0, 12, 28, 20, 36, 36, 68, 126, 4, 4, 0, 0, 0),
    '5': (0, 0, 0, 0, 124, 64, 64, 120, 4, 6, 6, 68, 56, 0, 0, 0),
    '6': (0, 0, 0, 0, 28, 32, 64, 92, 102, 66, 66, 102, 60, 0, 0, 0),
    '7': (0, 0, 0, 0, 126, 4, 4, 12, 8, 8, 16, 16, 48, 0, 0, 0),
    '8': (0, 0, 0, 0, 60, 102, 70, 100, 60, 102, 66, 102, 60, 0, 0, 0),
    '9': (0, 0, 0, 0, 60, 100, 70, 70, 102, 62, 6, 4, 56, 0, 0, 0),
    '<': (0, 0, 0, 0, 0, 0, 2, 28, 96, 96, 28, 2, 0, 0, 0, 0),
    '=': (0, 0, 0, 0, 0, 0, 0, 126, 0, 0, 126, 0, 0, 0, 0, 0),
    '>': (0, 0, 0, 0, 0, 0, 64, 56, 6, 6, 56, 64, 0, 0, 0, 0),
    '?': (0, 0, 0, 0, 60, 4, 4, 12, 24, 16, 0, 16, 16, 0, 0, 0),
    'A': (0, 0, 0, 0, 24, 24, 56, 36, 36, 100, 126, 66, 194, 0, 0, 0),
    'B': (0, 0, 0, 0, 124, 70, 66, 70, 124, 70, 66, 70, 124, 0, 0, 0),
    'C': (0, 0, 0, 0, 28, 34, 96, 64, 64, 64, 96, 34, 28, 0, 0, 0),
    'D': (0, 0, 0, 0, 120, 68, 70, 66, 66, 66, 70, 68, 120, 0, 0, 0),
    'E': (0, 0, 0, 0, 126, 96, 96, 96, 126, 96, 96, 96, 126, 0, 0, 0),
    'F': (0, 0, 0, 0, 126, 96, 96, 96, 126, 96, 96, 96, 96, 0, 0, 0),
    'G': (0, 0, 0, 0, 28, 96, 64, 64, 78, 66, 66, 98, 60, 0, 0, 0),
    'H': (0, 0, 0, 0, 66, 66, 66, 66, 126, 66, 66, 66, 66, 0, 0, 0),
    'I': (0, 0, 0, 0, 126, 24, 24, 24, 24, 24, 24, 24, 126, 0, 0, 0),
    'J': (0, 0, 0, 0, 60, 4, 4, 4, 4, 4, 4, 76, 120, 0, 0, 0),
    'K': (0, 0, 0, 0, 66, 68, 72, 112, 120, 72, 68, 70, 66, 0, 0, 0),
    'L': (0, 0, 0, 0, 96, 96, 96, 96, 96, 96, 96, 96, 126, 0, 0, 0),
    'M': (0, 0, 0, 0, 70, 102, 102, 74, 90, 90, 66, 66, 66, 0, 0, 0),
    'N': (0, 0, 0, 0, 98, 98, 114, 82, 82, 74, 78, 70, 70, 0, 0, 0),
    'O': (0, 0, 0, 0, 60, 100, 66, 66, 66, 66, 66, 100, 60, 0, 0, 0),
    'P': (0, 0, 0, 0, 124, 102, 98, 98, 102, 124, 96, 96, 96, 0, 0, 0),
    'Q': (0, 0, 0, 0, 60, 100, 66, 66, 66, 66, 66, 100, 60, 4, 4, 0),
    'R': (0, 0, 0, 0, 124, 70, 70, 68, 120, 68, 70, 66, 67, 0, 0, 0),
    'S': (0, 0, 0, 0, 60, 96, 64, 96, 60, 6, 2, 70, 60, 0, 0, 0),
    'T': (0, 0, 0, 0, 255, 24, 24, 24, 24, 24, 24, 24, 24, 0, 0, 0),
    'U': (0, 0, 0, 0, 66, 66, 66, 66, 66, 66, 66, 102, 60, 0, 0, 0),
    'V': (0, 0, 0, 0, 66, 66, 70, 100, 36, 36, 40, 24, 24, 0, 0, 0),
    'W': (0, 0, 0, 0, 129, 131, 194, 90, 90, 90, 102, 102, 100, 0, 0, 0),
    'X': (0, 0, 0, 0, 66, 36, 36, 24, 24, 56, 36, 70, 194, 0, 0, 0),
    'Y': (0, 0, 0, 0, 66, 70, 36, 56, 24, 24, 24, 24, 24, 0, 0, 0),
    'Z': (0, 0, 0, 0, 126, 6, 4, 8, 24, 16, 32, 96, 126, 0, 0, 0),
    '[': (0, 0, 28, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 28, 0, 0),
    '\\alpha': (0, 0, 0, 0, 0, 0, 58, 78, 68, 196, 68, 76, 58, 0, 0, 0),
    '\\beta': (0, 0, 0, 56, 100, 68, 68, 92, 92, 66, 66, 102, 124, 64, 64, 64),
    '\\cdot': (0, 0, 0, 0, 0, 0, 0, 0, 24, 24, 0, 0, 0, 0, 0, 0),
    '\\infty': (0, 0, 0, 0, 0, 0, 0, 102, 154, 153, 154, 102, 0, 0, 0, 0),
    '\\int': (0, 0, 14, 24, 24, 24, 24, 24, 24, 24, 24, 24, 24, 16, 112, 0),
    '\\pi': (0, 0, 0, 0, 0, 0, 126, 100, 100, 100, 100, 100, 102, 0, 0, 0),
    '\\rightarrow': (0, 0, 0, 0, 0, 0, 0, 0, 6, 254, 6, 0, 0, 0, 0, 0),
    '\\sum': (0, 0, 0, 0, 126, 96, 32, 16, 24, 16, 32, 96, 126, 0, 0, 0),
    '\\theta': (0, 0, 56, 36, 70, 66, 66, 126, 66, 66, 70, 36, 56, 0, 0, 0),
    ']': (0, 0, 56, 8, 8, 8, 8, 8, 8, 8, 8, 8, 8, 56, 0, 0),
    '^': (0, 0, 0, 0, 24, 60, 36, 66, 0, 0, 0, 0, 0, 0, 0, 0),
    '_': (0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 255),
    'a': (0, 0, 0, 0, 0, 0, 60, 68, 2, 62, 70, 70, 62, 0, 0, 0),
    'b': (0, 0, 64, 64, 64, 64, 124, 102, 98, 66, 98, 102, 124, 0, 0, 0),
    'c': (0, 0, 0, 0, 0, 0, 28, 32, 96, 96, 96, 32, 28, 0, 0, 0),
    'd': (0, 0, 6, 6, 6, 6, 62, 102, 70, 70, 70, 102, 62, 0, 0, 0),
    'e': (0, 0, 0, 0, 0, 0, 60, 102, 66, 126, 64, 98, 60, 0, 0, 0),
    'f': (0, 0, 14, 24, 16, 16, 126, 16, 16, 16, 16, 16, 16, 0, 0, 0),
    'g': (0, 0, 0, 0, 0, 0, 62, 102, 70, 70, 70, 102, 62, 4, 4, 56),
    'h': (0, 0, 64, 64, 64, 64, 124, 100, 70, 70, 70, 70, 70, 0, 0, 0),
    'i': (0, 0, 24, 0, 0, 0, 56, 24, 24, 24, 24, 24, 126, 0, 0, 0),
    'j': (0, 0, 8, 0, 0, 0, 56, 8, 8, 8, 8, 8, 8, 8, 24, 112),
    'k': (0, 0, 96, 96, 96, 96, 102, 108, 120, 120, 108, 102, 98, 0, 0, 0),
    'l': (0, 0, 112, 16, 16, 16, 16, 16, 16, 16, 16, 16, 14, 0, 0, 0),
    'm': (0, 0, 0, 0, 0, 0, 118, 90, 82, 82, 82, 82, 82, 0, 0, 0),
    'n': (0, 0, 0, 0, 0, 0, 124, 100, 70, 70, 70, 70, 70, 0, 0, 0),
    'o': (0, 0, 0, 0, 0, 0, 60, 100, 66, 66, 66, 100, 60, 0, 0, 0),
    'p': (0, 0, 0, 0, 0, 0, 124, 102, 98, 66, 98, 102, 124, 64, 64, 64),
    'q': (0, 0, 0, 0, 0, 0, 62, 102, 70, 70, 70, 102, 62, 2, 2, 2),
    'r': (0, 0, 0, 0, 0, 0, 62, 48, 48, 32, 32, 32, 32, 0, 0, 0),
    's': (0, 0, 0, 0, 0, 0, 56, 100, 96, 60, 4, 68, 60, 0, 0, 0),
    't': (0, 0, 0, 0, 16, 16, 126, 16, 16, 16, 16, 16, 30, 0, 0, 0),
    'u': (0, 0, 0, 0, 0, 0, 70, 70, 70, 70, 70, 102, 62, 0, 0, 0),
    'v': (0, 0, 0, 0, 0, 0, 66, 70, 36, 36, 44, 24, 24, 0, 0, 0),
    'w': (0, 0, 0, 0, 0, 0, 129, 130, 90, 90, 90, 102, 36, 0, 0, 0),
    'x': (0, 0, 0, 0, 0, 0, 70, 36, 24, 24, 56, 36, 66, 0, 0, 0),
    'y': (0, 0, 0, 0, 0, 0, 66, 66, 36, 36, 60, 24, 24, 16, 16, 96),
    'z': (0, 0, 0, 0, 0, 0, 126, 4, 8, 24, 48, 32, 126, 0, 0, 0),
    '{': (0, 0, 12, 24, 24, 24, 16, 112, 16, 24, 24, 24, 24, 12, 0, 0),
    '|': (0, 0, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 16, 0),
    '}': (0, 0, 112, 16, 16, 16, 24, 12, 24, 24, 16, 16, 16, 112, 0, 0),
}
