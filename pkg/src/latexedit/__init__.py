"""Toolkit for mining and recommending LaTeX math edits in Q&A posts."""

__version__ = "0.1.0"
