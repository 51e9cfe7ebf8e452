"""Local review service: serves suggestions, records accept/reject/amend
decisions with write-ahead persistence, and exports edited bodies."""

from __future__ import annotations

import datetime
import json
import os
import struct
import threading
import uuid
import zlib
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import __version__
from .latex import ParseError
from .miner import _raw_math_spans
from .render import Bitmap, RenderOptions, UnsupportedGlyph, render
from .rules import EditRule, Suggestion, suggest_edits

VERDICTS = {"accept", "reject", "amend"}


@dataclass
class Decision:
    post_id: int
    sentence_index: int
    verdict: str
    amended_text: Optional[str] = None
    decided_at: str = ""


@dataclass
class ReviewPost:
    post_id: int
    body: str
    suggestions: list[Suggestion] = field(default_factory=list)


@dataclass
class Session:
    session_id: str
    posts: list[ReviewPost] = field(default_factory=list)
    decisions: list[Decision] = field(default_factory=list)
    created_at: str = ""


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat()


class SessionStore:
    """Single-writer session persistence: every mutation is written to a
    temp file and atomically renamed before the response goes out."""

    def __init__(self, path: str):
        self.path = path
        self._lock = threading.Lock()
        if os.path.exists(path):
            self.session = self._load(path)
        else:
            self.session = Session(session_id=uuid.uuid4().hex, created_at=_now())

    @staticmethod
    def _load(path: str) -> Session:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        posts = []
        for p in raw.get("posts", []):
            posts.append(
                ReviewPost(
                    post_id=p["post_id"],
                    body=p["body"],
                    suggestions=[
                        Suggestion(
                            sentence_index=s["sentence_index"],
                            original=s["original"],
                            suggested=s["suggested"],
                            edit_types=set(s.get("edit_types", [])),
                            confidence=s.get("confidence", 0.0),
                        )
                        for s in p.get("suggestions", [])
                    ],
                )
            )
        decisions = [Decision(**d) for d in raw.get("decisions", [])]
        return Session(
            session_id=raw["session_id"],
            posts=posts,
            decisions=decisions,
            created_at=raw.get("created_at", ""),
        )

    def populate(self, posts: list[tuple[int, str]], rules: list[EditRule]) -> None:
        """Compute suggestions eagerly so review is latency-free."""
        if self.session.posts:
            return  # resuming an existing session
        for post_id, body in posts:
            self.session.posts.append(
                ReviewPost(post_id, body, suggest_edits(body, rules))
            )
        self.persist()

    def persist(self) -> None:
        payload = {
            "session_id": self.session.session_id,
            "created_at": self.session.created_at,
            "posts": [
                {
                    "post_id": p.post_id,
                    "body": p.body,
                    "suggestions": [
                        {
                            "sentence_index": s.sentence_index,
                            "original": s.original,
                            "suggested": s.suggested,
                            "edit_types": sorted(t if isinstance(t, str) else t.value for t in s.edit_types),
                            "confidence": s.confidence,
                        }
                        for s in p.suggestions
                    ],
                }
                for p in self.session.posts
            ],
            "decisions": [
                {
                    "post_id": d.post_id,
                    "sentence_index": d.sentence_index,
                    "verdict": d.verdict,
                    "amended_text": d.amended_text,
                    "decided_at": d.decided_at,
                }
                for d in self.session.decisions
            ],
        }
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, ensure_ascii=False, indent=1)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self.path)

    def get_post(self, post_id: int) -> Optional[ReviewPost]:
        for p in self.session.posts:
            if p.post_id == post_id:
                return p
        return None

    def decide(
        self, post_id: int, sentence_index: int, verdict: str, amended_text: Optional[str]
    ) -> Decision:
        with self._lock:
            post = self.get_post(post_id)
            if post is None:
                raise KeyError(f"unknown post {post_id}")
            if not any(s.sentence_index == sentence_index for s in post.suggestions):
                raise KeyError(f"no suggestion at sentence {sentence_index}")
            if verdict not in VERDICTS:
                raise ValueError(f"verdict must be one of {sorted(VERDICTS)}")
            if (verdict == "amend") != (amended_text is not None):
                raise ValueError("amended_text is required exactly when verdict is amend")
            # at most one decision per suggestion: a new one replaces it
            self.session.decisions = [
                d
                for d in self.session.decisions
                if not (d.post_id == post_id and d.sentence_index == sentence_index)
            ]
            decision = Decision(post_id, sentence_index, verdict, amended_text, _now())
            self.session.decisions.append(decision)
            self.persist()
            return decision

    def export(self) -> dict[int, str]:
        """Edited bodies with accepted/amended suggestions applied; a pure
        function of (posts, decisions)."""
        out = {}
        for post in self.session.posts:
            body = post.body
            for s in sorted(post.suggestions, key=lambda s: s.sentence_index):
                decision = next(
                    (
                        d
                        for d in self.session.decisions
                        if d.post_id == post.post_id
                        and d.sentence_index == s.sentence_index
                    ),
                    None,
                )
                if decision is None or decision.verdict == "reject":
                    continue
                replacement = (
                    decision.amended_text
                    if decision.verdict == "amend"
                    else s.suggested
                )
                body = body.replace(s.original, replacement, 1)
            out[post.post_id] = body
        return out


# --- minimal PNG encoding (grayscale, for browser previews) -------------------


def bitmap_to_png(bitmap: Bitmap) -> bytes:
    height, width = bitmap.pixels.shape
    raw = b"".join(
        b"\x00" + bytes((255 if v else 0) for v in row) for row in bitmap.pixels
    )

    def chunk(tag: bytes, data: bytes) -> bytes:
        return (
            struct.pack(">I", len(data))
            + tag
            + data
            + struct.pack(">I", zlib.crc32(tag + data) & 0xFFFFFFFF)
        )

    ihdr = struct.pack(">IIBBBBB", width, height, 8, 0, 0, 0, 0)
    return (
        b"\x89PNG\r\n\x1a\n"
        + chunk(b"IHDR", ihdr)
        + chunk(b"IDAT", zlib.compress(raw, 9))
        + chunk(b"IEND", b"")
    )


# --- HTTP app ------------------------------------------------------------------


class DecisionRequest(BaseModel):
    sentence_index: int
    verdict: str
    amended_text: Optional[str] = None


def create_app(store: SessionStore, static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="latexedit review service")

    @app.get("/api/health")
    def health():
        return {"version": __version__, "session_id": store.session.session_id}

    @app.get("/api/posts")
    def posts():
        return [
            {
                "post_id": p.post_id,
                "body": p.body,
                "suggestion_count": len(p.suggestions),
            }
            for p in store.session.posts
        ]

    @app.get("/api/posts/{post_id}/suggestions")
    def suggestions(post_id: int):
        post = store.get_post(post_id)
        if post is None:
            raise HTTPException(status_code=404, detail="unknown post")
        decided = {
            (d.post_id, d.sentence_index): d for d in store.session.decisions
        }
        out = []
        for s in post.suggestions:
            d = decided.get((post_id, s.sentence_index))
            out.append(
                {
                    "post_id": post_id,
                    "sentence_index": s.sentence_index,
                    "original": s.original,
                    "suggested": s.suggested,
                    "edit_types": sorted(
                        t if isinstance(t, str) else t.value for t in s.edit_types
                    ),
                    "confidence": s.confidence,
                    "status": d.verdict if d else "pending",
                    "amended_text": d.amended_text if d else None,
                }
            )
        return out

    @app.post("/api/posts/{post_id}/decisions")
    def decide(post_id: int, req: DecisionRequest):
        try:
            d = store.decide(post_id, req.sentence_index, req.verdict, req.amended_text)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {
            "post_id": d.post_id,
            "sentence_index": d.sentence_index,
            "verdict": d.verdict,
            "amended_text": d.amended_text,
            "decided_at": d.decided_at,
        }

    @app.get("/api/export")
    def export():
        return {str(pid): body for pid, body in store.export().items()}

    @app.get("/api/posts/{post_id}/preview/{sentence_index}")
    def preview(post_id: int, sentence_index: int):
        post = store.get_post(post_id)
        if post is None:
            raise HTTPException(status_code=404, detail="unknown post")
        suggestion = next(
            (s for s in post.suggestions if s.sentence_index == sentence_index), None
        )
        if suggestion is None:
            raise HTTPException(status_code=404, detail="no suggestion")
        spans = _raw_math_spans(suggestion.suggested)
        if not spans:
            raise HTTPException(status_code=404, detail="no formula to preview")
        try:
            bitmap = render(spans[0], RenderOptions(scale=2))
        except (ParseError, UnsupportedGlyph) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return Response(content=bitmap_to_png(bitmap), media_type="image/png")

    if static_dir and os.path.isdir(static_dir):
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
