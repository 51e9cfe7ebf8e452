/** Thin typed client for the review service's HTTP endpoints. */

import type { Decision, Health, PostSummary, SuggestionView, Verdict } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function asJson<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = (await resp.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  health(): Promise<Health> {
    return this.fetchFn(`${this.baseUrl}/api/health`).then((r) => asJson<Health>(r));
  }

  posts(): Promise<PostSummary[]> {
    return this.fetchFn(`${this.baseUrl}/api/posts`).then((r) => asJson<PostSummary[]>(r));
  }

  suggestions(postId: number): Promise<SuggestionView[]> {
    return this.fetchFn(`${this.baseUrl}/api/posts/${postId}/suggestions`).then((r) =>
      asJson<SuggestionView[]>(r),
    );
  }

  decide(
    postId: number,
    sentenceIndex: number,
    verdict: Verdict,
    amendedText?: string,
  ): Promise<Decision> {
    const payload: Record<string, unknown> = {
      sentence_index: sentenceIndex,
      verdict,
    };
    if (amendedText !== undefined) payload.amended_text = amendedText;
    return this.fetchFn(`${this.baseUrl}/api/posts/${postId}/decisions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    }).then((r) => asJson<Decision>(r));
  }

  exportAll(): Promise<Record<string, string>> {
    return this.fetchFn(`${this.baseUrl}/api/export`).then((r) =>
      asJson<Record<string, string>>(r),
    );
  }

  previewUrl(postId: number, sentenceIndex: number): string {
    return `${this.baseUrl}/api/posts/${postId}/preview/${sentenceIndex}`;
  }
}
