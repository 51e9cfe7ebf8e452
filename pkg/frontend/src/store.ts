/** Client-side review state: one flat list of suggestion views, mutated
 * optimistically and rolled back when the service rejects a decision.
 * A reload rebuilds everything from the service, so after any sequence
 * of decisions the store equals the persisted session.
 */

import type { ApiClient } from "./api.js";
import type { Status, SuggestionView, Verdict } from "./types.js";

export interface DecisionOutcome {
  ok: boolean;
  error?: string;
}

export class ReviewStore {
  views: SuggestionView[] = [];
  focusIndex = 0;

  constructor(private readonly api: ApiClient) {}

  /** Fetch every post's suggestions; the full client state comes from
   * the service, never from anything cached locally. */
  async load(): Promise<void> {
    const posts = await this.api.posts();
    const all: SuggestionView[] = [];
    for (const post of posts) {
      if (post.suggestion_count === 0) continue;
      all.push(...(await this.api.suggestions(post.post_id)));
    }
    this.views = all;
    this.focusIndex = Math.max(0, this.firstPending());
  }

  firstPending(from = 0): number {
    for (let k = 0; k < this.views.length; k++) {
      const i = (from + k) % this.views.length;
      if (this.views[i].status === "pending") return i;
    }
    return -1;
  }

  statusOf(index: number): Status {
    return this.views[index].status;
  }

  /** Optimistically apply a verdict; revert to the previous state if the
   * service refuses it. Amend requires non-empty text (client-side). */
  async decide(index: number, verdict: Verdict, amendedText?: string): Promise<DecisionOutcome> {
    const view = this.views[index];
    if (!view) return { ok: false, error: "no such suggestion" };
    if (verdict === "amend" && !amendedText?.trim()) {
      return { ok: false, error: "amended text is required" };
    }
    const previous: Status = view.status;
    const previousText = view.amended_text;
    view.status = verdict;
    view.amended_text = verdict === "amend" ? (amendedText as string) : null;
    try {
      await this.api.decide(
        view.post_id,
        view.sentence_index,
        verdict,
        verdict === "amend" ? amendedText : undefined,
      );
    } catch (err) {
      view.status = previous;
      view.amended_text = previousText;
      return { ok: false, error: err instanceof Error ? err.message : String(err) };
    }
    const next = this.firstPending(index + 1);
    if (next >= 0) this.focusIndex = next;
    return { ok: true };
  }

  exportSession(): Promise<Record<string, string>> {
    return this.api.exportAll();
  }

  get pendingCount(): number {
    return this.views.filter((v) => v.status === "pending").length;
  }
}
