/** Shared types mirroring the review service's JSON payloads. */

export type Verdict = "accept" | "reject" | "amend";
export type Status = "pending" | Verdict;

export interface PostSummary {
  post_id: number;
  body: string;
  suggestion_count: number;
}

export interface SuggestionView {
  post_id: number;
  sentence_index: number;
  original: string;
  suggested: string;
  edit_types: string[];
  confidence: number;
  status: Status;
  amended_text: string | null;
}

export interface Decision {
  post_id: number;
  sentence_index: number;
  verdict: Verdict;
  amended_text: string | null;
  decided_at: string;
}

export interface Health {
  version: string;
  session_id: string;
}
