/** Character-level diff for highlighting what a suggestion changes.
 *
 * Computed client-side so the service stays presentation-free.
 */

export type OpKind = "equal" | "delete" | "insert";

export interface DiffOp {
  kind: OpKind;
  text: string;
}

/** Longest-common-subsequence edit script between two strings. */
export function charDiff(a: string, b: string): DiffOp[] {
  const n = a.length;
  const m = b.length;
  // lcs[i][j] = LCS length of a[i:], b[j:]
  const lcs: Int32Array[] = [];
  for (let i = 0; i <= n; i++) lcs.push(new Int32Array(m + 1));
  for (let i = n - 1; i >= 0; i--) {
    for (let j = m - 1; j >= 0; j--) {
      lcs[i][j] =
        a[i] === b[j] ? lcs[i + 1][j + 1] + 1 : Math.max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  const ops: DiffOp[] = [];
  const push = (kind: OpKind, text: string) => {
    const last = ops[ops.length - 1];
    if (last && last.kind === kind) last.text += text;
    else ops.push({ kind, text });
  };
  let i = 0;
  let j = 0;
  while (i < n && j < m) {
    if (a[i] === b[j]) {
      push("equal", a[i]);
      i++;
      j++;
    } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
      push("delete", a[i]);
      i++;
    } else {
      push("insert", b[j]);
      j++;
    }
  }
  if (i < n) push("delete", a.slice(i));
  if (j < m) push("insert", b.slice(j));
  return ops;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Original text with removed characters wrapped in <del>. */
export function highlightOriginal(ops: DiffOp[]): string {
  return ops
    .filter((op) => op.kind !== "insert")
    .map((op) =>
      op.kind === "delete" ? `<del>${escapeHtml(op.text)}</del>` : escapeHtml(op.text),
    )
    .join("");
}

/** Suggested text with added characters wrapped in <ins>. */
export function highlightSuggested(ops: DiffOp[]): string {
  return ops
    .filter((op) => op.kind !== "delete")
    .map((op) =>
      op.kind === "insert" ? `<ins>${escapeHtml(op.text)}</ins>` : escapeHtml(op.text),
    )
    .join("");
}
