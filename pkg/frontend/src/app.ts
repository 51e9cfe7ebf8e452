/** DOM wiring: render the suggestion list, handle clicks and the
 * keyboard review path (j/k move, a accept, r reject, e amend, x export).
 */

import { ApiClient } from "./api.js";
import { charDiff, escapeHtml, highlightOriginal, highlightSuggested } from "./diff.js";
import { ReviewStore } from "./store.js";
import type { SuggestionView } from "./types.js";

const STATUS_LABELS: Record<string, string> = {
  pending: "Pending",
  accept: "Accepted",
  reject: "Rejected",
  amend: "Amended",
};

export class App {
  private readonly api: ApiClient;
  readonly store: ReviewStore;

  constructor(
    private readonly root: HTMLElement,
    baseUrl = "",
  ) {
    this.api = new ApiClient(baseUrl);
    this.store = new ReviewStore(this.api);
  }

  async start(): Promise<void> {
    try {
      await this.store.load();
    } catch (err) {
      this.root.innerHTML = `<p class="error">service unreachable: ${escapeHtml(String(err))}</p>`;
      return;
    }
    this.render();
    await this.renderFooter();
    document.addEventListener("keydown", (ev) => this.onKey(ev));
  }

  private onKey(ev: KeyboardEvent): void {
    if (ev.target instanceof HTMLTextAreaElement || ev.target instanceof HTMLInputElement) {
      return; // typing an amendment
    }
    const n = this.store.views.length;
    if (n === 0) return;
    switch (ev.key) {
      case "j":
        this.store.focusIndex = (this.store.focusIndex + 1) % n;
        break;
      case "k":
        this.store.focusIndex = (this.store.focusIndex + n - 1) % n;
        break;
      case "a":
        void this.decide(this.store.focusIndex, "accept");
        return;
      case "r":
        void this.decide(this.store.focusIndex, "reject");
        return;
      case "e":
        this.openAmend(this.store.focusIndex);
        return;
      case "x":
        void this.download();
        return;
      default:
        return;
    }
    this.render();
  }

  private async decide(index: number, verdict: "accept" | "reject" | "amend", text?: string) {
    const outcome = await this.store.decide(index, verdict, text);
    this.render();
    if (!outcome.ok) this.toast(outcome.error ?? "decision failed");
  }

  private openAmend(index: number): void {
    const card = this.root.querySelector(`[data-index="${index}"]`);
    const box = card?.querySelector<HTMLTextAreaElement>("textarea");
    if (box) {
      box.hidden = false;
      box.focus();
    }
  }

  private async download(): Promise<void> {
    const bodies = await this.store.exportSession();
    const blob = new Blob([JSON.stringify(bodies, null, 1)], { type: "application/json" });
    const link = document.createElement("a");
    link.href = URL.createObjectURL(blob);
    link.download = "edited-posts.json";
    link.click();
    URL.revokeObjectURL(link.href);
  }

  private toast(message: string): void {
    const el = document.createElement("div");
    el.className = "toast";
    el.textContent = message;
    document.body.appendChild(el);
    setTimeout(() => el.remove(), 4000);
  }

  private card(view: SuggestionView, index: number): string {
    const ops = charDiff(view.original, view.suggested);
    const focused = index === this.store.focusIndex ? " focused" : "";
    const preview = this.api.previewUrl(view.post_id, view.sentence_index);
    return `
      <article class="card ${view.status}${focused}" data-index="${index}">
        <header>
          <span class="post">post ${view.post_id} · sentence ${view.sentence_index}</span>
          <span class="status">${STATUS_LABELS[view.status]}</span>
        </header>
        <p class="original">${highlightOriginal(ops)}</p>
        <p class="suggested">${highlightSuggested(ops)}</p>
        <img class="preview" src="${preview}" alt="" loading="lazy"
             onerror="this.style.display='none'">
        <div class="actions">
          <button data-act="accept">Accept (a)</button>
          <button data-act="reject">Reject (r)</button>
          <button data-act="amend">Amend (e)</button>
        </div>
        <textarea hidden placeholder="amended sentence">${escapeHtml(
          view.amended_text ?? view.suggested,
        )}</textarea>
      </article>`;
  }

  render(): void {
    if (this.store.views.length === 0) {
      this.root.innerHTML = `<p class="empty">no suggestions in this session</p>`;
      return;
    }
    this.root.innerHTML = `
      <div class="summary">${this.store.pendingCount} pending ·
        <button id="export">Export (x)</button></div>
      ${this.store.views.map((v, i) => this.card(v, i)).join("")}`;
    this.root.querySelector("#export")?.addEventListener("click", () => void this.download());
    this.root.querySelectorAll<HTMLElement>(".card").forEach((card) => {
      const index = Number(card.dataset.index);
      card.addEventListener("click", () => {
        this.store.focusIndex = index;
      });
      card.querySelectorAll<HTMLButtonElement>("button[data-act]").forEach((btn) => {
        btn.addEventListener("click", (ev) => {
          ev.stopPropagation();
          const act = btn.dataset.act as "accept" | "reject" | "amend";
          if (act === "amend") {
            const box = card.querySelector<HTMLTextAreaElement>("textarea");
            if (box?.hidden) {
              this.openAmend(index);
              return;
            }
            void this.decide(index, "amend", box?.value);
            return;
          }
          void this.decide(index, act);
        });
      });
      card.querySelector<HTMLTextAreaElement>("textarea")?.addEventListener("keydown", (ev) => {
        if (ev.key === "Enter" && !ev.shiftKey) {
          ev.preventDefault();
          void this.decide(index, "amend", (ev.target as HTMLTextAreaElement).value);
        }
      });
    });
  }

  private async renderFooter(): Promise<void> {
    const footer = document.querySelector("footer");
    if (!footer) return;
    try {
      const health = await this.api.health();
      footer.textContent = `latexedit ${health.version} · session ${health.session_id.slice(0, 8)}`;
    } catch {
      footer.textContent = "service unreachable";
    }
  }
}
