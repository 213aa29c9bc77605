import type { AppContext, Route } from "../app.js";
import { CATEGORIES, type Category, type SearchHit, type SearchResponse, type SuggestionEntry } from "../api.js";
import { clear, el } from "../dom.js";

/** The newest query wins: starting a search aborts the previous one, so at
 * most one request is ever in flight and stale results never paint. */
let inflight: AbortController | null = null;

const ALL = "__all__";

export function renderSearch(ctx: AppContext, route: Route): void {
  const initialQ = route.params.get("q") ?? "";
  const initialCategory = route.params.get("category") ?? ALL;

  const input = el("input", {
    name: "q",
    class: "search-input",
    placeholder: "Cari perihal, nomor surat, atau deskripsi…",
    value: initialQ,
  });
  input.value = initialQ;

  const combo = el("select", { name: "category", class: "search-category" });
  combo.append(el("option", { value: ALL }, "Semua kategori"));
  for (const category of CATEGORIES) {
    combo.append(el("option", { value: category }, category));
  }
  combo.value = (CATEGORIES as readonly string[]).includes(initialCategory) ? initialCategory : ALL;

  const submit = el("button", { type: "submit", class: "primary" }, "Cari");
  const syncDisabled = () => {
    submit.disabled = input.value.trim() === "";
  };
  syncDisabled();
  input.addEventListener("input", syncDisabled);

  const form = el("form", { class: "search-form" }, input, combo, submit);
  const results = el("div", { class: "search-results" });
  ctx.screen.append(el("h1", {}, "Pencarian"), form, results);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const q = input.value.trim();
    if (q === "") {
      return;
    }
    ctx.navigate(searchHash(q, combo.value));
  });

  const q = initialQ.trim();
  if (q !== "") {
    runQuery(ctx, results, q, combo.value === ALL ? null : (combo.value as Category));
  }
}

function searchHash(q: string, category: string): string {
  const params = new URLSearchParams({ q });
  if (category !== ALL) {
    params.set("category", category);
  }
  return `#/search?${params}`;
}

function runQuery(ctx: AppContext, results: HTMLElement, q: string, category: Category | null): void {
  inflight?.abort();
  const controller = new AbortController();
  inflight = controller;

  clear(results);
  results.append(el("p", { class: "loading" }, "Mencari…"));

  ctx.api
    .search(q, category, controller.signal)
    .then((response) => {
      if (controller.signal.aborted || !results.isConnected) {
        return;
      }
      clear(results);
      renderSuggestions(ctx, results, q, category, response.suggestions);
      renderHits(results, response);
    })
    .catch((err: unknown) => {
      if (controller.signal.aborted || !results.isConnected) {
        return;
      }
      clear(results);
      results.append(el("p", { class: "form-error" }, err instanceof Error ? err.message : "Pencarian gagal."));
    })
    .finally(() => {
      if (inflight === controller) {
        inflight = null;
      }
    });
}

function renderSuggestions(
  ctx: AppContext,
  results: HTMLElement,
  q: string,
  category: Category | null,
  suggestions: SuggestionEntry[],
): void {
  if (suggestions.length === 0) {
    return;
  }
  const box = el("div", { class: "suggestions" });
  for (const entry of suggestions) {
    const chip = el("button", { class: "dym-chip", "data-token": entry.token }, entry.candidate);
    chip.addEventListener("click", () => {
      const corrected = replaceToken(q, entry.token, entry.candidate);
      ctx.navigate(searchHash(corrected, category ?? ALL));
    });
    box.append(el("span", { class: "dym" }, "did you mean: "), chip);
  }
  results.append(box);
}

function renderHits(results: HTMLElement, response: SearchResponse): void {
  if (response.hits.length === 0) {
    results.append(el("p", { class: "empty" }, "Tidak ada dokumen yang cocok."));
    return;
  }
  const list = el("ol", { class: "hit-list" });
  // Hits arrive already ranked; render them exactly in the order received.
  for (const hit of response.hits) {
    list.append(buildHit(hit));
  }
  results.append(list);
}

function buildHit(hit: SearchHit): HTMLElement {
  const doc = hit.document;
  const terms = hit.matched_terms
    .map((term) => (term.distance === 0 ? term.matched : `${term.query} → ${term.matched} (jarak ${term.distance})`))
    .join(", ");
  return el(
    "li",
    { class: "hit", "data-doc-id": hit.document_id },
    el(
      "div",
      { class: "hit-head" },
      el("a", { href: `#/doc/${encodeURIComponent(hit.document_id)}` }, doc.perihal),
      el("span", { class: "hit-score" }, hit.score.toFixed(2)),
    ),
    el("div", { class: "hit-meta" }, `${doc.kategori} · ${doc.no_surat} · ${doc.uploaded_by}`),
    el("div", { class: "hit-terms" }, terms),
  );
}

/** Swap the misspelled token for the suggested candidate, matching the
 * token case-insensitively on word boundaries so "Gotonk royong" with
 * token "gotonk" becomes "gotong royong". */
export function replaceToken(q: string, token: string, candidate: string): string {
  const lower = q.toLowerCase();
  const needle = token.toLowerCase();
  let from = 0;
  while (from <= lower.length - needle.length) {
    const at = lower.indexOf(needle, from);
    if (at < 0) {
      break;
    }
    const before = at === 0 ? "" : lower[at - 1]!;
    const after = at + needle.length >= lower.length ? "" : lower[at + needle.length]!;
    const isBoundary = (ch: string) => ch === "" || !/[a-z0-9]/i.test(ch);
    if (isBoundary(before) && isBoundary(after)) {
      return q.slice(0, at) + candidate + q.slice(at + needle.length);
    }
    from = at + 1;
  }
  return q;
}
