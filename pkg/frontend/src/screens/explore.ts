import type { AppContext, Route } from "../app.js";
import { CATEGORIES, type Category, type DocumentRecord } from "../api.js";
import { clear, el, formatWaktu } from "../dom.js";

const PAGE_SIZE = 20;

export function renderHome(ctx: AppContext): void {
  const cards = el("div", { class: "root-grid" });
  for (const category of CATEGORIES) {
    cards.append(
      el(
        "a",
        { class: "root-card", href: `#/explore/${encodeURIComponent(category)}` },
        el("h2", {}, category),
        el("p", {}, "Jelajahi arsip dalam kategori ini."),
      ),
    );
  }
  ctx.screen.append(el("h1", {}, "Jelajah Arsip"), cards);
}

export function renderExplore(ctx: AppContext, route: Route): void {
  const category = route.path[1] as Category | undefined;
  if (category === undefined || !(CATEGORIES as readonly string[]).includes(category)) {
    ctx.screen.append(el("p", { class: "empty" }, "Kategori tidak dikenal."));
    return;
  }
  const offset = Math.max(0, Number(route.params.get("offset") ?? "0") || 0);

  const body = el("div", { class: "explore" }, el("p", { class: "loading" }, "Memuat…"));
  ctx.screen.append(el("h1", {}, category), body);

  ctx.api
    .explore(category, offset, PAGE_SIZE)
    .then((page) => {
      if (!body.isConnected) {
        return;
      }
      clear(body);
      if (page.total === 0) {
        body.append(el("p", { class: "empty" }, "Belum ada dokumen dalam kategori ini."));
        return;
      }
      body.append(buildTable(ctx, page.documents));
      body.append(buildPager(category, offset, page.total));
    })
    .catch((err: unknown) => {
      if (!body.isConnected) {
        return;
      }
      clear(body);
      body.append(el("p", { class: "form-error" }, err instanceof Error ? err.message : "Gagal memuat."));
    });
}

function buildTable(ctx: AppContext, documents: DocumentRecord[]): HTMLTableElement {
  const rows = documents.map((doc) => {
    const title = el("a", { href: `#/doc/${encodeURIComponent(doc.id)}` }, doc.perihal);
    const download = el("button", { class: "linklike", "data-download": doc.id }, "Unduh");
    download.addEventListener("click", () => {
      void downloadDocumentFile(ctx, doc);
    });
    return el(
      "tr",
      {},
      el("td", {}, title),
      el("td", {}, doc.no_surat),
      el("td", {}, formatWaktu(doc.uploaded_at)),
      el("td", {}, doc.uploaded_by),
      el("td", {}, download),
    );
  });
  return el(
    "table",
    { class: "doc-table" },
    el(
      "thead",
      {},
      el(
        "tr",
        {},
        el("th", {}, "Perihal"),
        el("th", {}, "No. Surat"),
        el("th", {}, "Diunggah"),
        el("th", {}, "Oleh"),
        el("th", {}, "Berkas"),
      ),
    ),
    el("tbody", {}, ...rows),
  );
}

function buildPager(category: Category, offset: number, total: number): HTMLElement {
  const pager = el("div", { class: "pager" });
  const page = Math.floor(offset / PAGE_SIZE) + 1;
  const pages = Math.max(1, Math.ceil(total / PAGE_SIZE));
  const link = (label: string, targetOffset: number, enabled: boolean) => {
    if (!enabled) {
      return el("span", { class: "pager-off" }, label);
    }
    const href = `#/explore/${encodeURIComponent(category)}?offset=${targetOffset}`;
    return el("a", { href, class: "pager-link" }, label);
  };
  pager.append(
    link("‹ Sebelumnya", Math.max(0, offset - PAGE_SIZE), offset > 0),
    el("span", { class: "pager-status" }, `Halaman ${page} dari ${pages} (${total} dokumen)`),
    link("Berikutnya ›", offset + PAGE_SIZE, offset + PAGE_SIZE < total),
  );
  return pager;
}

export async function downloadDocumentFile(ctx: AppContext, doc: DocumentRecord): Promise<void> {
  const blob = await ctx.api.fetchFile(doc.id);
  const url = URL.createObjectURL(blob);
  const anchor = el("a", { href: url, download: doc.file_name });
  document.body.append(anchor);
  anchor.click();
  anchor.remove();
  URL.revokeObjectURL(url);
}
