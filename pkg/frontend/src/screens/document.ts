import type { AppContext, Route } from "../app.js";
import { clear, el, formatWaktu } from "../dom.js";
import { downloadDocumentFile } from "./explore.js";

export function renderDocument(ctx: AppContext, route: Route): void {
  const id = route.path[1];
  const body = el("div", { class: "doc-view" }, el("p", { class: "loading" }, "Memuat…"));
  ctx.screen.append(body);
  if (id === undefined) {
    clear(body);
    body.append(el("p", { class: "empty" }, "Dokumen tidak ditemukan."));
    return;
  }

  ctx.api
    .getDocument(id)
    .then((doc) => {
      if (!body.isConnected) {
        return;
      }
      clear(body);
      const download = el("button", { class: "primary" }, `Unduh ${doc.file_name}`);
      download.addEventListener("click", () => {
        void downloadDocumentFile(ctx, doc);
      });
      const field = (label: string, value: string) =>
        el("div", { class: "field-row" }, el("dt", {}, label), el("dd", {}, value));
      body.append(
        el("h1", {}, doc.perihal),
        el(
          "dl",
          { class: "doc-fields" },
          field("No. Surat", doc.no_surat),
          field("Kategori", doc.kategori),
          field("Deskripsi", doc.deskripsi === "" ? "—" : doc.deskripsi),
          field("Jenis berkas", doc.content_type),
          field("Diunggah", `${formatWaktu(doc.uploaded_at)} oleh ${doc.uploaded_by}`),
        ),
        download,
        el("p", {}, el("a", { href: `#/explore/${encodeURIComponent(doc.kategori)}` }, "‹ Kembali ke kategori")),
      );
    })
    .catch((err: unknown) => {
      if (!body.isConnected) {
        return;
      }
      clear(body);
      body.append(el("p", { class: "form-error" }, err instanceof Error ? err.message : "Gagal memuat."));
    });
}
