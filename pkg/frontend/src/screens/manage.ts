import type { AppContext, Route } from "../app.js";
import { ApiError, CATEGORIES, type Category, type DocumentFields, type DocumentRecord } from "../api.js";
import { clear, el, formatWaktu } from "../dom.js";

const LIST_LIMIT = 50;

/** Admin-only screen: upload new documents, edit metadata, delete.
 * Staff never see the menu entry and the router bounces them home, so
 * everything here can assume an Admin session. */
export function renderManage(ctx: AppContext, route: Route): void {
  let editing: DocumentRecord | null = null;

  const formTitle = el("h2", {}, "Unggah dokumen");
  const errorBox = el("p", { class: "form-error", role: "alert", hidden: "" });

  const perihal = el("input", { name: "perihal", placeholder: "Perihal" });
  const noSurat = el("input", { name: "no_surat", placeholder: "Nomor surat" });
  const deskripsi = el("textarea", { name: "deskripsi", placeholder: "Deskripsi (opsional)", rows: "3" });
  const kategori = el("select", { name: "kategori" });
  for (const category of CATEGORIES) {
    kategori.append(el("option", { value: category }, category));
  }
  const file = el("input", { name: "file", type: "file" });
  const fileRow = el("label", { class: "field" }, "Berkas", file);
  const submit = el("button", { type: "submit", class: "primary" }, "Unggah");
  const cancel = el("button", { type: "button", hidden: "" }, "Batal");

  const form = el(
    "form",
    { class: "manage-form" },
    formTitle,
    el("label", { class: "field" }, "Perihal", perihal),
    el("label", { class: "field" }, "Nomor surat", noSurat),
    el("label", { class: "field" }, "Deskripsi", deskripsi),
    el("label", { class: "field" }, "Kategori", kategori),
    fileRow,
    errorBox,
    el("div", { class: "form-actions" }, submit, cancel),
  );

  const listCategory = el("select", { name: "list-category", class: "search-category" });
  for (const category of CATEGORIES) {
    listCategory.append(el("option", { value: category }, category));
  }
  const initial = route.params.get("category");
  if (initial !== null && (CATEGORIES as readonly string[]).includes(initial)) {
    listCategory.value = initial;
  }
  const listBox = el("div", { class: "manage-list" });

  ctx.screen.append(
    el("h1", {}, "Kelola Arsip"),
    form,
    el("h2", {}, "Dokumen tersimpan"),
    el("label", { class: "field-inline" }, "Kategori ", listCategory),
    listBox,
  );

  function showError(message: string): void {
    errorBox.textContent = message;
    errorBox.removeAttribute("hidden");
  }

  function resetForm(): void {
    editing = null;
    formTitle.textContent = "Unggah dokumen";
    submit.textContent = "Unggah";
    cancel.setAttribute("hidden", "");
    fileRow.removeAttribute("hidden");
    perihal.value = "";
    noSurat.value = "";
    deskripsi.value = "";
    kategori.value = CATEGORIES[0];
    file.value = "";
    errorBox.setAttribute("hidden", "");
  }

  function beginEdit(doc: DocumentRecord): void {
    editing = doc;
    formTitle.textContent = `Ubah: ${doc.perihal}`;
    submit.textContent = "Simpan perubahan";
    cancel.removeAttribute("hidden");
    fileRow.setAttribute("hidden", "");
    perihal.value = doc.perihal;
    noSurat.value = doc.no_surat;
    deskripsi.value = doc.deskripsi;
    kategori.value = doc.kategori;
    errorBox.setAttribute("hidden", "");
    if (typeof form.scrollIntoView === "function") {
      form.scrollIntoView();
    }
  }

  cancel.addEventListener("click", resetForm);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    errorBox.setAttribute("hidden", "");

    const fields: DocumentFields = {
      perihal: perihal.value.trim(),
      no_surat: noSurat.value.trim(),
      deskripsi: deskripsi.value.trim(),
      kategori: kategori.value as Category,
    };
    const missing: string[] = [];
    if (fields.perihal === "") {
      missing.push("perihal");
    }
    if (fields.no_surat === "") {
      missing.push("nomor surat");
    }
    const chosen = file.files?.[0] ?? null;
    if (editing === null && chosen === null) {
      missing.push("berkas");
    }
    if (missing.length > 0) {
      showError(`Wajib diisi: ${missing.join(", ")}.`);
      return;
    }

    submit.disabled = true;
    const action =
      editing === null
        ? ctx.api.createDocument(fields, chosen as File)
        : ctx.api.updateDocument(editing.id, fields);
    action
      .then((doc) => {
        ctx.notice(editing === null ? `Dokumen "${doc.perihal}" tersimpan.` : `Perubahan "${doc.perihal}" tersimpan.`);
        listCategory.value = doc.kategori;
        resetForm();
        ctx.navigate(`#/manage?category=${encodeURIComponent(doc.kategori)}`);
      })
      .catch((err: unknown) => {
        if (err instanceof ApiError && err.status === 409) {
          showError("Nomor surat itu sudah dipakai dokumen lain dalam kategori yang sama.");
        } else {
          showError(err instanceof Error ? err.message : "Gagal menyimpan.");
        }
      })
      .finally(() => {
        submit.disabled = false;
      });
  });

  function loadList(): void {
    clear(listBox);
    listBox.append(el("p", { class: "loading" }, "Memuat…"));
    const category = listCategory.value as Category;
    ctx.api
      .explore(category, 0, LIST_LIMIT)
      .then((page) => {
        if (!listBox.isConnected) {
          return;
        }
        clear(listBox);
        if (page.total === 0) {
          listBox.append(el("p", { class: "empty" }, "Belum ada dokumen dalam kategori ini."));
          return;
        }
        const rows = page.documents.map((doc) => buildRow(doc));
        listBox.append(
          el(
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
                el("th", {}, "Aksi"),
              ),
            ),
            el("tbody", {}, ...rows),
          ),
        );
        if (page.total > page.documents.length) {
          listBox.append(
            el("p", { class: "hint" }, `Menampilkan ${page.documents.length} dari ${page.total} dokumen terbaru.`),
          );
        }
      })
      .catch((err: unknown) => {
        if (!listBox.isConnected) {
          return;
        }
        clear(listBox);
        listBox.append(el("p", { class: "form-error" }, err instanceof Error ? err.message : "Gagal memuat."));
      });
  }

  function buildRow(doc: DocumentRecord): HTMLElement {
    const edit = el("button", { class: "linklike", "data-edit": doc.id }, "Ubah");
    edit.addEventListener("click", () => beginEdit(doc));
    const remove = el("button", { class: "linklike danger", "data-delete": doc.id }, "Hapus");
    remove.addEventListener("click", () => {
      if (!window.confirm(`Hapus dokumen "${doc.perihal}"?`)) {
        return;
      }
      ctx.api
        .deleteDocument(doc.id)
        .then(() => {
          ctx.notice(`Dokumen "${doc.perihal}" dihapus.`);
          ctx.navigate(`#/manage?category=${encodeURIComponent(listCategory.value)}`);
        })
        .catch((err: unknown) => {
          showError(err instanceof Error ? err.message : "Gagal menghapus.");
        });
    });
    return el(
      "tr",
      { "data-row": doc.id },
      el("td", {}, el("a", { href: `#/doc/${encodeURIComponent(doc.id)}` }, doc.perihal)),
      el("td", {}, doc.no_surat),
      el("td", {}, formatWaktu(doc.uploaded_at)),
      el("td", {}, edit, remove),
    );
  }

  listCategory.addEventListener("change", loadList);
  loadList();
}
