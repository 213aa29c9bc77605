/** Typed client for the archive HTTP API.
 *
 * Every call goes through request(), which unwraps the server's single
 * error envelope ({"error": {"code", "message"}}) into ApiError. When a
 * request that carried a token comes back 401 the session is gone on the
 * server side (expired or revoked), so an onUnauthorized hook fires and
 * lets the shell drop the stale token and show the login screen. A 401
 * on the login call itself carries no token and is reported inline.
 */

export const CATEGORIES = ["Artikel", "Dokumen Surat Keluar", "Dokumen Surat Masuk", "Gambar"] as const;
export type Category = (typeof CATEGORIES)[number];

export interface DocumentRecord {
  id: string;
  perihal: string;
  no_surat: string;
  deskripsi: string;
  kategori: Category;
  file_name: string;
  file_ref: string;
  content_type: string;
  uploaded_by: string;
  uploaded_at: string;
}

export interface MatchedTerm {
  query: string;
  matched: string;
  distance: number;
}

export interface SearchHit {
  document_id: string;
  score: number;
  matched_terms: MatchedTerm[];
  document: DocumentRecord;
}

export interface SuggestionEntry {
  token: string;
  candidate: string;
  distance: number;
  frequency: number;
}

export interface SearchResponse {
  hits: SearchHit[];
  suggestions: SuggestionEntry[];
}

export interface ExplorePage {
  documents: DocumentRecord[];
  total: number;
}

export interface DocumentFields {
  perihal: string;
  no_surat: string;
  deskripsi: string;
  kategori: Category;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

interface RequestOptions {
  method?: string;
  body?: BodyInit;
  json?: unknown;
  signal?: AbortSignal;
}

export class ApiClient {
  token: string | null = null;

  constructor(
    private readonly baseUrl: string = "",
    private readonly onUnauthorized: (() => void) | null = null,
  ) {}

  async login(username: string, password: string): Promise<{ token: string; role: string }> {
    const out = (await this.request("/api/login", {
      method: "POST",
      json: { username, password },
    })) as { token: string; role: string };
    this.token = out.token;
    return out;
  }

  async explore(category: Category, offset = 0, limit = 20): Promise<ExplorePage> {
    const qs = new URLSearchParams({ offset: String(offset), limit: String(limit) });
    const resp = await this.raw(`/api/explore/${encodeURIComponent(category)}?${qs}`, {});
    const documents = (await resp.json()) as DocumentRecord[];
    const total = Number(resp.headers.get("X-Total-Count") ?? documents.length);
    return { documents, total };
  }

  async search(q: string, category: Category | null, signal?: AbortSignal): Promise<SearchResponse> {
    const qs = new URLSearchParams({ q });
    if (category !== null) {
      qs.set("category", category);
    }
    return (await this.request(`/api/search?${qs}`, { signal })) as SearchResponse;
  }

  async getDocument(id: string): Promise<DocumentRecord> {
    return (await this.request(`/api/documents/${encodeURIComponent(id)}`, {})) as DocumentRecord;
  }

  async createDocument(fields: DocumentFields, file: File): Promise<DocumentRecord> {
    const form = new FormData();
    form.append("perihal", fields.perihal);
    form.append("no_surat", fields.no_surat);
    form.append("deskripsi", fields.deskripsi);
    form.append("kategori", fields.kategori);
    form.append("file", file, file.name);
    return (await this.request("/api/documents", { method: "POST", body: form })) as DocumentRecord;
  }

  /** Replaces the document's metadata wholesale; the server expects the
   * full field set on every update, not a partial patch. */
  async updateDocument(id: string, fields: DocumentFields): Promise<DocumentRecord> {
    return (await this.request(`/api/documents/${encodeURIComponent(id)}`, {
      method: "PUT",
      json: fields,
    })) as DocumentRecord;
  }

  async deleteDocument(id: string): Promise<void> {
    await this.request(`/api/documents/${encodeURIComponent(id)}`, { method: "DELETE" });
  }

  /** Fetch the stored file as a blob; the caller decides what to do with it.
   * A plain <a href> cannot carry the Authorization header, hence this. */
  async fetchFile(id: string): Promise<Blob> {
    const resp = await this.raw(`/api/documents/${encodeURIComponent(id)}/file`, {});
    return await resp.blob();
  }

  private async request(path: string, opts: RequestOptions): Promise<unknown> {
    const resp = await this.raw(path, opts);
    if (resp.status === 204) {
      return null;
    }
    return await resp.json();
  }

  private async raw(path: string, opts: RequestOptions): Promise<Response> {
    const headers = new Headers();
    const hadToken = this.token !== null;
    if (hadToken) {
      headers.set("Authorization", `Bearer ${this.token}`);
    }
    let body = opts.body;
    if (opts.json !== undefined) {
      headers.set("Content-Type", "application/json");
      body = JSON.stringify(opts.json);
    }
    const resp = await fetch(this.baseUrl + path, {
      method: opts.method ?? "GET",
      headers,
      body,
      signal: opts.signal,
    });
    if (!resp.ok) {
      const err = await readEnvelope(resp);
      if (resp.status === 401 && hadToken && this.onUnauthorized !== null) {
        this.token = null;
        this.onUnauthorized();
      }
      throw err;
    }
    return resp;
  }
}

async function readEnvelope(resp: Response): Promise<ApiError> {
  let code = "error";
  let message = `request failed with status ${resp.status}`;
  try {
    const body = (await resp.json()) as { error?: { code?: string; message?: string } };
    if (body.error !== undefined) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
    }
  } catch {
    // non-JSON body: keep the generic message
  }
  return new ApiError(resp.status, code, message);
}
