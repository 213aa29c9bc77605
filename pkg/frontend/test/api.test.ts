import { afterEach, describe, expect, it, vi } from "vitest";
import { ApiClient, ApiError } from "../src/api.js";

function jsonResponse(body: unknown, status = 200, headers: Record<string, string> = {}): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json", ...headers },
  });
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("ApiClient", () => {
  it("unwraps the error envelope into ApiError", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => jsonResponse({ error: { code: "invalid_category", message: "unknown category: X" } }, 400)),
    );
    const api = new ApiClient();
    api.token = "tok";
    const err = await api.explore("Artikel" as never).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(400);
    expect((err as ApiError).code).toBe("invalid_category");
    expect((err as ApiError).message).toContain("unknown category");
  });

  it("fires onUnauthorized and drops the token when a token-bearing call gets 401", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => jsonResponse({ error: { code: "unauthorized", message: "expired" } }, 401)),
    );
    const onUnauthorized = vi.fn();
    const api = new ApiClient("", onUnauthorized);
    api.token = "stale-token";
    await expect(api.getDocument("doc-1")).rejects.toBeInstanceOf(ApiError);
    expect(onUnauthorized).toHaveBeenCalledTimes(1);
    expect(api.token).toBeNull();
  });

  it("does not fire onUnauthorized for a failed login (no token was attached)", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => jsonResponse({ error: { code: "unauthorized", message: "invalid credentials" } }, 401)),
    );
    const onUnauthorized = vi.fn();
    const api = new ApiClient("", onUnauthorized);
    await expect(api.login("admin", "salah")).rejects.toBeInstanceOf(ApiError);
    expect(onUnauthorized).not.toHaveBeenCalled();
  });

  it("sends Bearer token and query parameters on search", async () => {
    const fetchMock = vi.fn(async (_input: string, _init?: RequestInit) =>
      jsonResponse({ hits: [], suggestions: [] }),
    );
    vi.stubGlobal("fetch", fetchMock);
    const api = new ApiClient();
    api.token = "tok-7";
    await api.search("gotong royong", "Artikel");
    const [url, init] = fetchMock.mock.calls[0]!;
    expect(url).toBe("/api/search?q=gotong+royong&category=Artikel");
    expect(new Headers(init?.headers).get("Authorization")).toBe("Bearer tok-7");
  });

  it("omits the category parameter when searching all roots", async () => {
    const fetchMock = vi.fn(async (_input: string, _init?: RequestInit) =>
      jsonResponse({ hits: [], suggestions: [] }),
    );
    vi.stubGlobal("fetch", fetchMock);
    const api = new ApiClient();
    api.token = "tok-7";
    await api.search("undangan", null);
    const [url] = fetchMock.mock.calls[0]!;
    expect(url).toBe("/api/search?q=undangan");
  });

  it("reads the total from the X-Total-Count header on explore", async () => {
    vi.stubGlobal(
      "fetch",
      vi.fn(async () => jsonResponse([], 200, { "X-Total-Count": "42" })),
    );
    const api = new ApiClient();
    api.token = "tok";
    const page = await api.explore("Gambar");
    expect(page.total).toBe(42);
    expect(page.documents).toEqual([]);
  });

  it("posts multipart form parts under the documented names", async () => {
    const fetchMock = vi.fn(async (_input: string, _init?: RequestInit) => jsonResponse({ id: "doc-1" }, 201));
    vi.stubGlobal("fetch", fetchMock);
    const api = new ApiClient();
    api.token = "tok";
    const file = new File(["%PDF-1.4"], "laporan.pdf", { type: "application/pdf" });
    await api.createDocument(
      { perihal: "Laporan", no_surat: "089/XI/2015", deskripsi: "", kategori: "Artikel" },
      file,
    );
    const [url, init] = fetchMock.mock.calls[0]!;
    expect(url).toBe("/api/documents");
    const body = init?.body as FormData;
    expect(body).toBeInstanceOf(FormData);
    expect(Array.from(body.keys()).sort()).toEqual(["deskripsi", "file", "kategori", "no_surat", "perihal"]);
    expect((body.get("file") as File).name).toBe("laporan.pdf");
  });
});
