import { afterEach, describe, expect, it } from "vitest";
import { clearSession, loadSession, saveSession } from "../src/session.js";

afterEach(() => {
  sessionStorage.clear();
});

describe("session storage", () => {
  it("round-trips a session through sessionStorage", () => {
    saveSession({ token: "tok-1", role: "Admin", username: "admin" });
    expect(loadSession()).toEqual({ token: "tok-1", role: "Admin", username: "admin" });
    expect(sessionStorage.getItem("arsip.session")).toContain("tok-1");
  });

  it("returns null when nothing is stored", () => {
    expect(loadSession()).toBeNull();
  });

  it("drops corrupt entries instead of returning garbage", () => {
    sessionStorage.setItem("arsip.session", "{not json");
    expect(loadSession()).toBeNull();
    expect(sessionStorage.getItem("arsip.session")).toBeNull();
  });

  it("rejects entries with an unknown role", () => {
    sessionStorage.setItem("arsip.session", JSON.stringify({ token: "t", role: "Root", username: "x" }));
    expect(loadSession()).toBeNull();
  });

  it("clearSession removes the stored session", () => {
    saveSession({ token: "tok-2", role: "Staff", username: "staf1" });
    clearSession();
    expect(loadSession()).toBeNull();
  });
});
