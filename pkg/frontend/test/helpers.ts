/** Shared plumbing for the DOM tests: mount the app against a FakeArchive,
 * poll the document until a condition holds, and drive form controls the
 * way a user would. */

import { vi } from "vitest";
import { startApp, type AppContext } from "../src/app.js";
import { FakeArchive } from "./fake-api.js";

export interface Harness {
  ctx: AppContext;
  fake: FakeArchive;
  mount: HTMLElement;
}

const active: AppContext[] = [];

export function mountApp(fake: FakeArchive): Harness {
  vi.stubGlobal("fetch", fake.fetch);
  const mount = document.createElement("div");
  document.body.append(mount);
  const ctx = startApp(mount);
  active.push(ctx);
  return { ctx, fake, mount };
}

export function teardownApps(): void {
  for (const ctx of active) {
    ctx.dispose();
  }
  active.length = 0;
  document.body.innerHTML = "";
  sessionStorage.clear();
  window.location.hash = "";
  vi.unstubAllGlobals();
}

export async function waitFor<T>(probe: () => T | null | undefined | false, what = "condition", timeoutMs = 3000): Promise<T> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    const got = probe();
    if (got !== null && got !== undefined && got !== false) {
      return got;
    }
    if (Date.now() > deadline) {
      throw new Error(`timed out waiting for ${what}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 5));
  }
}

export async function settle(turns = 6): Promise<void> {
  for (let i = 0; i < turns; i++) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

export function query<T extends Element>(mount: HTMLElement, selector: string): T | null {
  return mount.querySelector(selector) as T | null;
}

export function queryAll<T extends Element>(mount: HTMLElement, selector: string): T[] {
  return Array.from(mount.querySelectorAll(selector)) as T[];
}

export function setValue(input: HTMLInputElement | HTMLTextAreaElement | HTMLSelectElement, value: string): void {
  input.value = value;
  input.dispatchEvent(new Event("input", { bubbles: true }));
  input.dispatchEvent(new Event("change", { bubbles: true }));
}

export function attachFile(input: HTMLInputElement, file: File): void {
  Object.defineProperty(input, "files", { value: [file], configurable: true });
  input.dispatchEvent(new Event("change", { bubbles: true }));
}

export function submitForm(form: HTMLFormElement): void {
  form.dispatchEvent(new Event("submit", { bubbles: true, cancelable: true }));
}

export async function loginAs(h: Harness, username: string, password: string): Promise<void> {
  const form = await waitFor(() => query<HTMLFormElement>(h.mount, "form.login-form"), "login form");
  setValue(query<HTMLInputElement>(h.mount, "input[name=username]")!, username);
  setValue(query<HTMLInputElement>(h.mount, "input[name=password]")!, password);
  submitForm(form);
  await waitFor(() => query(h.mount, "nav.topnav .whoami"), "logged-in nav");
}

export function findByText(mount: HTMLElement, selector: string, needle: string): Element | null {
  for (const node of Array.from(mount.querySelectorAll(selector))) {
    if ((node.textContent ?? "").includes(needle)) {
      return node;
    }
  }
  return null;
}
