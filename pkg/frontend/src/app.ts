/** Application shell: hash router, navigation bar, session lifecycle.
 *
 * Every screen renders from the current hash plus the stored session and
 * nothing else, so a full page reload lands the user back on the same
 * screen. When any authenticated call answers 401 the stale session is
 * dropped and the login screen takes over.
 */

import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";
import { clearSession, loadSession, type ClientSession } from "./session.js";
import { renderExplore, renderHome } from "./screens/explore.js";
import { renderDocument } from "./screens/document.js";
import { renderLogin } from "./screens/login.js";
import { renderManage } from "./screens/manage.js";
import { renderSearch } from "./screens/search.js";

export interface Route {
  path: string[];
  params: URLSearchParams;
}

export interface AppContext {
  api: ApiClient;
  session: ClientSession | null;
  screen: HTMLElement;
  navigate(hash: string): void;
  refreshSession(): void;
  notice(message: string): void;
  /** Detach the router from the window; used when tearing the app down. */
  dispose(): void;
}

export function parseHash(hash: string): Route {
  let raw = hash.startsWith("#") ? hash.slice(1) : hash;
  if (!raw.startsWith("/")) {
    raw = "/" + raw;
  }
  const qIndex = raw.indexOf("?");
  const params = new URLSearchParams(qIndex >= 0 ? raw.slice(qIndex + 1) : "");
  const pathPart = qIndex >= 0 ? raw.slice(0, qIndex) : raw;
  const path = pathPart
    .split("/")
    .filter((piece) => piece.length > 0)
    .map(decodeURIComponent);
  return { path, params };
}

export function startApp(mount: HTMLElement, baseUrl = ""): AppContext {
  let pendingNotice: string | null = null;

  const api = new ApiClient(baseUrl, () => {
    clearSession();
    ctx.session = null;
    pendingNotice = "Sesi Anda telah berakhir. Silakan masuk kembali.";
    ctx.navigate("#/login");
  });

  const noticeBar = el("div", { class: "notice", hidden: "" });
  const navBar = el("nav", { class: "topnav" });
  const screen = el("main", { class: "screen" });
  clear(mount);
  mount.append(navBar, noticeBar, screen);

  const ctx: AppContext = {
    api,
    session: loadSession(),
    screen,
    navigate(hash: string) {
      if (window.location.hash === hash) {
        render();
      } else {
        window.location.hash = hash;
      }
    },
    refreshSession() {
      ctx.session = loadSession();
      ctx.api.token = ctx.session?.token ?? null;
    },
    notice(message: string) {
      pendingNotice = message;
    },
    dispose() {
      window.removeEventListener("hashchange", render);
    },
  };
  ctx.api.token = ctx.session?.token ?? null;

  function renderNav(): void {
    clear(navBar);
    navBar.append(el("span", { class: "brand" }, "Arsip Dokumen"));
    if (ctx.session === null) {
      return;
    }
    const links: [string, string][] = [
      ["#/", "Beranda"],
      ["#/search", "Pencarian"],
    ];
    if (ctx.session.role === "Admin") {
      links.push(["#/manage", "Kelola Arsip"]);
    }
    for (const [hash, label] of links) {
      navBar.append(el("a", { href: hash, class: "navlink" }, label));
    }
    const who = el("span", { class: "whoami" }, `${ctx.session.username} (${ctx.session.role})`);
    const logout = el("button", { class: "linklike", "data-action": "logout" }, "Keluar");
    logout.addEventListener("click", () => {
      clearSession();
      ctx.refreshSession();
      ctx.navigate("#/login");
    });
    navBar.append(who, logout);
  }

  function render(): void {
    const route = parseHash(window.location.hash);
    const head = route.path[0] ?? "";

    if (ctx.session === null && head !== "login") {
      ctx.navigate("#/login");
      return;
    }
    if (ctx.session !== null && head === "login") {
      ctx.navigate("#/");
      return;
    }

    renderNav();
    if (pendingNotice !== null) {
      noticeBar.textContent = pendingNotice;
      noticeBar.removeAttribute("hidden");
      pendingNotice = null;
    } else {
      noticeBar.setAttribute("hidden", "");
      noticeBar.textContent = "";
    }

    clear(screen);
    switch (head) {
      case "login":
        renderLogin(ctx);
        break;
      case "":
        renderHome(ctx);
        break;
      case "explore":
        renderExplore(ctx, route);
        break;
      case "doc":
        renderDocument(ctx, route);
        break;
      case "search":
        renderSearch(ctx, route);
        break;
      case "manage":
        if (ctx.session !== null && ctx.session.role === "Admin") {
          renderManage(ctx, route);
        } else {
          ctx.navigate("#/");
        }
        break;
      default:
        screen.append(el("p", { class: "empty" }, "Halaman tidak ditemukan."));
    }
  }

  window.addEventListener("hashchange", render);
  render();
  return ctx;
}
