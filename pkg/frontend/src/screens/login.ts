import type { AppContext } from "../app.js";
import { ApiError } from "../api.js";
import { el } from "../dom.js";
import { saveSession, type Role } from "../session.js";

export function renderLogin(ctx: AppContext): void {
  const errorBox = el("p", { class: "form-error", role: "alert", hidden: "" });
  const username = el("input", {
    name: "username",
    autocomplete: "username",
    placeholder: "Nama pengguna",
  });
  const password = el("input", {
    name: "password",
    type: "password",
    autocomplete: "current-password",
    placeholder: "Kata sandi",
  });
  const submit = el("button", { type: "submit", class: "primary" }, "Masuk");

  const form = el(
    "form",
    { class: "login-form" },
    el("h1", {}, "Arsip Dokumen"),
    el("p", { class: "hint" }, "Masuk untuk menjelajah dan mencari arsip."),
    username,
    password,
    errorBox,
    submit,
  );

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    errorBox.setAttribute("hidden", "");
    submit.disabled = true;
    ctx.api
      .login(username.value.trim(), password.value)
      .then((out) => {
        saveSession({
          token: out.token,
          role: out.role === "Admin" ? "Admin" : ("Staff" as Role),
          username: username.value.trim(),
        });
        ctx.refreshSession();
        ctx.navigate("#/");
      })
      .catch((err: unknown) => {
        submit.disabled = false;
        if (err instanceof ApiError && err.status === 401) {
          errorBox.textContent = "Nama pengguna atau kata sandi salah.";
        } else {
          errorBox.textContent = err instanceof Error ? err.message : "Gagal terhubung ke server.";
        }
        errorBox.removeAttribute("hidden");
      });
  });

  ctx.screen.append(form);
  username.focus();
}
