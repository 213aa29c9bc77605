/** Client-side session state. Lives in sessionStorage only, so closing the
 * tab forgets the token and a full page reload can rebuild every screen
 * from what is stored here. */

export type Role = "Admin" | "Staff";

export interface ClientSession {
  token: string;
  role: Role;
  username: string;
}

const STORAGE_KEY = "arsip.session";

export function loadSession(): ClientSession | null {
  const raw = sessionStorage.getItem(STORAGE_KEY);
  if (raw === null) {
    return null;
  }
  try {
    const parsed = JSON.parse(raw) as Partial<ClientSession>;
    if (
      typeof parsed.token === "string" &&
      typeof parsed.username === "string" &&
      (parsed.role === "Admin" || parsed.role === "Staff")
    ) {
      return { token: parsed.token, role: parsed.role, username: parsed.username };
    }
  } catch {
    // fall through: a corrupt entry is the same as no entry
  }
  sessionStorage.removeItem(STORAGE_KEY);
  return null;
}

export function saveSession(session: ClientSession): void {
  sessionStorage.setItem(STORAGE_KEY, JSON.stringify(session));
}

export function clearSession(): void {
  sessionStorage.removeItem(STORAGE_KEY);
}
