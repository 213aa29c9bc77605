import { startApp } from "./app.js";

const mount = document.getElementById("app");
if (mount === null) {
  throw new Error("missing #app mount element");
}
startApp(mount);
