import { ApiClient } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app container");

const app = new App(root, new ApiClient(""), (query) => {
  history.replaceState(null, "", `#${query}`);
});

void app.start().then(() => {
  if (location.hash.length > 1) app.model.restore(location.hash.slice(1));
});
