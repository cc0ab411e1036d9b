import { ApiClient } from "./api.js";
import { AppController } from "./app.js";

const base = (window as { ARCHGRAPH_API_BASE?: string }).ARCHGRAPH_API_BASE ?? "";
const root = document.getElementById("app");
if (root) {
  const controller = new AppController(new ApiClient(base), root);
  controller.start().catch((err) => {
    root.textContent = `failed to load model: ${err}`;
  });
}
