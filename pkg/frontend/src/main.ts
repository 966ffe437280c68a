import { ApiClient } from "./api.js";
import { App } from "./app.js";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app root element");

const app = new App(new ApiClient(window.location.origin), root);
void app.start();
