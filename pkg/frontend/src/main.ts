import { GopsClient } from "./api.js";
import { Store } from "./state.js";
import { mountUi, savedSessionId } from "./ui.js";

const client = new GopsClient("");
const store = new Store(client);
const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
mountUi(store, root);

const saved = savedSessionId();
if (saved) void store.refresh(saved);
