import assert from "node:assert/strict";
import test from "node:test";

import { loadBackend, loadCocoSsdBackend } from "../src/backend.js";

test("unknown model name is rejected", async () => {
  await assert.rejects(loadBackend("yolo-9000"), /unknown detector model/);
});

test("unreachable weights fail with an install hint", async () => {
  // An invalid model URL forces the weight-loading failure path regardless of
  // whether the optional tfjs packages are importable in this environment.
  await assert.rejects(
    loadCocoSsdBackend({ modelUrl: "http://127.0.0.1:1/model.json" }),
    /no pretrained detector available/,
  );
});
