import assert from "node:assert/strict";
import { mkdirSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import test from "node:test";

import { PNG } from "pngjs";

import { cannedBackend } from "../src/canned.js";
import { exportDetections } from "../src/export.js";
import { assertDetectionsDocument, type DetectedObject } from "../src/types.js";

function writePng(path: string, width: number, height: number): void {
  const png = new PNG({ width, height });
  for (let i = 0; i < png.data.length; i += 4) {
    png.data[i] = (i / 4) % 255;
    png.data[i + 1] = 80;
    png.data[i + 2] = 160;
    png.data[i + 3] = 255;
  }
  writeFileSync(path, PNG.sync.write(png));
}

const RIDER_HITS: DetectedObject[] = [
  { label: "person", score: 0.97, bbox: [10, 5, 30, 50] },
  { label: "motorcycle", score: 0.95, bbox: [8, 25, 48, 32] },
  { label: "bicycle", score: 0.42, bbox: [70, 30, 20, 18] },
];
const KITCHEN_HITS: DetectedObject[] = [
  { label: "person", score: 0.91, bbox: [4, 2, 28, 52] },
  { label: "cake", score: 0.88, bbox: [40, 38, 22, 12] },
];

test("export writes schema-valid detections keyed by filename stem", async () => {
  const dir = mkdtempSync(join(tmpdir(), "detector-export-"));
  const images = join(dir, "images");
  const out = join(dir, "detections.json");
  mkdirSync(images);
  writePng(join(images, "motorcycle_rider.png"), 96, 64);
  writePng(join(images, "kitchen.png"), 80, 60);

  const backend = cannedBackend({ "96x64": RIDER_HITS, "80x60": KITCHEN_HITS });
  const document = await exportDetections(
    { imageDir: images, outputPath: out, scoreFloor: 0.5, model: "canned" },
    backend,
  );

  assert.deepEqual(Object.keys(document.detections).sort(), ["kitchen", "motorcycle_rider"]);
  const labels = document.detections["motorcycle_rider"].map((d) => d.label);
  assert.deepEqual(labels, ["person", "motorcycle"]); // bicycle fell below the floor

  const reloaded = JSON.parse(readFileSync(out, "utf-8"));
  assertDetectionsDocument(reloaded);
  assert.deepEqual(reloaded, document);
});

test("score floor of 1.0 empties every detection list", async () => {
  const dir = mkdtempSync(join(tmpdir(), "detector-export-"));
  const images = join(dir, "images");
  const out = join(dir, "detections.json");
  mkdirSync(images);
  writePng(join(images, "a.png"), 32, 24);
  writePng(join(images, "b.png"), 40, 30);

  const backend = cannedBackend({ "32x24": RIDER_HITS, "40x30": KITCHEN_HITS });
  const document = await exportDetections(
    { imageDir: images, outputPath: out, scoreFloor: 1.0, model: "canned" },
    backend,
  );
  assert.deepEqual(document.detections, { a: [], b: [] });
});

test("unreadable images are skipped with a warning", async () => {
  const dir = mkdtempSync(join(tmpdir(), "detector-export-"));
  const images = join(dir, "images");
  const out = join(dir, "detections.json");
  mkdirSync(images);
  writePng(join(images, "good.png"), 32, 24);
  writeFileSync(join(images, "broken.jpg"), "not an image at all");

  const warnings: string[] = [];
  const original = console.warn;
  console.warn = (message: unknown) => warnings.push(String(message));
  try {
    const document = await exportDetections(
      { imageDir: images, outputPath: out, scoreFloor: 0, model: "canned" },
      cannedBackend({ "32x24": KITCHEN_HITS }),
    );
    assert.deepEqual(Object.keys(document.detections), ["good"]);
  } finally {
    console.warn = original;
  }
  assert.equal(warnings.length, 1);
  assert.match(warnings[0], /broken\.jpg/);
});

test("missing image directory is fatal", async () => {
  await assert.rejects(
    exportDetections(
      { imageDir: "/nonexistent/images", outputPath: "/tmp/x.json", scoreFloor: 0, model: "canned" },
      cannedBackend({}),
    ),
    /does not exist/,
  );
});

test("schema guard rejects bad documents", () => {
  assert.throws(() => assertDetectionsDocument({ version: 2, detections: {} }), /version/);
  assert.throws(
    () => assertDetectionsDocument({ version: 1, detections: { i: [{ label: "" }] } }),
    /label/,
  );
  assert.throws(
    () =>
      assertDetectionsDocument({
        version: 1,
        detections: { i: [{ label: "dog", bbox: [0, 0, -1, 4] }] },
      }),
    /bbox/,
  );
});
