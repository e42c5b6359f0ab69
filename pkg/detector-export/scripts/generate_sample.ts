/** Regenerate the committed two-image sample and its detections file.
 *
 * The sample detections are produced with the canned replay backend so the
 * fixture can be rebuilt in offline environments; with detector weights
 * available, regenerate it for real with:
 *
 *   node dist/src/cli.js --images sample/images --out sample/detections.sample.json
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { PNG } from "pngjs";

import { cannedBackend } from "../src/canned.js";
import { exportDetections } from "../src/export.js";
import type { DetectedObject } from "../src/types.js";

const root = join(dirname(fileURLToPath(import.meta.url)), "..", "..");
const sampleDir = join(root, "sample");
const imagesDir = join(sampleDir, "images");

function drawScene(width: number, height: number, seed: number): Buffer {
  const png = new PNG({ width, height });
  for (let y = 0; y < height; y += 1) {
    for (let x = 0; x < width; x += 1) {
      const i = (y * width + x) * 4;
      png.data[i] = (x * 7 + seed * 31) % 256;
      png.data[i + 1] = (y * 11 + seed * 17) % 256;
      png.data[i + 2] = (x * y + seed) % 256;
      png.data[i + 3] = 255;
    }
  }
  return PNG.sync.write(png);
}

const RIDER: DetectedObject[] = [
  { label: "person", score: 0.97, bbox: [18, 6, 34, 52] },
  { label: "motorcycle", score: 0.95, bbox: [10, 28, 56, 34] },
  { label: "bicycle", score: 0.72, bbox: [74, 32, 20, 22] },
];
const KITCHEN: DetectedObject[] = [
  { label: "person", score: 0.91, bbox: [6, 4, 26, 50] },
  { label: "cake", score: 0.88, bbox: [44, 40, 24, 12] },
  { label: "knife", score: 0.8, bbox: [38, 36, 6, 16] },
  { label: "dining table", score: 0.67, bbox: [20, 44, 56, 14] },
];

async function main(): Promise<void> {
  mkdirSync(imagesDir, { recursive: true });
  writeFileSync(join(imagesDir, "motorcycle_rider.png"), drawScene(96, 64, 3));
  writeFileSync(join(imagesDir, "kitchen.png"), drawScene(80, 60, 9));

  const backend = cannedBackend({ "96x64": RIDER, "80x60": KITCHEN });
  const document = await exportDetections(
    {
      imageDir: imagesDir,
      outputPath: join(sampleDir, "detections.sample.json"),
      scoreFloor: 0.3,
      model: "canned",
    },
    backend,
  );
  console.error(
    `sample regenerated: ${Object.keys(document.detections).length} images -> sample/detections.sample.json`,
  );
}

main().catch((error) => {
  console.error(error);
  process.exitCode = 1;
});
