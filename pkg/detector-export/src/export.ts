/** Core exporter: images in, schema-valid detections JSON out. */

import { existsSync, mkdirSync, writeFileSync } from "node:fs";
import { basename, dirname, extname } from "node:path";

import { decodeImage, listImageFiles } from "./images.js";
import {
  assertDetectionsDocument,
  type DetectionRecord,
  type DetectionsDocument,
  type DetectorBackend,
  type ExportJob,
} from "./types.js";

function imageKey(path: string): string {
  const name = basename(path);
  return name.slice(0, name.length - extname(name).length);
}

/**
 * Run the backend over every image in the job's directory and write a
 * version-1 detections document keyed by filename stem.
 *
 * Unreadable images are skipped with a warning; detections scoring below the
 * job's floor are omitted.
 */
export async function exportDetections(job: ExportJob, backend: DetectorBackend): Promise<DetectionsDocument> {
  if (!existsSync(job.imageDir)) {
    throw new Error(`image directory ${job.imageDir} does not exist`);
  }
  if (!(job.scoreFloor >= 0 && job.scoreFloor <= 1)) {
    throw new Error(`score floor must be in [0, 1], got ${job.scoreFloor}`);
  }

  const detections: Record<string, DetectionRecord[]> = {};
  for (const path of listImageFiles(job.imageDir)) {
    let image;
    try {
      image = decodeImage(path);
    } catch (error) {
      console.warn(`warning: skipping unreadable image ${path}: ${String(error)}`);
      continue;
    }
    const hits = await backend.detect(image);
    detections[imageKey(path)] = hits
      .filter((hit) => hit.score >= job.scoreFloor)
      .map((hit) => ({
        label: hit.label,
        score: round(hit.score),
        bbox: [round(hit.bbox[0]), round(hit.bbox[1]), round(hit.bbox[2]), round(hit.bbox[3])],
      }));
  }

  const document: DetectionsDocument = { version: 1, detections };
  assertDetectionsDocument(document);
  mkdirSync(dirname(job.outputPath), { recursive: true });
  writeFileSync(job.outputPath, JSON.stringify(document, null, 2) + "\n");
  return document;
}

function round(value: number): number {
  return Math.round(value * 10000) / 10000;
}
