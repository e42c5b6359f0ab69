/** Wire types for the detections JSON consumed by caption-audit. */

export interface DetectionRecord {
  label: string;
  score?: number;
  bbox?: [number, number, number, number];
}

export interface DetectionsDocument {
  version: 1;
  detections: Record<string, DetectionRecord[]>;
}

/** Decoded RGB image. `data` is row-major, 3 bytes per pixel. */
export interface RgbImage {
  data: Uint8Array;
  width: number;
  height: number;
}

/** One raw detector hit, before score-floor filtering. */
export interface DetectedObject {
  label: string;
  score: number;
  bbox: [number, number, number, number];
}

/** Anything that can look at an image and name objects in it. */
export interface DetectorBackend {
  readonly name: string;
  detect(image: RgbImage): Promise<DetectedObject[]>;
}

export interface ExportJob {
  imageDir: string;
  outputPath: string;
  scoreFloor: number;
  model: string;
}

/** Throws if the document does not match the version-1 schema. */
export function assertDetectionsDocument(doc: unknown): asserts doc is DetectionsDocument {
  if (typeof doc !== "object" || doc === null) {
    throw new Error("detections document must be an object");
  }
  const record = doc as Record<string, unknown>;
  if (record.version !== 1) {
    throw new Error(`unsupported detections version ${String(record.version)}`);
  }
  const detections = record.detections;
  if (typeof detections !== "object" || detections === null) {
    throw new Error("'detections' must be an object keyed by image id");
  }
  for (const [imageId, items] of Object.entries(detections)) {
    if (!Array.isArray(items)) {
      throw new Error(`image ${imageId}: detections must be a list`);
    }
    items.forEach((item, index) => {
      if (typeof item !== "object" || item === null) {
        throw new Error(`image ${imageId}, detection ${index}: not an object`);
      }
      const det = item as Record<string, unknown>;
      if (typeof det.label !== "string" || det.label.length === 0) {
        throw new Error(`image ${imageId}, detection ${index}: bad label`);
      }
      if (det.score !== undefined) {
        if (typeof det.score !== "number" || det.score < 0 || det.score > 1) {
          throw new Error(`image ${imageId}, detection ${index}: score must be in [0, 1]`);
        }
      }
      if (det.bbox !== undefined) {
        const bbox = det.bbox;
        if (!Array.isArray(bbox) || bbox.length !== 4 || bbox.some((v) => typeof v !== "number")) {
          throw new Error(`image ${imageId}, detection ${index}: bbox must be [x, y, w, h]`);
        }
        if ((bbox[2] as number) < 0 || (bbox[3] as number) < 0) {
          throw new Error(`image ${imageId}, detection ${index}: bbox w/h must be non-negative`);
        }
      }
    });
  }
}
