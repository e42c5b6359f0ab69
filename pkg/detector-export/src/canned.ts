/** A replay backend: serves pre-recorded detections instead of running a model.
 *
 * Useful for tests and for regenerating fixtures in environments where the
 * pretrained weights cannot be fetched. Images are recognized by their
 * `${width}x${height}` signature, the only information a backend sees.
 */

import type { DetectedObject, DetectorBackend, RgbImage } from "./types.js";

export function cannedBackend(byDimension: Record<string, DetectedObject[]>): DetectorBackend {
  return {
    name: "canned",
    async detect(image: RgbImage): Promise<DetectedObject[]> {
      const key = `${image.width}x${image.height}`;
      const hits = byDimension[key];
      if (!hits) {
        throw new Error(`canned backend has no detections for a ${key} image`);
      }
      return hits;
    },
  };
}
