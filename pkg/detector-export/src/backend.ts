/** Detector backends. The default wraps the pretrained COCO-SSD model. */

import type { DetectedObject, DetectorBackend, RgbImage } from "./types.js";

const INSTALL_HINT =
  "no pretrained detector available. Install the optional dependencies " +
  "(npm install @tensorflow/tfjs @tensorflow-models/coco-ssd) and make sure " +
  "the model weights are reachable (network access, or --model-url pointing " +
  "at a local copy).";

export interface CocoSsdOptions {
  /** Override the weight location, e.g. a file:// URL with a local copy. */
  modelUrl?: string;
}

/**
 * Load the pretrained COCO-SSD detector.
 *
 * Fails with an install hint when the packages are missing or the pretrained
 * weights cannot be fetched; the exporter treats that as fatal.
 */
export async function loadCocoSsdBackend(options: CocoSsdOptions = {}): Promise<DetectorBackend> {
  let tf: typeof import("@tensorflow/tfjs");
  let cocoSsd: typeof import("@tensorflow-models/coco-ssd");
  try {
    tf = await import("@tensorflow/tfjs");
    cocoSsd = await import("@tensorflow-models/coco-ssd");
  } catch (cause) {
    throw new Error(INSTALL_HINT, { cause });
  }
  let model: Awaited<ReturnType<typeof cocoSsd.load>>;
  try {
    model = await cocoSsd.load(
      options.modelUrl ? { modelUrl: options.modelUrl } : { base: "lite_mobilenet_v2" },
    );
  } catch (cause) {
    throw new Error(INSTALL_HINT, { cause });
  }
  return {
    name: "coco-ssd",
    async detect(image: RgbImage): Promise<DetectedObject[]> {
      const tensor = tf.tensor3d(new Int32Array(image.data), [image.height, image.width, 3], "int32");
      try {
        const hits = await model.detect(tensor as never);
        return hits.map((hit) => ({
          label: hit.class,
          score: hit.score,
          bbox: [hit.bbox[0], hit.bbox[1], hit.bbox[2], hit.bbox[3]],
        }));
      } finally {
        tensor.dispose();
      }
    },
  };
}

export async function loadBackend(model: string, options: CocoSsdOptions = {}): Promise<DetectorBackend> {
  if (model === "coco-ssd") {
    return loadCocoSsdBackend(options);
  }
  throw new Error(`unknown detector model ${JSON.stringify(model)}; available: coco-ssd`);
}
