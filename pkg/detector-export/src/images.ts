/** Image discovery and decoding (JPEG via jpeg-js, PNG via pngjs). */

import { readdirSync, readFileSync } from "node:fs";
import { extname, join } from "node:path";

import jpeg from "jpeg-js";
import { PNG } from "pngjs";

import type { RgbImage } from "./types.js";

const IMAGE_EXTENSIONS = new Set([".jpg", ".jpeg", ".png"]);

/** Image files in a directory, sorted for deterministic output. */
export function listImageFiles(imageDir: string): string[] {
  return readdirSync(imageDir)
    .filter((name) => IMAGE_EXTENSIONS.has(extname(name).toLowerCase()))
    .sort()
    .map((name) => join(imageDir, name));
}

function stripAlpha(rgba: Uint8Array, width: number, height: number): Uint8Array {
  const rgb = new Uint8Array(width * height * 3);
  for (let p = 0, q = 0; p < rgba.length; p += 4, q += 3) {
    rgb[q] = rgba[p];
    rgb[q + 1] = rgba[p + 1];
    rgb[q + 2] = rgba[p + 2];
  }
  return rgb;
}

/** Decode a JPEG or PNG file to RGB. Throws on unreadable input. */
export function decodeImage(path: string): RgbImage {
  const buffer = readFileSync(path);
  const extension = extname(path).toLowerCase();
  if (extension === ".png") {
    const png = PNG.sync.read(buffer);
    return { data: stripAlpha(png.data, png.width, png.height), width: png.width, height: png.height };
  }
  const decoded = jpeg.decode(buffer, { useTArray: true, maxMemoryUsageInMB: 64 });
  return {
    data: stripAlpha(decoded.data, decoded.width, decoded.height),
    width: decoded.width,
    height: decoded.height,
  };
}
