/** CLI: detector-export --images <dir> --out <file> [--score-floor 0.3] */

import { parseArgs } from "node:util";

import { loadBackend } from "./backend.js";
import { exportDetections } from "./export.js";

const USAGE =
  "usage: node dist/src/cli.js --images <dir> --out <file> " +
  "[--score-floor 0.3] [--model coco-ssd] [--model-url <url>]";

export async function main(argv: string[]): Promise<number> {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        images: { type: "string" },
        out: { type: "string" },
        "score-floor": { type: "string", default: "0.3" },
        model: { type: "string", default: "coco-ssd" },
        "model-url": { type: "string" },
        help: { type: "boolean", default: false },
      },
    });
  } catch (error) {
    console.error(String(error));
    console.error(USAGE);
    return 2;
  }
  const { values } = parsed;
  if (values.help) {
    console.log(USAGE);
    return 0;
  }
  if (!values.images || !values.out) {
    console.error(USAGE);
    return 2;
  }
  const scoreFloor = Number(values["score-floor"]);
  if (!(scoreFloor >= 0 && scoreFloor <= 1)) {
    console.error(`error: --score-floor must be in [0, 1], got ${values["score-floor"]}`);
    return 2;
  }

  try {
    const backend = await loadBackend(values.model as string, { modelUrl: values["model-url"] });
    const document = await exportDetections(
      {
        imageDir: values.images,
        outputPath: values.out,
        scoreFloor,
        model: values.model as string,
      },
      backend,
    );
    const images = Object.keys(document.detections).length;
    console.error(`wrote detections for ${images} image(s) -> ${values.out}`);
    return 0;
  } catch (error) {
    console.error(`error: ${error instanceof Error ? error.message : String(error)}`);
    return 1;
  }
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js") ?? false;
if (invokedDirectly) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
