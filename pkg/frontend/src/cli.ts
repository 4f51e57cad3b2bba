#!/usr/bin/env node
/** plots <figure-name> <csv-dir> <out-dir>
 *
 * Renders one of the CLI figure presets (fig1..fig5) from its CSV output
 * directory into an SVG image. Exit codes: 0 rendered, 1 bad/missing input,
 * 2 usage error.
 */

import { FIGURE_NAMES, FigureName, figureSpec, renderToFile } from "./render";
import { SchemaMismatch } from "./schema";

export function main(argv: string[]): number {
  if (argv.length !== 3) {
    console.error("usage: plots <figure-name> <csv-dir> <out-dir>");
    return 2;
  }
  const [name, csvDir, outDir] = argv;
  if (!FIGURE_NAMES.includes(name as FigureName)) {
    console.error(`unknown figure "${name}"; choose from ${FIGURE_NAMES.join(", ")}`);
    return 2;
  }
  try {
    const out = renderToFile(figureSpec(name as FigureName, csvDir, outDir));
    console.log(out);
    return 0;
  } catch (err) {
    if (err instanceof SchemaMismatch) {
      console.error(`schema mismatch: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
