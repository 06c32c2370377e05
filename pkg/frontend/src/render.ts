#!/usr/bin/env node
/**
 * Turn extension CSV output into an SVG overlay: solid line for the
 * computed extension, dashed line for the reference function.  CSVs with
 * blank reference columns render a single solid curve.
 *
 * Usage: render <input.csv> <output.svg> [--title text] [--x-column name]
 */

import { readFileSync, writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { columnIsBlank, numericColumn, parseCsv } from "./csv.js";
import { buildOverlaySvg, Series } from "./svg.js";

export interface OverlaySpec {
  inputPath: string;
  outputPath: string;
  title?: string;
  xColumn?: string;
}

export function render(spec: OverlaySpec): void {
  let text: string;
  try {
    text = readFileSync(spec.inputPath, "utf8");
  } catch (err) {
    throw new Error(`cannot read ${spec.inputPath}: ${(err as Error).message}`);
  }
  const table = parseCsv(text);
  const xColumn = spec.xColumn ?? "z_re";
  const xs = numericColumn(table, xColumn);
  const series: Series[] = [
    { label: "extension", xs, ys: numericColumn(table, "ext_re"), dashed: false },
  ];
  if (!columnIsBlank(table, "ref_re")) {
    series.push({ label: "reference", xs, ys: numericColumn(table, "ref_re"), dashed: true });
  }
  writeFileSync(spec.outputPath, buildOverlaySvg(series, spec.title));
}

export function runCli(argv: string[]): number {
  const positional: string[] = [];
  let title: string | undefined;
  let xColumn: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--title") {
      title = argv[++i];
      if (title === undefined) {
        process.stderr.write("--title needs a value\n");
        return 2;
      }
    } else if (arg === "--x-column") {
      xColumn = argv[++i];
      if (xColumn === undefined) {
        process.stderr.write("--x-column needs a value\n");
        return 2;
      }
    } else if (arg.startsWith("--")) {
      process.stderr.write(`unknown option ${arg}\n`);
      return 2;
    } else {
      positional.push(arg);
    }
  }
  if (positional.length !== 2) {
    process.stderr.write("usage: render <input.csv> <output.svg> [--title text] [--x-column name]\n");
    return 2;
  }
  try {
    render({ inputPath: positional[0], outputPath: positional[1], title, xColumn });
  } catch (err) {
    process.stderr.write(`render error: ${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(runCli(process.argv.slice(2)));
}
