/** Figure rendering entry: CSV in, PNG out. */
import { writeFileSync } from "fs";
import { PNG } from "pngjs";

import { FIGURE_KINDS, FigureKind, buildChart, drawChart } from "./figures";
import { SchemaError, readResultsCsv } from "./schema";

export interface FigureSpec {
  kind: FigureKind;
  inputCsv: string;
  outputPng: string;
  xlabel?: string;
  ylabel?: string;
}

export function isFigureKind(value: string): value is FigureKind {
  return (FIGURE_KINDS as readonly string[]).includes(value);
}

/** Render one figure; throws SchemaError on contract violations. */
export function render(spec: FigureSpec): void {
  const rows = readResultsCsv(spec.inputCsv);
  const experiments = new Set(rows.map((r) => r.experiment));
  if (!experiments.has(spec.kind) || experiments.size !== 1) {
    throw new SchemaError(
      `figure kind '${spec.kind}' does not match the CSV's experiment column ` +
        `(found: ${[...experiments].join(", ")})`,
    );
  }
  const chart = buildChart(spec.kind, rows);
  if (spec.xlabel) chart.xlabel = spec.xlabel;
  if (spec.ylabel) chart.ylabel = spec.ylabel;
  const canvas = drawChart(chart);
  const png = new PNG({ width: canvas.width, height: canvas.height });
  png.data = Buffer.from(canvas.data);
  writeFileSync(spec.outputPng, PNG.sync.write(png));
}
