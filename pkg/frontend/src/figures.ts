/**
 * Chart assembly: linear axes with 1-2-5 ticks, legends, mean lines with
 * min-max bands, and the per-figure-kind data preparation.
 */
import { Canvas, Color, textWidth } from "./raster";
import { ResultRow, SchemaError } from "./schema";

export const WIDTH = 900;
export const HEIGHT = 600;

const MARGIN = { left: 78, right: 24, top: 46, bottom: 62 };
const AXIS: Color = [40, 40, 40, 255];
const GRID: Color = [210, 210, 210, 255];
const PALETTE: Color[] = [
  [31, 119, 180, 255], // blue
  [214, 39, 40, 255], // red
  [44, 160, 44, 255], // green
  [148, 103, 189, 255], // purple
  [255, 127, 14, 255], // orange
  [23, 190, 207, 255], // teal
];

export interface Series {
  label: string;
  xs: number[];
  ys: number[];
  lo?: number[];
  hi?: number[];
  width?: number;
  color?: Color;
}

export interface ChartSpec {
  title: string;
  xlabel: string;
  ylabel: string;
  series: Series[];
}

function niceTicks(lo: number, hi: number, target = 6): number[] {
  if (!(hi > lo)) {
    hi = lo + (Math.abs(lo) || 1) * 0.1;
    lo = lo - (Math.abs(lo) || 1) * 0.1;
  }
  const rawStep = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= rawStep) {
      step = m * mag;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function formatTick(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e5 || abs < 1e-3) {
    return value.toExponential(1).replace("e+", "E").replace("e-", "E-");
  }
  const text = value.toPrecision(4);
  return text.includes(".") ? text.replace(/\.?0+$/, "") : text;
}

export function drawChart(spec: ChartSpec): Canvas {
  const canvas = new Canvas(WIDTH, HEIGHT);
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;

  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const s of spec.series) {
    for (const v of s.xs) {
      xMin = Math.min(xMin, v);
      xMax = Math.max(xMax, v);
    }
    for (const arr of [s.ys, s.lo ?? [], s.hi ?? []]) {
      for (const v of arr) {
        yMin = Math.min(yMin, v);
        yMax = Math.max(yMax, v);
      }
    }
  }
  if (!Number.isFinite(xMin)) {
    throw new SchemaError("nothing to plot: no series data");
  }
  const yPad = (yMax - yMin || Math.abs(yMax) || 1) * 0.06;
  yMin -= yPad;
  yMax += yPad;
  if (xMax === xMin) {
    xMin -= 0.5;
    xMax += 0.5;
  }

  const px = (x: number) => MARGIN.left + ((x - xMin) / (xMax - xMin)) * plotW;
  const py = (y: number) => MARGIN.top + (1 - (y - yMin) / (yMax - yMin)) * plotH;

  for (const tick of niceTicks(yMin, yMax)) {
    const y = py(tick);
    canvas.dashedLine(MARGIN.left, y, WIDTH - MARGIN.right, y, GRID);
    const label = formatTick(tick);
    canvas.text(MARGIN.left - 8 - textWidth(label), y - 3, label, AXIS);
  }
  for (const tick of niceTicks(xMin, xMax)) {
    const x = px(tick);
    canvas.dashedLine(x, MARGIN.top, x, HEIGHT - MARGIN.bottom, GRID);
    const label = formatTick(tick);
    canvas.text(x - textWidth(label) / 2, HEIGHT - MARGIN.bottom + 8, label, AXIS);
  }
  canvas.line(MARGIN.left, MARGIN.top, MARGIN.left, HEIGHT - MARGIN.bottom, AXIS);
  canvas.line(MARGIN.left, HEIGHT - MARGIN.bottom, WIDTH - MARGIN.right,
    HEIGHT - MARGIN.bottom, AXIS);

  canvas.text((WIDTH - textWidth(spec.title, 2)) / 2, 14, spec.title, AXIS, 2);
  canvas.text((WIDTH - textWidth(spec.xlabel)) / 2, HEIGHT - 22, spec.xlabel, AXIS);
  canvas.textVertical(16, (HEIGHT + textWidth(spec.ylabel)) / 2, spec.ylabel, AXIS);

  spec.series.forEach((s, i) => {
    const color = s.color ?? PALETTE[i % PALETTE.length];
    if (s.lo && s.hi) {
      const bandColor: Color = [color[0], color[1], color[2], 56];
      canvas.band(s.xs.map(px), s.lo.map(py), s.hi.map(py), bandColor);
    }
    const points = s.xs.map((x, j) => [px(x), py(s.ys[j])] as [number, number]);
    canvas.polyline(points, color, s.width ?? 2);
  });

  const legendX = MARGIN.left + 12;
  let legendY = MARGIN.top + 10;
  spec.series.forEach((s, i) => {
    if (!s.label) return;
    const color = s.color ?? PALETTE[i % PALETTE.length];
    canvas.line(legendX, legendY + 3, legendX + 22, legendY + 3, color, s.width ?? 2);
    canvas.text(legendX + 30, legendY, s.label, AXIS);
    legendY += 14;
  });
  return canvas;
}

// ---------------------------------------------------------------- grouping

function unique<T>(values: T[]): T[] {
  return [...new Set(values)];
}

function meanBand(
  rows: ResultRow[],
  xOf: (r: ResultRow) => number,
  yOf: (r: ResultRow) => number,
): { xs: number[]; ys: number[]; lo: number[]; hi: number[] } {
  const xs = unique(rows.map(xOf)).sort((a, b) => a - b);
  const ys: number[] = [];
  const lo: number[] = [];
  const hi: number[] = [];
  for (const x of xs) {
    const vals = rows.filter((r) => xOf(r) === x).map(yOf);
    ys.push(vals.reduce((a, b) => a + b, 0) / vals.length);
    lo.push(Math.min(...vals));
    hi.push(Math.max(...vals));
  }
  return { xs, ys, lo, hi };
}

function movingAverage(values: number[], window: number): number[] {
  const out: number[] = [];
  let acc = 0;
  for (let i = 0; i < values.length; i++) {
    acc += values[i];
    if (i >= window) acc -= values[i - window];
    out.push(acc / Math.min(i + 1, window));
  }
  return out;
}

function requireUserRate(rows: ResultRow[]): void {
  if (rows.some((r) => r.user_rate === null)) {
    throw new SchemaError("column 'user_rate' is empty but this figure plots it");
  }
}

// ------------------------------------------------------------ figure kinds

export const FIGURE_KINDS = [
  "train_curve",
  "upperbound_compare",
  "noma_vs_oma_users",
  "power_sweep",
  "epsilon_sweep",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export function buildChart(kind: FigureKind, rows: ResultRow[]): ChartSpec {
  switch (kind) {
    case "train_curve": {
      const runs = unique(rows.map((r) => r.run)).sort((a, b) => a - b);
      const perRun = runs.map((run) => rows.filter((r) => r.run === run).map((r) => r.sum_rate));
      const steps = Math.min(...perRun.map((r) => r.length));
      const mean = Array.from({ length: steps }, (_, i) =>
        perRun.reduce((a, r) => a + r[i], 0) / perRun.length,
      );
      const xs = mean.map((_, i) => i);
      return {
        title: "TRAINING CURVE",
        xlabel: "iteration",
        ylabel: "sum rate (bits/s/Hz)",
        series: [
          { label: "per-step sum rate", xs, ys: mean, width: 1,
            color: [31, 119, 180, 110] },
          { label: "moving average (100)", xs, ys: movingAverage(mean, 100), width: 3,
            color: [214, 39, 40, 255] },
        ],
      };
    }
    case "upperbound_compare": {
      const schemes = unique(rows.map((r) => r.scheme));
      return {
        title: "EXHAUSTIVE UPPER BOUND VS LEARNED PHASES",
        xlabel: "monte-carlo run",
        ylabel: "best sum rate (bits/s/Hz)",
        series: schemes.map((scheme) => {
          const mine = rows.filter((r) => r.scheme === scheme)
            .sort((a, b) => a.run - b.run);
          return { label: scheme, xs: mine.map((r) => r.run),
                   ys: mine.map((r) => r.sum_rate) };
        }),
      };
    }
    case "noma_vs_oma_users": {
      const schemes = unique(rows.map((r) => r.scheme));
      return {
        title: "SUM RATE VS NUMBER OF USERS",
        xlabel: "number of users",
        ylabel: "sum rate (bits/s/Hz)",
        series: schemes.map((scheme) => ({
          label: scheme,
          ...meanBand(rows.filter((r) => r.scheme === scheme),
                      (r) => r.K, (r) => r.sum_rate),
        })),
      };
    }
    case "power_sweep": {
      const schemes = unique(rows.map((r) => r.scheme));
      return {
        title: "SUM RATE VS TRANSMIT POWER",
        xlabel: "transmit power (dBm)",
        ylabel: "sum rate (bits/s/Hz)",
        series: schemes.map((scheme) => ({
          label: scheme,
          ...meanBand(rows.filter((r) => r.scheme === scheme),
                      (r) => r.tx_power_dbm, (r) => r.sum_rate),
        })),
      };
    }
    case "epsilon_sweep": {
      requireUserRate(rows);
      const epsilons = unique(rows.map((r) => r.epsilon)).sort((a, b) => a - b);
      return {
        title: "NEAREST-USER RATE UNDER IMPERFECT CANCELLATION",
        xlabel: "monte-carlo run",
        ylabel: "nearest-user rate (bits/s/Hz)",
        series: epsilons.map((eps) => {
          const mine = rows.filter((r) => r.epsilon === eps)
            .sort((a, b) => a.run - b.run);
          return { label: `eps = ${eps}`, xs: mine.map((r) => r.run),
                   ys: mine.map((r) => r.user_rate as number) };
        }),
      };
    }
  }
}
