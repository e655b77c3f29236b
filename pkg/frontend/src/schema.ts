/**
 * The experiment-results CSV contract shared with the simulator CLI.
 * Rows are plain comma-separated values with a fixed header; numeric
 * fields may be empty (the tracked user rate is optional).
 */
import { readFileSync } from "fs";
import Papa from "papaparse";

export const CSV_COLUMNS = [
  "experiment",
  "seed",
  "run",
  "K",
  "M",
  "tx_power_dbm",
  "epsilon",
  "scheme",
  "sum_rate",
  "user_rate",
  "wall_time_s",
] as const;

export interface ResultRow {
  experiment: string;
  seed: number;
  run: number;
  K: number;
  M: number;
  tx_power_dbm: number;
  epsilon: number;
  scheme: string;
  sum_rate: number;
  user_rate: number | null;
  wall_time_s: number;
}

export class SchemaError extends Error {}

function toNumber(field: string, raw: string, line: number): number {
  const value = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(value)) {
    throw new SchemaError(
      `line ${line}: column '${field}' holds ${JSON.stringify(raw)}, expected a number`,
    );
  }
  return value;
}

/** Parse and validate a results CSV; every schema violation names the column. */
export function readResultsCsv(path: string): ResultRow[] {
  const text = readFileSync(path, "utf-8");
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(`CSV parse error at row ${first.row}: ${first.message}`);
  }
  const header = parsed.meta.fields ?? [];
  for (const column of CSV_COLUMNS) {
    if (!header.includes(column)) {
      throw new SchemaError(`missing required column '${column}'`);
    }
  }
  for (const column of header) {
    if (!(CSV_COLUMNS as readonly string[]).includes(column)) {
      throw new SchemaError(`unexpected column '${column}'`);
    }
  }
  if (parsed.data.length === 0) {
    throw new SchemaError("CSV has a header but no data rows");
  }
  return parsed.data.map((raw, i) => {
    const line = i + 2;
    return {
      experiment: raw.experiment,
      seed: toNumber("seed", raw.seed, line),
      run: toNumber("run", raw.run, line),
      K: toNumber("K", raw.K, line),
      M: toNumber("M", raw.M, line),
      tx_power_dbm: toNumber("tx_power_dbm", raw.tx_power_dbm, line),
      epsilon: toNumber("epsilon", raw.epsilon, line),
      scheme: raw.scheme,
      sum_rate: toNumber("sum_rate", raw.sum_rate, line),
      user_rate: raw.user_rate.trim() === "" ? null : toNumber("user_rate", raw.user_rate, line),
      wall_time_s: toNumber("wall_time_s", raw.wall_time_s, line),
    };
  });
}
