#!/usr/bin/env node
/**
 * plots <kind> <in.csv> <out.png> [--xlabel TEXT] [--ylabel TEXT]
 *
 * Renders one experiment-results CSV into a PNG figure. Kinds match the
 * simulator's experiment kinds: train_curve, upperbound_compare,
 * noma_vs_oma_users, power_sweep, epsilon_sweep.
 */
import { FIGURE_KINDS } from "./figures";
import { FigureSpec, isFigureKind, render } from "./render";
import { SchemaError } from "./schema";

function usage(): string {
  return (
    "usage: plots <kind> <in.csv> <out.png> [--xlabel TEXT] [--ylabel TEXT]\n" +
    `  kinds: ${FIGURE_KINDS.join(", ")}`
  );
}

export function main(argv: string[]): number {
  const positional: string[] = [];
  const flags: Record<string, string> = {};
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--help" || arg === "-h") {
      console.log(usage());
      return 0;
    }
    if (arg === "--xlabel" || arg === "--ylabel") {
      const value = argv[++i];
      if (value === undefined) {
        console.error(`${arg} needs a value\n${usage()}`);
        return 2;
      }
      flags[arg.slice(2)] = value;
    } else if (arg.startsWith("-")) {
      console.error(`unknown flag ${arg}\n${usage()}`);
      return 2;
    } else {
      positional.push(arg);
    }
  }
  if (positional.length !== 3) {
    console.error(usage());
    return 2;
  }
  const [kind, inputCsv, outputPng] = positional;
  if (!isFigureKind(kind)) {
    console.error(`unknown figure kind '${kind}'\n${usage()}`);
    return 2;
  }
  const spec: FigureSpec = { kind, inputCsv, outputPng, ...flags };
  try {
    render(spec);
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
    } else {
      console.error(`error: ${(err as Error).message}`);
    }
    return 1;
  }
  console.log(`wrote ${outputPng}`);
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
