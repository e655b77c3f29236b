"""Command-line front end.

Subcommands map one-to-one onto the experiment kinds plus checkpoint
evaluation. Configuration comes from a flat key-value file that may mix
scenario keys (SystemConfig) and learning keys (TrainConfig); selected
flags override the file. Exit codes: 0 success, 2 configuration error,
1 runtime error.
"""

import argparse
import sys
import time
from dataclasses import fields, replace

import numpy as np

from .channel import SystemConfig, config_from_items, parse_kv_file, sample_scenario
from .ddpg import DdpgAgent, TrainConfig
from .harness import (
    ExperimentSpec,
    ResultRow,
    _policy_phases,
    run_experiment,
    run_training,
    write_rows_csv,
)
from .oracle import rate_at_phases

_INT_TRAIN_KEYS = ("batch_size", "buffer_capacity", "steps_per_episode",
                   "num_episodes", "seed")


def train_config_from_items(items: dict) -> TrainConfig:
    """Build a TrainConfig from string key-value pairs; unknown keys are errors."""
    known = {f.name for f in fields(TrainConfig)}
    kwargs = {}
    for key, text in items.items():
        if key not in known:
            raise ValueError(f"unknown TrainConfig key {key!r}")
        if key == "hidden_units":
            kwargs[key] = tuple(int(t) for t in text.split(",") if t.strip() != "")
        elif key in _INT_TRAIN_KEYS:
            kwargs[key] = int(text)
        else:
            kwargs[key] = float(text)
    return TrainConfig(**kwargs)


def load_config_file(path):
    """Split a flat key-value file into (SystemConfig, TrainConfig)."""
    items = parse_kv_file(path)
    sys_keys = {f.name for f in fields(SystemConfig)}
    train_keys = {f.name for f in fields(TrainConfig)}
    sys_items, train_items = {}, {}
    for key, value in items.items():
        if key in sys_keys:
            sys_items[key] = value
        elif key in train_keys:
            train_items[key] = value
        else:
            raise ValueError(f"unknown config key {key!r} in {path}")
    return config_from_items(sys_items), train_config_from_items(train_items)


def _config_epilog() -> str:
    lines = ["config file keys (SystemConfig):"]
    for f in fields(SystemConfig):
        default = "derived (geometric split)" if f.name == "power_coeffs" else f.default
        lines.append(f"  {f.name} = {default}")
    lines.append("  (power_coeffs: comma-separated floats summing to 1)")
    lines.append("")
    lines.append("config file keys (TrainConfig):")
    for f in fields(TrainConfig):
        default = f.default if f.name != "hidden_units" else "256,256"
        lines.append(f"  {f.name} = {default}")
    lines.append("")
    lines.append("environment: IRS_NOMA_THREADS caps Monte-Carlo parallelism;")
    lines.append("IRS_NOMA_BACKEND selects the numba/numpy kernel backend.")
    return "\n".join(lines)


def _add_common(parser):
    parser.add_argument("--config", required=True, help="flat key-value config file")
    parser.add_argument("--seed", type=int, default=0, help="base seed; run r uses seed+r")
    parser.add_argument("--out", default="results.csv", help="output CSV path")
    parser.add_argument("--runs", type=int, default=1, help="number of Monte-Carlo runs")
    parser.add_argument("--deterministic", action="store_true",
                        help="zero the wall_time_s column for byte-stable output")


def _add_train_overrides(parser):
    parser.add_argument("--episodes", type=int, help="override num_episodes")
    parser.add_argument("--steps", type=int, help="override steps_per_episode")
    parser.add_argument("--batch-size", type=int, help="override batch_size")
    parser.add_argument("--hidden", help="override hidden_units, e.g. 64,64")
    parser.add_argument("--actor-lr", type=float, help="override actor_lr")
    parser.add_argument("--critic-lr", type=float, help="override critic_lr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="irs-noma",
        description="IRS-assisted downlink NOMA simulator with DDPG phase control",
        epilog=_config_epilog(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a DDPG agent, log per-step sum rate")
    _add_common(p)
    _add_train_overrides(p)
    p.add_argument("--save", help="checkpoint prefix for the trained networks")
    p.add_argument("--train-log", help="also write the raw per-step training log CSV")

    p = sub.add_parser("eval", help="evaluate a saved policy on fresh channels")
    _add_common(p)
    p.add_argument("--checkpoint", required=True, help="checkpoint prefix from train --save")

    p = sub.add_parser("oracle", help="exhaustive phase search per run")
    _add_common(p)
    p.add_argument("--grid-steps", type=int, default=16, help="grid points per element")

    p = sub.add_parser("sweep-users", help="NOMA vs OMA across user counts")
    _add_common(p)
    _add_train_overrides(p)
    p.add_argument("--users", default="2,4,8", help="comma-separated user counts")
    p.add_argument("--phases", choices=("random", "ddpg"), default="random",
                   help="phase source for both schemes")

    p = sub.add_parser("sweep-power", help="sum rate across transmit powers")
    _add_common(p)
    p.add_argument("--powers", default="10,20,30,40,50,60,70,80",
                   help="comma-separated transmit powers in dBm")

    p = sub.add_parser("sweep-eps", help="nearest-user rate across SIC residual fractions")
    _add_common(p)
    p.add_argument("--eps", default="0,0.001,0.01,0.1",
                   help="comma-separated residual-interference fractions")
    p.add_argument("--grid-steps", type=int, default=16, help="grid points per element")

    p = sub.add_parser("compare-upperbound", help="oracle vs trained DDPG per run")
    _add_common(p)
    _add_train_overrides(p)
    p.add_argument("--grid-steps", type=int, default=16, help="grid points per element")
    return parser


def _apply_train_overrides(train_cfg: TrainConfig, args) -> TrainConfig:
    updates = {}
    if getattr(args, "episodes", None) is not None:
        updates["num_episodes"] = args.episodes
    if getattr(args, "steps", None) is not None:
        updates["steps_per_episode"] = args.steps
    if getattr(args, "batch_size", None) is not None:
        updates["batch_size"] = args.batch_size
    if getattr(args, "hidden", None):
        updates["hidden_units"] = tuple(int(t) for t in args.hidden.split(","))
    if getattr(args, "actor_lr", None) is not None:
        updates["actor_lr"] = args.actor_lr
    if getattr(args, "critic_lr", None) is not None:
        updates["critic_lr"] = args.critic_lr
    return replace(train_cfg, **updates) if updates else train_cfg


_KIND_BY_COMMAND = {
    "oracle": "oracle_only",
    "sweep-users": "noma_vs_oma_users",
    "sweep-power": "power_sweep",
    "sweep-eps": "epsilon_sweep",
    "compare-upperbound": "upperbound_compare",
    "train": "train_curve",
}


def _build_spec(args) -> ExperimentSpec:
    config, train_cfg = load_config_file(args.config)
    train_cfg = _apply_train_overrides(train_cfg, args)
    extras = {}
    if args.command == "sweep-users":
        extras["user_counts"] = tuple(int(t) for t in args.users.split(","))
        extras["phase_source"] = args.phases
    elif args.command == "sweep-power":
        extras["power_levels_dbm"] = tuple(float(t) for t in args.powers.split(","))
    elif args.command == "sweep-eps":
        extras["epsilons"] = tuple(float(t) for t in args.eps.split(","))
    if getattr(args, "grid_steps", None) is not None:
        extras["grid_steps"] = args.grid_steps
    return ExperimentSpec(
        kind=_KIND_BY_COMMAND[args.command],
        config=config,
        train=train_cfg,
        monte_carlo_runs=args.runs,
        seed=args.seed,
        out_path=args.out,
        deterministic=args.deterministic,
        **extras,
    )


def _cmd_train(spec: ExperimentSpec, args) -> int:
    all_rows = []
    for run in range(spec.monte_carlo_runs):
        started = time.perf_counter()
        agent, log, rows = run_training(spec, run)
        if not spec.deterministic:
            elapsed = time.perf_counter() - started
            rows = [replace(r, wall_time_s=elapsed) for r in rows]
        suffix = "" if spec.monte_carlo_runs == 1 else f".run{run}"
        if args.save:
            agent.save(f"{args.save}{suffix}")
        if args.train_log:
            log.write_csv(f"{args.train_log}{suffix}")
        all_rows.extend(rows)
    write_rows_csv(all_rows, spec.out_path)
    print(f"wrote {len(all_rows)} rows to {spec.out_path}")
    return 0


def _cmd_eval(args, config, train_cfg) -> int:
    rows = []
    for run in range(args.runs):
        started = time.perf_counter()
        rng = np.random.default_rng(args.seed + run)
        channels = sample_scenario(config, rng)
        agent = DdpgAgent(
            2 * config.num_elements + config.num_users, config.num_elements,
            train_cfg, rng,
        )
        agent.load(args.checkpoint)
        phases = _policy_phases(agent, config, channels)
        rate = rate_at_phases(channels, config, phases)
        elapsed = 0.0 if args.deterministic else time.perf_counter() - started
        rows.append(ResultRow(
            experiment="eval", seed=args.seed, run=run, K=config.num_users,
            M=config.num_elements, tx_power_dbm=config.tx_power_dbm,
            epsilon=config.sic_residual_eps, scheme="ddpg", sum_rate=rate,
            user_rate=None, wall_time_s=elapsed,
        ))
    write_rows_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        if args.command == "eval":
            spec = None
            inputs = load_config_file(args.config)
        else:
            spec = _build_spec(args)
    except (ValueError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command == "eval":
            return _cmd_eval(args, *inputs)
        if args.command == "train":
            return _cmd_train(spec, args)
        rows = run_experiment(spec)
        print(f"wrote {len(rows)} rows to {spec.out_path}")
        return 0
    except Exception as exc:  # noqa: BLE001 - boundary of the CLI
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
