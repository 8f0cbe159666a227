"""Command-line entry point: run scenarios, ingest ratings, merge reports.

Configuration precedence is flags > config file (JSON, keys named like the
flags) > built-in defaults. Every run echoes its effective config into the
output directory so any artifact can be regenerated exactly. Exit codes are
stable: 0 success, 1 runtime failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .epinions import IngestError, ingest_epinions
from .advisor import save_dataset
from .simulate import (
    ATTACK_KINDS,
    ConfigError,
    ScenarioConfig,
    run_scenario,
    write_outputs,
)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2

# Config-file / flag keys and the ScenarioConfig fields they set.
_CONFIG_KEYS = {
    "seed": "seed",
    "attack": "attack_kind",
    "attacker_fraction": "attacker_fraction",
    "advisors": "n_advisors",
    "items": "n_items",
    "iterations": "n_iterations",
    "sybil_count": "sybil_count",
    "switch_iteration": "switch_iteration",
    "reset_period": "reset_period",
    "participation_threshold": "participation_threshold",
    "k_folds": "k_folds",
    "noise": "noise",
    "initial_credibility": "initial_credibility",
    "initial_budget": "initial_budget",
    "period_length": "period_length",
    "max_depth": "max_depth",
    "min_leaf": "min_leaf",
    "records_per_advisor": "records_per_advisor",
    "n_features": "n_features",
    "ratings": "ratings_path",
    "trust_file": "trust_path",
}


def _normalise_attack(value: str) -> str:
    return "whitewashing" if value == "whitewash" else value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trustsim",
        description="Credibility-weighted trust aggregation and attack simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run one attack scenario")
    sim.add_argument("--config", type=Path, help="JSON config file; flags override it")
    sim.add_argument("--seed", type=int)
    sim.add_argument("--attack", choices=list(ATTACK_KINDS) + ["whitewash"])
    sim.add_argument("--attacker-fraction", type=float, dest="attacker_fraction")
    sim.add_argument("--advisors", type=int)
    sim.add_argument("--items", type=int)
    sim.add_argument("--iterations", type=int)
    sim.add_argument("--sybil-count", type=int, dest="sybil_count")
    sim.add_argument("--switch-iteration", type=int, dest="switch_iteration")
    sim.add_argument("--reset-period", type=int, dest="reset_period")
    sim.add_argument(
        "--participation-threshold", type=float, dest="participation_threshold"
    )
    sim.add_argument("--k-folds", type=int, dest="k_folds")
    sim.add_argument("--noise", type=float)
    sim.add_argument("--initial-credibility", type=float, dest="initial_credibility")
    sim.add_argument("--initial-budget", type=int, dest="initial_budget")
    sim.add_argument("--period-length", type=int, dest="period_length")
    sim.add_argument("--max-depth", type=int, dest="max_depth")
    sim.add_argument("--min-leaf", type=int, dest="min_leaf")
    sim.add_argument(
        "--records-per-advisor", type=int, dest="records_per_advisor"
    )
    sim.add_argument("--n-features", type=int, dest="n_features")
    sim.add_argument("--ratings", help="ratings file to build the population from")
    sim.add_argument("--trust-file", dest="trust_file")
    sim.add_argument("--out", type=Path, help="output directory")
    sim.set_defaults(func=cmd_simulate)

    ing = sub.add_parser("ingest", help="parse a ratings file into dataset files")
    ing.add_argument("--ratings", required=True)
    ing.add_argument("--trust-file", dest="trust_file")
    ing.add_argument("--out", type=Path, required=True)
    ing.set_defaults(func=cmd_ingest)

    rep = sub.add_parser("report", help="merge scenario summaries into one table")
    rep.add_argument("dirs", nargs="+", type=Path)
    rep.add_argument("--out", type=Path, help="also write the table to this file")
    rep.set_defaults(func=cmd_report)
    return parser


def _merge_config(args: argparse.Namespace) -> ScenarioConfig:
    merged: dict = {}
    if args.config is not None:
        try:
            loaded = json.loads(Path(args.config).read_text())
        except OSError as exc:
            raise ConfigError("config", f"cannot read {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError("config", f"{args.config} is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config", "config file must hold a JSON object")
        for key, value in loaded.items():
            if key == "out":
                continue
            if key not in _CONFIG_KEYS:
                raise ConfigError(key, "unknown configuration key")
            merged[_CONFIG_KEYS[key]] = value
    for key, fieldname in _CONFIG_KEYS.items():
        value = getattr(args, key, None)
        if value is not None:
            merged[fieldname] = value
    if "attack_kind" in merged:
        merged["attack_kind"] = _normalise_attack(str(merged["attack_kind"]))
    if "seed" not in merged:
        raise ConfigError("seed", "a seed is required (flag --seed or config key)")
    try:
        config = ScenarioConfig(**merged)
    except TypeError as exc:
        raise ConfigError("config", str(exc)) from exc
    config.validate()
    return config


def cmd_simulate(args: argparse.Namespace) -> int:
    config = _merge_config(args)
    out_dir = args.out or Path(f"run_{config.attack_kind}_{config.seed}")
    out_dir.mkdir(parents=True, exist_ok=True)
    trace_path = out_dir / "trace.jsonl"
    with open(trace_path, "w") as handle:

        def trace(record: dict) -> None:
            handle.write(json.dumps(record, sort_keys=True) + "\n")

        result = run_scenario(config, trace=trace)
    write_outputs(result, out_dir)
    print(f"wrote scenario outputs to {out_dir}")
    return EXIT_OK


def cmd_ingest(args: argparse.Namespace) -> int:
    try:
        data = ingest_epinions(args.ratings, args.trust_file)
    except IngestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out: Path = args.out
    datasets_dir = out / "datasets"
    datasets_dir.mkdir(parents=True, exist_ok=True)
    for user, dataset in data.datasets.items():
        save_dataset(dataset, datasets_dir / f"user_{user}.csv")
    item_lines = ["item_id,ground_truth,n_ratings"]
    for item in sorted(data.item_truth):
        truth = data.item_truth[item]
        count = int(data.item_features[item][1])
        item_lines.append(f"{item},{truth!r},{count}")
    (out / "items.csv").write_text("\n".join(item_lines) + "\n")
    (out / "stats.txt").write_text(data.stats.report() + "\n")
    print(data.stats.report())
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    rows: list[tuple[str, dict]] = []
    for directory in args.dirs:
        summary_path = directory / "summary.json"
        if not summary_path.exists():
            print(f"error: {directory} has no summary.json", file=sys.stderr)
            return EXIT_USAGE
        rows.append((directory.name, json.loads(summary_path.read_text())))

    seen_attacks: dict[str, int] = {}
    lines = ["attack  mae_mean  mae_std  mae_plain_mean  mae_plain_std  run"]
    for run_id, summary in rows:
        attack = summary["attack"]
        seen_attacks[attack] = seen_attacks.get(attack, 0) + 1
        label = attack if seen_attacks[attack] == 1 else f"{attack}({run_id})"
        lines.append(
            "  ".join(
                [
                    label,
                    format(summary["mae_mean"], ".10g"),
                    format(summary["mae_std"], ".10g"),
                    format(summary["mae_plain_mean"], ".10g"),
                    format(summary["mae_plain_std"], ".10g"),
                    run_id,
                ]
            )
        )
    table = "\n".join(lines) + "\n"
    print(table, end="")
    if args.out is not None:
        args.out.write_text(table)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IngestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
