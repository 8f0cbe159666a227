import json

from trustsim.cli import main

FAST = [
    "--advisors", "6",
    "--items", "3",
    "--iterations", "4",
    "--records-per-advisor", "24",
]


def run_cli(*argv):
    return main(list(argv))


def test_simulate_smoke_writes_all_artifacts(tmp_path):
    out = tmp_path / "run"
    code = run_cli(
        "simulate",
        "--attack", "sybil",
        "--attacker-fraction", "0.3",
        "--seed", "42",
        "--out", str(out),
        *FAST,
    )
    assert code == 0
    summary = (out / "summary.txt").read_text()
    assert summary.splitlines()[1].startswith("sybil")
    for name in (
        "summary.json",
        "series.csv",
        "per_item_mae.csv",
        "trace.jsonl",
        "config.json",
        "credibility.tsv",
        "inquiries.tsv",
    ):
        assert (out / name).exists(), name
    config = json.loads((out / "config.json").read_text())
    assert config["seed"] == 42
    assert config["attack_kind"] == "sybil"


def test_simulate_series_has_one_row_per_iteration(tmp_path):
    out = tmp_path / "run"
    code = run_cli(
        "simulate",
        "--attack", "camouflage",
        "--switch-iteration", "3",
        "--iterations", "10",
        "--seed", "7",
        "--advisors", "6",
        "--items", "3",
        "--records-per-advisor", "24",
        "--out", str(out),
    )
    assert code == 0
    lines = (out / "series.csv").read_text().splitlines()
    assert lines[0] == "iteration,mean_mae,mean_attacker_credibility,mean_honest_credibility"
    assert len(lines) == 11


def test_missing_seed_exits_2(capsys, tmp_path):
    code = run_cli("simulate", "--attack", "sybil", "--out", str(tmp_path / "x"))
    assert code == 2
    assert "seed" in capsys.readouterr().err


def test_unknown_config_key_exits_2_and_names_it(tmp_path, capsys):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"seed": 1, "advisrs": 5}))
    code = run_cli("simulate", "--config", str(config), "--out", str(tmp_path / "x"))
    assert code == 2
    assert "advisrs" in capsys.readouterr().err


def test_invalid_value_exits_2(tmp_path, capsys):
    code = run_cli(
        "simulate", "--seed", "1", "--attacker-fraction", "1.4",
        "--out", str(tmp_path / "x"), *FAST,
    )
    assert code == 2
    assert "attacker_fraction" in capsys.readouterr().err


def test_flag_overrides_config_file(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"seed": 5, "attack": "none", "advisors": 6,
                                  "items": 3, "iterations": 2,
                                  "records_per_advisor": 24}))
    out = tmp_path / "run"
    code = run_cli(
        "simulate", "--config", str(config), "--attack", "whitewash",
        "--out", str(out),
    )
    assert code == 0
    effective = json.loads((out / "config.json").read_text())
    assert effective["attack_kind"] == "whitewashing"
    assert effective["seed"] == 5


def test_byte_identical_reruns(tmp_path):
    args = ["simulate", "--attack", "sybil", "--seed", "11", *FAST]
    first, second = tmp_path / "a", tmp_path / "b"
    assert run_cli(*args, "--out", str(first)) == 0
    assert run_cli(*args, "--out", str(second)) == 0
    for name in ("summary.txt", "series.csv", "per_item_mae.csv", "trace.jsonl"):
        assert (first / name).read_bytes() == (second / name).read_bytes()


def test_ingest_toy_file(tmp_path, capsys):
    ratings = tmp_path / "ratings.txt"
    ratings.write_text("u1,i1,5\nu2,i1,4\nu1,i2,1\n")
    out = tmp_path / "ingested"
    code = run_cli("ingest", "--ratings", str(ratings), "--out", str(out))
    assert code == 0
    assert "2 users, 2 items, 3 reviews, 0 skipped" in capsys.readouterr().out
    assert (out / "stats.txt").read_text().startswith("2 users")
    assert (out / "datasets" / "user_u1.csv").exists()
    assert (out / "items.csv").read_text().splitlines()[0] == "item_id,ground_truth,n_ratings"


def test_ingest_counts_malformed(tmp_path, capsys):
    ratings = tmp_path / "ratings.txt"
    ratings.write_text("u1,i1,5\n" * 9 + "u1,i1,9\n")
    code = run_cli("ingest", "--ratings", str(ratings), "--out", str(tmp_path / "o"))
    assert code == 0
    assert "1 skipped" in capsys.readouterr().out


def test_ingest_missing_file_exits_2(tmp_path):
    code = run_cli(
        "ingest", "--ratings", str(tmp_path / "nope.txt"), "--out", str(tmp_path / "o")
    )
    assert code == 2


def _write_summary(path, attack):
    path.mkdir(parents=True)
    (path / "summary.json").write_text(
        json.dumps(
            {
                "attack": attack,
                "seed": 1,
                "mae_mean": 0.01,
                "mae_std": 0.002,
                "mae_plain_mean": 0.2,
                "mae_plain_std": 0.04,
                "cells": 30,
                "skipped": 0,
            }
        )
    )


def test_report_merges_three_scenarios(tmp_path, capsys):
    for attack in ("sybil", "camouflage", "whitewashing"):
        _write_summary(tmp_path / attack, attack)
    code = run_cli(
        "report",
        str(tmp_path / "sybil"),
        str(tmp_path / "camouflage"),
        str(tmp_path / "whitewashing"),
    )
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    assert lines[1].startswith("sybil")
    assert lines[2].startswith("camouflage")
    assert lines[3].startswith("whitewashing")


def test_report_suffixes_duplicate_attacks(tmp_path, capsys):
    _write_summary(tmp_path / "one", "sybil")
    _write_summary(tmp_path / "two", "sybil")
    code = run_cli("report", str(tmp_path / "one"), str(tmp_path / "two"))
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1].startswith("sybil ")
    assert lines[2].startswith("sybil(two)")


def test_report_empty_dir_exits_2(tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    assert run_cli("report", str(empty)) == 2


def test_report_writes_output_file(tmp_path):
    _write_summary(tmp_path / "one", "none")
    table = tmp_path / "table.txt"
    assert run_cli("report", str(tmp_path / "one"), "--out", str(table)) == 0
    assert table.read_text().splitlines()[1].startswith("none")
