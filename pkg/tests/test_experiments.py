import json
from pathlib import Path

import pandas as pd
import pytest

from remez_lab.exceptions import ConfigurationError
from remez_lab.experiments.config import SUITES, build_config, load_config
from remez_lab.experiments.reports import RatioRow, growth_check, write_csv, write_report
from remez_lab.experiments.suites import run_suite

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"

SMALL = {
    "moment-system": {"K_values": [3, 4]},
    "measure": {"K_values": [3], "trials": 5},
    "dk-bound": {"n_values": [2, 3], "trials": 3},
    "transfer": {"n_values": [2, 3], "trials": 3},
    "decomposition": {"n_values": [2, 3], "trials": 3},
    "property-b": {"n_values": [2, 3], "trials": 3},
    "selector": {"n_values": [1, 2], "trials": 3},
    "remez-ratio": {"n_values": [1, 2], "trials": 2, "restarts": 1, "samples_per_axis": 64},
    "bh-ratio": {"n_values": [2], "trials": 2, "restarts": 1, "samples_per_axis": 64},
    "prime-certificate": {"n_values": [2], "K_values": [3, 4]},
    "composite-findings": {"n_values": [2], "K_values": [4]},
    "k2-sanity": {"n_values": [2], "trials": 3, "restarts": 1, "samples_per_axis": 64},
    "roundtrip": {"n_values": [2], "trials": 3},
}


def _config(suite, **extra):
    return build_config({"suite": suite, "seed": 7, "workers": 2, **SMALL[suite], **extra})


def test_every_suite_has_a_small_config():
    assert set(SMALL) == set(SUITES)


@pytest.mark.parametrize("suite", SUITES)
def test_small_suites_pass(suite):
    report = run_suite(_config(suite), progress=False)
    assert report.aggregates.trials == len(report.records) > 0
    assert report.aggregates.violation_count == 0, [r for r in report.records if not r.passed]
    assert report.passed
    assert [r.index for r in report.records] == list(range(len(report.records)))


def test_empty_run_passes():
    report = run_suite(_config("dk-bound", trials=0), progress=False)
    assert report.records == []
    assert report.aggregates.trials == 0
    assert report.passed


def test_replay_is_deterministic():
    first = run_suite(_config("selector"), progress=False)
    second = run_suite(_config("selector"), progress=False)
    assert [r.model_dump() for r in first.records] == [r.model_dump() for r in second.records]


def test_seed_changes_instances():
    first = run_suite(_config("transfer"), progress=False)
    second = run_suite(_config("transfer", seed=8), progress=False)
    assert [r.digest for r in first.records] != [r.digest for r in second.records]


def test_decomposition_adds_beta_pair():
    report = run_suite(_config("decomposition"), progress=False)
    last = report.records[-1]
    assert last.note == "beta/beta' pair"
    assert last.metrics["classes"] == 1


def test_prime_certificate_skips_composite_K():
    report = run_suite(_config("prime-certificate"), progress=False)
    by_K = {r.K: r for r in report.records}
    assert by_K[3].metrics["disagreements"] == 0
    assert by_K[4].skipped


def test_k2_sanity_forces_K2():
    report = run_suite(_config("k2-sanity"), progress=False)
    assert {r.K for r in report.records} == {2}


def test_remez_ratio_rows():
    report = run_suite(_config("remez-ratio"), progress=False)
    rows = report.aggregates.max_ratio_per_n
    assert [(row.d, row.K, row.n) for row in rows] == [(2, 3, 1), (2, 3, 2)]
    assert all(row.max_ratio <= row.certified_C for row in rows)
    assert report.aggregates.growth_ok is None


def test_growth_check():
    rows = [
        RatioRow(d=2, K=3, n=2, max_ratio=2.0),
        RatioRow(d=2, K=3, n=6, max_ratio=2.1),
    ]
    assert growth_check(rows, 1.10) is True
    rows.append(RatioRow(d=2, K=3, n=7, max_ratio=2.5))
    assert growth_check(rows, 1.10) is False
    assert growth_check(rows[:1], 1.10) is None


def test_config_validation():
    with pytest.raises(ConfigurationError, match="unknown suite"):
        build_config({"suite": "nothing"})
    with pytest.raises(ConfigurationError, match="needs K >= 3"):
        build_config({"suite": "measure", "K_values": [2]})
    with pytest.raises(ConfigurationError, match="certified constants"):
        build_config({"suite": "remez-ratio", "d_values": [7]})
    with pytest.raises(ConfigurationError, match="enumeration cap"):
        build_config({"suite": "selector", "n_values": [9], "K_values": [7], "cap": 1000})
    with pytest.raises(ConfigurationError, match="trials"):
        build_config({"suite": "selector", "trials": -1})
    with pytest.raises(ConfigurationError):
        build_config({"suite": "selector", "colour": "blue"})


def test_load_config_with_overrides(tmp_path):
    path = tmp_path / "sweep.json"
    path.write_text(json.dumps({"suite": "transfer", "trials": 10, "seed": 1}))
    config = load_config(path, seed=5, trials=None)
    assert config.seed == 5
    assert config.trials == 10


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigurationError, match="Failed to load"):
        load_config(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    with pytest.raises(ConfigurationError, match="JSON object"):
        load_config(bad)


def test_outputs(tmp_path):
    report = run_suite(_config("remez-ratio"), progress=False)
    json_path = write_report(report, tmp_path / "out" / "report.json")
    payload = json.loads(json_path.read_text())
    assert payload["suite"] == "remez-ratio"
    assert payload["environment"]["seed"] == 7
    csv_path = write_csv(report, tmp_path / "out" / "summary.csv")
    frame = pd.read_csv(csv_path)
    assert list(frame.columns) == ["d", "K", "n", "max_ratio", "certified_C"]
    assert len(frame) == 2


def test_csv_falls_back_to_records(tmp_path):
    report = run_suite(_config("transfer"), progress=False)
    frame = pd.read_csv(write_csv(report, tmp_path / "transfer.csv"))
    assert len(frame) == len(report.records)
    assert "metrics_gap" in frame.columns


@pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob("*.json")), ids=lambda p: p.stem)
def test_shipped_configs_validate(path, monkeypatch):
    monkeypatch.delenv("REMEZ_LAB_CAP", raising=False)
    config = load_config(path)
    assert config.suite == path.stem
