from __future__ import annotations

import json

from click.testing import CliRunner

from hidss import canonical
from hidss.cli import main
from hidss.config import ServiceConfig
from hidss.feedback import CriteriaCatalog
from hidss.ontology import PatternCatalog
from hidss.repository import Repository

CATALOG = PatternCatalog.default()
CRITERIA = CriteriaCatalog.default()


def write_config(tmp_path, **overrides):
    path = tmp_path / "config.json"
    values = {"storage_path": str(tmp_path / "events.jsonl")}
    values.update(overrides)
    path.write_text(json.dumps(values))
    return str(path)


def test_simulate_then_seed_then_train(tmp_path):
    runner = CliRunner()
    seed_file = tmp_path / "world.json"
    result = runner.invoke(main, ["simulate", "--seed", "3", "--n-ventures", "30", "--judges", "3", "--out", str(seed_file)])
    assert result.exit_code == 0, result.output
    config = write_config(tmp_path)
    result = runner.invoke(main, ["seed", "--config", config, "--ventures", str(seed_file)])
    assert result.exit_code == 0, result.output
    model_file = tmp_path / "models.json"
    result = runner.invoke(main, ["train", "--config", config, "--out", str(model_file)])
    assert result.exit_code == 0, result.output
    summary = canonical.loads(result.output.splitlines()[0])
    assert "machine:survival" in summary["trained_slots"]
    assert model_file.exists()


def test_seed_mentors_from_delimited_file(tmp_path):
    mentors = tmp_path / "mentors.txt"
    mentors.write_text(
        "# id;tags;industries;name\n"
        "m1;market|finance;fintech;Avery\n"
        "m2;technology;;Sam\n"
    )
    config = write_config(tmp_path)
    result = CliRunner().invoke(main, ["seed", "--config", config, "--mentors", str(mentors)])
    assert result.exit_code == 0, result.output
    repo = Repository(CATALOG, CRITERIA, log_path=tmp_path / "events.jsonl")
    assert set(repo.mentors) == {"m1", "m2"}
    assert repo.mentors["m1"].expertise_tags == {"market", "finance"}


def test_export_and_import_round_trip(tmp_path):
    runner = CliRunner()
    seed_file = tmp_path / "world.json"
    runner.invoke(main, ["simulate", "--seed", "1", "--n-ventures", "5", "--out", str(seed_file)])
    config = write_config(tmp_path)
    runner.invoke(main, ["seed", "--config", config, "--ventures", str(seed_file)])
    exported = tmp_path / "export.jsonl"
    result = runner.invoke(main, ["export", "--config", config, "--out", str(exported)])
    assert result.exit_code == 0, result.output
    other_dir = tmp_path / "other"
    other_dir.mkdir()
    other_config = write_config(other_dir)
    result = runner.invoke(main, ["import", "--config", other_config, "--log", str(exported)])
    assert result.exit_code == 0, result.output
    original = Repository(CATALOG, CRITERIA, log_path=tmp_path / "events.jsonl")
    imported = Repository(CATALOG, CRITERIA, log_path=other_dir / "events.jsonl")
    for vid in original.ventures:
        assert imported.snapshot_bytes(vid) == original.snapshot_bytes(vid)


def test_import_refuses_to_overwrite(tmp_path):
    config = write_config(tmp_path)
    (tmp_path / "events.jsonl").write_text("")
    exported = tmp_path / "export.jsonl"
    exported.write_text("")
    result = CliRunner().invoke(main, ["import", "--config", config, "--log", str(exported)])
    assert result.exit_code == 1


def test_eval_prints_metrics_table(tmp_path):
    metrics_file = tmp_path / "metrics.csv"
    result = CliRunner().invoke(
        main,
        ["eval", "--seed", "2", "--n-train", "60", "--n-holdout", "40", "--judges", "3", "--metrics-out", str(metrics_file)],
    )
    assert result.exit_code == 0, result.output
    assert "machine" in result.output and "hybrid" in result.output
    lines = metrics_file.read_text().splitlines()
    assert lines[0] == "signal;milestone;auc;brier;n"
    assert len(lines) == 7  # header + 3 signals x 2 milestones


def test_config_env_overrides(tmp_path, monkeypatch):
    config = write_config(tmp_path, hybrid_weight=0.4)
    monkeypatch.setenv("HIDSS_HYBRID_WEIGHT", "0.9")
    monkeypatch.setenv("HIDSS_K_MIN", "5")
    loaded = ServiceConfig.load(config)
    assert loaded.hybrid_weight == 0.9
    assert loaded.k_min == 5


def test_config_rejects_bad_values(tmp_path):
    import pytest

    config = write_config(tmp_path, hybrid_weight=1.5)
    with pytest.raises(ValueError):
        ServiceConfig.load(config)
