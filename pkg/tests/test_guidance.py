from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from conftest import make_judgment, make_version
from hidss import canonical
from hidss.cart import CartParams, LabeledDataset, train_cart
from hidss.feedback import ASSESSMENT_DIMENSIONS, CriteriaCatalog, aggregate
from hidss.guidance import DIMENSION_LABELS, build_report
from hidss.hybrid import ModelSet, hybrid_predict, whatif_scan
from hidss.ontology import PatternCatalog

CATALOG = PatternCatalog.default()
CRITERIA = CriteriaCatalog.default()
GOLDEN = Path(__file__).parent / "data" / "golden_report.json"


def fixture_model_set():
    rng = np.random.default_rng(77)
    n = 120
    Xm = rng.integers(0, 2, size=(n, CATALOG.feature_length)).astype(float)
    Xc = rng.uniform(1, 10, size=(n, 25))
    y = rng.integers(0, 2, size=n)
    models = {}
    for ms in ("survival", "series_a"):
        models[("machine", ms)] = train_cart(LabeledDataset(Xm, y, CATALOG.catalog_version, ms, "machine"), CartParams(min_leaf=3))
        models[("crowd", ms)] = train_cart(LabeledDataset(Xc, y, "crowd-schema", ms, "crowd"), CartParams(min_leaf=3))
    return ModelSet(models=models, hybrid_weight=0.5, k_min=3)


def fixture_judgments(version_number=1):
    comments = {
        "value_proposition": "sharpen the problem statement",
        "value_capture": "pricing looks too low for the segment",
    }
    return [
        make_judgment(CRITERIA, mentor_id=f"m{i}", version_number=version_number, rating=4 + i, comments=comments)
        for i in range(3)
    ]


def fixture_report(version_number=1, parent_report=None, parent_version=None):
    version = make_version(CATALOG, version_number=version_number, parent_version=parent_version)
    judgments = fixture_judgments(version_number)
    assessment = aggregate(judgments, CRITERIA)
    model_set = fixture_model_set()
    predictions = hybrid_predict(model_set, version, CATALOG, CRITERIA, assessment)
    interventions = {ms: whatif_scan(model_set, version, CATALOG, ms) for ms in predictions}
    return build_report(
        version,
        assessment,
        predictions,
        judgments,
        interventions,
        parent_report=parent_report,
        model_set_id="fixture-models",
        generated_at="2026-03-01T00:00:00Z",
    )


class TestBuildReport:
    def test_cold_start_machine_only(self):
        version = make_version(CATALOG)
        model_set = fixture_model_set()
        predictions = hybrid_predict(model_set, version, CATALOG, CRITERIA, None)
        report = build_report(version, None, predictions, [], {}, generated_at="t")
        assert report["informative"]["dimension_scores"] == {}
        assert all(v == [] for v in report["suggestive"]["comments"].values())
        for pred in report["informative"]["predictions"].values():
            assert pred["basis"] == "machine-only"
        assert report["history"] is None

    def test_no_predictions_rejected(self):
        with pytest.raises(ValueError):
            build_report(make_version(CATALOG), None, {}, [], {})

    def test_history_delta_is_plain_subtraction(self):
        parent = fixture_report()
        parent["informative"]["predictions"]["series_a"]["p_hybrid"] = 0.40
        child = fixture_report(version_number=2, parent_report=parent, parent_version=1)
        current = child["informative"]["predictions"]["series_a"]["p_hybrid"]
        assert child["history"]["probability_deltas"]["series_a"] == pytest.approx(current - 0.40)

    def test_history_antisymmetry(self):
        r1 = fixture_report()
        r2 = fixture_report(version_number=2, parent_report=r1, parent_version=1)
        # rebuild r1 as if it revised r2
        r1_vs_r2 = fixture_report(version_number=3, parent_report=r2, parent_version=2)
        for ms, delta in r2["history"]["probability_deltas"].items():
            assert r1_vs_r2["history"]["probability_deltas"][ms] == pytest.approx(-delta + (r1_vs_r2["informative"]["predictions"][ms]["p_hybrid"] - r1["informative"]["predictions"][ms]["p_hybrid"]))
        for dim, delta in r2["history"]["dimension_score_deltas"].items():
            assert r1_vs_r2["history"]["dimension_score_deltas"][dim] == pytest.approx(-delta)

    def test_every_section_populated_for_full_fixture(self):
        report = fixture_report()
        informative = report["informative"]
        assert set(informative["dimension_scores"]) == set(ASSESSMENT_DIMENSIONS)
        assert len(informative["criteria"]) == 21
        assert set(informative["predictions"]) == {"survival", "series_a"}
        assert report["suggestive"]["comments"]["value_proposition"]
        assert "machine_interventions" in report["suggestive"]
        assert report["provenance"]["judge_count"] == 3

    def test_serialization_stability(self):
        assert canonical.dumps(fixture_report()) == canonical.dumps(fixture_report())

    def test_scores_and_probabilities_bounded(self):
        report = fixture_report()
        for score in report["informative"]["dimension_scores"].values():
            assert 1.0 <= score <= 10.0
        for pred in report["informative"]["predictions"].values():
            assert 0.0 < pred["p_hybrid"] < 1.0

    def test_feasibility_label_maps_to_implementability(self):
        assert DIMENSION_LABELS["implementability"] == "feasibility"
        assert fixture_report()["informative"]["dimension_labels"]["implementability"] == "feasibility"

    def test_matches_golden_file(self):
        report = fixture_report()
        golden = json.loads(GOLDEN.read_text())
        assert canonical.dumps(report) == canonical.dumps(golden)
