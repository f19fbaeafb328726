"""Guidance report assembly.

The report is the dashboard payload: informative guidance (crowd scores,
per-criterion aggregates with contested flags, milestone probabilities) and
suggestive guidance (mentor comments by value dimension, machine what-if
interventions), plus provenance and deltas against the parent version.
Reports are plain dicts rendered canonically so they are diffable and can be
archived as events unchanged.
"""

from __future__ import annotations

from .feedback import ASSESSMENT_DIMENSIONS, AggregatedAssessment, Judgment
from .hybrid import MilestonePrediction
from .ontology import DIMENSIONS, BusinessModelVersion

# Dashboard wording: the implementability criteria are presented under the
# label "feasibility".
DIMENSION_LABELS = {
    "desirability": "desirability",
    "implementability": "feasibility",
    "scalability": "scalability",
    "profitability": "profitability",
}


def build_report(
    version: BusinessModelVersion,
    assessment: AggregatedAssessment | None,
    predictions: dict[str, MilestonePrediction],
    judgments: list[Judgment],
    interventions: dict[str, list[dict]],
    parent_report: dict | None = None,
    model_set_id: str = "",
    generated_at: str = "",
) -> dict:
    if not predictions:
        raise ValueError("a report needs at least one milestone prediction")

    judge_count = assessment.judge_count if assessment is not None else 0
    informative: dict = {
        "dimension_scores": {},
        "dimension_labels": dict(DIMENSION_LABELS),
        "criteria": {},
        "predictions": {ms: predictions[ms].to_dict() for ms in sorted(predictions)},
    }
    if assessment is not None and judge_count > 0:
        informative["dimension_scores"] = {d: assessment.dimension_scores[d] for d in ASSESSMENT_DIMENSIONS}
        informative["criteria"] = {
            cid: {
                "aggregate": agg.aggregate,
                "dispersion": agg.dispersion,
                "n": agg.n,
                "contested": cid in assessment.contested,
            }
            for cid, agg in assessment.per_criterion.items()
        }

    comments: dict[str, list[dict]] = {d: [] for d in DIMENSIONS}
    for judgment in sorted(judgments, key=lambda j: j.mentor_id):
        for dim, text in judgment.comments.items():
            if dim in comments and text:
                comments[dim].append({"mentor_id": judgment.mentor_id, "text": text})

    report = {
        "venture_id": version.venture_id,
        "version_number": version.version_number,
        "informative": informative,
        "suggestive": {
            "comments": comments,
            "machine_interventions": {ms: list(interventions.get(ms, [])) for ms in sorted(predictions)},
        },
        "provenance": {
            "judge_count": judge_count,
            "model_set_id": model_set_id,
            "generated_at": generated_at,
        },
        "history": _history(version, informative, parent_report),
    }
    return report


def _history(version: BusinessModelVersion, informative: dict, parent_report: dict | None) -> dict | None:
    if version.parent_version is None:
        return None
    history = {"parent_version": version.parent_version, "dimension_score_deltas": {}, "probability_deltas": {}}
    if parent_report is None:
        return history
    old_scores = parent_report["informative"]["dimension_scores"]
    new_scores = informative["dimension_scores"]
    for dim in ASSESSMENT_DIMENSIONS:
        if dim in old_scores and dim in new_scores:
            history["dimension_score_deltas"][dim] = new_scores[dim] - old_scores[dim]
    old_preds = parent_report["informative"]["predictions"]
    for ms, pred in informative["predictions"].items():
        if ms in old_preds:
            history["probability_deltas"][ms] = pred["p_hybrid"] - old_preds[ms]["p_hybrid"]
    return history
