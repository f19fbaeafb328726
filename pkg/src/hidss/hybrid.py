"""Hybrid prediction: machine and crowd trees plus the convex combiner.

The machine signal reads the encoded business model configuration; the crowd
signal reads the aggregated mentor ratings. When both are available the
milestone probability is w*machine + (1-w)*crowd; otherwise whichever signal
exists carries the prediction and the basis label says so.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import canonical
from .cart import MILESTONES, SIGNAL_SOURCES, CartParams, LabeledDataset, TreeModel, train_cart
from .feedback import ASSESSMENT_DIMENSIONS, AggregatedAssessment, CriteriaCatalog
from .ontology import BusinessModelVersion, PatternCatalog, encode

CROWD_SCHEMA_PREFIX = "crowd-ratings"


def crowd_schema_id(criteria: CriteriaCatalog) -> str:
    return f"{CROWD_SCHEMA_PREFIX}:{criteria.catalog_version}"


def crowd_features(assessment: AggregatedAssessment, criteria: CriteriaCatalog) -> np.ndarray:
    """21 criterion aggregates in catalog order, then the 4 dimension means."""
    values = [assessment.per_criterion[cid].aggregate for cid in criteria.criterion_ids()]
    values += [assessment.dimension_scores[d] for d in ASSESSMENT_DIMENSIONS]
    return np.array(values, dtype=np.float64)


@dataclass
class ModelSet:
    models: dict[tuple[str, str], TreeModel] = field(default_factory=dict)
    hybrid_weight: float = 0.5
    k_min: int = 3

    def get(self, signal_source: str, milestone: str) -> TreeModel | None:
        return self.models.get((signal_source, milestone))

    def trained_slots(self) -> list[str]:
        return sorted(f"{src}:{ms}" for src, ms in self.models)

    def to_dict(self) -> dict:
        return {
            "hybrid_weight": self.hybrid_weight,
            "k_min": self.k_min,
            "models": {f"{src}:{ms}": m.to_dict() for (src, ms), m in self.models.items()},
        }

    def serialize(self) -> str:
        return canonical.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "ModelSet":
        models = {}
        for key, m in doc["models"].items():
            src, ms = key.split(":", 1)
            models[(src, ms)] = TreeModel.from_dict(m)
        return cls(models=models, hybrid_weight=doc["hybrid_weight"], k_min=doc["k_min"])

    @classmethod
    def deserialize(cls, text: str) -> "ModelSet":
        return cls.from_dict(canonical.loads(text))


def train_all(
    datasets: dict[tuple[str, str], LabeledDataset],
    params: CartParams = CartParams(),
    hybrid_weight: float = 0.5,
    k_min: int = 3,
) -> tuple[ModelSet, dict[str, str]]:
    """Train every (signal source, milestone) slot that has data. Returns the
    set plus a report of slots left empty and why."""
    model_set = ModelSet(hybrid_weight=hybrid_weight, k_min=k_min)
    empty: dict[str, str] = {}
    for src in SIGNAL_SOURCES:
        for ms in MILESTONES:
            key = f"{src}:{ms}"
            data = datasets.get((src, ms))
            if data is None or data.n_rows == 0:
                empty[key] = "no labeled rows"
                continue
            model_set.models[(src, ms)] = train_cart(data, params)
    return model_set, empty


@dataclass(frozen=True)
class MilestonePrediction:
    milestone: str
    p_hybrid: float
    p_machine: float
    p_crowd: float | None
    basis: str

    def to_dict(self) -> dict:
        return {
            "milestone": self.milestone,
            "p_hybrid": self.p_hybrid,
            "p_machine": self.p_machine,
            "p_crowd": self.p_crowd,
            "basis": self.basis,
        }


def hybrid_predict(
    model_set: ModelSet,
    version: BusinessModelVersion,
    catalog: PatternCatalog,
    criteria: CriteriaCatalog,
    assessment: AggregatedAssessment | None = None,
) -> dict[str, MilestonePrediction]:
    """Per-milestone probabilities. Requires a machine model (cold-start
    floor); the crowd model joins once enough judges have rated."""
    vector = encode(version, catalog)
    out: dict[str, MilestonePrediction] = {}
    for ms in MILESTONES:
        machine = model_set.get("machine", ms)
        if machine is None:
            continue
        p_machine = machine.predict(vector.values)
        crowd = model_set.get("crowd", ms)
        p_crowd = None
        if crowd is not None and assessment is not None and assessment.judge_count >= model_set.k_min:
            p_crowd = crowd.predict(crowd_features(assessment, criteria))
        if p_crowd is None:
            out[ms] = MilestonePrediction(ms, p_machine, p_machine, None, "machine-only")
        else:
            w = model_set.hybrid_weight
            out[ms] = MilestonePrediction(ms, w * p_machine + (1.0 - w) * p_crowd, p_machine, p_crowd, "hybrid")
    if not out:
        raise ValueError("no trained machine model for any milestone")
    return out


def whatif_scan(
    model_set: ModelSet,
    version: BusinessModelVersion,
    catalog: PatternCatalog,
    milestone: str,
    top: int = 5,
) -> list[dict]:
    """Single-element counterfactual sweep on the machine model: for every
    alternative choice, the predicted probability if only that element
    changed. Positive deltas only, best first, catalog order on ties."""
    machine = model_set.get("machine", milestone)
    if machine is None:
        raise ValueError(f"no trained machine model for milestone '{milestone}'")
    p_current = machine.predict(encode(version, catalog).values)
    candidates: list[tuple[float, int, dict]] = []
    order = 0
    for element in catalog.elements:
        current_choice = version.choices[element.element_id]
        for choice in element.choices:
            if choice == current_choice:
                continue
            altered = BusinessModelVersion(
                venture_id=version.venture_id,
                version_number=version.version_number,
                parent_version=version.parent_version,
                choices={**version.choices, element.element_id: choice},
                metadata=version.metadata,
                profile_text=version.profile_text,
                created_at=version.created_at,
                catalog_version=version.catalog_version,
            )
            p_new = machine.predict(encode(altered, catalog).values)
            delta = p_new - p_current
            if delta > 0:
                candidates.append(
                    (delta, order, {"element_id": element.element_id, "alternative_choice": choice, "p_new": p_new, "delta": delta})
                )
            order += 1
    candidates.sort(key=lambda t: (-t[0], t[1]))
    return [entry for _, _, entry in candidates[:top]]
