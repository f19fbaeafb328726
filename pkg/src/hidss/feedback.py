"""Mentor judgments on the 21-criterion scale and crowd aggregation.

Aggregation is the error-reduction step: per criterion the crowd value is a
trimmed mean (robust to single-judge outliers once five or more judges have
rated), dispersion is the sample standard deviation, and criteria whose
dispersion exceeds a threshold are flagged as contested so disagreement is
surfaced instead of averaged away.
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .ontology import ValidationError, ValidationIssue

ASSESSMENT_DIMENSIONS = ("desirability", "implementability", "scalability", "profitability")
EXPECTED_COUNTS = {"desirability": 6, "implementability": 5, "scalability": 5, "profitability": 5}
RATING_MIN, RATING_MAX = 1, 10


@dataclass(frozen=True)
class CriterionDef:
    criterion_id: str
    assessment_dimension: str
    display_name: str


@dataclass(frozen=True)
class CriteriaCatalog:
    catalog_version: str
    criteria: tuple[CriterionDef, ...]

    def __post_init__(self):
        if len(self.criteria) != 21:
            raise ValueError(f"expected 21 criteria, got {len(self.criteria)}")
        counts = {d: 0 for d in ASSESSMENT_DIMENSIONS}
        for c in self.criteria:
            if c.assessment_dimension not in counts:
                raise ValueError(f"unknown assessment dimension '{c.assessment_dimension}'")
            counts[c.assessment_dimension] += 1
        if counts != EXPECTED_COUNTS:
            raise ValueError(f"criteria per dimension must be {EXPECTED_COUNTS}, got {counts}")
        ids = [c.criterion_id for c in self.criteria]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate criterion ids")

    def criterion_ids(self) -> list[str]:
        return [c.criterion_id for c in self.criteria]

    def by_dimension(self, dimension: str) -> list[CriterionDef]:
        return [c for c in self.criteria if c.assessment_dimension == dimension]

    def to_dict(self) -> dict:
        return {
            "catalog_version": self.catalog_version,
            "criteria": [
                {"criterion_id": c.criterion_id, "assessment_dimension": c.assessment_dimension, "display_name": c.display_name}
                for c in self.criteria
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "CriteriaCatalog":
        return cls(
            catalog_version=doc.get("catalog_version", "criteria"),
            criteria=tuple(
                CriterionDef(c["criterion_id"], c["assessment_dimension"], c.get("display_name", c["criterion_id"]))
                for c in doc["criteria"]
            ),
        )

    @classmethod
    def load(cls, path: str | Path) -> "CriteriaCatalog":
        return cls.from_dict(json.loads(Path(path).read_text()))

    @classmethod
    def default(cls) -> "CriteriaCatalog":
        text = resources.files("hidss.data").joinpath("criteria_catalog.json").read_text()
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Judgment:
    judgment_id: str
    venture_id: str
    version_number: int
    mentor_id: str
    ratings: dict[str, int]
    comments: dict[str, str]
    submitted_at: str

    def to_dict(self) -> dict:
        return {
            "judgment_id": self.judgment_id,
            "venture_id": self.venture_id,
            "version_number": self.version_number,
            "mentor_id": self.mentor_id,
            "ratings": dict(self.ratings),
            "comments": dict(self.comments),
            "submitted_at": self.submitted_at,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Judgment":
        return cls(
            judgment_id=doc["judgment_id"],
            venture_id=doc["venture_id"],
            version_number=doc["version_number"],
            mentor_id=doc["mentor_id"],
            ratings={k: int(v) for k, v in doc["ratings"].items()},
            comments=dict(doc.get("comments", {})),
            submitted_at=doc.get("submitted_at", ""),
        )


def validate_ratings(ratings: dict, catalog: CriteriaCatalog) -> list[ValidationIssue]:
    issues: list[ValidationIssue] = []
    known = set(catalog.criterion_ids())
    for cid in sorted(set(ratings) - known):
        issues.append(ValidationIssue("unknown-criterion", cid, f"criterion '{cid}' not in catalog"))
    for cid in catalog.criterion_ids():
        if cid not in ratings:
            issues.append(ValidationIssue("missing-criterion", cid, f"no rating for criterion '{cid}'"))
            continue
        value = ratings[cid]
        if not isinstance(value, int) or isinstance(value, bool) or not (RATING_MIN <= value <= RATING_MAX):
            issues.append(
                ValidationIssue("rating-out-of-range", cid, f"rating for '{cid}' must be an integer in [{RATING_MIN}, {RATING_MAX}]")
            )
    return issues


@dataclass(frozen=True)
class CriterionAggregate:
    aggregate: float
    dispersion: float
    n: int


@dataclass
class AggregatedAssessment:
    venture_id: str
    version_number: int
    judge_count: int
    per_criterion: dict[str, CriterionAggregate] = field(default_factory=dict)
    dimension_scores: dict[str, float] = field(default_factory=dict)
    contested: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "venture_id": self.venture_id,
            "version_number": self.version_number,
            "judge_count": self.judge_count,
            "per_criterion": {
                cid: {"aggregate": a.aggregate, "dispersion": a.dispersion, "n": a.n} for cid, a in self.per_criterion.items()
            },
            "dimension_scores": dict(self.dimension_scores),
            "contested": list(self.contested),
        }


@dataclass(frozen=True)
class AggregationConfig:
    trimmed: bool = True
    contested_threshold: float = 2.5


def trimmed_mean(values: list[float], trimmed: bool = True) -> float:
    """Mean with max(1, floor(0.1*n)) values cut from each end once n >= 5;
    plain mean below that (scarce data is not discarded)."""
    n = len(values)
    if n == 0:
        raise ValueError("no values")
    if trimmed and n >= 5:
        t = max(1, math.floor(0.1 * n))
        kept = sorted(values)[t : n - t]
        return sum(kept) / len(kept)
    return sum(values) / n


def dispersion(values: list[float]) -> float:
    return statistics.stdev(values) if len(values) > 1 else 0.0


def aggregate(
    judgments: list[Judgment],
    catalog: CriteriaCatalog,
    config: AggregationConfig = AggregationConfig(),
) -> AggregatedAssessment:
    """Crowd view over one version. Empty input yields judge_count 0 and no
    aggregates; the caller decides what absence means downstream."""
    if not judgments:
        return AggregatedAssessment(venture_id="", version_number=0, judge_count=0)
    refs = {(j.venture_id, j.version_number) for j in judgments}
    if len(refs) != 1:
        raise ValidationError([ValidationIssue("mixed-version-refs", "judgments", f"judgments span versions {sorted(refs)}")])
    venture_id, version_number = judgments[0].venture_id, judgments[0].version_number

    out = AggregatedAssessment(venture_id=venture_id, version_number=version_number, judge_count=len(judgments))
    for cid in catalog.criterion_ids():
        ratings = [float(j.ratings[cid]) for j in judgments]
        out.per_criterion[cid] = CriterionAggregate(
            aggregate=trimmed_mean(ratings, config.trimmed),
            dispersion=dispersion(ratings),
            n=len(ratings),
        )
    for dim in ASSESSMENT_DIMENSIONS:
        members = catalog.by_dimension(dim)
        out.dimension_scores[dim] = sum(out.per_criterion[c.criterion_id].aggregate for c in members) / len(members)
    out.contested = contested_criteria(out, config.contested_threshold)
    return out


def contested_criteria(assessment: AggregatedAssessment, threshold: float = 2.5) -> list[str]:
    """Criteria whose judge dispersion exceeds the threshold, most contested
    first (criterion id breaks exact ties)."""
    hot = [(cid, a.dispersion) for cid, a in assessment.per_criterion.items() if a.dispersion > threshold]
    hot.sort(key=lambda t: (-t[1], t[0]))
    return [cid for cid, _ in hot]
