"""Mentor recommendation per business-model dimension.

Each value dimension has a primary expertise tag (demand-side knowledge for
the market-facing dimensions, supply-side for creation and capture) plus
secondary tags that earn a smaller bonus; an industry match earns a separate
bonus. Scoring is a plain weighted sum so rankings are auditable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ontology import DIMENSIONS, BusinessModelVersion

EXPERTISE_TAGS = ("market", "technology", "finance")

# dimension -> (primary tag, secondary tags)
TAG_MAP: dict[str, tuple[str, tuple[str, ...]]] = {
    "value_proposition": ("market", ("technology",)),
    "value_delivery": ("market", ("technology",)),
    "value_creation": ("technology", ("market",)),
    "value_capture": ("finance", ("market",)),
}


@dataclass(frozen=True)
class MatchWeights:
    dimension: float = 2.0
    industry: float = 1.0
    secondary: float = 0.5


@dataclass(frozen=True)
class MentorProfile:
    mentor_id: str
    expertise_tags: frozenset[str]
    industries: frozenset[str]
    display_name: str = ""

    def __post_init__(self):
        if not self.expertise_tags:
            raise ValueError("mentor needs at least one expertise tag")
        unknown = set(self.expertise_tags) - set(EXPERTISE_TAGS)
        if unknown:
            raise ValueError(f"unknown expertise tags: {sorted(unknown)}")

    def to_dict(self) -> dict:
        return {
            "mentor_id": self.mentor_id,
            "expertise_tags": sorted(self.expertise_tags),
            "industries": sorted(self.industries),
            "display_name": self.display_name,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "MentorProfile":
        return cls(
            mentor_id=doc["mentor_id"],
            expertise_tags=frozenset(doc["expertise_tags"]),
            industries=frozenset(doc.get("industries", ())),
            display_name=doc.get("display_name", ""),
        )


@dataclass(frozen=True)
class RankedMentor:
    mentor_id: str
    score: float
    low_confidence: bool = False

    def to_dict(self) -> dict:
        return {"mentor_id": self.mentor_id, "score": self.score, "low_confidence": self.low_confidence}


@dataclass
class MatchAssignment:
    by_dimension: dict[str, list[RankedMentor]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {dim: [m.to_dict() for m in lst] for dim, lst in self.by_dimension.items()}


def match_score(mentor: MentorProfile, version: BusinessModelVersion, dimension: str, weights: MatchWeights = MatchWeights()) -> float:
    if dimension not in TAG_MAP:
        raise ValueError(f"unknown dimension '{dimension}'")
    primary, secondary = TAG_MAP[dimension]
    score = 0.0
    if primary in mentor.expertise_tags:
        score += weights.dimension
    if version.metadata.industry in mentor.industries:
        score += weights.industry
    if mentor.expertise_tags & set(secondary):
        score += weights.secondary
    return score


def recommend(
    version: BusinessModelVersion,
    pool: list[MentorProfile],
    k: int,
    weights: MatchWeights = MatchWeights(),
) -> MatchAssignment:
    """Top-k mentors per dimension, score descending with mentor-id tie-break.
    Zero-score mentors stay eligible (flagged) so no dimension is left empty."""
    if k < 1:
        raise ValueError("k must be positive")
    if not pool:
        raise ValueError("mentor pool is empty")
    assignment = MatchAssignment()
    for dim in DIMENSIONS:
        scored = [(match_score(m, version, dim, weights), m.mentor_id) for m in pool]
        scored.sort(key=lambda t: (-t[0], t[1]))
        assignment.by_dimension[dim] = [
            RankedMentor(mentor_id, score, low_confidence=score == 0.0) for score, mentor_id in scored[:k]
        ]
    return assignment
