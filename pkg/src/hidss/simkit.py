"""Synthetic world generator and evaluation oracle.

Ventures get a "hard" quality score (a linear function of their categorical
design choices, visible to the machine through the encoding) and a "soft"
latent score (visible only to judges, who rate around it with noise).
Milestone outcomes are Bernoulli draws through a logistic link over the
weighted sum of both, so worlds can be tuned to carry only hard signal, only
soft signal, or both. Everything derives from one seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cart import MILESTONES
from .feedback import CriteriaCatalog, Judgment, aggregate
from .hybrid import ModelSet, crowd_features, hybrid_predict
from .matching import EXPERTISE_TAGS, MentorProfile
from .ontology import DIMENSIONS, BusinessModelVersion, ModelMetadata, PatternCatalog, encode
from .repository import Repository


@dataclass(frozen=True)
class WorldParams:
    seed: int = 0
    n_ventures: int = 100
    n_mentors: int = 20
    hard_weight: float = 1.0
    soft_weight: float = 1.0
    judge_noise: float = 1.0
    judges_per_venture: int = 3

    def __post_init__(self):
        if self.hard_weight < 0 or self.soft_weight < 0 or self.judge_noise < 0:
            raise ValueError("weights and noise must be >= 0")
        if self.judges_per_venture < 0 or self.n_ventures < 1 or self.n_mentors < 1:
            raise ValueError("bad world sizes")
        if self.judges_per_venture > self.n_mentors:
            raise ValueError("more judges per venture than mentors")


@dataclass
class SimVenture:
    version: BusinessModelVersion
    soft_score: float
    hard_scores: dict[str, float]
    true_probabilities: dict[str, float]
    outcomes: dict[str, bool]
    judgments: list[Judgment] = field(default_factory=list)


@dataclass
class World:
    params: WorldParams
    mentors: list[MentorProfile]
    ventures: list[SimVenture]
    choice_coefficients: dict[str, dict[str, dict[str, float]]]   # milestone -> element -> choice -> coeff


def _logistic(x: float) -> float:
    return 1.0 / (1.0 + math.exp(-x))


def generate_world(params: WorldParams, catalog: PatternCatalog, criteria: CriteriaCatalog) -> World:
    rng = np.random.default_rng(params.seed)
    # Concentrate the hard signal on a few pivotal elements per milestone
    # (unit variance overall) so configuration really is predictive rather
    # than diluted across every element.
    n_pivotal = min(3, len(catalog.elements))
    scale = 1.0 / math.sqrt(n_pivotal)
    coefficients: dict[str, dict[str, dict[str, float]]] = {}
    for ms in MILESTONES:
        pivotal = set(rng.choice(len(catalog.elements), size=n_pivotal, replace=False).tolist())
        coefficients[ms] = {
            e.element_id: {c: (float(rng.normal()) * scale if i in pivotal else 0.0) for c in e.choices}
            for i, e in enumerate(catalog.elements)
        }

    mentors = []
    for i in range(params.n_mentors):
        n_tags = int(rng.integers(1, len(EXPERTISE_TAGS) + 1))
        tags = rng.choice(EXPERTISE_TAGS, size=n_tags, replace=False)
        n_ind = int(rng.integers(1, min(3, len(catalog.industries)) + 1))
        industries = rng.choice(catalog.industries, size=n_ind, replace=False)
        mentors.append(
            MentorProfile(
                mentor_id=f"sim-mentor-{i:04d}",
                expertise_tags=frozenset(str(t) for t in tags),
                industries=frozenset(str(x) for x in industries),
                display_name=f"Simulated mentor {i}",
            )
        )

    ventures = []
    for i in range(params.n_ventures):
        venture_id = f"sim-venture-{i:05d}"
        choices = {e.element_id: e.choices[int(rng.integers(len(e.choices)))] for e in catalog.elements}
        metadata = ModelMetadata(
            team_size=int(rng.integers(1, 13)),
            venture_age_months=int(rng.integers(0, 61)),
            industry=catalog.industries[int(rng.integers(len(catalog.industries)))],
        )
        soft = float(rng.normal())
        hard = {ms: sum(coefficients[ms][e][c] for e, c in choices.items()) for ms in MILESTONES}
        probs = {ms: _logistic(params.hard_weight * hard[ms] + params.soft_weight * soft) for ms in MILESTONES}
        outcomes = {ms: bool(rng.random() < probs[ms]) for ms in MILESTONES}

        version = BusinessModelVersion(
            venture_id=venture_id,
            version_number=1,
            parent_version=None,
            choices=choices,
            metadata=metadata,
            profile_text={d: f"simulated profile for {venture_id}" for d in DIMENSIONS},
            created_at="2026-01-01T00:00:00Z",
            catalog_version=catalog.catalog_version,
        )

        judge_ids = rng.choice(len(mentors), size=params.judges_per_venture, replace=False)
        judgments = []
        for j in judge_ids:
            ratings = {}
            for cid in criteria.criterion_ids():
                raw = 5.5 + 1.5 * soft + float(rng.normal()) * params.judge_noise
                ratings[cid] = int(min(10, max(1, round(raw))))
            judgments.append(
                Judgment(
                    judgment_id=f"{venture_id}-j{int(j):04d}",
                    venture_id=venture_id,
                    version_number=1,
                    mentor_id=mentors[int(j)].mentor_id,
                    ratings=ratings,
                    comments={},
                    submitted_at="2026-01-02T00:00:00Z",
                )
            )

        ventures.append(SimVenture(version, soft, hard, probs, outcomes, judgments))

    return World(params=params, mentors=mentors, ventures=ventures, choice_coefficients=coefficients)


def populate_repository(world: World, repo: Repository, ventures: list[SimVenture] | None = None) -> None:
    """Load (a subset of) the world into a repository as regular events."""
    for mentor in world.mentors:
        if mentor.mentor_id not in repo.mentors:
            repo.register_mentor(mentor)
    for sim in world.ventures if ventures is None else ventures:
        repo.register_venture(sim.version.venture_id, name=sim.version.venture_id)
        repo.append("VersionCreated", sim.version.to_dict())
        for judgment in sim.judgments:
            repo.submit_judgment(judgment)
        for ms, achieved in sim.outcomes.items():
            repo.record_outcome(sim.version.venture_id, ms, achieved, observed_at="2026-02-01T00:00:00Z")


def world_to_seed_doc(world: World) -> dict:
    """Importable seed-data document (`hidss seed --ventures`)."""
    return {
        "mentors": [m.to_dict() for m in world.mentors],
        "ventures": [
            {
                "version": sim.version.to_dict(),
                "judgments": [j.to_dict() for j in sim.judgments],
                "outcomes": {ms: achieved for ms, achieved in sorted(sim.outcomes.items())},
            }
            for sim in world.ventures
        ],
    }


def auc_score(scores: np.ndarray, labels: np.ndarray) -> float | None:
    """Ranking AUC (Mann-Whitney with tie correction); None when the labels
    are single-class."""
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    n_pos = int(np.sum(labels == 1))
    n_neg = int(np.sum(labels == 0))
    if n_pos == 0 or n_neg == 0:
        return None
    order = np.argsort(scores, kind="mergesort")
    ranks = np.empty(len(scores), dtype=np.float64)
    sorted_scores = scores[order]
    i = 0
    while i < len(scores):
        j = i
        while j + 1 < len(scores) and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0   # average rank, 1-based
        i = j + 1
    rank_sum_pos = float(np.sum(ranks[labels == 1]))
    return (rank_sum_pos - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def brier_score(probs: np.ndarray, labels: np.ndarray) -> float:
    probs = np.asarray(probs, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.float64)
    return float(np.mean((probs - labels) ** 2))


def evaluate_guidance(
    world: World,
    model_set: ModelSet,
    catalog: PatternCatalog,
    criteria: CriteriaCatalog,
    holdout: list[SimVenture],
) -> dict[str, dict]:
    """AUC and Brier per (signal, milestone) over a held-out venture slice."""
    metrics: dict[str, dict] = {}
    for ms in MILESTONES:
        labels = np.array([int(sim.outcomes[ms]) for sim in holdout])
        columns: dict[str, list[float | None]] = {"machine": [], "crowd": [], "hybrid": []}
        for sim in holdout:
            machine = model_set.get("machine", ms)
            crowd = model_set.get("crowd", ms)
            p_machine = machine.predict(encode(sim.version, catalog).values) if machine else None
            p_crowd = None
            if crowd is not None and len(sim.judgments) >= model_set.k_min:
                assessment = aggregate(sim.judgments, criteria)
                p_crowd = crowd.predict(crowd_features(assessment, criteria))
            columns["machine"].append(p_machine)
            columns["crowd"].append(p_crowd)
            if p_machine is not None and p_crowd is not None:
                w = model_set.hybrid_weight
                columns["hybrid"].append(w * p_machine + (1.0 - w) * p_crowd)
            else:
                columns["hybrid"].append(p_machine if p_machine is not None else p_crowd)
        for signal, values in columns.items():
            if any(v is None for v in values):
                metrics[f"{signal}:{ms}"] = {"auc": None, "brier": None, "n": len(holdout)}
                continue
            arr = np.array(values, dtype=np.float64)
            metrics[f"{signal}:{ms}"] = {
                "auc": auc_score(arr, labels),
                "brier": brier_score(arr, labels),
                "n": len(holdout),
            }
    return metrics
