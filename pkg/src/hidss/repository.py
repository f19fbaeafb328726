"""Append-only knowledge repository.

Everything the system learns is an event: venture registrations, model
versions, judgments, outcomes, issued guidance, mentor registrations. State
is a fold over the log, so replaying the log from empty reproduces the exact
snapshot bytes. Writes funnel through one lock; readers get immutable
snapshots.
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import canonical
from .cart import LabeledDataset
from .feedback import AggregationConfig, CriteriaCatalog, Judgment, aggregate, validate_ratings
from .hybrid import crowd_features, crowd_schema_id
from .matching import MentorProfile
from .ontology import (
    BusinessModelVersion,
    PatternCatalog,
    ValidationError,
    ValidationIssue,
    encode,
    new_version,
)

EVENT_KINDS = (
    "VentureRegistered",
    "VersionCreated",
    "JudgmentSubmitted",
    "GuidanceIssued",
    "OutcomeRecorded",
    "MentorRegistered",
)

MILESTONES = ("survival", "series_a")


@dataclass(frozen=True)
class Event:
    sequence_number: int
    kind: str
    payload: dict
    recorded_at: str

    def to_dict(self) -> dict:
        return {
            "sequence_number": self.sequence_number,
            "kind": self.kind,
            "payload": self.payload,
            "recorded_at": self.recorded_at,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Event":
        return cls(doc["sequence_number"], doc["kind"], doc["payload"], doc.get("recorded_at", ""))


@dataclass(frozen=True)
class OutcomeRecord:
    venture_id: str
    version_number: int
    milestone: str
    achieved: bool
    observed_at: str

    def to_dict(self) -> dict:
        return {
            "venture_id": self.venture_id,
            "version_number": self.version_number,
            "milestone": self.milestone,
            "achieved": self.achieved,
            "observed_at": self.observed_at,
        }


class _VentureState:
    def __init__(self, venture_id: str, name: str):
        self.venture_id = venture_id
        self.name = name
        self.versions: dict[int, BusinessModelVersion] = {}
        self.judgments: dict[int, dict[str, Judgment]] = {}   # version -> mentor -> judgment
        self.outcomes: dict[str, OutcomeRecord] = {}
        self.guidance: list[dict] = []

    @property
    def latest_version_number(self) -> int | None:
        return max(self.versions) if self.versions else None


class Repository:
    """Event log plus the folded current state.

    `append` validates, applies, and persists under one lock; `replay` applies
    an already-validated log.
    """

    def __init__(
        self,
        pattern_catalog: PatternCatalog,
        criteria_catalog: CriteriaCatalog,
        log_path: str | Path | None = None,
        fsync_on_append: bool = False,
    ):
        self.pattern_catalog = pattern_catalog
        self.criteria_catalog = criteria_catalog
        self.log_path = Path(log_path) if log_path is not None else None
        self.fsync_on_append = fsync_on_append
        self.events: list[Event] = []
        self.ventures: dict[str, _VentureState] = {}
        self.mentors: dict[str, MentorProfile] = {}
        self._lock = threading.Lock()
        if self.log_path is not None and self.log_path.exists():
            self.replay_file(self.log_path)

    # -- log mechanics ------------------------------------------------------

    def append(self, kind: str, payload: dict, recorded_at: str = "") -> int:
        with self._lock:
            self._validate(kind, payload)
            event = Event(len(self.events) + 1, kind, payload, recorded_at)
            self._apply(event)
            self.events.append(event)
            self._persist(event)
            return event.sequence_number

    def replay_file(self, path: str | Path) -> None:
        for line in Path(path).read_text().splitlines():
            if line.strip():
                self.replay_event(Event.from_dict(canonical.loads(line)))

    def replay_event(self, event: Event) -> None:
        if event.sequence_number != len(self.events) + 1:
            raise ValidationError([ValidationIssue("sequence-gap", "sequence_number", f"expected {len(self.events) + 1}, got {event.sequence_number}")])
        self._apply(event)
        self.events.append(event)

    def export_log(self, path: str | Path) -> int:
        with open(path, "w") as fh:
            for event in self.events:
                fh.write(canonical.dumps(event.to_dict()) + "\n")
        return len(self.events)

    def _persist(self, event: Event) -> None:
        if self.log_path is None:
            return
        with open(self.log_path, "a") as fh:
            fh.write(canonical.dumps(event.to_dict()) + "\n")
            if self.fsync_on_append:
                fh.flush()
                os.fsync(fh.fileno())

    # -- validation and fold ------------------------------------------------

    def _validate(self, kind: str, payload: dict) -> None:
        if kind not in EVENT_KINDS:
            raise ValidationError([ValidationIssue("unknown-event-kind", "kind", f"unknown event kind '{kind}'")])
        if kind == "VentureRegistered":
            if payload["venture_id"] in self.ventures:
                raise ValidationError([ValidationIssue("duplicate-venture", "venture_id", "venture already registered")])
        elif kind == "MentorRegistered":
            MentorProfile.from_dict(payload)  # raises on bad tags
        elif kind == "VersionCreated":
            state = self._venture(payload["venture_id"])
            version = BusinessModelVersion.from_dict(payload)
            latest = state.latest_version_number
            expected_parent = latest
            if version.parent_version != expected_parent or version.version_number != (latest or 0) + 1:
                raise ValidationError([ValidationIssue("stale-base", "parent_version", f"revision must extend version {latest}")])
        elif kind == "JudgmentSubmitted":
            state = self._venture(payload["venture_id"])
            if payload["version_number"] not in state.versions:
                raise ValidationError([ValidationIssue("unknown-version", "version_number", f"venture has no version {payload['version_number']}")])
            issues = validate_ratings(payload["ratings"], self.criteria_catalog)
            if issues:
                raise ValidationError(issues)
        elif kind == "OutcomeRecorded":
            state = self._venture(payload["venture_id"])
            if payload["milestone"] not in MILESTONES:
                raise ValidationError([ValidationIssue("unknown-milestone", "milestone", f"unknown milestone '{payload['milestone']}'")])
            if payload["milestone"] in state.outcomes:
                raise ValidationError([ValidationIssue("duplicate-outcome", "milestone", "outcome already recorded for this milestone")])
            if not state.versions:
                raise ValidationError([ValidationIssue("no-version", "venture_id", "cannot record an outcome before any version exists")])
        elif kind == "GuidanceIssued":
            self._venture(payload["venture_id"])

    def _apply(self, event: Event) -> None:
        payload = event.payload
        if event.kind == "VentureRegistered":
            self.ventures[payload["venture_id"]] = _VentureState(payload["venture_id"], payload.get("name", ""))
        elif event.kind == "MentorRegistered":
            profile = MentorProfile.from_dict(payload)
            self.mentors[profile.mentor_id] = profile
        elif event.kind == "VersionCreated":
            version = BusinessModelVersion.from_dict(payload)
            self.ventures[version.venture_id].versions[version.version_number] = version
        elif event.kind == "JudgmentSubmitted":
            judgment = Judgment.from_dict(payload)
            state = self.ventures[judgment.venture_id]
            state.judgments.setdefault(judgment.version_number, {})[judgment.mentor_id] = judgment
        elif event.kind == "OutcomeRecorded":
            state = self.ventures[payload["venture_id"]]
            state.outcomes[payload["milestone"]] = OutcomeRecord(
                payload["venture_id"], payload["version_number"], payload["milestone"], bool(payload["achieved"]), payload.get("observed_at", "")
            )
        elif event.kind == "GuidanceIssued":
            self.ventures[payload["venture_id"]].guidance.append(payload)

    def _venture(self, venture_id: str) -> _VentureState:
        if venture_id not in self.ventures:
            raise ValidationError([ValidationIssue("unknown-venture", "venture_id", f"unknown venture '{venture_id}'")])
        return self.ventures[venture_id]

    # -- high-level write path ---------------------------------------------

    def register_venture(self, venture_id: str, name: str = "", recorded_at: str = "") -> int:
        return self.append("VentureRegistered", {"venture_id": venture_id, "name": name}, recorded_at)

    def register_mentor(self, profile: MentorProfile, recorded_at: str = "") -> int:
        return self.append("MentorRegistered", profile.to_dict(), recorded_at)

    def create_version(
        self,
        venture_id: str,
        choices: dict[str, str],
        metadata: dict,
        profile_text: dict[str, str],
        base_version: int | None = None,
        created_at: str = "",
    ) -> BusinessModelVersion:
        state = self._venture(venture_id)
        latest = state.latest_version_number
        if base_version != latest:
            raise ValidationError([ValidationIssue("stale-base", "base_version", f"base {base_version} is not the latest version ({latest})")])
        base = state.versions[latest] if latest is not None else None
        version = new_version(venture_id, base, choices, metadata, profile_text, self.pattern_catalog, created_at)
        self.append("VersionCreated", version.to_dict(), created_at)
        return version

    def submit_judgment(self, judgment: Judgment) -> int:
        return self.append("JudgmentSubmitted", judgment.to_dict(), judgment.submitted_at)

    def record_outcome(self, venture_id: str, milestone: str, achieved: bool, observed_at: str = "") -> OutcomeRecord:
        state = self._venture(venture_id)
        latest = state.latest_version_number
        if latest is None:
            raise ValidationError([ValidationIssue("no-version", "venture_id", "cannot record an outcome before any version exists")])
        record = OutcomeRecord(venture_id, latest, milestone, achieved, observed_at)
        self.append("OutcomeRecorded", record.to_dict(), observed_at)
        return record

    def issue_guidance(self, report: dict, recorded_at: str = "") -> int:
        return self.append("GuidanceIssued", report, recorded_at)

    # -- reads --------------------------------------------------------------

    def snapshot(self, venture_id: str) -> dict:
        state = self._venture(venture_id)
        return {
            "venture_id": state.venture_id,
            "name": state.name,
            "latest_version": state.latest_version_number,
            "versions": [state.versions[n].to_dict() for n in sorted(state.versions)],
            "judgments": {
                str(n): [state.judgments[n][m].to_dict() for m in sorted(state.judgments[n])]
                for n in sorted(state.judgments)
            },
            "outcomes": {ms: state.outcomes[ms].to_dict() for ms in sorted(state.outcomes)},
            "guidance": list(state.guidance),
        }

    def snapshot_bytes(self, venture_id: str) -> bytes:
        return canonical.dumpb(self.snapshot(venture_id))

    def judgments_for(self, venture_id: str, version_number: int) -> list[Judgment]:
        state = self._venture(venture_id)
        by_mentor = state.judgments.get(version_number, {})
        return [by_mentor[m] for m in sorted(by_mentor)]

    def pattern_stats(self, milestone: str) -> dict[str, dict[str, dict]]:
        """Choice frequencies and success rates over labeled ventures."""
        stats: dict[str, dict[str, dict]] = {}
        for state in self.ventures.values():
            outcome = state.outcomes.get(milestone)
            if outcome is None:
                continue
            version = state.versions[outcome.version_number]
            for element_id, choice in version.choices.items():
                cell = stats.setdefault(element_id, {}).setdefault(choice, {"n": 0, "successes": 0})
                cell["n"] += 1
                cell["successes"] += int(outcome.achieved)
        for per_choice in stats.values():
            for cell in per_choice.values():
                cell["rate"] = cell["successes"] / cell["n"]
        return stats

    def training_dataset(
        self,
        signal_source: str,
        milestone: str,
        k_min: int = 3,
        agg_config: AggregationConfig = AggregationConfig(),
    ) -> LabeledDataset:
        """One row per labeled venture: machine rows encode the labeled
        version, crowd rows use its aggregated ratings (only with >= k_min
        judges)."""
        rows: list[np.ndarray] = []
        labels: list[int] = []
        for venture_id in sorted(self.ventures):
            state = self.ventures[venture_id]
            outcome = state.outcomes.get(milestone)
            if outcome is None:
                continue
            version = state.versions[outcome.version_number]
            if signal_source == "machine":
                rows.append(encode(version, self.pattern_catalog).values)
                labels.append(int(outcome.achieved))
            elif signal_source == "crowd":
                judgments = self.judgments_for(venture_id, outcome.version_number)
                if len(judgments) < k_min:
                    continue
                assessment = aggregate(judgments, self.criteria_catalog, agg_config)
                rows.append(crowd_features(assessment, self.criteria_catalog))
                labels.append(int(outcome.achieved))
            else:
                raise ValueError(f"unknown signal source '{signal_source}'")
        schema = self.pattern_catalog.catalog_version if signal_source == "machine" else crowd_schema_id(self.criteria_catalog)
        X = np.array(rows, dtype=np.float64) if rows else np.empty((0, 0))
        return LabeledDataset(X=X, y=np.array(labels, dtype=np.int64), feature_schema_id=schema, milestone=milestone, signal_source=signal_source)
