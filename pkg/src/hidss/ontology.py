"""Business model ontology: catalog, versioned models, encoding, diffing.

A business model is a total map from catalog elements to one categorical
choice each, plus a small numeric metadata block and free-text profile notes
per value dimension. Versions are immutable; revisions link to their parent
and the repository enforces a linear history per venture.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

DIMENSIONS = ("value_proposition", "value_delivery", "value_creation", "value_capture")

# Encoding appends these after the one-hot blocks, in this order. Industry is
# stored as its index in the catalog's industry list so the vector stays flat.
METADATA_FIELDS = ("team_size", "venture_age_months", "industry_code")


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    field: str
    message: str

    def to_dict(self) -> dict:
        return {"code": self.code, "field": self.field, "message": self.message}


class ValidationError(ValueError):
    """Carries every violation found, not just the first."""

    def __init__(self, issues: list[ValidationIssue]):
        self.issues = issues
        super().__init__("; ".join(f"{i.code}({i.field}): {i.message}" for i in issues))


@dataclass(frozen=True)
class ElementDef:
    element_id: str
    dimension_id: str
    display_name: str
    choices: tuple[str, ...]

    def __post_init__(self):
        if len(self.choices) < 2:
            raise ValueError(f"element {self.element_id} needs >= 2 choices")
        if len(set(self.choices)) != len(self.choices):
            raise ValueError(f"element {self.element_id} has duplicate choices")


@dataclass(frozen=True)
class PatternCatalog:
    catalog_version: str
    elements: tuple[ElementDef, ...]
    industries: tuple[str, ...]

    def __post_init__(self):
        ids = [e.element_id for e in self.elements]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate element ids")
        bad = {e.dimension_id for e in self.elements} - set(DIMENSIONS)
        if bad:
            raise ValueError(f"element dimensions must come from {DIMENSIONS}, got extra {sorted(bad)}")

    def element(self, element_id: str) -> ElementDef:
        for e in self.elements:
            if e.element_id == element_id:
                return e
        raise KeyError(element_id)

    def element_ids(self) -> list[str]:
        return [e.element_id for e in self.elements]

    @property
    def feature_length(self) -> int:
        return sum(len(e.choices) for e in self.elements) + len(METADATA_FIELDS)

    def feature_names(self) -> list[str]:
        names = [f"{e.element_id}={c}" for e in self.elements for c in e.choices]
        return names + list(METADATA_FIELDS)

    def to_dict(self) -> dict:
        return {
            "catalog_version": self.catalog_version,
            "dimensions": list(DIMENSIONS),
            "elements": [
                {
                    "element_id": e.element_id,
                    "dimension_id": e.dimension_id,
                    "display_name": e.display_name,
                    "choices": list(e.choices),
                }
                for e in self.elements
            ],
            "industries": list(self.industries),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "PatternCatalog":
        return cls(
            catalog_version=doc["catalog_version"],
            elements=tuple(
                ElementDef(e["element_id"], e["dimension_id"], e.get("display_name", e["element_id"]), tuple(e["choices"]))
                for e in doc["elements"]
            ),
            industries=tuple(doc.get("industries", ())),
        )

    @classmethod
    def load(cls, path: str | Path) -> "PatternCatalog":
        return cls.from_dict(json.loads(Path(path).read_text()))

    @classmethod
    def default(cls) -> "PatternCatalog":
        text = resources.files("hidss.data").joinpath("pattern_catalog.json").read_text()
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class ModelMetadata:
    team_size: int
    venture_age_months: int
    industry: str

    def to_dict(self) -> dict:
        return {"team_size": self.team_size, "venture_age_months": self.venture_age_months, "industry": self.industry}


@dataclass(frozen=True)
class BusinessModelVersion:
    venture_id: str
    version_number: int
    parent_version: int | None
    choices: dict[str, str]
    metadata: ModelMetadata
    profile_text: dict[str, str]
    created_at: str
    catalog_version: str

    def to_dict(self) -> dict:
        return {
            "venture_id": self.venture_id,
            "version_number": self.version_number,
            "parent_version": self.parent_version,
            "choices": dict(self.choices),
            "metadata": self.metadata.to_dict(),
            "profile_text": dict(self.profile_text),
            "created_at": self.created_at,
            "catalog_version": self.catalog_version,
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "BusinessModelVersion":
        md = doc["metadata"]
        return cls(
            venture_id=doc["venture_id"],
            version_number=doc["version_number"],
            parent_version=doc.get("parent_version"),
            choices=dict(doc["choices"]),
            metadata=ModelMetadata(md["team_size"], md["venture_age_months"], md["industry"]),
            profile_text=dict(doc.get("profile_text", {})),
            created_at=doc["created_at"],
            catalog_version=doc["catalog_version"],
        )


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    schema_id: str

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values, dtype=np.float64))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def collect_issues(choices: dict[str, str], metadata: dict, catalog: PatternCatalog) -> list[ValidationIssue]:
    """All violations of the totality/range rules, in a stable order."""
    issues: list[ValidationIssue] = []
    known = set(catalog.element_ids())
    for element_id in sorted(set(choices) - known):
        issues.append(ValidationIssue("unknown-element", element_id, f"element '{element_id}' not in catalog"))
    for e in catalog.elements:
        if e.element_id not in choices:
            issues.append(ValidationIssue("missing-element", e.element_id, f"no choice for element '{e.element_id}'"))
        elif choices[e.element_id] not in e.choices:
            issues.append(
                ValidationIssue(
                    "unknown-choice",
                    e.element_id,
                    f"choice '{choices[e.element_id]}' not allowed for element '{e.element_id}'",
                )
            )
    for name in ("team_size", "venture_age_months"):
        value = metadata.get(name)
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            issues.append(ValidationIssue("negative-metadata", name, f"'{name}' must be a non-negative integer"))
    industry = metadata.get("industry")
    if industry not in catalog.industries:
        issues.append(ValidationIssue("unknown-industry", "industry", f"unknown industry '{industry}'"))
    return issues


def validate_model(candidate: dict, catalog: PatternCatalog) -> BusinessModelVersion:
    """Build a version from a raw document; raises ValidationError listing
    every violation."""
    choices = candidate.get("choices") or {}
    metadata = candidate.get("metadata") or {}
    issues = collect_issues(choices, metadata, catalog)
    if issues:
        raise ValidationError(issues)
    version_number = candidate.get("version_number", 1)
    parent_version = candidate.get("parent_version")
    if not isinstance(version_number, int) or version_number < 1:
        raise ValidationError([ValidationIssue("bad-version", "version_number", "must be a positive integer")])
    if parent_version is not None and parent_version >= version_number:
        raise ValidationError([ValidationIssue("bad-version", "parent_version", "parent must precede version")])
    return BusinessModelVersion(
        venture_id=candidate["venture_id"],
        version_number=version_number,
        parent_version=parent_version,
        choices={e.element_id: choices[e.element_id] for e in catalog.elements},
        metadata=ModelMetadata(metadata["team_size"], metadata["venture_age_months"], metadata["industry"]),
        profile_text={d: t for d, t in (candidate.get("profile_text") or {}).items() if d in DIMENSIONS},
        created_at=candidate.get("created_at", ""),
        catalog_version=catalog.catalog_version,
    )


def encode(version: BusinessModelVersion, catalog: PatternCatalog) -> FeatureVector:
    """One-hot blocks in catalog order, then team size, venture age, industry
    code. Deterministic for a fixed catalog."""
    if version.catalog_version != catalog.catalog_version:
        raise ValidationError(
            [ValidationIssue("catalog-mismatch", "catalog_version", f"version encoded against '{version.catalog_version}', catalog is '{catalog.catalog_version}'")]
        )
    values: list[float] = []
    for e in catalog.elements:
        chosen = version.choices[e.element_id]
        values.extend(1.0 if c == chosen else 0.0 for c in e.choices)
    values.append(float(version.metadata.team_size))
    values.append(float(version.metadata.venture_age_months))
    values.append(float(catalog.industries.index(version.metadata.industry)))
    return FeatureVector(np.array(values, dtype=np.float64), catalog.catalog_version)


def decode_choices(vector: FeatureVector, catalog: PatternCatalog) -> dict[str, str]:
    """Inverse of the one-hot blocks of `encode`."""
    if vector.schema_id != catalog.catalog_version:
        raise ValidationError([ValidationIssue("catalog-mismatch", "schema_id", "vector schema does not match catalog")])
    choices: dict[str, str] = {}
    offset = 0
    for e in catalog.elements:
        block = vector.values[offset : offset + len(e.choices)]
        hot = np.flatnonzero(block == 1.0)
        if hot.size != 1:
            raise ValidationError([ValidationIssue("bad-encoding", e.element_id, "block is not one-hot")])
        choices[e.element_id] = e.choices[int(hot[0])]
        offset += len(e.choices)
    return choices


def diff(v1: BusinessModelVersion, v2: BusinessModelVersion, catalog: PatternCatalog) -> list[dict]:
    """Changed elements between two versions of the same venture, in catalog
    element order."""
    if v1.venture_id != v2.venture_id:
        raise ValidationError([ValidationIssue("different-ventures", "venture_id", "diff requires one venture")])
    if v1.catalog_version != v2.catalog_version or v1.catalog_version != catalog.catalog_version:
        raise ValidationError([ValidationIssue("catalog-mismatch", "catalog_version", "versions use different catalogs")])
    out = []
    for e in catalog.elements:
        old, new = v1.choices[e.element_id], v2.choices[e.element_id]
        if old != new:
            out.append({"element_id": e.element_id, "old_choice": old, "new_choice": new})
    return out


def new_version(
    venture_id: str,
    base: BusinessModelVersion | None,
    choices: dict[str, str],
    metadata: dict,
    profile_text: dict[str, str],
    catalog: PatternCatalog,
    created_at: str = "",
) -> BusinessModelVersion:
    """Validated successor version: number base+1 with parent linkage, or an
    initial version 1."""
    if base is not None and base.venture_id != venture_id:
        raise ValidationError([ValidationIssue("different-ventures", "venture_id", "base belongs to another venture")])
    candidate = {
        "venture_id": venture_id,
        "version_number": 1 if base is None else base.version_number + 1,
        "parent_version": None if base is None else base.version_number,
        "choices": choices,
        "metadata": metadata,
        "profile_text": profile_text,
        "created_at": created_at,
    }
    return validate_model(candidate, catalog)
