from __future__ import annotations

import pytest

from hidss.feedback import CriteriaCatalog, Judgment
from hidss.ontology import BusinessModelVersion, ElementDef, ModelMetadata, PatternCatalog


@pytest.fixture(scope="session")
def pattern_catalog() -> PatternCatalog:
    return PatternCatalog.default()


@pytest.fixture(scope="session")
def criteria_catalog() -> CriteriaCatalog:
    return CriteriaCatalog.default()


@pytest.fixture
def mini_catalog() -> PatternCatalog:
    return PatternCatalog(
        catalog_version="mini-1",
        elements=(ElementDef("A", "value_proposition", "A", ("x", "y")),),
        industries=("general",),
    )


def default_choices(catalog: PatternCatalog, index: int = 0) -> dict[str, str]:
    return {e.element_id: e.choices[index % len(e.choices)] for e in catalog.elements}


def make_version(catalog: PatternCatalog, venture_id: str = "v1", version_number: int = 1, **overrides) -> BusinessModelVersion:
    choices = overrides.pop("choices", default_choices(catalog))
    metadata = overrides.pop("metadata", ModelMetadata(3, 12, catalog.industries[0]))
    return BusinessModelVersion(
        venture_id=venture_id,
        version_number=version_number,
        parent_version=overrides.pop("parent_version", None),
        choices=choices,
        metadata=metadata,
        profile_text=overrides.pop("profile_text", {}),
        created_at=overrides.pop("created_at", "2026-01-01T00:00:00Z"),
        catalog_version=catalog.catalog_version,
    )


def make_judgment(
    criteria: CriteriaCatalog,
    mentor_id: str = "m1",
    venture_id: str = "v1",
    version_number: int = 1,
    rating: int = 5,
    ratings: dict[str, int] | None = None,
    comments: dict[str, str] | None = None,
) -> Judgment:
    return Judgment(
        judgment_id=f"{venture_id}-v{version_number}-{mentor_id}",
        venture_id=venture_id,
        version_number=version_number,
        mentor_id=mentor_id,
        ratings=ratings if ratings is not None else {cid: rating for cid in criteria.criterion_ids()},
        comments=comments or {},
        submitted_at="2026-01-02T00:00:00Z",
    )
