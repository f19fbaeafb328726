from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import make_version
from hidss.matching import (
    EXPERTISE_TAGS,
    TAG_MAP,
    MatchWeights,
    MentorProfile,
    match_score,
    recommend,
)
from hidss.ontology import DIMENSIONS, PatternCatalog

CATALOG = PatternCatalog.default()
WEIGHTS = MatchWeights(2.0, 1.0, 0.5)


def mentor(mid="m1", tags=("market",), industries=()):
    return MentorProfile(mid, frozenset(tags), frozenset(industries))


def version(industry=None):
    v = make_version(CATALOG)
    if industry is None:
        return v
    from dataclasses import replace

    from hidss.ontology import ModelMetadata

    return replace(v, metadata=ModelMetadata(3, 12, industry))


class TestMatchScore:
    def test_finance_mentor_value_capture_with_industry(self):
        m = mentor(tags=("finance",), industries=(CATALOG.industries[0],))
        assert match_score(m, version(), "value_capture", WEIGHTS) == 3.0

    def test_no_relevant_tag_foreign_industry_is_zero(self):
        m = mentor(tags=("finance",), industries=("edtech",))
        v = version(industry="fintech")
        assert match_score(m, v, "value_delivery", WEIGHTS) == 0.0

    def test_primary_plus_secondary_plus_industry(self):
        # value_delivery: primary market, secondary technology
        m = mentor(tags=("market", "technology"), industries=(CATALOG.industries[0],))
        assert match_score(m, version(), "value_delivery", WEIGHTS) == 2.0 + 1.0 + 0.5

    def test_unknown_dimension_rejected(self):
        with pytest.raises(ValueError):
            match_score(mentor(), version(), "value_extraction", WEIGHTS)

    def test_adding_relevant_tag_never_decreases_score(self):
        rng = random.Random(5)
        for _ in range(100):
            tags = rng.sample(EXPERTISE_TAGS, rng.randint(1, 3))
            m = mentor(tags=tags)
            extra = rng.choice(EXPERTISE_TAGS)
            m_plus = mentor(tags=set(tags) | {extra})
            for dim in DIMENSIONS:
                assert match_score(m_plus, version(), dim, WEIGHTS) >= match_score(m, version(), dim, WEIGHTS)


def brute_force_top_k(v, pool, k, dim):
    scored = sorted(((match_score(m, v, dim, WEIGHTS), m.mentor_id) for m in pool), key=lambda t: (-t[0], t[1]))
    return [mid for _, mid in scored[:k]]


class TestRecommend:
    def test_single_mentor_tops_all_dimensions(self):
        result = recommend(version(), [mentor()], k=2, weights=WEIGHTS)
        for dim in DIMENSIONS:
            assert [m.mentor_id for m in result.by_dimension[dim]] == ["m1"]

    def test_equal_scores_break_by_mentor_id(self):
        pool = [mentor("zed", tags=("market",)), mentor("abe", tags=("market",))]
        result = recommend(version(), pool, k=2, weights=WEIGHTS)
        assert [m.mentor_id for m in result.by_dimension["value_proposition"]] == ["abe", "zed"]

    def test_zero_score_mentors_flagged_low_confidence(self):
        pool = [mentor("m1", tags=("finance",), industries=("edtech",))]
        v = version(industry="fintech")
        result = recommend(v, pool, k=1, weights=WEIGHTS)
        entry = result.by_dimension["value_delivery"][0]
        assert entry.score == 0.0 and entry.low_confidence

    def test_k_zero_rejected(self):
        with pytest.raises(ValueError):
            recommend(version(), [mentor()], k=0)

    def test_empty_pool_rejected(self):
        with pytest.raises(ValueError):
            recommend(version(), [], k=1)

    def test_matches_brute_force_on_random_pool(self):
        rng = random.Random(17)
        pool = [
            mentor(
                f"m{i:02d}",
                tags=rng.sample(EXPERTISE_TAGS, rng.randint(1, 3)),
                industries=rng.sample(CATALOG.industries, rng.randint(0, 2)) or (),
            )
            for i in range(10)
        ]
        v = version()
        result = recommend(v, pool, k=3, weights=WEIGHTS)
        for dim in DIMENSIONS:
            assert [m.mentor_id for m in result.by_dimension[dim]] == brute_force_top_k(v, pool, 3, dim)


pool_strategy = st.lists(
    st.builds(
        lambda i, tags, inds: mentor(f"m{i:03d}", tags=tags, industries=inds),
        st.integers(0, 999),
        st.sets(st.sampled_from(EXPERTISE_TAGS), min_size=1, max_size=3),
        st.sets(st.sampled_from(CATALOG.industries), max_size=3),
    ),
    min_size=1,
    max_size=50,
    unique_by=lambda m: m.mentor_id,
)


@given(pool=pool_strategy, k=st.integers(1, 5))
@settings(max_examples=200, deadline=None)
def test_argmax_and_permutation_invariance(pool, k):
    v = version()
    result = recommend(v, pool, k, WEIGHTS)
    shuffled = list(reversed(pool))
    again = recommend(v, shuffled, k, WEIGHTS)
    for dim in DIMENSIONS:
        ranked = result.by_dimension[dim]
        assert len(ranked) == min(k, len(pool)) and ranked
        best = max(match_score(m, v, dim, WEIGHTS) for m in pool)
        assert ranked[0].score == best
        # exact tie-break ordering against the brute-force oracle
        assert [m.mentor_id for m in ranked] == brute_force_top_k(v, pool, k, dim)
        assert [m.to_dict() for m in ranked] == [m.to_dict() for m in again.by_dimension[dim]]


def test_tag_map_covers_all_dimensions():
    assert set(TAG_MAP) == set(DIMENSIONS)
    for primary, secondary in TAG_MAP.values():
        assert primary in EXPERTISE_TAGS and set(secondary) <= set(EXPERTISE_TAGS)
