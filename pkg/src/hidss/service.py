"""HTTP service and orchestration for the validation loop.

`HidssApp` owns the repository, catalogs, and the active model set (swapped
atomically on retrain); `create_app` wraps it in FastAPI with the resource
endpoints the dashboard and CLI consume. All mutations go through repository
events, so service behavior is reproducible from the log.
"""

from __future__ import annotations

import datetime
import hashlib
import logging
import threading

from fastapi import FastAPI, Header, HTTPException, Request

from .cart import MILESTONES, CartParams
from .config import ServiceConfig
from .feedback import AggregationConfig, CriteriaCatalog, Judgment, aggregate
from .guidance import build_report
from .hybrid import ModelSet, hybrid_predict, train_all, whatif_scan
from .matching import MatchWeights, MentorProfile, recommend
from .ontology import PatternCatalog, ValidationError
from .repository import Repository

logger = logging.getLogger("hidss.service")


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class ColdStartError(RuntimeError):
    """No trained machine model; seed labeled data and retrain first."""


class HidssApp:
    def __init__(self, config: ServiceConfig, repo: Repository | None = None):
        config.validate()
        self.config = config
        pattern_catalog = PatternCatalog.load(config.pattern_catalog_path) if config.pattern_catalog_path else PatternCatalog.default()
        criteria_catalog = CriteriaCatalog.load(config.criteria_catalog_path) if config.criteria_catalog_path else CriteriaCatalog.default()
        self.repo = repo or Repository(
            pattern_catalog,
            criteria_catalog,
            log_path=config.storage_path or None,
            fsync_on_append=config.fsync_on_append,
        )
        self.agg_config = AggregationConfig(trimmed=config.trimmed_aggregation, contested_threshold=config.contested_threshold)
        self.match_weights = MatchWeights(config.match_weight_dimension, config.match_weight_industry, config.match_weight_secondary)
        self.cart_params = CartParams(config.cart_max_depth, config.cart_min_leaf, config.cart_min_impurity_decrease)
        self._model_set = ModelSet(hybrid_weight=config.hybrid_weight, k_min=config.k_min)
        self._model_set_id = "untrained"
        self._swap_lock = threading.Lock()

    # -- model lifecycle ----------------------------------------------------

    @property
    def model_set(self) -> ModelSet:
        return self._model_set

    @property
    def model_set_id(self) -> str:
        return self._model_set_id

    def retrain(self) -> dict:
        """Rebuild datasets from the repository, train, swap atomically.
        Keeps the previous set when nothing trains."""
        datasets = {}
        for src in ("crowd", "machine"):
            for ms in MILESTONES:
                datasets[(src, ms)] = self.repo.training_dataset(src, ms, k_min=self.config.k_min, agg_config=self.agg_config)
        model_set, empty = train_all(datasets, self.cart_params, self.config.hybrid_weight, self.config.k_min)
        if model_set.models:
            serialized = model_set.serialize()
            with self._swap_lock:
                self._model_set = model_set
                self._model_set_id = hashlib.sha256(serialized.encode()).hexdigest()[:16]
        return {
            "trained_slots": model_set.trained_slots(),
            "empty_slots": empty,
            "model_set_id": self._model_set_id,
            "swapped": bool(model_set.models),
        }

    # -- orchestration ------------------------------------------------------

    def process_validation_round(self, venture_id: str, generated_at: str | None = None) -> dict:
        """aggregate -> predict -> what-if -> report, archived as guidance."""
        model_set = self._model_set
        if not any(model_set.get("machine", ms) for ms in MILESTONES):
            raise ColdStartError("no trained machine model; run `hidss seed` with labeled ventures and `hidss train` (or POST /admin/retrain)")
        state = self.repo.snapshot(venture_id)
        latest = state["latest_version"]
        if latest is None:
            raise ValidationError([])
        version = self.repo.ventures[venture_id].versions[latest]
        judgments = self.repo.judgments_for(venture_id, latest)
        assessment = aggregate(judgments, self.repo.criteria_catalog, self.agg_config) if judgments else None
        predictions = hybrid_predict(model_set, version, self.repo.pattern_catalog, self.repo.criteria_catalog, assessment)
        interventions = {
            ms: whatif_scan(model_set, version, self.repo.pattern_catalog, ms)
            for ms in predictions
            if model_set.get("machine", ms)
        }
        parent_report = None
        if version.parent_version is not None:
            for archived in reversed(self.repo.ventures[venture_id].guidance):
                if archived["version_number"] == version.parent_version:
                    parent_report = archived
                    break
        report = build_report(
            version,
            assessment,
            predictions,
            judgments,
            interventions,
            parent_report=parent_report,
            model_set_id=self._model_set_id,
            generated_at=generated_at if generated_at is not None else _now(),
        )
        self.repo.issue_guidance(report, recorded_at=report["provenance"]["generated_at"])
        return report

    def recommend_mentors(self, venture_id: str, k: int) -> dict:
        state = self.repo._venture(venture_id)
        latest = state.latest_version_number
        if latest is None:
            raise ValidationError([])
        pool = [self.repo.mentors[m] for m in sorted(self.repo.mentors)]
        return recommend(state.versions[latest], pool, k, self.match_weights).to_dict()


# ---------------------------------------------------------------------------
# HTTP layer
# ---------------------------------------------------------------------------


def _error(status: int, code: str, message: str, field: str = "") -> HTTPException:
    return HTTPException(status_code=status, detail={"errors": [{"code": code, "message": message, "field": field}]})


def _validation_error(exc: ValidationError) -> HTTPException:
    issues = [i.to_dict() for i in exc.issues] or [{"code": "invalid", "message": str(exc), "field": ""}]
    status = 409 if any(i["code"] in ("stale-base", "duplicate-outcome", "duplicate-venture") for i in issues) else 400
    if any(i["code"] in ("unknown-venture", "unknown-version") for i in issues):
        status = 404
    return HTTPException(status_code=status, detail={"errors": issues})


def create_app(config: ServiceConfig | None = None, app_core: HidssApp | None = None) -> FastAPI:
    core = app_core or HidssApp(config or ServiceConfig())
    api = FastAPI(title="hidss")
    api.state.core = core

    def audit(request: Request, actor: str | None):
        logger.info("%s %s actor=%s", request.method, request.url.path, actor or "-")

    @api.post("/ventures", status_code=201)
    async def create_venture(request: Request, x_actor_id: str | None = Header(default=None)):
        audit(request, x_actor_id)
        body = await request.json()
        try:
            seq = core.repo.register_venture(body["venture_id"], body.get("name", ""), recorded_at=_now())
        except ValidationError as exc:
            raise _validation_error(exc)
        return {"venture_id": body["venture_id"], "sequence_number": seq}

    @api.post("/ventures/{venture_id}/versions", status_code=201)
    async def create_version(venture_id: str, request: Request, x_actor_id: str | None = Header(default=None)):
        audit(request, x_actor_id)
        body = await request.json()
        try:
            version = core.repo.create_version(
                venture_id,
                body.get("choices", {}),
                body.get("metadata", {}),
                body.get("profile_text", {}),
                base_version=body.get("base_version"),
                created_at=_now(),
            )
        except ValidationError as exc:
            raise _validation_error(exc)
        return version.to_dict()

    @api.get("/ventures/{venture_id}/versions/{number}")
    async def get_version(venture_id: str, number: int):
        try:
            state = core.repo._venture(venture_id)
        except ValidationError as exc:
            raise _validation_error(exc)
        if number not in state.versions:
            raise _error(404, "unknown-version", f"venture has no version {number}", "version_number")
        return state.versions[number].to_dict()

    @api.get("/ventures/{venture_id}/matches")
    async def get_matches(venture_id: str, k: int = 3):
        try:
            return core.recommend_mentors(venture_id, k)
        except ValidationError as exc:
            raise _validation_error(exc)
        except ValueError as exc:
            raise _error(400, "bad-request", str(exc))

    @api.post("/ventures/{venture_id}/versions/{number}/judgments", status_code=201)
    async def submit_judgment(venture_id: str, number: int, request: Request, x_actor_id: str | None = Header(default=None)):
        audit(request, x_actor_id)
        body = await request.json()
        mentor_id = body.get("mentor_id") or x_actor_id
        if not mentor_id:
            raise _error(400, "missing-mentor", "mentor_id required (body or X-Actor-Id header)", "mentor_id")
        judgment = Judgment(
            judgment_id=f"{venture_id}-v{number}-{mentor_id}",
            venture_id=venture_id,
            version_number=number,
            mentor_id=mentor_id,
            ratings={k_: int(v) for k_, v in body.get("ratings", {}).items()},
            comments=body.get("comments", {}),
            submitted_at=_now(),
        )
        try:
            seq = core.repo.submit_judgment(judgment)
        except ValidationError as exc:
            raise _validation_error(exc)
        return {"judgment_id": judgment.judgment_id, "sequence_number": seq}

    @api.get("/ventures/{venture_id}/versions/{number}/guidance")
    async def get_guidance(venture_id: str, number: int):
        try:
            state = core.repo._venture(venture_id)
        except ValidationError as exc:
            raise _validation_error(exc)
        if number not in state.versions:
            raise _error(404, "unknown-version", f"venture has no version {number}", "version_number")
        if number == state.latest_version_number:
            try:
                return core.process_validation_round(venture_id)
            except ColdStartError as exc:
                raise _error(409, "cold-start", str(exc))
            except ValidationError as exc:
                raise _validation_error(exc)
        for archived in reversed(state.guidance):
            if archived["version_number"] == number:
                return archived
        raise _error(404, "no-guidance", f"no archived guidance for version {number}", "version_number")

    @api.post("/ventures/{venture_id}/outcomes", status_code=201)
    async def record_outcome(venture_id: str, request: Request, x_actor_id: str | None = Header(default=None)):
        audit(request, x_actor_id)
        body = await request.json()
        try:
            record = core.repo.record_outcome(venture_id, body["milestone"], bool(body["achieved"]), body.get("observed_at", _now()))
        except ValidationError as exc:
            raise _validation_error(exc)
        result = record.to_dict()
        if core.config.retrain_policy == "on-outcome":
            result["retrain"] = core.retrain()
        return result

    @api.post("/admin/retrain")
    async def retrain(request: Request, x_actor_id: str | None = Header(default=None)):
        audit(request, x_actor_id)
        return core.retrain()

    @api.get("/patterns/stats")
    async def pattern_stats(milestone: str):
        if milestone not in MILESTONES:
            raise _error(400, "unknown-milestone", f"milestone must be one of {MILESTONES}", "milestone")
        return core.repo.pattern_stats(milestone)

    @api.get("/mentors")
    async def list_mentors():
        return [core.repo.mentors[m].to_dict() for m in sorted(core.repo.mentors)]

    @api.post("/mentors", status_code=201)
    async def create_mentor(request: Request, x_actor_id: str | None = Header(default=None)):
        audit(request, x_actor_id)
        body = await request.json()
        try:
            profile = MentorProfile.from_dict(body)
        except (KeyError, ValueError) as exc:
            raise _error(400, "invalid-mentor", str(exc))
        try:
            seq = core.repo.register_mentor(profile, recorded_at=_now())
        except ValidationError as exc:
            raise _validation_error(exc)
        return {"mentor_id": profile.mentor_id, "sequence_number": seq}

    @api.get("/catalogs/patterns")
    async def get_pattern_catalog():
        return core.repo.pattern_catalog.to_dict()

    @api.get("/catalogs/criteria")
    async def get_criteria_catalog():
        return core.repo.criteria_catalog.to_dict()

    @api.get("/health")
    async def health():
        return {"status": "ok", "model_set_id": core.model_set_id, "events": len(core.repo.events)}

    return api
