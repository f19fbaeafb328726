"""Operator CLI: serve, seed, train, eval, export, import, simulate."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import canonical
from .cart import MILESTONES
from .config import ServiceConfig
from .feedback import CriteriaCatalog
from .matching import MentorProfile
from .ontology import PatternCatalog, ValidationError
from .repository import Repository
from .service import HidssApp, create_app
from .simkit import WorldParams, evaluate_guidance, generate_world, populate_repository, world_to_seed_doc


def _load_config(path: str | None) -> ServiceConfig:
    return ServiceConfig.load(path)


def _app(config_path: str | None) -> HidssApp:
    return HidssApp(_load_config(config_path))


@click.group()
def main():
    """Hybrid-intelligence decision support system."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None, help="Service config file (JSON).")
def serve(config_path):
    """Run the HTTP service."""
    import uvicorn

    config = _load_config(config_path)
    uvicorn.run(create_app(config), host=config.listen_host, port=config.listen_port)


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--mentors", "mentors_path", type=click.Path(exists=True), default=None, help="Delimited mentor list: id;tags;industries;name")
@click.option("--ventures", "ventures_path", type=click.Path(exists=True), default=None, help="Seed-data document (see `simulate`).")
def seed(config_path, mentors_path, ventures_path):
    """Load mentors and labeled ventures into the repository."""
    app = _app(config_path)
    count = 0
    if mentors_path:
        for line in Path(mentors_path).read_text().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(";")]
            profile = MentorProfile(
                mentor_id=parts[0],
                expertise_tags=frozenset(t for t in parts[1].split("|") if t),
                industries=frozenset(i for i in parts[2].split("|") if i) if len(parts) > 2 else frozenset(),
                display_name=parts[3] if len(parts) > 3 else "",
            )
            if profile.mentor_id not in app.repo.mentors:
                app.repo.register_mentor(profile)
                count += 1
    if ventures_path:
        doc = json.loads(Path(ventures_path).read_text())
        for mentor in doc.get("mentors", []):
            if mentor["mentor_id"] not in app.repo.mentors:
                app.repo.register_mentor(MentorProfile.from_dict(mentor))
                count += 1
        for entry in doc.get("ventures", []):
            version = entry["version"]
            app.repo.register_venture(version["venture_id"])
            app.repo.append("VersionCreated", version)
            for judgment in entry.get("judgments", []):
                app.repo.append("JudgmentSubmitted", judgment)
            for milestone, achieved in sorted(entry.get("outcomes", {}).items()):
                app.repo.record_outcome(version["venture_id"], milestone, achieved)
            count += 1
    click.echo(f"seeded {count} records into {app.config.storage_path}")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--out", "out_path", type=click.Path(), default=None, help="Write the serialized model set here.")
def train(config_path, out_path):
    """Train the model set from the repository."""
    app = _app(config_path)
    summary = app.retrain()
    click.echo(canonical.dumps(summary))
    if out_path:
        Path(out_path).write_text(app.model_set.serialize())
        click.echo(f"model set written to {out_path}")


@main.command("eval")
@click.option("--seed", "seed_value", type=int, default=7)
@click.option("--n-train", type=int, default=400)
@click.option("--n-holdout", type=int, default=200)
@click.option("--hard-weight", type=float, default=1.0)
@click.option("--soft-weight", type=float, default=1.0)
@click.option("--judge-noise", type=float, default=1.5)
@click.option("--judges", type=int, default=5)
@click.option("--metrics-out", type=click.Path(), default=None, help="Optional delimited metrics file.")
def eval_cmd(seed_value, n_train, n_holdout, hard_weight, soft_weight, judge_noise, judges, metrics_out):
    """Synthetic-world evaluation: train on a generated world, report AUC/Brier."""
    pattern = PatternCatalog.default()
    criteria = CriteriaCatalog.default()
    params = WorldParams(
        seed=seed_value,
        n_ventures=n_train + n_holdout,
        n_mentors=max(20, judges),
        hard_weight=hard_weight,
        soft_weight=soft_weight,
        judge_noise=judge_noise,
        judges_per_venture=judges,
    )
    world = generate_world(params, pattern, criteria)
    repo = Repository(pattern, criteria)
    populate_repository(world, repo, world.ventures[:n_train])
    app = HidssApp(ServiceConfig(storage_path=""), repo=repo)
    app.retrain()
    metrics = evaluate_guidance(world, app.model_set, pattern, criteria, world.ventures[n_train:])
    click.echo(f"{'signal':<18}{'milestone':<12}{'AUC':>8}{'Brier':>9}{'n':>6}")
    rows = []
    for key in sorted(metrics):
        signal, milestone = key.split(":")
        m = metrics[key]
        auc = f"{m['auc']:.3f}" if m["auc"] is not None else "n/a"
        brier = f"{m['brier']:.3f}" if m["brier"] is not None else "n/a"
        click.echo(f"{signal:<18}{milestone:<12}{auc:>8}{brier:>9}{m['n']:>6}")
        rows.append((signal, milestone, auc, brier, m["n"]))
    if metrics_out:
        with open(metrics_out, "w") as fh:
            fh.write("signal;milestone;auc;brier;n\n")
            for row in rows:
                fh.write(";".join(str(v) for v in row) + "\n")


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--out", "out_path", type=click.Path(), required=True)
def export(config_path, out_path):
    """Export the event log."""
    app = _app(config_path)
    n = app.repo.export_log(out_path)
    click.echo(f"exported {n} events to {out_path}")


@main.command("import")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
@click.option("--log", "log_path", type=click.Path(exists=True), required=True)
def import_cmd(config_path, log_path):
    """Replay an exported event log into the configured repository."""
    config = _load_config(config_path)
    pattern = PatternCatalog.load(config.pattern_catalog_path) if config.pattern_catalog_path else PatternCatalog.default()
    criteria = CriteriaCatalog.load(config.criteria_catalog_path) if config.criteria_catalog_path else CriteriaCatalog.default()
    target = Path(config.storage_path)
    if target.exists():
        click.echo(f"refusing to overwrite existing log {target}", err=True)
        sys.exit(1)
    repo = Repository(pattern, criteria, log_path=None)
    try:
        repo.replay_file(log_path)
    except ValidationError as exc:
        click.echo(f"log replay failed: {exc}", err=True)
        sys.exit(1)
    repo.log_path = target
    n = repo.export_log(target)
    click.echo(f"imported {n} events into {target}")


@main.command()
@click.option("--seed", "seed_value", type=int, default=7)
@click.option("--n-ventures", type=int, default=100)
@click.option("--n-mentors", type=int, default=20)
@click.option("--hard-weight", type=float, default=1.0)
@click.option("--soft-weight", type=float, default=1.0)
@click.option("--judge-noise", type=float, default=1.5)
@click.option("--judges", type=int, default=3)
@click.option("--out", "out_path", type=click.Path(), required=True)
def simulate(seed_value, n_ventures, n_mentors, hard_weight, soft_weight, judge_noise, judges, out_path):
    """Generate a synthetic world as importable seed data."""
    params = WorldParams(
        seed=seed_value,
        n_ventures=n_ventures,
        n_mentors=n_mentors,
        hard_weight=hard_weight,
        soft_weight=soft_weight,
        judge_noise=judge_noise,
        judges_per_venture=judges,
    )
    world = generate_world(params, PatternCatalog.default(), CriteriaCatalog.default())
    Path(out_path).write_text(canonical.dumps(world_to_seed_doc(world)))
    click.echo(f"wrote {n_ventures} synthetic ventures to {out_path}")


if __name__ == "__main__":
    main()
