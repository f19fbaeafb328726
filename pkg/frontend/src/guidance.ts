// Guidance view: renders a report exactly as the service produced it.
// Dimension scores, per-criterion bars with contested flags, milestone
// probability gauges with basis labels, what-if suggestions with an "apply"
// affordance that pre-fills the editor, comments by dimension, and version
// history deltas. No number shown here is computed client-side.

import { el } from "./dom.js";
import type { Store } from "./state.js";
import type { GuidanceReport, Intervention } from "./types.js";

export interface GuidanceCallbacks {
  onApplySuggestion?: (suggestion: Intervention) => void;
}

function percent(p: number): string {
  return `${(p * 100).toFixed(1)}%`;
}

function signed(delta: number, digits = 3): string {
  return `${delta >= 0 ? "+" : ""}${delta.toFixed(digits)}`;
}

export function renderGuidance(
  root: HTMLElement,
  store: Store,
  report: GuidanceReport,
  callbacks: GuidanceCallbacks = {},
): void {
  const container = el("section", "guidance");
  container.appendChild(el("h2", "", `${report.venture_id} — version ${report.version_number}`));

  const crowdless = report.provenance.judge_count === 0;

  // informative: dimension scores
  const scores = el("div", "dimension-scores");
  scores.appendChild(el("h3", "", "crowd assessment"));
  if (crowdless) {
    scores.appendChild(el("p", "awaiting", "awaiting mentor feedback"));
  } else {
    const list = el("ul");
    for (const [dimension, score] of Object.entries(report.informative.dimension_scores)) {
      const label = report.informative.dimension_labels[dimension] ?? dimension;
      list.appendChild(el("li", "dimension-score", `${label}: ${score.toFixed(2)}`));
    }
    scores.appendChild(list);
  }
  container.appendChild(scores);

  // informative: per-criterion bars
  const criteriaBox = el("div", "criteria-bars");
  criteriaBox.appendChild(el("h3", "", "criteria"));
  if (crowdless) {
    criteriaBox.appendChild(el("p", "awaiting", "awaiting mentor feedback"));
  } else {
    for (const [criterionId, agg] of Object.entries(report.informative.criteria)) {
      const row = el("div", "criterion-bar");
      row.dataset.criterionId = criterionId;
      if (agg.contested) row.classList.add("contested");
      const bar = el("div", "bar");
      bar.style.width = `${(agg.aggregate / 10) * 100}%`;
      const label = el(
        "span",
        "bar-label",
        `${criterionId}: ${agg.aggregate.toFixed(2)} (spread ${agg.dispersion.toFixed(2)}, n=${agg.n})`,
      );
      row.append(label, bar);
      if (agg.contested) row.appendChild(el("span", "contested-flag", "contested"));
      criteriaBox.appendChild(row);
    }
  }
  container.appendChild(criteriaBox);

  // informative: milestone probability gauges
  const gauges = el("div", "prediction-gauges");
  gauges.appendChild(el("h3", "", "milestone outlook"));
  for (const [milestone, pred] of Object.entries(report.informative.predictions)) {
    const gauge = el("div", "gauge");
    gauge.dataset.milestone = milestone;
    const fill = el("div", "gauge-fill");
    fill.style.width = percent(pred.p_hybrid);
    gauge.appendChild(el("span", "gauge-label", `${milestone}: ${percent(pred.p_hybrid)}`));
    gauge.appendChild(fill);
    gauge.appendChild(el("span", "basis", pred.basis));
    const parts = [`model ${percent(pred.p_machine)}`];
    if (pred.p_crowd !== null) parts.push(`crowd ${percent(pred.p_crowd)}`);
    gauge.appendChild(el("span", "gauge-parts", parts.join(" · ")));
    gauges.appendChild(gauge);
  }
  container.appendChild(gauges);

  // suggestive: what-if interventions
  const whatif = el("div", "interventions");
  whatif.appendChild(el("h3", "", "what-if suggestions"));
  for (const [milestone, suggestions] of Object.entries(report.suggestive.machine_interventions)) {
    const group = el("div", "intervention-group");
    group.appendChild(el("h4", "", milestone));
    if (suggestions.length === 0) {
      group.appendChild(el("p", "none", "no single change improves this milestone"));
    }
    for (const suggestion of suggestions) {
      const row = el("div", "intervention");
      row.dataset.elementId = suggestion.element_id;
      row.appendChild(
        el(
          "span",
          "",
          `${suggestion.element_id} → ${suggestion.alternative_choice} (${signed(suggestion.delta)} to ${percent(suggestion.p_new)})`,
        ),
      );
      const apply = el("button", "apply-suggestion", "Apply");
      apply.type = "button";
      apply.addEventListener("click", () => {
        callbacks.onApplySuggestion?.(suggestion);
      });
      row.appendChild(apply);
      group.appendChild(row);
    }
    whatif.appendChild(group);
  }
  container.appendChild(whatif);

  // suggestive: mentor comments
  const commentBox = el("div", "comments");
  commentBox.appendChild(el("h3", "", "mentor comments"));
  const anyComments = Object.values(report.suggestive.comments).some((list) => list.length > 0);
  if (!anyComments) {
    commentBox.appendChild(el("p", "awaiting", crowdless ? "awaiting mentor feedback" : "no comments yet"));
  } else {
    for (const [dimension, list] of Object.entries(report.suggestive.comments)) {
      if (list.length === 0) continue;
      const group = el("div", "comment-group");
      group.appendChild(el("h4", "", dimension.replace(/_/g, " ")));
      for (const comment of list) {
        group.appendChild(el("blockquote", "comment", `${comment.mentor_id}: ${comment.text}`));
      }
      commentBox.appendChild(group);
    }
  }
  container.appendChild(commentBox);

  // history deltas
  if (report.history) {
    const history = el("div", "history");
    history.appendChild(el("h3", "", `since version ${report.history.parent_version}`));
    const list = el("ul");
    for (const [milestone, delta] of Object.entries(report.history.probability_deltas)) {
      list.appendChild(el("li", "probability-delta", `${milestone}: ${signed(delta)}`));
    }
    for (const [dimension, delta] of Object.entries(report.history.dimension_score_deltas)) {
      const label = report.informative.dimension_labels[dimension] ?? dimension;
      list.appendChild(el("li", "score-delta", `${label}: ${signed(delta, 2)}`));
    }
    history.appendChild(list);
    container.appendChild(history);
  }

  const provenance = el("footer", "provenance");
  provenance.textContent = `${report.provenance.judge_count} judge(s) · models ${report.provenance.model_set_id} · ${report.provenance.generated_at}`;
  container.appendChild(provenance);
  root.appendChild(container);
}

// "apply suggestion" wiring: pre-fill the editor draft with exactly the one
// suggested element changed, based on the currently loaded version's choices.
export function applySuggestionToDraft(
  store: Store,
  baseChoices: Record<string, string>,
  baseMetadata: { team_size: number; venture_age_months: number; industry: string },
  baseProfileText: Record<string, string>,
  baseVersion: number,
  suggestion: Intervention,
): void {
  store.set({
    screen: "editor",
    draft: {
      choices: { ...baseChoices, [suggestion.element_id]: suggestion.alternative_choice },
      metadata: { ...baseMetadata },
      profile_text: { ...baseProfileText },
      base_version: baseVersion,
    },
  });
}
