// Mentor judgment form: 21 discrete 1-10 ratings grouped by assessment
// dimension plus one comment box per value dimension. Incomplete forms
// cannot submit; a resubmission replaces the mentor's previous judgment for
// the version and asks for confirmation first.

import { el, option } from "./dom.js";
import { ApiError, type ApiClient } from "./api.js";
import type { Store } from "./state.js";
import { collectRatingIssues } from "./validation.js";

// presentation wording for the implementability block
const DIMENSION_LABELS: Record<string, string> = {
  desirability: "desirability",
  implementability: "feasibility",
  scalability: "scalability",
  profitability: "profitability",
};

export interface JudgmentCallbacks {
  onSubmitted?: (judgmentId: string) => void;
  confirmReplace?: () => boolean;
}

export function renderJudgmentForm(
  root: HTMLElement,
  store: Store,
  client: ApiClient,
  callbacks: JudgmentCallbacks = {},
): void {
  const state = store.get();
  const criteria = state.criteriaCatalog;
  const patterns = state.patternCatalog;
  if (!criteria || !patterns) {
    root.appendChild(el("p", "error", "catalogs not loaded"));
    return;
  }
  if (state.ventureId === null || state.versionNumber === null) {
    root.appendChild(el("p", "error", "no venture version selected"));
    return;
  }

  const ratings: Record<string, number> = {};
  const comments: Record<string, string> = {};
  const container = el("section", "judgment");
  const form = el("form", "judgment-form");
  form.addEventListener("submit", (event) => event.preventDefault());
  const errorBox = el("div", "error-box");
  const submit = el("button", "submit", "Submit judgment");
  submit.type = "button";

  const dimensions = [...new Set(criteria.criteria.map((c) => c.assessment_dimension))];
  for (const dimension of dimensions) {
    const fieldset = el("fieldset", "criteria-group");
    fieldset.appendChild(el("legend", "", DIMENSION_LABELS[dimension] ?? dimension));
    for (const criterion of criteria.criteria.filter((c) => c.assessment_dimension === dimension)) {
      const row = el("div", "criterion-row");
      row.dataset.criterionId = criterion.criterion_id;
      const label = el("label", "", criterion.display_name);
      label.htmlFor = `rating-${criterion.criterion_id}`;
      const select = el("select");
      select.id = `rating-${criterion.criterion_id}`;
      select.appendChild(option("—", ""));
      for (let value = 1; value <= 10; value++) select.appendChild(option(String(value), String(value)));
      select.addEventListener("change", () => {
        if (select.value === "") delete ratings[criterion.criterion_id];
        else ratings[criterion.criterion_id] = Number(select.value);
        sync();
      });
      row.append(label, select, el("span", "inline-cue", "missing"));
      fieldset.appendChild(row);
    }
    form.appendChild(fieldset);
  }

  const commentFieldset = el("fieldset", "comments-group");
  commentFieldset.appendChild(el("legend", "", "comments (optional, one per value dimension)"));
  for (const dimension of patterns.dimensions) {
    const area = el("textarea");
    area.id = `comment-${dimension}`;
    area.placeholder = dimension.replace(/_/g, " ");
    area.addEventListener("input", () => {
      if (area.value) comments[dimension] = area.value;
      else delete comments[dimension];
    });
    commentFieldset.appendChild(area);
  }
  form.appendChild(commentFieldset);

  function sync(): void {
    const issues = collectRatingIssues(ratings, criteria!);
    for (const row of Array.from(form.querySelectorAll<HTMLElement>(".criterion-row"))) {
      const missing = issues.some((i) => i.field === row.dataset.criterionId);
      row.classList.toggle("invalid", missing && ratings[row.dataset.criterionId ?? ""] !== undefined);
      row.classList.toggle("incomplete", missing);
    }
    submit.disabled = issues.length > 0;
  }

  submit.addEventListener("click", async () => {
    const current = store.get();
    const key = `${current.ventureId}:${current.versionNumber}:${current.actorId}`;
    if (current.judgedVersions.has(key)) {
      const confirm = callbacks.confirmReplace ?? (() => window.confirm("Replace your previous judgment for this version?"));
      if (!confirm()) return;
    }
    errorBox.textContent = "";
    try {
      const result = await client.submitJudgment(current.ventureId as string, current.versionNumber as number, {
        mentor_id: current.actorId,
        ratings,
        comments,
      });
      const judged = new Set(current.judgedVersions);
      judged.add(key);
      store.set({ judgedVersions: judged });
      callbacks.onSubmitted?.(result.judgment_id);
    } catch (error) {
      if (error instanceof ApiError) {
        errorBox.textContent = error.message;
        for (const issue of error.issues) {
          const row = form.querySelector<HTMLElement>(`.criterion-row[data-criterion-id="${issue.field}"]`);
          row?.classList.add("invalid");
        }
      } else {
        errorBox.textContent = String(error);
      }
    }
  });

  container.append(form, errorBox, submit);
  root.appendChild(container);
  sync();
}
