// Client-side mirror of the server's validation rules, so forms can gate
// submission before a round-trip. Codes, fields, and ordering match the
// server exactly; tests/fixtures/validation_vectors.json holds shared
// vectors generated from the server-side validators.

import type { CriteriaCatalog, PatternCatalog } from "./types.js";

export interface Issue {
  code: string;
  field: string;
}

const RATING_MIN = 1;
const RATING_MAX = 10;

function isNonNegativeInt(value: unknown): boolean {
  return typeof value === "number" && Number.isInteger(value) && value >= 0;
}

export function collectModelIssues(
  choices: Record<string, string>,
  metadata: Record<string, unknown>,
  catalog: PatternCatalog,
): Issue[] {
  const issues: Issue[] = [];
  const known = new Set(catalog.elements.map((e) => e.element_id));
  const unknown = Object.keys(choices).filter((id) => !known.has(id));
  unknown.sort();
  for (const id of unknown) issues.push({ code: "unknown-element", field: id });
  for (const element of catalog.elements) {
    const choice = choices[element.element_id];
    if (choice === undefined) {
      issues.push({ code: "missing-element", field: element.element_id });
    } else if (!element.choices.includes(choice)) {
      issues.push({ code: "unknown-choice", field: element.element_id });
    }
  }
  for (const name of ["team_size", "venture_age_months"]) {
    if (!isNonNegativeInt(metadata[name])) issues.push({ code: "negative-metadata", field: name });
  }
  const industry = metadata["industry"];
  if (typeof industry !== "string" || !catalog.industries.includes(industry)) {
    issues.push({ code: "unknown-industry", field: "industry" });
  }
  return issues;
}

export function collectRatingIssues(ratings: Record<string, number>, catalog: CriteriaCatalog): Issue[] {
  const issues: Issue[] = [];
  const known = new Set(catalog.criteria.map((c) => c.criterion_id));
  const unknown = Object.keys(ratings).filter((id) => !known.has(id));
  unknown.sort();
  for (const id of unknown) issues.push({ code: "unknown-criterion", field: id });
  for (const criterion of catalog.criteria) {
    const value = ratings[criterion.criterion_id];
    if (value === undefined) {
      issues.push({ code: "missing-criterion", field: criterion.criterion_id });
    } else if (!Number.isInteger(value) || value < RATING_MIN || value > RATING_MAX) {
      issues.push({ code: "rating-out-of-range", field: criterion.criterion_id });
    }
  }
  return issues;
}
