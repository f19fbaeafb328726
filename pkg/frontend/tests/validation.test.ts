// Shared-vector check: the client-side validators must emit exactly the same
// issue codes/fields, in the same order, as the server validators did when
// the fixture was generated.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";
import { collectModelIssues, collectRatingIssues } from "../src/validation.js";
import type { CriteriaCatalog, PatternCatalog } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

function readJson<T>(path: string): T {
  return JSON.parse(readFileSync(path, "utf8")) as T;
}

const patternCatalog = readJson<PatternCatalog>(join(here, "..", "..", "src", "hidss", "data", "pattern_catalog.json"));
const criteriaCatalog = readJson<CriteriaCatalog>(join(here, "..", "..", "src", "hidss", "data", "criteria_catalog.json"));
patternCatalog.dimensions ??= ["value_proposition", "value_delivery", "value_creation", "value_capture"];

interface Vectors {
  model_cases: Array<{
    name: string;
    choices: Record<string, string>;
    metadata: Record<string, unknown>;
    issues: Array<{ code: string; field: string }>;
  }>;
  rating_cases: Array<{
    name: string;
    ratings: Record<string, number>;
    issues: Array<{ code: string; field: string }>;
  }>;
}

const vectors = readJson<Vectors>(join(here, "fixtures", "validation_vectors.json"));

describe("model validation mirrors the server", () => {
  for (const testCase of vectors.model_cases) {
    it(testCase.name, () => {
      const issues = collectModelIssues(testCase.choices, testCase.metadata, patternCatalog);
      expect(issues).toEqual(testCase.issues);
    });
  }
});

describe("rating validation mirrors the server", () => {
  for (const testCase of vectors.rating_cases) {
    it(testCase.name, () => {
      const issues = collectRatingIssues(testCase.ratings, criteriaCatalog);
      expect(issues).toEqual(testCase.issues);
    });
  }
});
