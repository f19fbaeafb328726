// End-to-end check against the real service: spawns `hidss serve` on a
// scratch event log seeded with synthetic ventures, then drives the full
// validation loop through ApiClient: version -> judgments -> guidance ->
// apply suggestion -> revision with history, plus a stale-base conflict.

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { ApiClient, ApiError } from "../src/api.js";
import type { CriteriaCatalog, GuidanceReport, PatternCatalog, VersionDraft } from "../src/types.js";
import { collectModelIssues, collectRatingIssues } from "../src/validation.js";

const PORT = 8600 + Math.floor(Math.random() * 400);
let server: ChildProcess | null = null;
let client: ApiClient;
let patterns: PatternCatalog;
let criteria: CriteriaCatalog;

function cli(...args: string[]): void {
  const result = spawnSync("hidss", args, { encoding: "utf8" });
  if (result.status !== 0) {
    throw new Error(`hidss ${args.join(" ")} failed: ${result.stderr || result.stdout}`);
  }
}

async function waitForHealth(timeoutMs = 20000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      await client.health();
      return;
    } catch {
      if (Date.now() > deadline) throw new Error("service did not come up");
      await new Promise((resolve) => setTimeout(resolve, 250));
    }
  }
}

function draftFor(index: number): VersionDraft {
  const choices: Record<string, string> = {};
  for (const element of patterns.elements) {
    choices[element.element_id] = element.choices[index % element.choices.length]!;
  }
  return {
    choices,
    metadata: { team_size: 4, venture_age_months: 10, industry: patterns.industries[0]! },
    profile_text: { value_proposition: "pilot customers in hand" },
    base_version: null,
  };
}

beforeAll(async () => {
  const dir = mkdtempSync(join(tmpdir(), "hidss-e2e-"));
  const worldPath = join(dir, "world.json");
  const configPath = join(dir, "config.json");
  writeFileSync(configPath, JSON.stringify({ storage_path: join(dir, "events.jsonl"), listen_port: PORT }));
  cli("simulate", "--seed", "3", "--n-ventures", "40", "--judges", "4", "--out", worldPath);
  cli("seed", "--config", configPath, "--ventures", worldPath);
  server = spawn("hidss", ["serve", "--config", configPath], { stdio: "ignore" });
  client = new ApiClient(`http://127.0.0.1:${PORT}`);
  await waitForHealth();
  await client.retrain();
  [patterns, criteria] = await Promise.all([client.getPatternCatalog(), client.getCriteriaCatalog()]);
}, 60000);

afterAll(() => {
  server?.kill();
});

describe("full validation loop against the live service", () => {
  it("walks version -> judgments -> guidance -> revision with history", async () => {
    await client.createVenture("loop", "Loop Co");
    const draft = draftFor(2);
    expect(collectModelIssues(draft.choices, draft.metadata as Record<string, unknown>, patterns)).toEqual([]);
    const v1 = await client.createVersion("loop", draft);
    expect(v1.version_number).toBe(1);

    // machine-only guidance before any judgments
    const coldReport = await client.getGuidance("loop", 1);
    expect(coldReport.provenance.judge_count).toBe(0);
    for (const pred of Object.values(coldReport.informative.predictions)) {
      expect(pred.basis).toBe("machine-only");
    }

    for (let judge = 0; judge < 3; judge++) {
      const ratings = Object.fromEntries(criteria.criteria.map((c) => [c.criterion_id, 5 + judge]));
      expect(collectRatingIssues(ratings, criteria)).toEqual([]);
      await client.submitJudgment("loop", 1, {
        mentor_id: `judge-${judge}`,
        ratings,
        comments: { value_capture: "pricing feels low" },
      });
    }
    const report: GuidanceReport = await client.getGuidance("loop", 1);
    expect(report.provenance.judge_count).toBe(3);
    expect(Object.keys(report.informative.dimension_scores).sort()).toEqual([
      "desirability",
      "implementability",
      "profitability",
      "scalability",
    ]);
    expect(report.suggestive.comments["value_capture"]).toHaveLength(3);

    // apply the best suggestion if any, otherwise change one element by hand
    const suggestions = Object.values(report.suggestive.machine_interventions).flat();
    const revised: VersionDraft = { ...draft, base_version: 1, choices: { ...draft.choices } };
    if (suggestions.length > 0) {
      const best = suggestions[0]!;
      revised.choices[best.element_id] = best.alternative_choice;
    } else {
      revised.choices["revenue_stream"] = patterns.elements.find((e) => e.element_id === "revenue_stream")!.choices[1]!;
    }
    const v2 = await client.createVersion("loop", revised);
    expect(v2.version_number).toBe(2);
    const second = await client.getGuidance("loop", 2);
    expect(second.history?.parent_version).toBe(1);
    expect(Object.keys(second.history?.probability_deltas ?? {})).not.toHaveLength(0);

    // archived guidance for version 1 is still retrievable
    const archived = await client.getGuidance("loop", 1);
    expect(archived.version_number).toBe(1);
  }, 30000);

  it("rejects a concurrent revision with a stale-base conflict", async () => {
    const failure = await client
      .createVersion("loop", { ...draftFor(0), base_version: 1 })
      .then(() => null, (e: unknown) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect((failure as ApiError).status).toBe(409);
    expect((failure as ApiError).has("stale-base")).toBe(true);
  });

  it("serves mentor matches for the latest version", async () => {
    const matches = await client.getMatches("loop", 2);
    expect(Object.keys(matches).sort()).toEqual([
      "value_capture",
      "value_creation",
      "value_delivery",
      "value_proposition",
    ]);
    for (const ranked of Object.values(matches)) {
      expect(ranked.length).toBeGreaterThan(0);
      expect(ranked.length).toBeLessThanOrEqual(2);
    }
  });
});
