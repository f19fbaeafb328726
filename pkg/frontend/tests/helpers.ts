import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { Store } from "../src/state.js";
import type { CriteriaCatalog, PatternCatalog } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

export function loadPatternCatalog(): PatternCatalog {
  const raw = JSON.parse(readFileSync(join(here, "..", "..", "src", "hidss", "data", "pattern_catalog.json"), "utf8"));
  raw.dimensions ??= ["value_proposition", "value_delivery", "value_creation", "value_capture"];
  return raw as PatternCatalog;
}

export function loadCriteriaCatalog(): CriteriaCatalog {
  return JSON.parse(
    readFileSync(join(here, "..", "..", "src", "hidss", "data", "criteria_catalog.json"), "utf8"),
  ) as CriteriaCatalog;
}

export function makeStore(overrides: Parameters<typeof Store.prototype.set>[0] = {}): Store {
  const store = new Store();
  store.set({
    patternCatalog: loadPatternCatalog(),
    criteriaCatalog: loadCriteriaCatalog(),
    ventureId: "acme",
    versionNumber: 1,
    actorId: "mentor-1",
    ...overrides,
  });
  return store;
}

export function select(root: HTMLElement, selector: string, value: string): void {
  const node = root.querySelector<HTMLSelectElement>(selector);
  if (!node) throw new Error(`no element for ${selector}`);
  node.value = value;
  node.dispatchEvent(new Event("change", { bubbles: true }));
}

export function type(root: HTMLElement, selector: string, value: string): void {
  const node = root.querySelector<HTMLInputElement>(selector);
  if (!node) throw new Error(`no element for ${selector}`);
  node.value = value;
  node.dispatchEvent(new Event("input", { bubbles: true }));
}

export function completeDraftChoices(catalog: PatternCatalog): Record<string, string> {
  const choices: Record<string, string> = {};
  for (const element of catalog.elements) choices[element.element_id] = element.choices[0]!;
  return choices;
}
