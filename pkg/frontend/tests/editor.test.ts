// @vitest-environment happy-dom

import { describe, expect, it } from "vitest";
import { ApiError, type ApiClient } from "../src/api.js";
import { renderEditor } from "../src/editor.js";
import type { VersionDoc } from "../src/types.js";
import { loadPatternCatalog, makeStore, select, type } from "./helpers.js";

const catalog = loadPatternCatalog();

function mount(store = makeStore(), client: Partial<ApiClient> = {}) {
  const root = document.createElement("div");
  document.body.innerHTML = "";
  document.body.appendChild(root);
  renderEditor(root, store, client as ApiClient);
  return root;
}

function fillEverything(root: HTMLElement): void {
  for (const element of catalog.elements) {
    select(root, `#choice-${element.element_id}`, element.choices[0]!);
  }
  type(root, "#meta-team_size", "4");
  type(root, "#meta-venture_age_months", "9");
  select(root, "#meta-industry", catalog.industries[0]!);
}

function submitButton(root: HTMLElement): HTMLButtonElement {
  return root.querySelector<HTMLButtonElement>("button.submit")!;
}

describe("venture editor", () => {
  it("groups elements under the four dimensions", () => {
    const root = mount();
    const legends = Array.from(root.querySelectorAll("fieldset.dimension-group legend")).map((l) => l.textContent);
    expect(legends).toEqual(["value proposition", "value delivery", "value creation", "value capture"]);
    expect(root.querySelectorAll(".dimension-group .element-row")).toHaveLength(catalog.elements.length);
  });

  it("enables submit once every element and metadata field is set", () => {
    const root = mount();
    expect(submitButton(root).disabled).toBe(true);
    fillEverything(root);
    expect(submitButton(root).disabled).toBe(false);
  });

  it("keeps submit disabled with an inline cue when one element is unselected", () => {
    const root = mount();
    fillEverything(root);
    select(root, `#choice-${catalog.elements[3]!.element_id}`, "");
    expect(submitButton(root).disabled).toBe(true);
    const row = root.querySelector(`.element-row[data-element-id="${catalog.elements[3]!.element_id}"]`)!;
    expect(row.querySelector(".inline-cue")?.textContent).toBe("required");
  });

  it("posts the draft and records the new version number", async () => {
    const store = makeStore({ versionNumber: null });
    let posted: unknown = null;
    const client = {
      createVersion: async (_ventureId: string, draft: unknown) => {
        posted = draft;
        return { version_number: 1 } as VersionDoc;
      },
    };
    const root = mount(store, client);
    fillEverything(root);
    submitButton(root).click();
    await Promise.resolve();
    expect(posted).toMatchObject({ metadata: { team_size: 4, venture_age_months: 9 } });
    expect(store.get().versionNumber).toBe(1);
  });

  it("offers to reload the latest version on a stale-base rejection", async () => {
    const latest: VersionDoc = {
      venture_id: "acme",
      version_number: 2,
      parent_version: 1,
      choices: Object.fromEntries(catalog.elements.map((e) => [e.element_id, e.choices[1]!])),
      metadata: { team_size: 7, venture_age_months: 14, industry: catalog.industries[1]! },
      profile_text: {},
      created_at: "t",
      catalog_version: catalog.catalog_version,
    };
    const store = makeStore();
    const client = {
      createVersion: async () => {
        throw new ApiError(409, [{ code: "stale-base", message: "expected base 2", field: "base_version" }]);
      },
      getVersion: async (_ventureId: string, number: number) => {
        if (number <= 2) return { ...latest, version_number: number };
        throw new ApiError(404, [{ code: "unknown-version", message: "", field: "version_number" }]);
      },
    };
    const root = mount(store, client);
    fillEverything(root);
    submitButton(root).click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    const reload = root.querySelector<HTMLButtonElement>("button.reload-latest");
    expect(reload).not.toBeNull();
    reload!.click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(store.get().draft.base_version).toBe(2);
    expect(store.get().draft.metadata.team_size).toBe(7);
    const firstElement = catalog.elements[0]!;
    const selectNode = document.querySelector<HTMLSelectElement>(`#choice-${firstElement.element_id}`);
    expect(selectNode?.value).toBe(firstElement.choices[1]);
  });
});
