// Venture editor: a wizard over the four value dimensions and their catalog
// elements, plus a metadata step. Client-side validation mirrors the server
// so the submit button only enables on a complete, valid draft; server
// rejections are still rendered per field in case the catalogs drift.

import { el, option } from "./dom.js";
import { ApiError, type ApiClient } from "./api.js";
import type { Store } from "./state.js";
import type { PatternCatalog, VersionDoc } from "./types.js";
import { collectModelIssues } from "./validation.js";

export interface EditorCallbacks {
  onSubmitted?: (version: VersionDoc) => void;
}

function metadataIsComplete(draft: { metadata: Record<string, unknown> }): boolean {
  return (
    draft.metadata["team_size"] !== undefined &&
    draft.metadata["venture_age_months"] !== undefined &&
    draft.metadata["industry"] !== undefined
  );
}

export function renderEditor(root: HTMLElement, store: Store, client: ApiClient, callbacks: EditorCallbacks = {}): void {
  const catalog = store.get().patternCatalog;
  if (!catalog) {
    root.appendChild(el("p", "error", "pattern catalog not loaded"));
    return;
  }

  const container = el("section", "editor");
  const form = el("form", "editor-form");
  form.addEventListener("submit", (event) => event.preventDefault());
  const errorBox = el("div", "error-box");
  const submit = el("button", "submit", "Submit version");
  submit.type = "button";

  for (const dimension of catalog.dimensions) {
    const elements = catalog.elements.filter((e) => e.dimension_id === dimension);
    if (elements.length === 0) continue;
    const fieldset = el("fieldset", "dimension-group");
    fieldset.appendChild(el("legend", "", dimension.replace(/_/g, " ")));
    for (const element of elements) {
      const row = el("div", "element-row");
      row.dataset.elementId = element.element_id;
      const label = el("label", "", element.display_name);
      label.htmlFor = `choice-${element.element_id}`;
      const select = el("select");
      select.id = `choice-${element.element_id}`;
      select.appendChild(option("— choose —", ""));
      for (const choice of element.choices) select.appendChild(option(choice, choice));
      const current = store.get().draft.choices[element.element_id];
      if (current !== undefined) select.value = current;
      select.addEventListener("change", () => {
        const draft = store.get().draft;
        const choices = { ...draft.choices };
        if (select.value) choices[element.element_id] = select.value;
        else delete choices[element.element_id];
        store.set({ draft: { ...draft, choices } });
        sync();
      });
      const cue = el("span", "inline-cue", "required");
      row.append(label, select, cue);
      fieldset.appendChild(row);
    }
    form.appendChild(fieldset);
  }

  const metaFieldset = el("fieldset", "metadata-group");
  metaFieldset.appendChild(el("legend", "", "venture profile"));
  const numericFields: Array<["team_size" | "venture_age_months", string]> = [
    ["team_size", "Team size"],
    ["venture_age_months", "Venture age (months)"],
  ];
  for (const [name, labelText] of numericFields) {
    const row = el("div", "element-row");
    row.dataset.elementId = name;
    const label = el("label", "", labelText);
    label.htmlFor = `meta-${name}`;
    const input = el("input");
    input.id = `meta-${name}`;
    input.type = "number";
    input.min = "0";
    input.step = "1";
    const current = store.get().draft.metadata[name];
    if (current !== undefined) input.value = String(current);
    input.addEventListener("input", () => {
      const draft = store.get().draft;
      const metadata = { ...draft.metadata };
      if (input.value === "") delete metadata[name];
      else metadata[name] = Number(input.value);
      store.set({ draft: { ...draft, metadata } });
      sync();
    });
    row.append(label, input, el("span", "inline-cue", "required"));
    metaFieldset.appendChild(row);
  }
  const industryRow = el("div", "element-row");
  industryRow.dataset.elementId = "industry";
  const industryLabel = el("label", "", "Industry");
  industryLabel.htmlFor = "meta-industry";
  const industrySelect = el("select");
  industrySelect.id = "meta-industry";
  industrySelect.appendChild(option("— choose —", ""));
  for (const industry of catalog.industries) industrySelect.appendChild(option(industry, industry));
  const currentIndustry = store.get().draft.metadata.industry;
  if (currentIndustry !== undefined) industrySelect.value = currentIndustry;
  industrySelect.addEventListener("change", () => {
    const draft = store.get().draft;
    const metadata = { ...draft.metadata };
    if (industrySelect.value) metadata.industry = industrySelect.value;
    else delete metadata.industry;
    store.set({ draft: { ...draft, metadata } });
    sync();
  });
  industryRow.append(industryLabel, industrySelect, el("span", "inline-cue", "required"));
  metaFieldset.appendChild(industryRow);

  const textFieldset = el("fieldset", "profile-text-group");
  textFieldset.appendChild(el("legend", "", "profile notes (optional, one per dimension)"));
  for (const dimension of catalog.dimensions) {
    const area = el("textarea");
    area.id = `profile-${dimension}`;
    area.placeholder = dimension.replace(/_/g, " ");
    const current = store.get().draft.profile_text[dimension];
    if (current !== undefined) area.value = current;
    area.addEventListener("input", () => {
      const draft = store.get().draft;
      const profile_text = { ...draft.profile_text };
      if (area.value) profile_text[dimension] = area.value;
      else delete profile_text[dimension];
      store.set({ draft: { ...draft, profile_text } });
    });
    textFieldset.appendChild(area);
  }
  form.appendChild(metaFieldset);
  form.appendChild(textFieldset);

  function markIssues(issues: Array<{ code: string; field: string }>): void {
    for (const row of Array.from(form.querySelectorAll<HTMLElement>(".element-row"))) {
      const field = row.dataset.elementId ?? "";
      const issue = issues.find((i) => i.field === field);
      row.classList.toggle("invalid", issue !== undefined);
      const cue = row.querySelector<HTMLElement>(".inline-cue");
      if (cue) cue.textContent = issue ? issue.code : "required";
    }
  }

  function sync(): void {
    const draft = store.get().draft;
    // only validate fields the user has touched; untouched ones keep the
    // neutral "required" cue, but an incomplete draft still disables submit
    const issues = collectModelIssues(draft.choices, draft.metadata as Record<string, unknown>, catalog as PatternCatalog);
    const touchedIssues = issues.filter(
      (i) => i.code !== "missing-element" || draft.choices[i.field] !== undefined,
    );
    markIssues(touchedIssues.filter((i) => i.code !== "negative-metadata" || metadataIsComplete(draft)));
    submit.disabled = issues.length > 0;
  }

  submit.addEventListener("click", async () => {
    const state = store.get();
    if (!state.ventureId) {
      errorBox.textContent = "register or select a venture first";
      return;
    }
    errorBox.textContent = "";
    try {
      const version = await client.createVersion(state.ventureId, state.draft);
      store.set({ versionNumber: version.version_number, screen: "guidance" });
      callbacks.onSubmitted?.(version);
    } catch (error) {
      if (error instanceof ApiError) {
        if (error.has("stale-base")) {
          const prompt = el("div", "stale-base-prompt");
          prompt.appendChild(el("span", "", "Someone revised this venture since you started. "));
          const reload = el("button", "reload-latest", "Reload latest version");
          reload.type = "button";
          reload.addEventListener("click", async () => {
            const latest = await latestVersion(client, state.ventureId as string);
            store.set({
              draft: {
                choices: { ...latest.choices },
                metadata: { ...latest.metadata },
                profile_text: { ...latest.profile_text },
                base_version: latest.version_number,
              },
            });
            root.innerHTML = "";
            renderEditor(root, store, client, callbacks);
          });
          prompt.appendChild(reload);
          errorBox.innerHTML = "";
          errorBox.appendChild(prompt);
        } else {
          markIssues(error.issues);
          errorBox.textContent = error.message;
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

async function latestVersion(client: ApiClient, ventureId: string): Promise<VersionDoc> {
  // walk forward from the draft's base; the service has no "latest" endpoint,
  // so probe upward until a version is missing
  let number = 1;
  let last: VersionDoc | null = null;
  for (;;) {
    try {
      last = await client.getVersion(ventureId, number);
      number += 1;
    } catch {
      break;
    }
  }
  if (!last) throw new Error(`venture ${ventureId} has no versions`);
  return last;
}
