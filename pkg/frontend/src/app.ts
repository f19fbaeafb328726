// Application shell: role switch, venture selection, and routing between the
// editor, judgment form, and guidance view. Configuration is a single base
// URL (window.HIDSS_BASE_URL or the current origin).

import { el, option } from "./dom.js";
import { ApiClient, ApiError } from "./api.js";
import { renderEditor } from "./editor.js";
import { applySuggestionToDraft, renderGuidance } from "./guidance.js";
import { renderJudgmentForm } from "./judgment.js";
import { Store, emptyDraft } from "./state.js";

declare global {
  interface Window {
    HIDSS_BASE_URL?: string;
  }
}

export async function bootstrap(root: HTMLElement, baseUrl?: string): Promise<{ store: Store; client: ApiClient }> {
  const client = new ApiClient(baseUrl ?? window.HIDSS_BASE_URL ?? window.location.origin);
  const store = new Store();
  const [patternCatalog, criteriaCatalog] = await Promise.all([
    client.getPatternCatalog(),
    client.getCriteriaCatalog(),
  ]);
  store.set({ patternCatalog, criteriaCatalog });

  const header = el("header", "topbar");
  const roleSelect = el("select", "role-select");
  roleSelect.appendChild(option("entrepreneur", "entrepreneur"));
  roleSelect.appendChild(option("mentor", "mentor"));
  roleSelect.addEventListener("change", () => {
    store.set({ role: roleSelect.value as "entrepreneur" | "mentor", screen: roleSelect.value === "mentor" ? "judgment" : "editor" });
  });

  const actorInput = el("input", "actor-id");
  actorInput.placeholder = "your id";
  actorInput.addEventListener("input", () => {
    store.set({ actorId: actorInput.value });
    client.actorId = actorInput.value || null;
  });

  const ventureInput = el("input", "venture-id");
  ventureInput.placeholder = "venture id";
  const openButton = el("button", "open-venture", "Open");
  openButton.type = "button";
  openButton.addEventListener("click", async () => {
    const ventureId = ventureInput.value.trim();
    if (!ventureId) return;
    try {
      await client.createVenture(ventureId);
    } catch (error) {
      // an existing venture is fine; anything else surfaces below
      if (!(error instanceof ApiError && error.has("duplicate-venture"))) throw error;
    }
    store.set({ ventureId, versionNumber: null, draft: emptyDraft() });
  });

  header.append(roleSelect, actorInput, ventureInput, openButton);

  const main = el("main", "screen");
  root.append(header, main);

  async function show(): Promise<void> {
    main.innerHTML = "";
    const state = store.get();
    if (state.screen === "editor") {
      renderEditor(main, store, client);
    } else if (state.screen === "judgment") {
      renderJudgmentForm(main, store, client, {
        onSubmitted: () => {
          store.set({ screen: "guidance" });
        },
      });
    } else if (state.screen === "guidance" && state.ventureId && state.versionNumber !== null) {
      try {
        const [report, version] = await Promise.all([
          client.getGuidance(state.ventureId, state.versionNumber),
          client.getVersion(state.ventureId, state.versionNumber),
        ]);
        renderGuidance(main, store, report, {
          onApplySuggestion: (suggestion) => {
            applySuggestionToDraft(
              store,
              version.choices,
              version.metadata,
              version.profile_text,
              version.version_number,
              suggestion,
            );
          },
        });
      } catch (error) {
        if (error instanceof ApiError && error.has("cold-start")) {
          main.appendChild(el("p", "cold-start", "No trained models yet; guidance appears once outcomes are recorded and training runs."));
        } else {
          main.appendChild(el("p", "error", String(error)));
        }
      }
    }
  }

  store.subscribe(() => {
    void show();
  });
  await show();
  return { store, client };
}
