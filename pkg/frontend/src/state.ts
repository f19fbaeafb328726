// Minimal observable store for the single-user session.

import type { CriteriaCatalog, PatternCatalog, VersionDraft } from "./types.js";

export type Role = "entrepreneur" | "mentor";

export interface SessionState {
  role: Role;
  actorId: string;
  ventureId: string | null;
  versionNumber: number | null;
  screen: "editor" | "judgment" | "guidance";
  patternCatalog: PatternCatalog | null;
  criteriaCatalog: CriteriaCatalog | null;
  draft: VersionDraft;
  // version numbers this mentor already judged, for resubmission confirmation
  judgedVersions: Set<string>;
}

export function emptyDraft(): VersionDraft {
  return { choices: {}, metadata: {}, profile_text: {}, base_version: null };
}

type Listener = () => void;

export class Store {
  private state: SessionState;
  private listeners: Listener[] = [];

  constructor(initial?: Partial<SessionState>) {
    this.state = {
      role: "entrepreneur",
      actorId: "",
      ventureId: null,
      versionNumber: null,
      screen: "editor",
      patternCatalog: null,
      criteriaCatalog: null,
      draft: emptyDraft(),
      judgedVersions: new Set(),
      ...initial,
    };
  }

  get(): SessionState {
    return this.state;
  }

  set(patch: Partial<SessionState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener();
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}
