// Thin typed client over the service HTTP API. All domain numbers come from
// these responses; the only client-side logic is error normalization.

import type {
  ApiIssue,
  CriteriaCatalog,
  GuidanceReport,
  JudgmentDraft,
  MatchAssignment,
  MentorProfile,
  PatternCatalog,
  VersionDoc,
  VersionDraft,
} from "./types.js";

export class ApiError extends Error {
  status: number;
  issues: ApiIssue[];

  constructor(status: number, issues: ApiIssue[]) {
    super(issues.map((i) => `${i.code}: ${i.message}`).join("; ") || `HTTP ${status}`);
    this.name = "ApiError";
    this.status = status;
    this.issues = issues;
  }

  has(code: string): boolean {
    return this.issues.some((i) => i.code === code);
  }

  forField(field: string): ApiIssue | undefined {
    return this.issues.find((i) => i.field === field);
  }
}

function normalizeIssues(status: number, body: unknown): ApiIssue[] {
  // service errors arrive as {"detail": {"errors": [{code, message, field}]}}
  if (body && typeof body === "object") {
    const detail = (body as { detail?: unknown }).detail;
    if (detail && typeof detail === "object") {
      const errors = (detail as { errors?: unknown }).errors;
      if (Array.isArray(errors)) {
        return errors.map((e) => ({
          code: String(e.code ?? "unknown"),
          message: String(e.message ?? ""),
          field: String(e.field ?? ""),
        }));
      }
      return [{ code: "http-error", message: String(detail), field: "" }];
    }
  }
  return [{ code: "http-error", message: `HTTP ${status}`, field: "" }];
}

export class ApiClient {
  baseUrl: string;
  actorId: string | null = null;

  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.actorId) headers["X-Actor-Id"] = this.actorId;
    const response = await fetch(this.baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    let payload: unknown = null;
    try {
      payload = await response.json();
    } catch {
      payload = null;
    }
    if (!response.ok) {
      throw new ApiError(response.status, normalizeIssues(response.status, payload));
    }
    return payload as T;
  }

  getPatternCatalog(): Promise<PatternCatalog> {
    return this.request("GET", "/catalogs/patterns");
  }

  getCriteriaCatalog(): Promise<CriteriaCatalog> {
    return this.request("GET", "/catalogs/criteria");
  }

  createVenture(ventureId: string, name = ""): Promise<{ venture_id: string }> {
    return this.request("POST", "/ventures", { venture_id: ventureId, name });
  }

  createVersion(ventureId: string, draft: VersionDraft): Promise<VersionDoc> {
    return this.request("POST", `/ventures/${encodeURIComponent(ventureId)}/versions`, draft);
  }

  getVersion(ventureId: string, number: number): Promise<VersionDoc> {
    return this.request("GET", `/ventures/${encodeURIComponent(ventureId)}/versions/${number}`);
  }

  submitJudgment(ventureId: string, number: number, draft: JudgmentDraft): Promise<{ judgment_id: string }> {
    return this.request("POST", `/ventures/${encodeURIComponent(ventureId)}/versions/${number}/judgments`, draft);
  }

  getGuidance(ventureId: string, number: number): Promise<GuidanceReport> {
    return this.request("GET", `/ventures/${encodeURIComponent(ventureId)}/versions/${number}/guidance`);
  }

  getMatches(ventureId: string, k = 3): Promise<MatchAssignment> {
    return this.request("GET", `/ventures/${encodeURIComponent(ventureId)}/matches?k=${k}`);
  }

  listMentors(): Promise<MentorProfile[]> {
    return this.request("GET", "/mentors");
  }

  createMentor(profile: Partial<MentorProfile>): Promise<{ mentor_id: string }> {
    return this.request("POST", "/mentors", profile);
  }

  recordOutcome(ventureId: string, milestone: string, achieved: boolean): Promise<unknown> {
    return this.request("POST", `/ventures/${encodeURIComponent(ventureId)}/outcomes`, { milestone, achieved });
  }

  retrain(): Promise<{ model_set_id: string }> {
    return this.request("POST", "/admin/retrain");
  }

  health(): Promise<{ status: string; model_set_id: string }> {
    return this.request("GET", "/health");
  }
}
