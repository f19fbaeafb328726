// Payload shapes of the validation service API. The dashboard renders these
// verbatim; it never re-derives probabilities or aggregates client-side.

export interface ElementDef {
  element_id: string;
  dimension_id: string;
  display_name: string;
  choices: string[];
}

export interface PatternCatalog {
  catalog_version: string;
  dimensions: string[];
  elements: ElementDef[];
  industries: string[];
}

export interface CriterionDef {
  criterion_id: string;
  assessment_dimension: string;
  display_name: string;
}

export interface CriteriaCatalog {
  catalog_version: string;
  criteria: CriterionDef[];
}

export interface ModelMetadata {
  team_size: number;
  venture_age_months: number;
  industry: string;
}

export interface VersionDoc {
  venture_id: string;
  version_number: number;
  parent_version: number | null;
  choices: Record<string, string>;
  metadata: ModelMetadata;
  profile_text: Record<string, string>;
  created_at: string;
  catalog_version: string;
}

export interface VersionDraft {
  choices: Record<string, string>;
  metadata: Partial<ModelMetadata>;
  profile_text: Record<string, string>;
  base_version: number | null;
}

export interface JudgmentDraft {
  mentor_id: string;
  ratings: Record<string, number>;
  comments: Record<string, string>;
}

export interface MilestonePrediction {
  milestone: string;
  p_hybrid: number;
  p_machine: number;
  p_crowd: number | null;
  basis: "hybrid" | "machine-only";
}

export interface CriterionAggregate {
  aggregate: number;
  dispersion: number;
  n: number;
  contested: boolean;
}

export interface Intervention {
  element_id: string;
  alternative_choice: string;
  p_new: number;
  delta: number;
}

export interface MentorComment {
  mentor_id: string;
  text: string;
}

export interface GuidanceReport {
  venture_id: string;
  version_number: number;
  informative: {
    dimension_scores: Record<string, number>;
    dimension_labels: Record<string, string>;
    criteria: Record<string, CriterionAggregate>;
    predictions: Record<string, MilestonePrediction>;
  };
  suggestive: {
    comments: Record<string, MentorComment[]>;
    machine_interventions: Record<string, Intervention[]>;
  };
  provenance: {
    judge_count: number;
    model_set_id: string;
    generated_at: string;
  };
  history: {
    parent_version: number;
    dimension_score_deltas: Record<string, number>;
    probability_deltas: Record<string, number>;
  } | null;
}

export interface RankedMentor {
  mentor_id: string;
  score: number;
  low_confidence: boolean;
}

export type MatchAssignment = Record<string, RankedMentor[]>;

export interface MentorProfile {
  mentor_id: string;
  expertise_tags: string[];
  industries: string[];
  display_name: string;
}

export interface ApiIssue {
  code: string;
  message: string;
  field: string;
}
