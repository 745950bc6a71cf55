// Document shapes served by the decision engine. Reals inside solution
// payloads arrive as decimal strings; the UI only ever formats them.

export interface ComponentRow {
  b: number;
  v: number;
}

export interface Comparison {
  left: number;
  right: number;
  components: ComponentRow[];
}

export interface ProblemDocument {
  version: number;
  alternatives: string[];
  comparisons: Comparison[];
}

export interface Diagnostic {
  pointer: string;
  rule: string;
  message: string;
}

export interface DraftStatus {
  solvable: boolean;
  diagnostics: Diagnostic[];
}

export interface ServedComponent {
  b: string;
  v: string;
}

export interface ServedCell {
  components: ServedComponent[];
}

export interface MatrixDocument {
  version: number;
  alternatives: string[];
  normalization_shift: string;
  entries: ServedCell[][];
}

export interface WeightBlock {
  lambda?: string;
  values?: string[];
  credibility?: string | null;
  infeasible?: boolean;
}

export interface ServedInterval {
  lower: string;
  upper: string;
  lower_closed: boolean;
  upper_closed: boolean;
}

export interface SolutionDocument {
  version: number;
  alternatives: string[];
  matrices: {
    preference: { normalization_shift: string; entries: ServedCell[][] };
    integration: string[][];
    integration_mass: string[][];
    probability: string[][];
    probability_triangular: string[][];
    integration_completed: string[][];
    integration_completed_triangular: string[][];
  };
  ranking: {
    order: number[];
    labels: string[];
    upset_sum: string;
    optimal: boolean;
  };
  inconsistency_degree: string;
  weights: {
    requested: WeightBlock;
    presets: { high: WeightBlock; medium: WeightBlock; low: WeightBlock };
  };
  intervals: {
    lambda_min: string | null;
    per_alternative: ServedInterval[];
  };
  warnings: string[];
}
