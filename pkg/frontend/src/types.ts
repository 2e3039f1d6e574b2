// Wire types mirroring the service payloads (documented in the API schema).

export type Direction = "cited" | "citing" | "combined";

export interface MemberShare {
  member: string;
  label: string;
  share_incl: number;
  share_excl: number;
  raw_in_env: number | null;
  self_count: number | null;
}

export interface CosineEdge {
  source: string;
  target: string;
  cosine: number;
}

export interface Coordinate {
  member: string;
  x: number;
  y: number;
}

export interface Provenance {
  seed: string;
  direction: string;
  threshold_fraction: number;
  cosine_cutoff: number;
  cell_floor: number;
  include_diagonal: boolean;
  year_tag: string;
  totals_derived: boolean;
  rng_seed: number | null;
  grandsum: number | null;
  notes: string[];
}

export interface EnvironmentPayload {
  seed: string;
  direction: Direction;
  members: string[];
  labels: string[];
  shares: MemberShare[];
  edges: CosineEdge[];
  coordinates: Coordinate[] | null;
  provenance: Provenance;
  warnings: string[];
}

export interface JournalInfo {
  id: string;
  label: string;
  total_citing: number;
  total_cited: number;
}

export interface FactorPayload {
  seed: string;
  direction: Direction;
  variables: string[];
  dropped: string[];
  components: number;
  eigenvalues: number[];
  loadings: number[][];
  variance_explained_percent: number;
  rotation_iterations: number;
  report: string;
  warnings: string[];
}
