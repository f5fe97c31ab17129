/** Payload shapes exchanged with the dnabricks HTTP service. */

export interface CanvasSpec {
  width_helices: number;
  height_helices: number;
  depth_bp: number;
}

export interface StatsBlock {
  voxels_total: number;
  voxels_selected: number;
  domain_count: number;
  physical_size_nm: [number, number, number];
  full_bricks: number;
  half_bricks: number;
  boundary_bricks: number;
  fragments: number;
  strand_count: number;
  total_nt: number;
  cost_usd: string;
  rate_usd_per_base: number;
  warnings: string[];
}

export interface ConstraintsBlock {
  gc_min: number;
  gc_max: number;
  max_run: number;
  target_hamming: number;
  retry_budget: number;
  check_complements: boolean;
}

export interface ProjectState {
  project_id: string;
  revision: number;
  canvas: CanvasSpec;
  removed_voxels: [number, number, number][];
  generation: { seed: number; constraints: ConstraintsBlock };
  options: { boundary_merge: boolean; protector_policy: string };
  stats: StatsBlock;
}

export interface Histogram {
  pairs_8: number;
  pairs_7: number;
  pairs_6: number;
  total_domains: number;
}

export interface AnalysisResponse {
  project_id: string;
  revision: number;
  histogram: Histogram;
  stats: StatsBlock;
}

export interface CostResponse {
  project_id: string;
  revision: number;
  total_nt: number;
  rate_usd_per_base: number;
  total_usd: string;
  stats: StatsBlock;
}

export interface VoxelChange {
  x: number;
  y: number;
  k: number;
  present: boolean;
}

export type ExportFormat = "csv" | "tex" | "3dna" | "txt";

/** Layer count of a canvas (one layer is 8 bp). */
export function layersOf(spec: CanvasSpec): number {
  return spec.depth_bp / 8;
}

export function voxelKey(x: number, y: number, k: number): string {
  return `${x},${y},${k}`;
}
