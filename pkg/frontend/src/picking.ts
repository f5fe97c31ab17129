/**
 * Raycast picking against the axis-aligned voxel grid.
 *
 * Voxels are unit cubes: voxel (x, y, k) occupies [x, x+1) x [y, y+1) x
 * [k, k+1) in world space (z along the helix axis).  Picking walks every
 * candidate voxel with a slab test and returns the nearest hit; desk-scale
 * grids (about a thousand voxels) make brute force plenty fast.
 */

import type { Vec3 } from "./camera.js";

export interface VoxelHit {
  x: number;
  y: number;
  k: number;
  t: number;
}

/** Ray/AABB slab test; returns entry distance t >= 0 or null. */
export function rayBoxIntersect(
  origin: Vec3,
  dir: Vec3,
  boxMin: Vec3,
  boxMax: Vec3,
): number | null {
  let tNear = -Infinity;
  let tFar = Infinity;
  for (let axis = 0; axis < 3; axis++) {
    const o = origin[axis];
    const d = dir[axis];
    if (Math.abs(d) < 1e-12) {
      if (o < boxMin[axis] || o > boxMax[axis]) return null;
      continue;
    }
    let t0 = (boxMin[axis] - o) / d;
    let t1 = (boxMax[axis] - o) / d;
    if (t0 > t1) [t0, t1] = [t1, t0];
    tNear = Math.max(tNear, t0);
    tFar = Math.min(tFar, t1);
    if (tNear > tFar) return null;
  }
  if (tFar < 0) return null;
  return Math.max(tNear, 0);
}

/** Nearest selected voxel hit by the ray, or null. */
export function pickVoxel(
  origin: Vec3,
  dir: Vec3,
  voxels: Iterable<[number, number, number]>,
): VoxelHit | null {
  let best: VoxelHit | null = null;
  for (const [x, y, k] of voxels) {
    const t = rayBoxIntersect(origin, dir, [x, y, k], [x + 1, y + 1, k + 1]);
    if (t !== null && (best === null || t < best.t)) {
      best = { x, y, k, t };
    }
  }
  return best;
}
