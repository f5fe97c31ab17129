/**
 * Orbit camera over the voxel grid.
 *
 * Angles are kept in whole degrees and zoom as an integer exponent so that
 * inverse operations (zoom in then out, a full 360-degree orbit) restore the
 * exact same matrix, bit for bit.  All screen-space math lives here; camera
 * changes never touch the server.
 */

export type Vec3 = [number, number, number];
export type Mat4 = Float64Array; // column-major 4x4

const ZOOM_STEP = 1.25;
const MIN_ZOOM_EXPONENT = -12;
const MAX_ZOOM_EXPONENT = 12;
const MIN_PITCH = -89;
const MAX_PITCH = 89;

export interface AxisPreset {
  yawDeg: number;
  pitchDeg: number;
}

export const AXIS_PRESETS: Record<string, AxisPreset> = {
  front: { yawDeg: 0, pitchDeg: 0 },
  back: { yawDeg: 180, pitchDeg: 0 },
  left: { yawDeg: 90, pitchDeg: 0 },
  right: { yawDeg: -90, pitchDeg: 0 },
  top: { yawDeg: 0, pitchDeg: 89 },
  orbit: { yawDeg: 35, pitchDeg: 25 },
};

function degToRad(deg: number): number {
  return (deg * Math.PI) / 180;
}

export function normalizeDeg(deg: number): number {
  return ((deg % 360) + 360) % 360;
}

export class OrbitCamera {
  yawDeg = AXIS_PRESETS.orbit.yawDeg;
  pitchDeg = AXIS_PRESETS.orbit.pitchDeg;
  zoomExponent = 0;

  constructor(
    public target: Vec3,
    public baseDistance: number,
  ) {}

  get distance(): number {
    return this.baseDistance * Math.pow(ZOOM_STEP, -this.zoomExponent);
  }

  orbit(dYawDeg: number, dPitchDeg: number): void {
    this.yawDeg = normalizeDeg(this.yawDeg + dYawDeg);
    this.pitchDeg = Math.min(
      MAX_PITCH,
      Math.max(MIN_PITCH, this.pitchDeg + dPitchDeg),
    );
  }

  zoomIn(steps = 1): void {
    this.zoomExponent = Math.min(MAX_ZOOM_EXPONENT, this.zoomExponent + steps);
  }

  zoomOut(steps = 1): void {
    this.zoomExponent = Math.max(MIN_ZOOM_EXPONENT, this.zoomExponent - steps);
  }

  applyPreset(name: keyof typeof AXIS_PRESETS): void {
    const preset = AXIS_PRESETS[name];
    this.yawDeg = normalizeDeg(preset.yawDeg);
    this.pitchDeg = preset.pitchDeg;
  }

  /** Unit vector from the target toward the eye. */
  viewVector(): Vec3 {
    const yaw = degToRad(this.yawDeg);
    const pitch = degToRad(this.pitchDeg);
    return [
      Math.cos(pitch) * Math.sin(yaw),
      Math.sin(pitch),
      Math.cos(pitch) * Math.cos(yaw),
    ];
  }

  eye(): Vec3 {
    const v = this.viewVector();
    const d = this.distance;
    return [
      this.target[0] + d * v[0],
      this.target[1] + d * v[1],
      this.target[2] + d * v[2],
    ];
  }

  /** World -> view transform (right-handed look-at). */
  viewMatrix(): Mat4 {
    const eye = this.eye();
    const f = normalize(sub(this.target, eye)); // forward
    const worldUp: Vec3 = Math.abs(this.pitchDeg) >= 89 ? [0, 0, -1] : [0, 1, 0];
    const s = normalize(cross(f, worldUp)); // right
    const u = cross(s, f); // up
    const m = new Float64Array(16);
    m[0] = s[0]; m[4] = s[1]; m[8] = s[2];  m[12] = -dot(s, eye);
    m[1] = u[0]; m[5] = u[1]; m[9] = u[2];  m[13] = -dot(u, eye);
    m[2] = -f[0]; m[6] = -f[1]; m[10] = -f[2]; m[14] = dot(f, eye);
    m[15] = 1;
    return m;
  }

  /**
   * Project a world point to canvas pixels plus its view-space depth.
   * Returns null when the point is behind the eye.
   */
  project(
    point: Vec3,
    width: number,
    height: number,
  ): { x: number; y: number; depth: number } | null {
    const m = this.viewMatrix();
    const vx = m[0] * point[0] + m[4] * point[1] + m[8] * point[2] + m[12];
    const vy = m[1] * point[0] + m[5] * point[1] + m[9] * point[2] + m[13];
    const vz = m[2] * point[0] + m[6] * point[1] + m[10] * point[2] + m[14];
    if (vz >= -1e-9) return null;
    const focal = this.focalLength(height);
    return {
      x: width / 2 + (focal * vx) / -vz,
      y: height / 2 - (focal * vy) / -vz,
      depth: -vz,
    };
  }

  /** World-space ray through a canvas pixel. */
  rayThrough(
    px: number,
    py: number,
    width: number,
    height: number,
  ): { origin: Vec3; dir: Vec3 } {
    const m = this.viewMatrix();
    const focal = this.focalLength(height);
    const dirView: Vec3 = [(px - width / 2) / focal, (height / 2 - py) / focal, -1];
    // rotate back to world space using the transpose of the rotation block
    const dirWorld: Vec3 = normalize([
      m[0] * dirView[0] + m[1] * dirView[1] + m[2] * dirView[2],
      m[4] * dirView[0] + m[5] * dirView[1] + m[6] * dirView[2],
      m[8] * dirView[0] + m[9] * dirView[1] + m[10] * dirView[2],
    ]);
    return { origin: this.eye(), dir: dirWorld };
  }

  private focalLength(height: number): number {
    // 45-degree vertical field of view
    return height / 2 / Math.tan(degToRad(45) / 2);
  }
}

export function sub(a: Vec3, b: Vec3): Vec3 {
  return [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
}

export function dot(a: Vec3, b: Vec3): number {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

export function cross(a: Vec3, b: Vec3): Vec3 {
  return [
    a[1] * b[2] - a[2] * b[1],
    a[2] * b[0] - a[0] * b[2],
    a[0] * b[1] - a[1] * b[0],
  ];
}

export function normalize(v: Vec3): Vec3 {
  const n = Math.hypot(v[0], v[1], v[2]);
  return [v[0] / n, v[1] / n, v[2] / n];
}

export function matricesEqual(a: Mat4, b: Mat4): boolean {
  if (a.length !== b.length) return false;
  for (let i = 0; i < a.length; i++) {
    if (a[i] !== b[i]) return false;
  }
  return true;
}
