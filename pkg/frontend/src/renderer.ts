/**
 * Voxel renderer: draws selected voxels as shaded cubes on a 2D canvas via
 * painter's-algorithm depth sorting.  Removed voxels are simply absent
 * (sculpting mental model); ghost mode outlines them faintly instead.
 */

import type { OrbitCamera, Vec3 } from "./camera.js";

interface FaceQuad {
  points: { x: number; y: number }[];
  depth: number;
  fill: string;
  stroke: string | null;
}

// Cube faces as corner offsets plus outward normals.
const FACES: { corners: Vec3[]; normal: Vec3 }[] = [
  { corners: [[0, 0, 0], [0, 1, 0], [0, 1, 1], [0, 0, 1]], normal: [-1, 0, 0] },
  { corners: [[1, 0, 0], [1, 0, 1], [1, 1, 1], [1, 1, 0]], normal: [1, 0, 0] },
  { corners: [[0, 0, 0], [0, 0, 1], [1, 0, 1], [1, 0, 0]], normal: [0, -1, 0] },
  { corners: [[0, 1, 0], [1, 1, 0], [1, 1, 1], [0, 1, 1]], normal: [0, 1, 0] },
  { corners: [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]], normal: [0, 0, -1] },
  { corners: [[0, 0, 1], [0, 1, 1], [1, 1, 1], [1, 0, 1]], normal: [0, 0, 1] },
];

const LIGHT_DIR: Vec3 = [0.5, 0.76, 0.42];

function shade(base: [number, number, number], normal: Vec3): string {
  const lambert = Math.max(
    0,
    normal[0] * LIGHT_DIR[0] + normal[1] * LIGHT_DIR[1] + normal[2] * LIGHT_DIR[2],
  );
  const level = 0.55 + 0.45 * lambert;
  const [r, g, b] = base.map((c) => Math.round(c * level));
  return `rgb(${r},${g},${b})`;
}

export interface RenderOptions {
  ghostRemoved: boolean;
  highlight: [number, number, number] | null;
}

export function renderScene(
  ctx: CanvasRenderingContext2D,
  camera: OrbitCamera,
  selected: Iterable<[number, number, number]>,
  removed: Iterable<[number, number, number]>,
  options: RenderOptions,
): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  const quads: FaceQuad[] = [];
  const eye = camera.eye();

  const pushCube = (
    x: number,
    y: number,
    k: number,
    base: [number, number, number],
    ghost: boolean,
  ) => {
    for (const face of FACES) {
      // back-face culling: skip faces pointing away from the eye
      const faceCenter: Vec3 = [
        x + 0.5 + face.normal[0] * 0.5,
        y + 0.5 + face.normal[1] * 0.5,
        k + 0.5 + face.normal[2] * 0.5,
      ];
      const toEye: Vec3 = [
        eye[0] - faceCenter[0],
        eye[1] - faceCenter[1],
        eye[2] - faceCenter[2],
      ];
      const facing =
        toEye[0] * face.normal[0] +
        toEye[1] * face.normal[1] +
        toEye[2] * face.normal[2];
      if (facing <= 0) continue;

      const projected = [];
      let depth = 0;
      let behind = false;
      for (const corner of face.corners) {
        const point = camera.project(
          [x + corner[0], y + corner[1], k + corner[2]],
          width,
          height,
        );
        if (!point) {
          behind = true;
          break;
        }
        projected.push({ x: point.x, y: point.y });
        depth += point.depth;
      }
      if (behind) continue;
      quads.push({
        points: projected,
        depth: depth / 4,
        fill: ghost ? "rgba(120,130,150,0.08)" : shade(base, face.normal),
        stroke: ghost ? "rgba(120,130,150,0.25)" : "rgba(20,24,34,0.55)",
      });
    }
  };

  if (options.ghostRemoved) {
    for (const [x, y, k] of removed) pushCube(x, y, k, [0, 0, 0], true);
  }
  const highlightKey = options.highlight
    ? options.highlight.join(",")
    : null;
  for (const [x, y, k] of selected) {
    const isHighlight = highlightKey === `${x},${y},${k}`;
    pushCube(x, y, k, isHighlight ? [255, 196, 87] : [86, 156, 214], false);
  }

  quads.sort((a, b) => b.depth - a.depth);
  for (const quad of quads) {
    ctx.beginPath();
    ctx.moveTo(quad.points[0].x, quad.points[0].y);
    for (const point of quad.points.slice(1)) ctx.lineTo(point.x, point.y);
    ctx.closePath();
    ctx.fillStyle = quad.fill;
    ctx.fill();
    if (quad.stroke) {
      ctx.strokeStyle = quad.stroke;
      ctx.lineWidth = 0.7;
      ctx.stroke();
    }
  }
}
