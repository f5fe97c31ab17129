/** DOM wiring: canvas events, panels, dialogs, downloads. */

import { ApiClient, ApiError } from "./api.js";
import { AXIS_PRESETS, OrbitCamera } from "./camera.js";
import { histogramBars } from "./chart.js";
import { pickVoxel } from "./picking.js";
import { renderScene } from "./renderer.js";
import { ProjectStore, type BrushMode } from "./store.js";
import { layersOf, type ExportFormat, type StatsBlock } from "./types.js";

const SERVICE_URL =
  new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8000";

const api = new ApiClient(SERVICE_URL);
const store = new ProjectStore(api);

const canvas = document.getElementById("scene") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
let camera = new OrbitCamera([0, 0, 0], 10);
let brushMode: BrushMode = "voxel";
let boxCorner: [number, number, number] | null = null;
let ghostMode = false;
let hover: [number, number, number] | null = null;

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function setBanner(text: string | null): void {
  const banner = el<HTMLDivElement>("banner");
  banner.textContent = text ?? "";
  banner.style.display = text ? "block" : "none";
}

function resetCamera(): void {
  const snap = store.snapshot();
  if (!snap.spec) return;
  const cx = snap.spec.width_helices / 2;
  const cy = snap.spec.height_helices / 2;
  const cz = layersOf(snap.spec) / 2;
  const radius = Math.max(cx, cy, cz);
  camera = new OrbitCamera([cx, cy, cz], radius * 3.2);
}

function draw(): void {
  const snap = store.snapshot();
  const removed: [number, number, number][] = [];
  if (ghostMode && snap.spec) {
    for (const key of snap.removed) {
      const [x, y, k] = key.split(",").map(Number);
      removed.push([x, y, k]);
    }
  }
  renderScene(ctx, camera, store.selectedVoxels(), removed, {
    ghostRemoved: ghostMode,
    highlight: hover,
  });
}

function renderStats(stats: StatsBlock | null): void {
  const panel = el<HTMLDListElement>("stats");
  if (!stats) {
    panel.innerHTML = "";
    return;
  }
  const [w, h, z] = stats.physical_size_nm;
  const rows: [string, string][] = [
    ["voxels", `${stats.voxels_selected} / ${stats.voxels_total}`],
    ["domains", String(stats.domain_count)],
    ["size", `${w} x ${h} x ${z} nm`],
    [
      "strands",
      `${stats.strand_count} (${stats.full_bricks}F / ${stats.half_bricks}H` +
        ` / ${stats.boundary_bricks}B / ${stats.fragments}G)`,
    ],
    ["nucleotides", String(stats.total_nt)],
    ["cost", `${stats.cost_usd} USD`],
  ];
  panel.innerHTML = rows
    .map(([k, v]) => `<dt>${k}</dt><dd>${v}</dd>`)
    .join("");
}

async function refreshHistogram(): Promise<void> {
  const snap = store.snapshot();
  const chart = el<HTMLCanvasElement>("chart");
  const chartCtx = chart.getContext("2d")!;
  chartCtx.clearRect(0, 0, chart.width, chart.height);
  if (!snap.projectId) return;
  try {
    const analysis = await api.getAnalysis(snap.projectId);
    const pad = 24;
    const layout = histogramBars(
      analysis.histogram,
      chart.width - pad * 2,
      chart.height - pad * 2,
    );
    chartCtx.fillStyle = "#569cd6";
    chartCtx.strokeStyle = "#32384a";
    chartCtx.font = "12px system-ui";
    chartCtx.textAlign = "center";
    for (const bar of layout.bars) {
      chartCtx.fillRect(pad + bar.x, pad + bar.y, bar.width, bar.height);
      chartCtx.fillStyle = "#c8cedd";
      chartCtx.fillText(
        `${bar.label}: ${bar.count}`,
        pad + bar.x + bar.width / 2,
        pad + bar.y - 4 < 12 ? 12 : pad + bar.y - 4,
      );
      chartCtx.fillStyle = "#569cd6";
    }
    el<HTMLSpanElement>("chart-total").textContent =
      `${analysis.histogram.total_domains} domains`;
  } catch (error) {
    surfaceError(error);
  }
}

function surfaceError(error: unknown): void {
  if (error instanceof ApiError) {
    setBanner(`server: ${error.detail}`);
  } else if (error instanceof TypeError) {
    setBanner("offline: cannot reach the dnabricks service");
  } else {
    setBanner(String(error));
  }
}

store.subscribe((snap) => {
  renderStats(snap.stats);
  el<HTMLSpanElement>("revision").textContent =
    snap.projectId ? `rev ${snap.revision}` : "";
  el<HTMLButtonElement>("undo").disabled = !snap.canUndo;
  el<HTMLButtonElement>("redo").disabled = !snap.canRedo;
  if (snap.offline) setBanner("offline: mutation failed, state unchanged");
  draw();
});

canvas.addEventListener("mousemove", (event) => {
  if (event.buttons === 2 || event.buttons === 4) {
    camera.orbit(-event.movementX / 3, event.movementY / 3);
    draw();
    return;
  }
  const rect = canvas.getBoundingClientRect();
  const ray = camera.rayThrough(
    event.clientX - rect.left,
    event.clientY - rect.top,
    canvas.width,
    canvas.height,
  );
  const hit = pickVoxel(ray.origin, ray.dir, store.selectedVoxels());
  const next = hit ? ([hit.x, hit.y, hit.k] as [number, number, number]) : null;
  if (String(next) !== String(hover)) {
    hover = next;
    draw();
  }
});

canvas.addEventListener("contextmenu", (event) => event.preventDefault());

canvas.addEventListener("click", async (event) => {
  const rect = canvas.getBoundingClientRect();
  const ray = camera.rayThrough(
    event.clientX - rect.left,
    event.clientY - rect.top,
    canvas.width,
    canvas.height,
  );
  const hit = pickVoxel(ray.origin, ray.dir, store.selectedVoxels());
  if (!hit) return;
  try {
    if (brushMode === "voxel") {
      await store.toggleVoxel(hit.x, hit.y, hit.k);
    } else if (boxCorner === null) {
      boxCorner = [hit.x, hit.y, hit.k];
      setBanner(`box corner set at ${boxCorner}; click the opposite corner`);
      return;
    } else {
      const lo: [number, number, number] = [
        Math.min(boxCorner[0], hit.x),
        Math.min(boxCorner[1], hit.y),
        Math.min(boxCorner[2], hit.k),
      ];
      const hi: [number, number, number] = [
        Math.max(boxCorner[0], hit.x),
        Math.max(boxCorner[1], hit.y),
        Math.max(boxCorner[2], hit.k),
      ];
      boxCorner = null;
      await store.removeBox(lo, hi);
    }
    setBanner(null);
    void refreshHistogram();
  } catch (error) {
    surfaceError(error);
  }
});

canvas.addEventListener("wheel", (event) => {
  event.preventDefault();
  if (event.deltaY < 0) camera.zoomIn();
  else camera.zoomOut();
  draw();
});

for (const name of Object.keys(AXIS_PRESETS)) {
  const button = document.getElementById(`preset-${name}`);
  button?.addEventListener("click", () => {
    camera.applyPreset(name);
    draw();
  });
}
el<HTMLButtonElement>("zoom-in").addEventListener("click", () => {
  camera.zoomIn();
  draw();
});
el<HTMLButtonElement>("zoom-out").addEventListener("click", () => {
  camera.zoomOut();
  draw();
});

el<HTMLButtonElement>("undo").addEventListener("click", async () => {
  try {
    await store.undo();
    void refreshHistogram();
  } catch (error) {
    surfaceError(error);
  }
});
el<HTMLButtonElement>("redo").addEventListener("click", async () => {
  try {
    await store.redo();
    void refreshHistogram();
  } catch (error) {
    surfaceError(error);
  }
});

el<HTMLSelectElement>("brush").addEventListener("change", (event) => {
  brushMode = (event.target as HTMLSelectElement).value as BrushMode;
  boxCorner = null;
});
el<HTMLInputElement>("ghost").addEventListener("change", (event) => {
  ghostMode = (event.target as HTMLInputElement).checked;
  draw();
});

el<HTMLFormElement>("new-form").addEventListener("submit", async (event) => {
  event.preventDefault();
  const width = Number(el<HTMLInputElement>("dim-width").value);
  const height = Number(el<HTMLInputElement>("dim-height").value);
  const depth = Number(el<HTMLInputElement>("dim-depth").value);
  // client-side mirror of the server's depth rule for immediate feedback
  if (depth % 16 !== 0) {
    setBanner("depth must be a multiple of 16 base pairs");
    return;
  }
  if (width < 2 || height < 2) {
    setBanner("width and height must be at least 2 helices");
    return;
  }
  try {
    await store.createProject(
      { width_helices: width, height_helices: height, depth_bp: depth },
      Number(el<HTMLInputElement>("dim-seed").value) || 0,
    );
    setBanner(null);
    resetCamera();
    draw();
    void refreshHistogram();
  } catch (error) {
    surfaceError(error);
  }
});

function triggerDownload(filename: string, data: Uint8Array): void {
  const blob = new Blob([data.buffer as ArrayBuffer]);
  const url = URL.createObjectURL(blob);
  const link = document.createElement("a");
  link.href = url;
  link.download = filename;
  link.click();
  URL.revokeObjectURL(url);
}

for (const format of ["csv", "tex", "3dna", "txt"] as ExportFormat[]) {
  el<HTMLButtonElement>(`download-${format}`).addEventListener(
    "click",
    async () => {
      const snap = store.snapshot();
      if (!snap.projectId) return;
      try {
        const data = await api.download(snap.projectId, format);
        triggerDownload(`project.${format}`, data);
      } catch (error) {
        surfaceError(error);
      }
    },
  );
}

el<HTMLInputElement>("import-file").addEventListener("change", async (event) => {
  const input = event.target as HTMLInputElement;
  const file = input.files?.[0];
  if (!file) return;
  try {
    const data = new Uint8Array(await file.arrayBuffer());
    const doc = await api.importProject(data);
    await store.openState(doc);
    resetCamera();
    draw();
    void refreshHistogram();
    setBanner(null);
  } catch (error) {
    surfaceError(error);
  } finally {
    input.value = "";
  }
});

setBanner("create a canvas to start sculpting");
