/**
 * Client-side project state.
 *
 * The store never computes structure numbers itself: every displayed figure
 * comes from the stats block the server attaches to each response, applied
 * at the revision the server reports.  Mutations are serialized per project
 * (one in flight at a time) to respect the service's revision contract, and
 * sculpt edits maintain undo/redo stacks of inverse operations.
 */

import type { ProjectApi } from "./api.js";
import type {
  CanvasSpec,
  ProjectState,
  StatsBlock,
  VoxelChange,
} from "./types.js";
import { layersOf, voxelKey } from "./types.js";

export type BrushMode = "voxel" | "box";

export interface StoreSnapshot {
  projectId: string | null;
  revision: number;
  spec: CanvasSpec | null;
  removed: ReadonlySet<string>;
  stats: StatsBlock | null;
  offline: boolean;
  canUndo: boolean;
  canRedo: boolean;
}

type Listener = (snapshot: StoreSnapshot) => void;

export class ProjectStore {
  private projectId: string | null = null;
  private revision = 0;
  private spec: CanvasSpec | null = null;
  private removed = new Set<string>();
  private stats: StatsBlock | null = null;
  private offline = false;

  private undoStack: VoxelChange[][] = [];
  private redoStack: VoxelChange[][] = [];
  private listeners: Listener[] = [];
  private mutationChain: Promise<unknown> = Promise.resolve();

  constructor(private readonly api: ProjectApi) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  snapshot(): StoreSnapshot {
    return {
      projectId: this.projectId,
      revision: this.revision,
      spec: this.spec,
      removed: this.removed,
      stats: this.stats,
      offline: this.offline,
      canUndo: this.undoStack.length > 0,
      canRedo: this.redoStack.length > 0,
    };
  }

  private emit(): void {
    const snap = this.snapshot();
    for (const listener of this.listeners) listener(snap);
  }

  /** Apply a server state document; the response is the source of truth. */
  applyState(doc: ProjectState): void {
    this.projectId = doc.project_id;
    this.revision = doc.revision;
    this.spec = doc.canvas;
    this.removed = new Set(doc.removed_voxels.map(([x, y, k]) => voxelKey(x, y, k)));
    this.stats = doc.stats;
    this.offline = false;
    this.emit();
  }

  isSelected(x: number, y: number, k: number): boolean {
    return !this.removed.has(voxelKey(x, y, k));
  }

  *selectedVoxels(): Generator<[number, number, number]> {
    if (!this.spec) return;
    for (let x = 0; x < this.spec.width_helices; x++) {
      for (let y = 0; y < this.spec.height_helices; y++) {
        for (let k = 0; k < layersOf(this.spec); k++) {
          if (this.isSelected(x, y, k)) yield [x, y, k];
        }
      }
    }
  }

  async createProject(spec: CanvasSpec, seed = 0): Promise<void> {
    const doc = await this.api.createProject(spec, seed);
    this.undoStack = [];
    this.redoStack = [];
    this.applyState(doc);
  }

  async openState(doc: ProjectState): Promise<void> {
    this.undoStack = [];
    this.redoStack = [];
    this.applyState(doc);
  }

  /**
   * Queue a mutation so only one request is in flight per project.  The
   * returned promise resolves once this mutation's response has been applied.
   */
  private enqueue<T>(job: () => Promise<T>): Promise<T> {
    const next = this.mutationChain.then(job, job);
    this.mutationChain = next.catch(() => undefined);
    return next;
  }

  private async sendChanges(changes: VoxelChange[]): Promise<ProjectState> {
    if (!this.projectId) throw new Error("no open project");
    const projectId = this.projectId;
    return this.enqueue(async () => {
      try {
        const doc = await this.api.changeVoxels(projectId, changes);
        this.applyState(doc);
        return doc;
      } catch (error) {
        if (error instanceof TypeError) {
          // fetch network failure
          this.offline = true;
          this.emit();
        }
        throw error;
      }
    });
  }

  private static inverse(changes: VoxelChange[]): VoxelChange[] {
    return changes.map((c) => ({ ...c, present: !c.present }));
  }

  /** Toggle one voxel; pushes the inverse op for undo. */
  async toggleVoxel(x: number, y: number, k: number): Promise<void> {
    const present = !this.isSelected(x, y, k);
    const changes: VoxelChange[] = [{ x, y, k, present }];
    await this.sendChanges(changes);
    this.undoStack.push(ProjectStore.inverse(changes));
    this.redoStack = [];
    this.emit();
  }

  /** Deselect a whole box; undo re-selects exactly the voxels it removed. */
  async removeBox(
    lo: [number, number, number],
    hi: [number, number, number],
  ): Promise<void> {
    const affected: VoxelChange[] = [];
    for (let x = lo[0]; x <= hi[0]; x++) {
      for (let y = lo[1]; y <= hi[1]; y++) {
        for (let k = lo[2]; k <= hi[2]; k++) {
          if (this.isSelected(x, y, k)) {
            affected.push({ x, y, k, present: false });
          }
        }
      }
    }
    if (!this.projectId) throw new Error("no open project");
    const projectId = this.projectId;
    await this.enqueue(async () => {
      const doc = await this.api.removeBox(projectId, lo, hi);
      this.applyState(doc);
    });
    if (affected.length > 0) {
      this.undoStack.push(ProjectStore.inverse(affected));
      this.redoStack = [];
    }
    this.emit();
  }

  async undo(): Promise<void> {
    const op = this.undoStack.pop();
    if (!op) return;
    await this.sendChanges(op);
    this.redoStack.push(ProjectStore.inverse(op));
    this.emit();
  }

  async redo(): Promise<void> {
    const op = this.redoStack.pop();
    if (!op) return;
    await this.sendChanges(op);
    this.undoStack.push(ProjectStore.inverse(op));
    this.emit();
  }
}
