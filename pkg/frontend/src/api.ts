/**
 * Typed client for the dnabricks HTTP service.
 *
 * Every method returns the parsed response document; export downloads pass
 * the body bytes through untouched so saved files are byte-identical to the
 * server (and therefore to the CLI) output.
 */

import type {
  AnalysisResponse,
  CanvasSpec,
  CostResponse,
  ExportFormat,
  ProjectState,
  VoxelChange,
} from "./types.js";

export type FetchLike = (
  input: string,
  init?: RequestInit,
) => Promise<Response>;

/** The slice of the client the sculpting store depends on. */
export interface ProjectApi {
  createProject(canvas: CanvasSpec, seed?: number): Promise<ProjectState>;
  changeVoxels(
    projectId: string,
    changes: VoxelChange[],
    expectedRevision?: number,
  ): Promise<ProjectState>;
  removeBox(
    projectId: string,
    lo: [number, number, number],
    hi: [number, number, number],
  ): Promise<ProjectState>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

async function parseOrThrow<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
      else if (body && body.detail) detail = JSON.stringify(body.detail);
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class ApiClient implements ProjectApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) =>
      globalThis.fetch(input, init),
  ) {}

  private json(body: unknown): RequestInit {
    return {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    };
  }

  async createProject(canvas: CanvasSpec, seed = 0): Promise<ProjectState> {
    const response = await this.fetchFn(
      `${this.baseUrl}/projects`,
      this.json({ canvas, seed }),
    );
    return parseOrThrow<ProjectState>(response);
  }

  async getProject(projectId: string): Promise<ProjectState> {
    const response = await this.fetchFn(`${this.baseUrl}/projects/${projectId}`);
    return parseOrThrow<ProjectState>(response);
  }

  async changeVoxels(
    projectId: string,
    changes: VoxelChange[],
    expectedRevision?: number,
  ): Promise<ProjectState> {
    const body: Record<string, unknown> = { changes };
    if (expectedRevision !== undefined) body.expected_revision = expectedRevision;
    const response = await this.fetchFn(
      `${this.baseUrl}/projects/${projectId}/voxels`,
      this.json(body),
    );
    return parseOrThrow<ProjectState>(response);
  }

  async removeBox(
    projectId: string,
    lo: [number, number, number],
    hi: [number, number, number],
  ): Promise<ProjectState> {
    const response = await this.fetchFn(
      `${this.baseUrl}/projects/${projectId}/remove-box`,
      this.json({ lo, hi }),
    );
    return parseOrThrow<ProjectState>(response);
  }

  async setGeneration(
    projectId: string,
    seed: number,
    options?: { boundary_merge?: boolean; protector_policy?: string },
  ): Promise<ProjectState> {
    const response = await this.fetchFn(
      `${this.baseUrl}/projects/${projectId}/generation`,
      {
        method: "PUT",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ seed, options: options ?? {} }),
      },
    );
    return parseOrThrow<ProjectState>(response);
  }

  async getAnalysis(projectId: string): Promise<AnalysisResponse> {
    const response = await this.fetchFn(
      `${this.baseUrl}/projects/${projectId}/analysis`,
    );
    return parseOrThrow<AnalysisResponse>(response);
  }

  async getCost(projectId: string, rate?: number): Promise<CostResponse> {
    const query = rate === undefined ? "" : `?rate=${rate}`;
    const response = await this.fetchFn(
      `${this.baseUrl}/projects/${projectId}/cost${query}`,
    );
    return parseOrThrow<CostResponse>(response);
  }

  /** Raw export bytes, untouched. */
  async download(projectId: string, format: ExportFormat): Promise<Uint8Array> {
    const response = await this.fetchFn(
      `${this.baseUrl}/projects/${projectId}/export?format=${format}`,
    );
    if (!response.ok) {
      throw new ApiError(response.status, response.statusText);
    }
    return new Uint8Array(await response.arrayBuffer());
  }

  async importProject(data: Uint8Array): Promise<ProjectState> {
    const body = new Uint8Array(data).buffer as ArrayBuffer;
    const response = await this.fetchFn(`${this.baseUrl}/projects/import`, {
      method: "POST",
      headers: { "content-type": "application/octet-stream" },
      body,
    });
    return parseOrThrow<ProjectState>(response);
  }
}
