"""HTTP API over in-memory project sessions.

Every mutation bumps the session revision and every response carries the
current stats block, so clients can update live without polling.  Mutations
to one project are serialized behind a per-session lock; GETs are
side-effect-free and cacheable by revision.

Status codes: 400 malformed body, 401 bad bearer token (when the service was
started with one), 404 unknown project, 409 stale revision on conditional
mutation, 422 validation failure.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from fastapi import Depends, FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .bricks import ProtectorPolicy
from .canvas import Canvas, CanvasSpec, VoxelCoord, remove_box, set_voxel
from .errors import DnaBricksError, ProjectFormatError
from .pipeline import (
    analysis_histogram,
    build_strands,
    export_bytes,
    project_stats,
)
from .project import Project, import_project
from .seqgen import ConstraintConfig, CostConfig, estimate_cost

_EXPORT_MEDIA_TYPES = {
    "csv": "text/csv",
    "tex": "application/x-tex",
    "3dna": "application/json",
    "txt": "text/plain",
}


class CanvasSpecBody(BaseModel):
    width_helices: int
    height_helices: int
    depth_bp: int


class ConstraintsBody(BaseModel):
    gc_min: float = 0.40
    gc_max: float = 0.60
    max_run: int = 4
    target_hamming: int = 6
    retry_budget: int = 1000
    check_complements: bool = False


class OptionsBody(BaseModel):
    boundary_merge: bool = False
    protector_policy: str = ProtectorPolicy.EMIT_FRAGMENTS.value


class CreateProjectBody(BaseModel):
    canvas: CanvasSpecBody
    seed: int = 0
    constraints: ConstraintsBody = Field(default_factory=ConstraintsBody)
    options: OptionsBody = Field(default_factory=OptionsBody)


class VoxelChange(BaseModel):
    x: int
    y: int
    k: int
    present: bool = False


class VoxelChangesBody(BaseModel):
    changes: list[VoxelChange]
    expected_revision: int | None = None


class BoxRemoveBody(BaseModel):
    lo: list[int]
    hi: list[int]
    expected_revision: int | None = None


class GenerationBody(BaseModel):
    seed: int = 0
    constraints: ConstraintsBody = Field(default_factory=ConstraintsBody)
    options: OptionsBody = Field(default_factory=OptionsBody)
    expected_revision: int | None = None


@dataclass
class Session:
    project: Project
    revision: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)
    # (revision, strands) cache so repeated GETs don't re-run the pipeline
    _strand_cache: tuple | None = None

    def strands(self):
        if self._strand_cache is None or self._strand_cache[0] != self.revision:
            plan, assignment, strands = build_strands(self.project)
            self._strand_cache = (self.revision, plan, assignment, strands)
        return self._strand_cache[1], self._strand_cache[3]


class _HttpError(Exception):
    def __init__(self, status: int, detail: str) -> None:
        self.status = status
        self.detail = detail


def _project_from_body(body: CreateProjectBody) -> Project:
    return Project(
        spec=CanvasSpec(
            body.canvas.width_helices,
            body.canvas.height_helices,
            body.canvas.depth_bp,
        ),
        seed=body.seed,
        constraints=ConstraintConfig(**body.constraints.model_dump()),
        boundary_merge=body.options.boundary_merge,
        protector_policy=_policy(body.options.protector_policy),
    )


def _policy(raw: str) -> ProtectorPolicy:
    try:
        return ProtectorPolicy(raw)
    except ValueError:
        raise _HttpError(422, f"unknown protector policy {raw!r}") from None


def create_app(token: str | None = None) -> FastAPI:
    """Build the service app.  When token is set, every request must carry
    an `Authorization: Bearer <token>` header."""
    app = FastAPI(title="dnabricks", version="0.1.0")
    sessions: dict[str, Session] = {}

    def _auth(request: Request) -> None:
        if token is None:
            return
        header = request.headers.get("authorization", "")
        if header != f"Bearer {token}":
            raise _HttpError(401, "missing or invalid bearer token")

    def _session(project_id: str) -> Session:
        session = sessions.get(project_id)
        if session is None:
            raise _HttpError(404, f"unknown project {project_id}")
        return session

    def _check_revision(session: Session, expected: int | None) -> None:
        if expected is not None and expected != session.revision:
            raise _HttpError(
                409,
                f"stale revision: expected {expected}, current {session.revision}",
            )

    def _state(session: Session, project_id: str) -> dict:
        p = session.project
        return {
            "project_id": project_id,
            "revision": session.revision,
            "canvas": {
                "width_helices": p.spec.width_helices,
                "height_helices": p.spec.height_helices,
                "depth_bp": p.spec.depth_bp,
            },
            "removed_voxels": sorted([v.x, v.y, v.k] for v in p.removed_voxels),
            "generation": {
                "seed": p.seed,
                "constraints": {
                    "gc_min": p.constraints.gc_min,
                    "gc_max": p.constraints.gc_max,
                    "max_run": p.constraints.max_run,
                    "target_hamming": p.constraints.target_hamming,
                    "retry_budget": p.constraints.retry_budget,
                    "check_complements": p.constraints.check_complements,
                },
            },
            "options": {
                "boundary_merge": p.boundary_merge,
                "protector_policy": p.protector_policy.value,
            },
            "stats": project_stats(p).as_dict(),
        }

    @app.exception_handler(_HttpError)
    async def _http_error(request: Request, exc: _HttpError):
        return JSONResponse(status_code=exc.status, content={"detail": exc.detail})

    @app.exception_handler(DnaBricksError)
    async def _domain_error(request: Request, exc: DnaBricksError):
        status = 400 if isinstance(exc, ProjectFormatError) else 422
        return JSONResponse(
            status_code=status,
            content={"detail": str(exc), "error": type(exc).__name__},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        malformed = any(e.get("type") == "json_invalid" for e in exc.errors())
        return JSONResponse(
            status_code=400 if malformed else 422,
            content={"detail": "malformed request body" if malformed else exc.errors()},
        )

    @app.post("/projects", status_code=201, dependencies=[Depends(_auth)])
    def create_project(body: CreateProjectBody):
        project = _project_from_body(body)
        project_id = uuid.uuid4().hex
        sessions[project_id] = Session(project=project)
        return _state(sessions[project_id], project_id)

    @app.post("/projects/import", status_code=201, dependencies=[Depends(_auth)])
    async def import_endpoint(request: Request):
        data = await request.body()
        project = import_project(data)
        project_id = uuid.uuid4().hex
        sessions[project_id] = Session(project=project)
        return _state(sessions[project_id], project_id)

    @app.get("/projects/{project_id}", dependencies=[Depends(_auth)])
    def get_project(project_id: str):
        session = _session(project_id)
        with session.lock:
            return _state(session, project_id)

    @app.post("/projects/{project_id}/voxels", dependencies=[Depends(_auth)])
    def change_voxels(project_id: str, body: VoxelChangesBody):
        session = _session(project_id)
        with session.lock:
            _check_revision(session, body.expected_revision)
            canvas = session.project.canvas()
            for change in body.changes:
                canvas = set_voxel(
                    canvas, VoxelCoord(change.x, change.y, change.k), change.present
                )
            session.project = _with_selection(session.project, canvas)
            session.revision += 1
            return _state(session, project_id)

    @app.post("/projects/{project_id}/remove-box", dependencies=[Depends(_auth)])
    def box_remove(project_id: str, body: BoxRemoveBody):
        if len(body.lo) != 3 or len(body.hi) != 3:
            raise _HttpError(422, "lo and hi must each be [x, y, k]")
        session = _session(project_id)
        with session.lock:
            _check_revision(session, body.expected_revision)
            canvas = remove_box(
                session.project.canvas(), VoxelCoord(*body.lo), VoxelCoord(*body.hi)
            )
            session.project = _with_selection(session.project, canvas)
            session.revision += 1
            return _state(session, project_id)

    @app.put("/projects/{project_id}/generation", dependencies=[Depends(_auth)])
    def set_generation(project_id: str, body: GenerationBody):
        session = _session(project_id)
        with session.lock:
            _check_revision(session, body.expected_revision)
            p = session.project
            session.project = Project(
                spec=p.spec,
                removed_voxels=p.removed_voxels,
                seed=body.seed,
                constraints=ConstraintConfig(**body.constraints.model_dump()),
                boundary_merge=body.options.boundary_merge,
                protector_policy=_policy(body.options.protector_policy),
            )
            session.revision += 1
            return _state(session, project_id)

    @app.get("/projects/{project_id}/strands", dependencies=[Depends(_auth)])
    def get_strands(
        project_id: str,
        offset: int = Query(default=0, ge=0),
        limit: int = Query(default=100, ge=1, le=1000),
    ):
        session = _session(project_id)
        with session.lock:
            _, strands = session.strands()
            page = strands[offset : offset + limit]
            return {
                "project_id": project_id,
                "revision": session.revision,
                "total": len(strands),
                "offset": offset,
                "limit": limit,
                "strands": [
                    {
                        "strand_id": s.strand_id,
                        "kind": s.kind.value,
                        "orientation": s.orientation.value,
                        "length_nt": len(s.sequence),
                        "domains": [d.coord_label() for d in s.domains],
                        "sequence": s.sequence,
                    }
                    for s in page
                ],
                "stats": project_stats(session.project).as_dict(),
            }

    @app.get("/projects/{project_id}/analysis", dependencies=[Depends(_auth)])
    def get_analysis(project_id: str):
        session = _session(project_id)
        with session.lock:
            hist = analysis_histogram(session.project)
            return {
                "project_id": project_id,
                "revision": session.revision,
                "histogram": {
                    "pairs_8": hist.pairs_8,
                    "pairs_7": hist.pairs_7,
                    "pairs_6": hist.pairs_6,
                    "total_domains": hist.total_domains,
                },
                "stats": project_stats(session.project).as_dict(),
            }

    @app.get("/projects/{project_id}/cost", dependencies=[Depends(_auth)])
    def get_cost(project_id: str, rate: float | None = None):
        session = _session(project_id)
        with session.lock:
            st = project_stats(session.project, rate=rate)
            effective = rate if rate is not None else CostConfig().rate_usd_per_base
            report = estimate_cost(st.total_nt, CostConfig(rate_usd_per_base=effective))
            return {
                "project_id": project_id,
                "revision": session.revision,
                "total_nt": report.total_nt,
                "rate_usd_per_base": report.rate_usd_per_base,
                "total_usd": str(report.total_usd),
                "stats": st.as_dict(),
            }

    @app.get("/projects/{project_id}/export", dependencies=[Depends(_auth)])
    def export_endpoint(project_id: str, format: str = Query(alias="format")):
        if format not in _EXPORT_MEDIA_TYPES:
            raise _HttpError(
                422, f"unknown format {format!r}; expected one of {sorted(_EXPORT_MEDIA_TYPES)}"
            )
        session = _session(project_id)
        with session.lock:
            data = export_bytes(session.project, format)
            suffix = "3dna" if format == "3dna" else format
            return Response(
                content=data,
                media_type=_EXPORT_MEDIA_TYPES[format],
                headers={
                    "Content-Disposition": (
                        f'attachment; filename="project-{project_id[:8]}.{suffix}"'
                    ),
                    "X-Revision": str(session.revision),
                },
            )

    return app


def _with_selection(project: Project, canvas: Canvas) -> Project:
    from .canvas import all_voxels

    full = frozenset(all_voxels(project.spec))
    return project.with_removed(full - canvas.selected)
