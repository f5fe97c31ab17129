"""Versioned .3dna project persistence.

A project document is canonical-form JSON (sorted keys, two-space indent,
UTF-8, trailing newline) so identical projects serialize to identical bytes.
Sequences are never trusted from the file: they are regenerated from
(seed, constraints) on use.  An optional cached sequence block exists purely
for interchange and is guarded by a SHA-256 checksum.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace

from .bricks import ProtectorPolicy
from .canvas import Canvas, CanvasSpec, VoxelCoord, new_canvas
from .errors import (
    ChecksumError,
    CoordinateError,
    ProjectFormatError,
    UnsupportedVersionError,
)
from .seqgen import ConstraintConfig

FORMAT_TAG = "3dna-project"
FORMAT_VERSION = 1


@dataclass(frozen=True, slots=True)
class Project:
    """Everything needed to reproduce a structure deterministically."""

    spec: CanvasSpec
    removed_voxels: frozenset[VoxelCoord] = frozenset()
    seed: int = 0
    constraints: ConstraintConfig = field(default_factory=ConstraintConfig)
    boundary_merge: bool = False
    protector_policy: ProtectorPolicy = ProtectorPolicy.EMIT_FRAGMENTS

    def canvas(self) -> Canvas:
        c = new_canvas(self.spec)
        return Canvas(self.spec, c.selected - self.removed_voxels)

    def with_removed(self, removed: frozenset[VoxelCoord]) -> "Project":
        return replace(self, removed_voxels=removed)


def _constraints_to_json(c: ConstraintConfig) -> dict:
    return {
        "gc_min": c.gc_min,
        "gc_max": c.gc_max,
        "max_run": c.max_run,
        "target_hamming": c.target_hamming,
        "retry_budget": c.retry_budget,
        "check_complements": c.check_complements,
    }


def _sequence_cache_checksum(seq_map: dict[str, str]) -> str:
    canon = json.dumps(seq_map, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return "sha256:" + hashlib.sha256(canon).hexdigest()


def export_project(
    project: Project, cached_sequences: dict[str, str] | None = None
) -> bytes:
    """Serialize a project to canonical .3dna bytes.

    cached_sequences, when given, maps "x,y,k" voxel labels to plus-side
    8-mers and is stored with an integrity checksum.
    """
    doc: dict = {
        "format": FORMAT_TAG,
        "version": FORMAT_VERSION,
        "canvas": {
            "width_helices": project.spec.width_helices,
            "height_helices": project.spec.height_helices,
            "depth_bp": project.spec.depth_bp,
        },
        "removed_voxels": sorted(
            [v.x, v.y, v.k] for v in project.removed_voxels
        ),
        "generation": {
            "seed": project.seed,
            "constraints": _constraints_to_json(project.constraints),
        },
        "options": {
            "boundary_merge": project.boundary_merge,
            "protector_policy": project.protector_policy.value,
        },
    }
    if cached_sequences is not None:
        doc["sequences"] = {
            "checksum": _sequence_cache_checksum(cached_sequences),
            "domains": dict(sorted(cached_sequences.items())),
        }
    text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
    return text.encode("utf-8")


def _require(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise ProjectFormatError(f"missing key '{key}' in {where}")
    value = doc[key]
    if kind is int and isinstance(value, bool):
        raise ProjectFormatError(f"'{key}' in {where} must be {kind.__name__}")
    if not isinstance(value, kind):
        raise ProjectFormatError(f"'{key}' in {where} must be {kind.__name__}")
    return value


def import_project(data: bytes) -> Project:
    """Parse and validate .3dna bytes into a Project.

    Raises ProjectFormatError for malformed documents, UnsupportedVersionError
    for unknown versions, CoordinateError for out-of-range voxels and
    ChecksumError when a cached sequence block fails its checksum.
    """
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ProjectFormatError(f"not a valid project document: {exc}") from exc
    if not isinstance(doc, dict):
        raise ProjectFormatError("project document must be a JSON object")
    if doc.get("format") != FORMAT_TAG:
        raise ProjectFormatError(
            f"format tag must be '{FORMAT_TAG}', got {doc.get('format')!r}"
        )
    version = _require(doc, "version", int, "project")
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(
            f"unsupported project version {version} (this build reads {FORMAT_VERSION})"
        )

    canvas_doc = _require(doc, "canvas", dict, "project")
    spec = CanvasSpec(
        width_helices=_require(canvas_doc, "width_helices", int, "canvas"),
        height_helices=_require(canvas_doc, "height_helices", int, "canvas"),
        depth_bp=_require(canvas_doc, "depth_bp", int, "canvas"),
    )

    removed_raw = _require(doc, "removed_voxels", list, "project")
    removed = set()
    for item in removed_raw:
        if (
            not isinstance(item, list)
            or len(item) != 3
            or not all(isinstance(n, int) and not isinstance(n, bool) for n in item)
        ):
            raise ProjectFormatError(f"removed voxel entries must be [x,y,k], got {item!r}")
        v = VoxelCoord(*item)
        if not v.in_grid(spec):
            raise CoordinateError(
                f"removed voxel {item} outside "
                f"{spec.width_helices}x{spec.height_helices}x{spec.layers}-layer grid"
            )
        removed.add(v)

    gen = _require(doc, "generation", dict, "project")
    seed = _require(gen, "seed", int, "generation")
    cons_doc = _require(gen, "constraints", dict, "generation")
    try:
        constraints = ConstraintConfig(
            gc_min=cons_doc.get("gc_min", 0.40),
            gc_max=cons_doc.get("gc_max", 0.60),
            max_run=cons_doc.get("max_run", 4),
            target_hamming=cons_doc.get("target_hamming", 6),
            retry_budget=cons_doc.get("retry_budget", 1000),
            check_complements=cons_doc.get("check_complements", False),
        )
    except TypeError as exc:
        raise ProjectFormatError(f"bad constraints block: {exc}") from exc

    options = _require(doc, "options", dict, "project")
    policy_raw = options.get("protector_policy", ProtectorPolicy.EMIT_FRAGMENTS.value)
    try:
        policy = ProtectorPolicy(policy_raw)
    except ValueError as exc:
        raise ProjectFormatError(f"unknown protector policy {policy_raw!r}") from exc
    merge = options.get("boundary_merge", False)
    if not isinstance(merge, bool):
        raise ProjectFormatError("'boundary_merge' must be a boolean")

    if "sequences" in doc:
        seq_doc = _require(doc, "sequences", dict, "project")
        seq_map = _require(seq_doc, "domains", dict, "sequences")
        declared = _require(seq_doc, "checksum", str, "sequences")
        actual = _sequence_cache_checksum(seq_map)
        if declared != actual:
            raise ChecksumError(
                f"cached sequence checksum mismatch: declared {declared}, actual {actual}"
            )

    return Project(
        spec=spec,
        removed_voxels=frozenset(removed),
        seed=seed,
        constraints=constraints,
        boundary_merge=merge,
        protector_policy=policy,
    )
