"""dnabricks: voxel-canvas DNA brick design.

Sculpt a 3D molecular canvas, tile it into full/half/boundary bricks, and
generate the constrained random domain sequences that assemble the shape,
with CSV/LaTeX/.3dna interchange, a CLI and an HTTP service.
"""

from .canvas import (
    Canvas,
    CanvasSpec,
    CanvasStats,
    VoxelCoord,
    new_canvas,
    remove_box,
    resize_canvas,
    set_voxel,
    stats,
)
from .bricks import (
    Brick,
    BrickKind,
    BrickLayout,
    DomainId,
    Orientation,
    ProtectorPolicy,
    Segment,
    Side,
    StrandPlan,
    apply_protector_policy,
    canonical_layout,
    merge_boundary_bricks,
    neighbors,
    sculpt,
)
from .errors import (
    BoxError,
    ChecksumError,
    CoordinateError,
    CostError,
    DimensionError,
    DnaBricksError,
    InfeasibleConfigError,
    MissingDomainError,
    ProjectFormatError,
    SequenceError,
    SpecMismatchError,
    UnknownBrickError,
    UnsupportedVersionError,
)
from .exports import export_csv, export_latex, export_report
from .pipeline import ProjectStats, analysis_histogram, build_plan, build_strands, project_stats
from .project import Project, export_project, import_project
from .seqgen import (
    ConstraintConfig,
    CostConfig,
    CostReport,
    DomainAssignment,
    HammingViolation,
    SimilarityHistogram,
    Strand,
    assemble_strands,
    estimate_cost,
    generate_domains,
    reverse_complement,
    similarity_histogram,
)

__version__ = "0.1.0"

__all__ = [
    "Brick",
    "BrickKind",
    "BrickLayout",
    "BoxError",
    "Canvas",
    "CanvasSpec",
    "CanvasStats",
    "ChecksumError",
    "ConstraintConfig",
    "CoordinateError",
    "CostConfig",
    "CostError",
    "CostReport",
    "DimensionError",
    "DnaBricksError",
    "DomainAssignment",
    "DomainId",
    "HammingViolation",
    "InfeasibleConfigError",
    "MissingDomainError",
    "Orientation",
    "Project",
    "ProjectFormatError",
    "ProjectStats",
    "ProtectorPolicy",
    "Segment",
    "SequenceError",
    "Side",
    "SimilarityHistogram",
    "SpecMismatchError",
    "Strand",
    "StrandPlan",
    "UnknownBrickError",
    "UnsupportedVersionError",
    "VoxelCoord",
    "analysis_histogram",
    "apply_protector_policy",
    "assemble_strands",
    "build_plan",
    "build_strands",
    "canonical_layout",
    "estimate_cost",
    "export_csv",
    "export_latex",
    "export_project",
    "export_report",
    "generate_domains",
    "import_project",
    "merge_boundary_bricks",
    "neighbors",
    "new_canvas",
    "project_stats",
    "remove_box",
    "resize_canvas",
    "reverse_complement",
    "sculpt",
    "set_voxel",
    "similarity_histogram",
    "stats",
]
