"""End-to-end pipeline: project -> plan -> strands -> stats/analysis.

Shared by the CLI and the HTTP service so every front end reports identical
numbers for identical state.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from . import canvas as canvas_ops
from .bricks import (
    BrickKind,
    StrandPlan,
    apply_protector_policy,
    canonical_layout,
    merge_boundary_bricks,
    sculpt,
)
from .exports import export_csv, export_latex, export_report
from .project import Project, export_project
from .seqgen import (
    CostConfig,
    DomainAssignment,
    SimilarityHistogram,
    Strand,
    assemble_strands,
    estimate_cost,
    generate_domains,
    similarity_histogram,
)


@dataclass(frozen=True, slots=True)
class ProjectStats:
    """The numbers every front end shows after each edit."""

    voxels_total: int
    voxels_selected: int
    domain_count: int
    physical_size_nm: tuple[float, float, float]
    full_bricks: int
    half_bricks: int
    boundary_bricks: int
    fragments: int
    strand_count: int
    total_nt: int
    cost_usd: Decimal
    rate_usd_per_base: float
    warnings: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "voxels_total": self.voxels_total,
            "voxels_selected": self.voxels_selected,
            "domain_count": self.domain_count,
            "physical_size_nm": list(self.physical_size_nm),
            "full_bricks": self.full_bricks,
            "half_bricks": self.half_bricks,
            "boundary_bricks": self.boundary_bricks,
            "fragments": self.fragments,
            "strand_count": self.strand_count,
            "total_nt": self.total_nt,
            "cost_usd": str(self.cost_usd),
            "rate_usd_per_base": self.rate_usd_per_base,
            "warnings": list(self.warnings),
        }


def build_plan(project: Project) -> StrandPlan:
    """Layout, sculpt, optional boundary merge, protector policy."""
    layout = canonical_layout(project.spec)
    plan = sculpt(layout, project.canvas())
    if project.boundary_merge:
        plan = merge_boundary_bricks(plan)
    return apply_protector_policy(plan, project.protector_policy)


def build_strands(project: Project) -> tuple[StrandPlan, DomainAssignment, list[Strand]]:
    plan = build_plan(project)
    assignment = generate_domains(project.spec, project.seed, project.constraints)
    return plan, assignment, assemble_strands(plan, assignment)


def project_stats(
    project: Project, rate: float | None = None, plan: StrandPlan | None = None
) -> ProjectStats:
    """Selection, brick, nucleotide and cost figures for the current state."""
    if plan is None:
        plan = build_plan(project)
    cstats = canvas_ops.stats(project.canvas())
    cost_config = CostConfig() if rate is None else CostConfig(rate_usd_per_base=rate)
    cost = estimate_cost(plan.total_nt, cost_config)
    return ProjectStats(
        voxels_total=project.spec.voxel_count,
        voxels_selected=cstats.selected_voxels,
        domain_count=cstats.domain_count,
        physical_size_nm=cstats.physical_size_nm,
        full_bricks=plan.count(BrickKind.FULL),
        half_bricks=plan.count(BrickKind.HALF),
        boundary_bricks=plan.count(BrickKind.BOUNDARY),
        fragments=plan.count(BrickKind.FRAGMENT),
        strand_count=len(plan.bricks),
        total_nt=plan.total_nt,
        cost_usd=cost.total_usd,
        rate_usd_per_base=cost.rate_usd_per_base,
        warnings=plan.warnings,
    )


def analysis_domain_sequences(plan: StrandPlan, strands: list[Strand]) -> list[str]:
    """All 8-mers of the final strands, both sides, protectors excluded."""
    out: list[str] = []
    for s in strands:
        for i, d in enumerate(s.domains):
            if d in plan.protected_domains:
                continue
            out.append(s.sequence[8 * i : 8 * i + 8])
    return out


def analysis_histogram(project: Project) -> SimilarityHistogram:
    plan, _, strands = build_strands(project)
    return similarity_histogram(analysis_domain_sequences(plan, strands))


def export_bytes(project: Project, fmt: str) -> bytes:
    """Render the project in one of the interchange formats.

    fmt is one of "3dna", "csv", "tex", "txt".
    """
    if fmt == "3dna":
        return export_project(project)
    plan, _, strands = build_strands(project)
    if fmt == "csv":
        return export_csv(strands)
    if fmt == "tex":
        return export_latex(strands)
    if fmt == "txt":
        st = project_stats(project, plan=plan)
        header = [
            "dnabricks structure report",
            f"canvas: {project.spec.width_helices} x {project.spec.height_helices} "
            f"helices x {project.spec.depth_bp} bp",
            f"voxels selected: {st.voxels_selected} / {st.voxels_total}",
            f"domains: {st.domain_count}",
            f"size (nm): {st.physical_size_nm[0]} x {st.physical_size_nm[1]} "
            f"x {st.physical_size_nm[2]}",
            f"strands: {st.strand_count} (full {st.full_bricks}, half {st.half_bricks}, "
            f"boundary {st.boundary_bricks}, fragments {st.fragments})",
            f"nucleotides: {st.total_nt}",
            f"cost: {st.cost_usd} USD @ {st.rate_usd_per_base} USD/base",
            f"seed: {project.seed}",
        ]
        return export_report(strands, header)
    raise ValueError(f"unknown export format {fmt!r}")
