"""Batch command-line front end over the full design pipeline.

Exit codes: 0 success, 2 usage error, 3 validation error (bad dimensions,
coordinates, malformed project files), 4 I/O error.  Reports go to stdout,
errors to stderr.  Project files are updated atomically (write to a temp
file, then rename).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from .bricks import ProtectorPolicy
from .canvas import CanvasSpec, VoxelCoord, all_voxels, remove_box, set_voxel
from .errors import DnaBricksError
from .pipeline import analysis_histogram, export_bytes, project_stats
from .project import Project, export_project, import_project
from .seqgen import ConstraintConfig, CostConfig, estimate_cost

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4

RATE_ENV_VAR = "DNABRICKS_COST_RATE"

EXPORT_FORMATS = ("csv", "tex", "3dna", "txt")


def _default_rate() -> float:
    raw = os.environ.get(RATE_ENV_VAR)
    if raw is None:
        return CostConfig().rate_usd_per_base
    try:
        return float(raw)
    except ValueError:
        raise DnaBricksError(f"{RATE_ENV_VAR} must be a number, got {raw!r}") from None


def _write_atomic(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".dnabricks-", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_project(path: str) -> Project:
    with open(path, "rb") as fh:
        return import_project(fh.read())


def _save_project(path: str, project: Project) -> None:
    _write_atomic(path, export_project(project))


def _parse_voxel(text: str) -> VoxelCoord:
    parts = text.split(",")
    if len(parts) != 3:
        raise DnaBricksError(f"voxel must be 'x,y,k', got {text!r}")
    try:
        x, y, k = (int(p) for p in parts)
    except ValueError:
        raise DnaBricksError(f"voxel indices must be integers, got {text!r}") from None
    return VoxelCoord(x, y, k)


def _parse_box(text: str) -> tuple[VoxelCoord, VoxelCoord]:
    parts = text.split(":")
    if len(parts) != 2:
        raise DnaBricksError(f"box must be 'x,y,k:x,y,k', got {text!r}")
    return _parse_voxel(parts[0]), _parse_voxel(parts[1])


def _cmd_new(args) -> int:
    spec = CanvasSpec(args.width, args.height, args.depth)
    project = Project(spec=spec)
    _save_project(args.output, project)
    print(f"created {args.output}: {spec.width_helices} x {spec.height_helices} "
          f"helices x {spec.depth_bp} bp ({spec.voxel_count} voxels)")
    return EXIT_OK


def _cmd_sculpt(args) -> int:
    project = _load_project(args.project)
    canvas = project.canvas()
    for raw in args.remove or []:
        canvas = set_voxel(canvas, _parse_voxel(raw), False)
    for raw in args.add or []:
        canvas = set_voxel(canvas, _parse_voxel(raw), True)
    for raw in args.remove_box or []:
        lo, hi = _parse_box(raw)
        canvas = remove_box(canvas, lo, hi)
    if args.remove_file:
        with open(args.remove_file, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line and not line.startswith("#"):
                    canvas = set_voxel(canvas, _parse_voxel(line), False)
    full = frozenset(all_voxels(project.spec))
    project = project.with_removed(full - canvas.selected)
    _save_project(args.project, project)
    print(f"{len(canvas.selected)} voxels selected "
          f"({len(project.removed_voxels)} removed)")
    return EXIT_OK


def _cmd_generate(args) -> int:
    project = _load_project(args.project)
    constraints = ConstraintConfig(
        gc_min=args.gc_min,
        gc_max=args.gc_max,
        max_run=args.max_run,
        target_hamming=args.target_hamming,
        retry_budget=args.retry_budget,
        check_complements=args.check_complements,
    )
    project = Project(
        spec=project.spec,
        removed_voxels=project.removed_voxels,
        seed=args.seed,
        constraints=constraints,
        boundary_merge=args.merge_boundary,
        protector_policy=ProtectorPolicy(args.protector_policy),
    )
    _save_project(args.project, project)
    print(f"generation fixed: seed {args.seed}, gc [{args.gc_min}, {args.gc_max}], "
          f"max run {args.max_run}, target Hamming {args.target_hamming}")
    return EXIT_OK


def _cmd_stats(args) -> int:
    project = _load_project(args.project)
    st = project_stats(project, rate=_default_rate())
    w, h, z = st.physical_size_nm
    print(f"canvas: {project.spec.width_helices} x {project.spec.height_helices} "
          f"helices x {project.spec.depth_bp} bp ({project.spec.layers} layers)")
    print(f"voxels: {st.voxels_selected} / {st.voxels_total} selected")
    print(f"domains: {st.domain_count}")
    print(f"size: {w} x {h} x {z} nm")
    print(f"strands: {st.strand_count} ({st.full_bricks} full, {st.half_bricks} half, "
          f"{st.boundary_bricks} boundary, {st.fragments} fragments)")
    print(f"nucleotides: {st.total_nt}")
    print(f"cost: {st.cost_usd} USD @ {st.rate_usd_per_base} USD/base")
    for w_ in st.warnings:
        print(f"warning: {w_}", file=sys.stderr)
    return EXIT_OK


def _cmd_analyze(args) -> int:
    project = _load_project(args.project)
    hist = analysis_histogram(project)
    print(f"domains analyzed: {hist.total_domains}")
    print(f"pairs with 8 identical bases: {hist.pairs_8}")
    print(f"pairs with 7 identical bases: {hist.pairs_7}")
    print(f"pairs with 6 identical bases: {hist.pairs_6}")
    return EXIT_OK


def _cmd_cost(args) -> int:
    project = _load_project(args.project)
    rate = args.rate if args.rate is not None else _default_rate()
    st = project_stats(project, rate=rate)
    report = estimate_cost(st.total_nt, CostConfig(rate_usd_per_base=rate))
    print(f"{report.total_usd} USD ({report.total_nt} nt @ {rate} USD/base)")
    return EXIT_OK


def _cmd_export(args) -> int:
    project = _load_project(args.project)
    data = export_bytes(project, args.format)
    _write_atomic(args.output, data)
    print(f"wrote {args.output} ({len(data)} bytes, {args.format})")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(token=args.token)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dnabricks",
        description="Design DNA brick structures from a sculpted voxel canvas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_new = sub.add_parser("new", help="create a project with a fresh canvas")
    p_new.add_argument("--width", type=int, required=True, help="helices along x")
    p_new.add_argument("--height", type=int, required=True, help="helices along y")
    p_new.add_argument("--depth", type=int, required=True,
                       help="base pairs along z (multiple of 16)")
    p_new.add_argument("-o", "--output", required=True, help="project file to write")
    p_new.set_defaults(func=_cmd_new)

    p_sculpt = sub.add_parser("sculpt", help="deselect or reselect voxels")
    p_sculpt.add_argument("project")
    p_sculpt.add_argument("--remove", action="append", metavar="x,y,k")
    p_sculpt.add_argument("--add", action="append", metavar="x,y,k")
    p_sculpt.add_argument("--remove-box", action="append", metavar="x,y,k:x,y,k",
                          help="deselect an inclusive box of voxels")
    p_sculpt.add_argument("--remove-file", metavar="FILE",
                          help="file with one x,y,k per line")
    p_sculpt.set_defaults(func=_cmd_sculpt)

    p_gen = sub.add_parser("generate", help="fix sequence generation parameters")
    p_gen.add_argument("project")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--gc-min", type=float, default=0.40)
    p_gen.add_argument("--gc-max", type=float, default=0.60)
    p_gen.add_argument("--max-run", type=int, default=4)
    p_gen.add_argument("--target-hamming", type=int, default=6)
    p_gen.add_argument("--retry-budget", type=int, default=1000)
    p_gen.add_argument("--check-complements", action="store_true")
    p_gen.add_argument("--merge-boundary", action=argparse.BooleanOptionalAction,
                       default=False, help="merge half bricks into 48-nt boundary bricks")
    p_gen.add_argument("--protector-policy",
                       choices=[p.value for p in ProtectorPolicy],
                       default=ProtectorPolicy.EMIT_FRAGMENTS.value)
    p_gen.set_defaults(func=_cmd_generate)

    p_stats = sub.add_parser("stats", help="print canvas and strand statistics")
    p_stats.add_argument("project")
    p_stats.set_defaults(func=_cmd_stats)

    p_an = sub.add_parser("analyze", help="print the 8/7/6 identical-base histogram")
    p_an.add_argument("project")
    p_an.set_defaults(func=_cmd_analyze)

    p_cost = sub.add_parser("cost", help="estimate synthesis cost")
    p_cost.add_argument("project")
    p_cost.add_argument("--rate", type=float, default=None, help="USD per base")
    p_cost.set_defaults(func=_cmd_cost)

    p_exp = sub.add_parser("export", help="export sequences or the project")
    p_exp.add_argument("project")
    p_exp.add_argument("--format", choices=EXPORT_FORMATS, required=True)
    p_exp.add_argument("-o", "--output", required=True)
    p_exp.set_defaults(func=_cmd_export)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--token", default=None,
                         help="require this bearer token on every request")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DnaBricksError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
