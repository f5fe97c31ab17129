"""The 3D molecular canvas: a grid of selectable voxels.

A voxel is one 8-bp duplex, roughly 2.5 x 2.5 x 2.7 nm.  The canvas is
addressed by helix position (x, y) and layer index k, where one layer is an
8-bp slice of every helix.  Canvases are immutable values: every operation
returns a new canvas.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BoxError, CoordinateError, DimensionError

# Approximate physical size of one voxel (8-bp duplex), in tenths of a nm.
# Kept as integers so reported sizes are exact decimal multiples.
VOXEL_XY_TENTH_NM = 25
VOXEL_Z_TENTH_NM = 27

BP_PER_LAYER = 8


@dataclass(frozen=True, slots=True)
class CanvasSpec:
    """Grid dimensions of a canvas.

    width_helices and height_helices count DNA helices along x and y; depth_bp
    counts base pairs along z.  Depth must be a multiple of 16 so that 8-bp
    layers pair into the 16-bp slabs the brick tiling is built from, and a
    full brick needs two adjacent helices, so both helix counts must be >= 2.
    """

    width_helices: int
    height_helices: int
    depth_bp: int

    def __post_init__(self) -> None:
        if self.width_helices < 2:
            raise DimensionError(
                f"width_helices must be >= 2 (a full brick spans two adjacent "
                f"helices), got {self.width_helices}"
            )
        if self.height_helices < 2:
            raise DimensionError(
                f"height_helices must be >= 2 (a full brick spans two adjacent "
                f"helices), got {self.height_helices}"
            )
        if self.depth_bp <= 0:
            raise DimensionError(f"depth_bp must be positive, got {self.depth_bp}")
        if self.depth_bp % BP_PER_LAYER != 0:
            raise DimensionError(
                f"depth_bp must be a multiple of {BP_PER_LAYER}, got {self.depth_bp}"
            )
        if (self.depth_bp // BP_PER_LAYER) % 2 != 0:
            raise DimensionError(
                f"depth_bp={self.depth_bp} gives an odd layer count "
                f"({self.depth_bp // BP_PER_LAYER}); layers pair into 16-bp "
                f"slabs, so depth_bp must be a multiple of 16"
            )

    @property
    def layers(self) -> int:
        """Number of 8-bp layers along z."""
        return self.depth_bp // BP_PER_LAYER

    @property
    def voxel_count(self) -> int:
        return self.width_helices * self.height_helices * self.layers


@dataclass(frozen=True, slots=True)
class VoxelCoord:
    """Position of one voxel: helix (x, y) and layer k."""

    x: int
    y: int
    k: int

    def __post_init__(self) -> None:
        if self.x < 0 or self.y < 0 or self.k < 0:
            raise CoordinateError(f"voxel indices must be >= 0, got {self}")

    def in_grid(self, spec: CanvasSpec) -> bool:
        return (
            self.x < spec.width_helices
            and self.y < spec.height_helices
            and self.k < spec.layers
        )


@dataclass(frozen=True, slots=True)
class Canvas:
    """A canvas spec plus the set of currently selected voxels."""

    spec: CanvasSpec
    selected: frozenset[VoxelCoord]

    @property
    def selected_count(self) -> int:
        return len(self.selected)


@dataclass(frozen=True, slots=True)
class CanvasStats:
    """Selection counts and the physical bounding box of the grid.

    domain_count is always 2x the selected voxels: each voxel is an 8-bp
    duplex carrying one domain per strand side.  physical_size_nm reports the
    full grid bounding box; removing interior voxels does not shrink it.
    """

    selected_voxels: int
    domain_count: int
    physical_size_nm: tuple[float, float, float]


def all_voxels(spec: CanvasSpec):
    """Iterate every coordinate of the grid in canonical (x, y, k) order."""
    for x in range(spec.width_helices):
        for y in range(spec.height_helices):
            for k in range(spec.layers):
                yield VoxelCoord(x, y, k)


def new_canvas(spec: CanvasSpec) -> Canvas:
    """Create a canvas with every voxel selected."""
    return Canvas(spec=spec, selected=frozenset(all_voxels(spec)))


def check_in_grid(spec: CanvasSpec, v: VoxelCoord) -> None:
    if not v.in_grid(spec):
        raise CoordinateError(
            f"voxel ({v.x},{v.y},{v.k}) outside grid "
            f"{spec.width_helices}x{spec.height_helices}x{spec.layers} layers"
        )


def set_voxel(canvas: Canvas, v: VoxelCoord, present: bool) -> Canvas:
    """Select or deselect one voxel.  Idempotent."""
    check_in_grid(canvas.spec, v)
    if present:
        if v in canvas.selected:
            return canvas
        return Canvas(canvas.spec, canvas.selected | {v})
    if v not in canvas.selected:
        return canvas
    return Canvas(canvas.spec, canvas.selected - {v})


def remove_box(canvas: Canvas, corner_lo: VoxelCoord, corner_hi: VoxelCoord) -> Canvas:
    """Deselect every voxel in the inclusive box [corner_lo, corner_hi]."""
    check_in_grid(canvas.spec, corner_lo)
    check_in_grid(canvas.spec, corner_hi)
    if (
        corner_lo.x > corner_hi.x
        or corner_lo.y > corner_hi.y
        or corner_lo.k > corner_hi.k
    ):
        raise BoxError(f"inverted box: {corner_lo} > {corner_hi}")
    doomed = {
        VoxelCoord(x, y, k)
        for x in range(corner_lo.x, corner_hi.x + 1)
        for y in range(corner_lo.y, corner_hi.y + 1)
        for k in range(corner_lo.k, corner_hi.k + 1)
    }
    return Canvas(canvas.spec, canvas.selected - doomed)


def stats(canvas: Canvas) -> CanvasStats:
    """Selection counts plus the grid's physical size in nm."""
    spec = canvas.spec
    n = len(canvas.selected)
    return CanvasStats(
        selected_voxels=n,
        domain_count=2 * n,
        physical_size_nm=(
            spec.width_helices * VOXEL_XY_TENTH_NM / 10,
            spec.height_helices * VOXEL_XY_TENTH_NM / 10,
            spec.layers * VOXEL_Z_TENTH_NM / 10,
        ),
    )


def resize_canvas(canvas: Canvas, new_spec: CanvasSpec) -> Canvas:
    """Resize the grid, keeping selection state where coordinates overlap.

    Voxels new to the grid start selected; selections outside the new grid
    are dropped.
    """
    carried = {v for v in canvas.selected if v.in_grid(new_spec)}
    fresh = {
        v
        for v in all_voxels(new_spec)
        if not v.in_grid(canvas.spec)
    }
    return Canvas(new_spec, frozenset(carried | fresh))
