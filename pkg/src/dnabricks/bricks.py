"""Brick tiling of the canvas and sculpt-to-strand-plan processing.

The tiling convention: consecutive 8-bp layers pair into 16-bp slabs.  Slabs
alternate orientation (x for even slab index, y for odd).  Within an
x-oriented slab, each helix row is covered by full bricks joining the minus
segment of helix (x, y) to the plus segment of helix (x+1, y); the two
unmatched segments at the row ends become half bricks.  y-oriented slabs are
the 90-degree rotation of the same rule.  This tiling partitions every domain
of the canvas exactly once and reproduces the published brick counts for all
reference canvases.

Strand geometry: a brick's domain list is its physical 5'->3' sequence of
8-nt units.  Minus-side strands run down in z, plus-side strands run up, so a
full brick reads [minus upper, minus lower, plus lower, plus upper] -- two
16-nt antiparallel halves meeting at a single junction in the slab.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .canvas import Canvas, CanvasSpec, VoxelCoord
from .errors import SpecMismatchError, UnknownBrickError


class Side(Enum):
    """Which of a voxel's two complementary strands a domain sits on."""

    PLUS = "+"
    MINUS = "-"

    @property
    def opposite(self) -> "Side":
        return Side.MINUS if self is Side.PLUS else Side.PLUS


class Orientation(Enum):
    X = "x"
    Y = "y"


class BrickKind(Enum):
    FULL = "full"
    HALF = "half"
    BOUNDARY = "boundary"
    FRAGMENT = "fragment"


class ProtectorPolicy(Enum):
    EMIT_FRAGMENTS = "emit_fragments"
    SUPPRESS_AND_PROTECT = "suppress_and_protect"


@dataclass(frozen=True, slots=True)
class DomainId:
    """One 8-nt single-stranded domain: a voxel plus a strand side."""

    voxel: VoxelCoord
    side: Side

    @property
    def complement(self) -> "DomainId":
        """The domain base-paired with this one (same voxel, other side)."""
        return DomainId(self.voxel, self.side.opposite)

    def coord_label(self) -> str:
        return f"{self.voxel.x}:{self.voxel.y}:{self.voxel.k}:{self.side.value}"


@dataclass(frozen=True, slots=True)
class Segment:
    """Two stacked domains of one helix and side within a single slab."""

    helix: tuple[int, int]
    side: Side
    pair_index: int
    footprint: tuple[DomainId, DomainId]


@dataclass(frozen=True, slots=True)
class Brick:
    """An ordered run of domains emitted as one synthesized strand."""

    kind: BrickKind
    orientation: Orientation
    domains: tuple[DomainId, ...]
    anchor_helix: tuple[int, int]
    pair_index: int

    @property
    def length_nt(self) -> int:
        return 8 * len(self.domains)

    @property
    def brick_id(self) -> str:
        """Stable identifier: kind letter plus the first domain's address."""
        d = self.domains[0]
        tag = "p" if d.side is Side.PLUS else "m"
        letter = {"full": "F", "half": "H", "boundary": "B", "fragment": "G"}[
            self.kind.value
        ]
        return f"{letter}{d.voxel.x}.{d.voxel.y}.{d.voxel.k}{tag}"


@dataclass(frozen=True, slots=True)
class BrickLayout:
    """The canonical full+half tiling of an entire canvas."""

    spec: CanvasSpec
    bricks: tuple[Brick, ...]


@dataclass(frozen=True, slots=True)
class StrandPlan:
    """Bricks covering the selected voxels, plus protector bookkeeping."""

    spec: CanvasSpec
    bricks: tuple[Brick, ...]
    protected_domains: frozenset[DomainId] = frozenset()
    warnings: tuple[str, ...] = ()

    def count(self, kind: BrickKind) -> int:
        return sum(1 for b in self.bricks if b.kind is kind)

    @property
    def total_nt(self) -> int:
        return sum(b.length_nt for b in self.bricks)


_KIND_ORDER = {
    BrickKind.FULL: 0,
    BrickKind.BOUNDARY: 1,
    BrickKind.HALF: 2,
    BrickKind.FRAGMENT: 3,
}


def brick_sort_key(brick: Brick):
    """Canonical brick order: ascending slab, row, column, then kind/side."""
    hx, hy = brick.anchor_helix
    d0 = brick.domains[0]
    return (
        brick.pair_index,
        hy,
        hx,
        _KIND_ORDER[brick.kind],
        0 if d0.side is Side.PLUS else 1,
        d0.voxel.k,
        d0.voxel.x,
        d0.voxel.y,
    )


def segment(helix: tuple[int, int], side: Side, pair_index: int) -> Segment:
    """The 5'->3' two-domain footprint of (helix, side) in one slab.

    Plus strands ascend in z, minus strands descend, so the footprint order
    differs by side.
    """
    x, y = helix
    lo, hi = 2 * pair_index, 2 * pair_index + 1
    ks = (lo, hi) if side is Side.PLUS else (hi, lo)
    return Segment(
        helix=helix,
        side=side,
        pair_index=pair_index,
        footprint=tuple(DomainId(VoxelCoord(x, y, k), side) for k in ks),
    )


def _full_brick(
    pair_index: int, orientation: Orientation, h: tuple[int, int], h2: tuple[int, int]
) -> Brick:
    minus = segment(h, Side.MINUS, pair_index)
    plus = segment(h2, Side.PLUS, pair_index)
    return Brick(
        kind=BrickKind.FULL,
        orientation=orientation,
        domains=minus.footprint + plus.footprint,
        anchor_helix=h,
        pair_index=pair_index,
    )


def _half_brick(
    pair_index: int, orientation: Orientation, h: tuple[int, int], side: Side
) -> Brick:
    seg = segment(h, side, pair_index)
    return Brick(
        kind=BrickKind.HALF,
        orientation=orientation,
        domains=seg.footprint,
        anchor_helix=h,
        pair_index=pair_index,
    )


def canonical_layout(spec: CanvasSpec) -> BrickLayout:
    """Tile the whole canvas into full and half bricks.

    For a W x H x L-layer canvas this emits, per x-oriented slab,
    H*(W-1) full bricks and 2*H half bricks (and symmetrically for
    y-oriented slabs), partitioning all 2*W*H*L domains exactly.
    """
    bricks: list[Brick] = []
    for p in range(spec.layers // 2):
        if p % 2 == 0:
            for y in range(spec.height_helices):
                for x in range(spec.width_helices - 1):
                    bricks.append(_full_brick(p, Orientation.X, (x, y), (x + 1, y)))
                bricks.append(
                    _half_brick(p, Orientation.X, (spec.width_helices - 1, y), Side.MINUS)
                )
                bricks.append(_half_brick(p, Orientation.X, (0, y), Side.PLUS))
        else:
            for x in range(spec.width_helices):
                for y in range(spec.height_helices - 1):
                    bricks.append(_full_brick(p, Orientation.Y, (x, y), (x, y + 1)))
                bricks.append(
                    _half_brick(p, Orientation.Y, (x, spec.height_helices - 1), Side.MINUS)
                )
                bricks.append(_half_brick(p, Orientation.Y, (x, 0), Side.PLUS))
    bricks.sort(key=brick_sort_key)
    return BrickLayout(spec=spec, bricks=tuple(bricks))


def neighbors(layout: BrickLayout, brick: Brick) -> list[Brick]:
    """Bricks owning a domain complementary to one of this brick's domains."""
    if brick not in layout.bricks:
        raise UnknownBrickError(f"brick {brick.brick_id} is not part of this layout")
    owner: dict[DomainId, Brick] = {}
    for b in layout.bricks:
        for d in b.domains:
            owner[d] = b
    partners: list[Brick] = []
    seen: set[tuple] = set()
    for d in brick.domains:
        partner = owner[d.complement]
        key = brick_sort_key(partner)
        if key not in seen:
            seen.add(key)
            partners.append(partner)
    partners.sort(key=brick_sort_key)
    return partners


def _classify_run(parent: Brick, run: tuple[DomainId, ...]) -> Brick:
    """Re-kind a contiguous surviving run of a canonical brick's domains."""
    if len(run) == 4:
        kind = BrickKind.FULL
    elif len(run) == 2 and run[0].voxel.x == run[1].voxel.x and run[0].voxel.y == run[1].voxel.y:
        # Both domains on one helix: an intact segment, i.e. a half brick.
        # A 2-run straddling the center junction is a fragment instead.
        kind = BrickKind.HALF
    else:
        kind = BrickKind.FRAGMENT
    return Brick(
        kind=kind,
        orientation=parent.orientation,
        domains=run,
        anchor_helix=(run[0].voxel.x, run[0].voxel.y),
        pair_index=parent.pair_index,
    )


def sculpt(layout: BrickLayout, canvas: Canvas) -> StrandPlan:
    """Restrict the canonical tiling to the selected voxels.

    Each canonical brick's domain list is filtered to selected voxels; every
    maximal contiguous run becomes a brick.  4-runs stay full, intact
    segments become half bricks, everything else is a fragment and warned.
    """
    if layout.spec != canvas.spec:
        raise SpecMismatchError("layout and canvas were built from different specs")
    selected = canvas.selected
    out: list[Brick] = []
    warnings: list[str] = []
    for parent in layout.bricks:
        run: list[DomainId] = []
        for d in parent.domains:
            if d.voxel in selected:
                run.append(d)
                continue
            if run:
                out.append(_classify_run(parent, tuple(run)))
                run = []
        if run:
            out.append(_classify_run(parent, tuple(run)))
    out.sort(key=brick_sort_key)
    for b in out:
        if b.kind is BrickKind.FRAGMENT:
            warnings.append(
                f"irregular {b.length_nt}-nt fragment {b.brick_id} "
                f"(slab {b.pair_index}, helix {b.anchor_helix})"
            )
    return StrandPlan(spec=canvas.spec, bricks=tuple(out), warnings=tuple(warnings))


def _step_on_strand(d: DomainId, downstream: bool) -> DomainId | None:
    """The domain one 8-nt step along the same physical strand.

    Plus strands run 5'->3' up in z, minus strands run down, so the layer
    step depends on both the side and the direction asked for.
    """
    step = 1 if (d.side is Side.PLUS) == downstream else -1
    k = d.voxel.k + step
    if k < 0:
        return None
    return DomainId(VoxelCoord(d.voxel.x, d.voxel.y, k), d.side)


def merge_boundary_bricks(plan: StrandPlan) -> StrandPlan:
    """Merge each half brick into an adjacent full brick where the two are
    one continuous physical strand, producing 48-nt boundary bricks.

    Halves are scanned in canonical order; each merges with at most one full
    and each full absorbs at most one half.  Halves with no live partner
    persist unchanged.
    """
    fulls = [b for b in plan.bricks if b.kind is BrickKind.FULL]
    halves = [b for b in plan.bricks if b.kind is BrickKind.HALF]
    others = [b for b in plan.bricks if b.kind not in (BrickKind.FULL, BrickKind.HALF)]

    by_first = {b.domains[0]: b for b in fulls}
    by_last = {b.domains[-1]: b for b in fulls}
    consumed: set[DomainId] = set()  # keyed by the full's first domain
    merged: list[Brick] = []
    leftover_halves: list[Brick] = []

    for half in sorted(halves, key=brick_sort_key):
        partner = None
        prefix = False
        succ = _step_on_strand(half.domains[-1], downstream=True)
        if succ is not None and succ in by_first:
            partner = by_first[succ]
            prefix = True  # half reads before the full
        else:
            pred = _step_on_strand(half.domains[0], downstream=False)
            if pred is not None:
                partner = by_last.get(pred)
        if partner is None or partner.domains[0] in consumed:
            leftover_halves.append(half)
            continue
        consumed.add(partner.domains[0])
        domains = (
            half.domains + partner.domains if prefix else partner.domains + half.domains
        )
        merged.append(
            Brick(
                kind=BrickKind.BOUNDARY,
                orientation=partner.orientation,
                domains=domains,
                anchor_helix=partner.anchor_helix,
                pair_index=partner.pair_index,
            )
        )

    surviving_fulls = [b for b in fulls if b.domains[0] not in consumed]
    bricks = sorted(
        surviving_fulls + merged + leftover_halves + others, key=brick_sort_key
    )
    return replace(plan, bricks=tuple(bricks))


def apply_protector_policy(plan: StrandPlan, policy: ProtectorPolicy) -> StrandPlan:
    """Optionally drop sub-16-nt fragments and mark their exposed partners.

    Under SUPPRESS_AND_PROTECT, each dropped domain whose duplex partner
    survives in some strand gets that partner added to protected_domains;
    sequence assembly will force protected domains to eight thymidines.
    """
    if policy is ProtectorPolicy.EMIT_FRAGMENTS:
        return plan
    kept: list[Brick] = []
    dropped_domains: list[DomainId] = []
    for b in plan.bricks:
        if b.kind is BrickKind.FRAGMENT and b.length_nt < 16:
            dropped_domains.extend(b.domains)
        else:
            kept.append(b)
    remaining = {d for b in kept for d in b.domains}
    protectors = {
        d.complement for d in dropped_domains if d.complement in remaining
    }
    return replace(
        plan,
        bricks=tuple(kept),
        protected_domains=plan.protected_domains | protectors,
    )
