"""Acceptance suite: one test per release criterion, each printing a PASS
line with its measured numbers (run with -s or -rA to see them).

Every expected value here is either a published reference figure or computed
by an independent oracle inside the test (brute-force enumeration, pair
counting, or set arithmetic) rather than by the code path under test.
"""

import collections
import itertools
import random
import time
from decimal import Decimal

from conftest import random_spec
from dnabricks.bricks import (
    BrickKind,
    DomainId,
    Side,
    canonical_layout,
    merge_boundary_bricks,
    sculpt,
)
from dnabricks.canvas import (
    Canvas,
    CanvasSpec,
    all_voxels,
    new_canvas,
    stats,
)
from dnabricks.exports import export_csv, export_latex
from dnabricks.pipeline import build_strands
from dnabricks.project import Project, export_project, import_project
from dnabricks.seqgen import (
    ConstraintConfig,
    estimate_cost,
    generate_domains,
    reverse_complement,
    similarity_histogram,
)


def _pass(name: str, detail: str) -> None:
    print(f"ACCEPTANCE {name}: PASS ({detail})")


def test_canonical_layout_counts_8x8x64():
    """8H x 8H x 64B: 224 full + 64 half, 288 strands, 1024 domains, 8192 nt,
    computed in under a second."""
    start = time.perf_counter()
    layout = canonical_layout(CanvasSpec(8, 8, 64))
    elapsed = time.perf_counter() - start
    counts = collections.Counter(b.kind for b in layout.bricks)
    assert counts[BrickKind.FULL] == 224
    assert counts[BrickKind.HALF] == 64
    assert len(layout.bricks) == 288
    assert sum(len(b.domains) for b in layout.bricks) == 1024
    assert sum(b.length_nt for b in layout.bricks) == 8192
    assert elapsed < 1.0
    _pass("layout-counts-8x8x64", f"224 full + 64 half in {elapsed * 1000:.1f} ms")


def test_layout_partition_6x6x48():
    """6H x 6H x 48B: exactly 432 domains, each appearing in exactly one
    brick (exhaustive multiset comparison)."""
    spec = CanvasSpec(6, 6, 48)
    layout = canonical_layout(spec)
    seen = [d for b in layout.bricks for d in b.domains]
    expected = [
        DomainId(v, s) for v in all_voxels(spec) for s in (Side.PLUS, Side.MINUS)
    ]
    assert len(seen) == 432
    assert collections.Counter(seen) == collections.Counter(expected)
    _pass("partition-6x6x48", "432 domains partitioned exactly")


def test_cost_reference_values():
    """9600 nt -> 38.40 USD exact; 4096 nt -> 16.38 USD, within 0.10 of the
    rounded reference figure 16.3."""
    assert estimate_cost(9600).total_usd == Decimal("38.40")
    report = estimate_cost(4096)
    assert report.total_usd == Decimal("16.38")
    assert abs(report.total_usd - Decimal("16.3")) <= Decimal("0.10")
    _pass("cost", "9600 nt = 38.40 USD, 4096 nt = 16.38 USD")


def test_physical_dimensions_exact():
    """8x8x64 -> 20 x 20 x 21.6 nm; 10x10x80 -> 25 x 25 x 27 nm, exact."""
    assert stats(new_canvas(CanvasSpec(8, 8, 64))).physical_size_nm == (20.0, 20.0, 21.6)
    assert stats(new_canvas(CanvasSpec(10, 10, 80))).physical_size_nm == (25.0, 25.0, 27.0)
    _pass("dimensions", "20x20x21.6 and 25x25x27 nm exact")


def test_sculpt_arithmetic_and_partition_oracle():
    """Emit policy: total nt is 16 per selected voxel; a 256-voxel sculpt of
    the 8x8x64 canvas is exactly 4096 nt.  1000 random sculpts of canvases up
    to 10x10x80 keep the partition and count identities against a brute-force
    domain-coverage oracle, all inside 60 s."""
    start = time.perf_counter()

    spec = CanvasSpec(8, 8, 64)
    rng = random.Random(1234)
    removed = set(rng.sample(list(all_voxels(spec)), 256))
    plan = sculpt(canonical_layout(spec), Canvas(spec, new_canvas(spec).selected - removed))
    assert plan.total_nt == 4096

    layouts = {}
    for i in range(1000):
        s = random_spec(rng, max_helices=10, max_slabs=5)
        if s not in layouts:
            layouts[s] = canonical_layout(s)
        voxels = list(all_voxels(s))
        canvas = Canvas(s, frozenset(rng.sample(voxels, rng.randrange(len(voxels) + 1))))
        p = sculpt(layouts[s], canvas)
        if i % 3 == 0:
            p = merge_boundary_bricks(p)
        # brute-force coverage oracle: every selected voxel's two domains
        # appear exactly once, nothing else appears at all
        covered = collections.Counter(d for b in p.bricks for d in b.domains)
        expected = collections.Counter(
            DomainId(v, side) for v in canvas.selected for side in (Side.PLUS, Side.MINUS)
        )
        assert covered == expected
        assert p.total_nt == 16 * canvas.selected_count
        # count identity: 4*full + 2*half + 6*boundary + fragment domains
        per_kind = collections.Counter()
        frag_domains = 0
        for b in p.bricks:
            per_kind[b.kind] += 1
            if b.kind is BrickKind.FRAGMENT:
                frag_domains += len(b.domains)
        assert (
            4 * per_kind[BrickKind.FULL]
            + 2 * per_kind[BrickKind.HALF]
            + 6 * per_kind[BrickKind.BOUNDARY]
            + frag_domains
            == 2 * canvas.selected_count
        )
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    _pass("sculpt-arithmetic", f"1000 random sculpts verified in {elapsed:.1f} s")


def test_constraint_suite_seeds_1_to_100():
    """Seeds 1..100 on 2x2x16 and 6x6x48: GC count exactly 4, no run over 4,
    pairwise uniqueness, bitwise determinism per seed, and recorded distance
    violations matching an independent O(n^2) recomputation."""
    start = time.perf_counter()
    config = ConstraintConfig()
    total_violations = 0
    for dims in ((2, 2, 16), (6, 6, 48)):
        spec = CanvasSpec(*dims)
        order = list(all_voxels(spec))
        for seed in range(1, 101):
            assignment = generate_domains(spec, seed, config)
            again = generate_domains(spec, seed, config)
            assert assignment.sequences == again.sequences
            assert assignment.violations == again.violations

            seqs = [assignment.sequences[DomainId(v, Side.PLUS)] for v in order]
            for s in seqs:
                assert sum(c in "GC" for c in s) == 4
                assert not any(s[i] == s[i + 1] == s[i + 2] == s[i + 3] == s[i + 4]
                               for i in range(4))
            assert len(set(seqs)) == len(seqs)

            recorded = {
                v.domain.voxel: v.best_min_distance for v in assignment.violations
            }
            for i in range(1, len(seqs)):
                mind = min(
                    sum(a != b for a, b in zip(seqs[i], prev)) for prev in seqs[:i]
                )
                if mind < config.target_hamming:
                    assert recorded.get(order[i]) == mind
                else:
                    assert order[i] not in recorded
            total_violations += len(assignment.violations)
    elapsed = time.perf_counter() - start
    _pass(
        "constraint-suite",
        f"200 spec/seed runs, {total_violations} recorded violations, {elapsed:.1f} s",
    )


def test_histogram_matches_brute_force_500_sets():
    """similarity_histogram equals brute-force pair counting on 500 random
    domain sets with up to 500 members each."""
    rng = random.Random(99)
    start = time.perf_counter()
    for _ in range(500):
        n = rng.randrange(0, 501)
        doms = ["".join(rng.choice("ACGT") for _ in range(8)) for _ in range(n)]
        h = similarity_histogram(doms)
        c8 = c7 = c6 = 0
        for a, b in itertools.combinations(doms, 2):
            ident = sum(x == y for x, y in zip(a, b))
            if ident == 8:
                c8 += 1
            elif ident == 7:
                c7 += 1
            elif ident == 6:
                c6 += 1
        assert (h.pairs_8, h.pairs_7, h.pairs_6) == (c8, c7, c6)
        assert h.total_domains == n
    elapsed = time.perf_counter() - start
    _pass("histogram-oracle", f"500 sets verified in {elapsed:.1f} s")


def test_round_trip_100_random_projects():
    """Export -> import -> regenerate gives byte-identical CSV and LaTeX for
    100 randomized projects (spec, sculpt, seed, constraints)."""
    rng = random.Random(4242)
    from dnabricks.bricks import ProtectorPolicy

    for _ in range(100):
        spec = random_spec(rng, max_helices=4, max_slabs=2)
        voxels = list(all_voxels(spec))
        removed = frozenset(rng.sample(voxels, rng.randrange(len(voxels) + 1)))
        project = Project(
            spec=spec,
            removed_voxels=removed,
            seed=rng.randrange(2**64),
            constraints=ConstraintConfig(
                target_hamming=rng.choice([4, 5, 6]),
                retry_budget=rng.choice([50, 200, 1000]),
            ),
            boundary_merge=rng.random() < 0.5,
            protector_policy=rng.choice(list(ProtectorPolicy)),
        )
        blob = export_project(project)
        reimported = import_project(blob)
        assert export_project(reimported) == blob

        _, _, strands_a = build_strands(project)
        _, _, strands_b = build_strands(reimported)
        assert export_csv(strands_a) == export_csv(strands_b)
        assert export_latex(strands_a) == export_latex(strands_b)
    _pass("round-trip", "100 randomized projects byte-identical")


def test_reverse_complement_contract():
    """Minus strands are exact reverse complements across a generated canvas."""
    spec = CanvasSpec(4, 4, 32)
    assignment = generate_domains(spec, 7)
    for v in all_voxels(spec):
        assert assignment.sequences[DomainId(v, Side.MINUS)] == reverse_complement(
            assignment.sequences[DomainId(v, Side.PLUS)]
        )
    _pass("reverse-complement", "minus = revcomp(plus) across 4x4x32")
