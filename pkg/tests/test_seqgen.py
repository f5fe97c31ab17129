import itertools
import random
import re
from decimal import Decimal

import pytest

from dnabricks.bricks import (
    DomainId,
    ProtectorPolicy,
    Side,
    apply_protector_policy,
    canonical_layout,
    sculpt,
)
from dnabricks.canvas import Canvas, CanvasSpec, VoxelCoord, all_voxels, new_canvas, set_voxel
from dnabricks.errors import (
    CostError,
    InfeasibleConfigError,
    MissingDomainError,
    SequenceError,
)
from dnabricks.seqgen import (
    ConstraintConfig,
    CostConfig,
    assemble_strands,
    estimate_cost,
    generate_domains,
    reverse_complement,
    similarity_histogram,
)


def hamming(a, b):
    return sum(x != y for x, y in zip(a, b))


def plus_sequences_in_order(assignment, spec):
    return [assignment.sequences[DomainId(v, Side.PLUS)] for v in all_voxels(spec)]


def check_violations_against_oracle(assignment, spec, config):
    """Order-aware O(n^2) recomputation of each domain's min distance to all
    previously accepted domains (and their reverse complements when the
    config says so)."""
    seqs = plus_sequences_in_order(assignment, spec)
    recorded = {v.domain.voxel: v.best_min_distance for v in assignment.violations}
    order = list(all_voxels(spec))
    for i in range(1, len(seqs)):
        pool = seqs[:i]
        if config.check_complements:
            pool = pool + [reverse_complement(s) for s in seqs[:i]]
        mind = min(hamming(seqs[i], t) for t in pool)
        if mind < config.target_hamming:
            assert order[i] in recorded, f"missing violation at {order[i]}"
            assert recorded[order[i]] == mind
        else:
            assert order[i] not in recorded


class TestConstraintConfig:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"gc_min": 0.7, "gc_max": 0.5},
            {"gc_min": -0.1},
            {"gc_max": 1.5},
            {"max_run": 0},
            {"target_hamming": 9},
            {"target_hamming": -1},
            {"retry_budget": 0},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(InfeasibleConfigError):
            ConstraintConfig(**kwargs)

    def test_default_window_is_exactly_four(self):
        assert ConstraintConfig().gc_count_window() == (4, 4)

    def test_empty_window_rejected_at_generation(self, small_spec):
        # ceil(8*0.9) = 8 > floor(8*0.95) = 7
        config = ConstraintConfig(gc_min=0.9, gc_max=0.95)
        with pytest.raises(InfeasibleConfigError, match="admits no"):
            generate_domains(small_spec, 1, config)


class TestGenerateDomains:
    def test_deterministic_and_constrained(self, small_spec):
        a = generate_domains(small_spec, 42)
        b = generate_domains(small_spec, 42)
        assert a.sequences == b.sequences
        assert a.violations == b.violations
        plus = plus_sequences_in_order(a, small_spec)
        assert len(plus) == 8
        assert all(sum(c in "GC" for c in s) == 4 for s in plus)
        assert all(not re.search(r"(.)\1{4,}", s) for s in plus)
        assert len(set(plus)) == len(plus)
        assert a.violations == ()

    def test_seed_sensitivity(self, small_spec):
        a = generate_domains(small_spec, 42)
        c = generate_domains(small_spec, 43)
        assert a.sequences != c.sequences
        plus = plus_sequences_in_order(c, small_spec)
        assert all(sum(ch in "GC" for ch in s) == 4 for s in plus)
        assert len(set(plus)) == len(plus)

    def test_minus_side_is_reverse_complement(self, small_spec):
        a = generate_domains(small_spec, 7)
        for v in all_voxels(small_spec):
            plus = a.sequences[DomainId(v, Side.PLUS)]
            minus = a.sequences[DomainId(v, Side.MINUS)]
            assert minus == reverse_complement(plus)

    def test_large_canvas_has_violations(self):
        """216 domains cannot all sit at distance >= 6: a length-8 quaternary
        code with distance 6 holds at most 4^3 = 64 codewords."""
        spec = CanvasSpec(6, 6, 48)
        config = ConstraintConfig()
        assignment = generate_domains(spec, 1, config)
        assert len(assignment.violations) > 0
        plus = plus_sequences_in_order(assignment, spec)
        assert len(set(plus)) == len(plus)  # uniqueness still unconditional
        check_violations_against_oracle(assignment, spec, config)

    def test_check_complements_mode(self):
        spec = CanvasSpec(2, 2, 32)
        config = ConstraintConfig(check_complements=True)
        assignment = generate_domains(spec, 9, config)
        check_violations_against_oracle(assignment, spec, config)
        seqs = plus_sequences_in_order(assignment, spec)
        for i, j in itertools.combinations(range(len(seqs)), 2):
            assert seqs[i] != seqs[j]
            assert seqs[i] != reverse_complement(seqs[j])

    def test_gc_window_config(self, small_spec):
        config = ConstraintConfig(gc_min=0.25, gc_max=0.75)
        assignment = generate_domains(small_spec, 11, config)
        for s in plus_sequences_in_order(assignment, small_spec):
            assert 2 <= sum(c in "GC" for c in s) <= 6

    def test_max_run_config(self, small_spec):
        config = ConstraintConfig(max_run=2)
        assignment = generate_domains(small_spec, 13, config)
        for s in plus_sequences_in_order(assignment, small_spec):
            assert not re.search(r"(.)\1{2,}", s)


class TestReverseComplement:
    @pytest.mark.parametrize(
        "seq,expected",
        [
            ("AAAAAAAA", "TTTTTTTT"),
            ("ACGTACGT", "ACGTACGT"),
            ("AACCGGTT", "AACCGGTT"),
        ],
    )
    def test_known_values(self, seq, expected):
        assert reverse_complement(seq) == expected

    def test_involution_random(self):
        rng = random.Random(17)
        for _ in range(200):
            s = "".join(rng.choice("ACGT") for _ in range(8))
            assert reverse_complement(reverse_complement(s)) == s

    def test_invalid_character(self):
        with pytest.raises(SequenceError):
            reverse_complement("ACGTACGU")


class TestAssembleStrands:
    def test_full_cube(self):
        spec = CanvasSpec(8, 8, 64)
        plan = sculpt(canonical_layout(spec), new_canvas(spec))
        strands = assemble_strands(plan, generate_domains(spec, 42))
        assert len(strands) == 288
        assert sum(len(s.sequence) for s in strands) == 8192

    def test_sculpted_totals(self):
        spec = CanvasSpec(8, 8, 64)
        rng = random.Random(2)
        removed = set(rng.sample(list(all_voxels(spec)), 256))
        canvas = Canvas(spec, new_canvas(spec).selected - removed)
        plan = sculpt(canonical_layout(spec), canvas)
        strands = assemble_strands(plan, generate_domains(spec, 42))
        assert sum(len(s.sequence) for s in strands) == 4096

    def test_sculpt_independent_sequences(self):
        """Generation is canvas-wide: a sculpted structure reads the same
        8-mers at the same voxels as the full canvas."""
        spec = CanvasSpec(4, 4, 32)
        assignment = generate_domains(spec, 77)
        layout = canonical_layout(spec)
        full_strands = assemble_strands(sculpt(layout, new_canvas(spec)), assignment)
        rng = random.Random(3)
        removed = set(rng.sample(list(all_voxels(spec)), 20))
        sub_strands = assemble_strands(
            sculpt(layout, Canvas(spec, new_canvas(spec).selected - removed)),
            assignment,
        )
        full_by_domain = {}
        for s in full_strands:
            for i, d in enumerate(s.domains):
                full_by_domain[d] = s.sequence[8 * i : 8 * i + 8]
        for s in sub_strands:
            for i, d in enumerate(s.domains):
                assert s.sequence[8 * i : 8 * i + 8] == full_by_domain[d]

    def test_protected_domains_read_t8(self, small_spec):
        layout = canonical_layout(small_spec)
        canvas = set_voxel(new_canvas(small_spec), VoxelCoord(0, 0, 1), False)
        plan = apply_protector_policy(
            sculpt(layout, canvas), ProtectorPolicy.SUPPRESS_AND_PROTECT
        )
        assert plan.protected_domains
        strands = assemble_strands(plan, generate_domains(small_spec, 42))
        protected = next(iter(plan.protected_domains))
        for s in strands:
            for i, d in enumerate(s.domains):
                if d == protected:
                    assert s.sequence[8 * i : 8 * i + 8] == "TTTTTTTT"

    def test_missing_domain(self, small_spec):
        plan = sculpt(canonical_layout(small_spec), new_canvas(small_spec))
        wrong = generate_domains(CanvasSpec(2, 2, 32), 1)
        # smaller assignment lacks nothing; a *smaller spec* assignment does
        tiny = generate_domains(small_spec, 1)
        bigger_plan_spec = CanvasSpec(2, 2, 32)
        bigger_plan = sculpt(
            canonical_layout(bigger_plan_spec), new_canvas(bigger_plan_spec)
        )
        with pytest.raises(MissingDomainError):
            assemble_strands(bigger_plan, tiny)
        # sanity: the big assignment covers the small plan
        assert assemble_strands(plan, wrong)

    def test_ids_stable_across_sculpts(self):
        spec = CanvasSpec(4, 4, 32)
        layout = canonical_layout(spec)
        assignment = generate_domains(spec, 5)
        full = assemble_strands(sculpt(layout, new_canvas(spec)), assignment)
        sub = assemble_strands(
            sculpt(layout, set_voxel(new_canvas(spec), VoxelCoord(0, 0, 0), False)),
            assignment,
        )
        full_ids = {s.strand_id: s.sequence for s in full}
        for s in sub:
            if s.strand_id in full_ids:
                assert s.sequence == full_ids[s.strand_id]


def brute_force_histogram(domains):
    c8 = c7 = c6 = 0
    for a, b in itertools.combinations(domains, 2):
        ident = sum(x == y for x, y in zip(a, b))
        if ident == 8:
            c8 += 1
        elif ident == 7:
            c7 += 1
        elif ident == 6:
            c6 += 1
    return c8, c7, c6


class TestSimilarityHistogram:
    def test_no_pairs(self):
        h = similarity_histogram(["AAAAAAAA"])
        assert (h.pairs_8, h.pairs_7, h.pairs_6) == (0, 0, 0)
        assert h.total_domains == 1

    def test_single_near_pair(self):
        h = similarity_histogram(["AAAAAAAA", "AAAAAAAC"])
        assert (h.pairs_8, h.pairs_7, h.pairs_6) == (0, 1, 0)

    def test_identical_pair_counts_as_eight(self):
        h = similarity_histogram(["ACGTACGT", "ACGTACGT"])
        assert h.pairs_8 == 1

    def test_matches_brute_force_random(self):
        rng = random.Random(29)
        for _ in range(20):
            n = rng.randrange(0, 120)
            doms = ["".join(rng.choice("ACGT") for _ in range(8)) for _ in range(n)]
            h = similarity_histogram(doms)
            assert (h.pairs_8, h.pairs_7, h.pairs_6) == brute_force_histogram(doms)

    def test_structure_histogram_matches_brute_force(self):
        """Full 432-domain structure, both strand sides."""
        spec = CanvasSpec(6, 6, 48)
        plan = sculpt(canonical_layout(spec), new_canvas(spec))
        strands = assemble_strands(plan, generate_domains(spec, 42))
        doms = [
            s.sequence[8 * i : 8 * i + 8]
            for s in strands
            for i in range(len(s.domains))
        ]
        assert len(doms) == 432
        h = similarity_histogram(doms)
        assert (h.pairs_8, h.pairs_7, h.pairs_6) == brute_force_histogram(doms)

    def test_length_mismatch(self):
        with pytest.raises(SequenceError):
            similarity_histogram(["ACGTACG"])


class TestEstimateCost:
    @pytest.mark.parametrize(
        "nt,expected",
        [
            (9600, Decimal("38.40")),
            (4096, Decimal("16.38")),
            (0, Decimal("0.00")),
        ],
    )
    def test_default_rate(self, nt, expected):
        assert estimate_cost(nt).total_usd == expected

    def test_paper_rounding_within_tolerance(self):
        # reference figure rounds 16.384 down to 16.3
        assert abs(estimate_cost(4096).total_usd - Decimal("16.3")) <= Decimal("0.10")

    def test_negative_rate(self):
        with pytest.raises(CostError):
            estimate_cost(100, CostConfig(rate_usd_per_base=-0.004))

    def test_negative_nt(self):
        with pytest.raises(CostError):
            estimate_cost(-1)

    def test_linearity_before_rounding(self):
        rng = random.Random(37)
        for _ in range(50):
            a, b = rng.randrange(100_000), rng.randrange(100_000)
            assert (
                estimate_cost(a + b).total_usd_raw
                == estimate_cost(a).total_usd_raw + estimate_cost(b).total_usd_raw
            )
