"""Constrained random domain sequence generation, assembly and analysis.

Every voxel gets one random plus-side 8-mer; the minus side is always its
reverse complement.  Candidates are drawn from a per-voxel deterministic
byte stream (keyed hash of master seed and voxel coordinates) so generation
is bitwise reproducible and order-independent of any internal batching.

Hard constraints (GC-count window, homopolymer run limit, pairwise
distinctness) always hold.  The pairwise Hamming-distance target is best
effort: for more than 64 domains no length-8 quaternary code can keep
distance 6, so after the retry budget the best candidate seen is accepted
and a violation is recorded.
"""

from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

import numpy as np

from .canvas import CanvasSpec, all_voxels
from .errors import (
    CostError,
    InfeasibleConfigError,
    MissingDomainError,
    SequenceError,
)
from .bricks import BrickKind, DomainId, Orientation, Side, StrandPlan

DOMAIN_LENGTH = 8
BASES = "ACGT"
_COMPLEMENT = str.maketrans("ACGT", "TGCA")
_STREAM_KEY = b"dnabricks-domain-stream"
_CANDIDATE_BLOCK = 1024
# Extra candidate blocks allowed past the retry budget while hunting for a
# merely-distinct sequence; exhausting this means the pool itself is gone.
_DISTINCT_SEARCH_FACTOR = 100

# An 8-mer packs into 16 bits (2 per base); the Hamming distance of a pair is
# the number of nonzero 2-bit groups in the XOR of their packed forms.
_PACK_SHIFTS = (np.arange(DOMAIN_LENGTH, dtype=np.uint16) * 2).astype(np.uint16)


def _build_distance_lut() -> np.ndarray:
    v = np.arange(65536, dtype=np.uint32)
    acc = np.zeros(65536, dtype=np.uint8)
    for i in range(DOMAIN_LENGTH):
        acc += (((v >> (2 * i)) & 3) != 0).astype(np.uint8)
    return acc


_DIST_LUT = _build_distance_lut()


def _pack(codes: np.ndarray) -> np.ndarray:
    """Pack (n, 8) base-code rows into (n,) uint16 values."""
    return (codes.astype(np.uint16) << _PACK_SHIFTS).sum(
        axis=1, dtype=np.uint32
    ).astype(np.uint16)

PROTECTOR_SEQUENCE = "T" * DOMAIN_LENGTH


@dataclass(frozen=True, slots=True)
class ConstraintConfig:
    """Knobs for the constrained generator.

    gc_min/gc_max bound the fraction of G/C bases, max_run caps homopolymer
    length, target_hamming is the desired pairwise distance between accepted
    plus-side 8-mers, and retry_budget caps how many hard-valid candidates
    are examined before falling back to the best one seen.
    """

    gc_min: float = 0.40
    gc_max: float = 0.60
    max_run: int = 4
    target_hamming: int = 6
    retry_budget: int = 1000
    check_complements: bool = False

    def __post_init__(self) -> None:
        if not (0.0 <= self.gc_min <= self.gc_max <= 1.0):
            raise InfeasibleConfigError(
                f"need 0 <= gc_min <= gc_max <= 1, got [{self.gc_min}, {self.gc_max}]"
            )
        if self.max_run < 1:
            raise InfeasibleConfigError(f"max_run must be >= 1, got {self.max_run}")
        if not (0 <= self.target_hamming <= DOMAIN_LENGTH):
            raise InfeasibleConfigError(
                f"target_hamming must be in [0, {DOMAIN_LENGTH}], got {self.target_hamming}"
            )
        if self.retry_budget < 1:
            raise InfeasibleConfigError(
                f"retry_budget must be >= 1, got {self.retry_budget}"
            )

    def gc_count_window(self) -> tuple[int, int]:
        """Inclusive integer window of allowed G+C counts per 8-mer."""
        lo = math.ceil(DOMAIN_LENGTH * self.gc_min - 1e-9)
        hi = math.floor(DOMAIN_LENGTH * self.gc_max + 1e-9)
        return max(lo, 0), min(hi, DOMAIN_LENGTH)


@dataclass(frozen=True, slots=True)
class HammingViolation:
    """A domain accepted below the distance target, with its best distance."""

    domain: DomainId
    best_min_distance: int


@dataclass(frozen=True, slots=True)
class DomainAssignment:
    """Deterministic map from every canvas domain to an 8-mer."""

    seed: int
    config: ConstraintConfig
    sequences: dict[DomainId, str]
    violations: tuple[HammingViolation, ...]


@dataclass(frozen=True, slots=True)
class Strand:
    """A brick with its concrete 5'->3' base sequence."""

    strand_id: str
    kind: BrickKind
    orientation: Orientation
    domains: tuple[DomainId, ...]
    sequence: str


@dataclass(frozen=True, slots=True)
class SimilarityHistogram:
    """Unordered domain pairs sharing 8, 7 or 6 identical bases."""

    pairs_8: int
    pairs_7: int
    pairs_6: int
    total_domains: int


@dataclass(frozen=True, slots=True)
class CostConfig:
    rate_usd_per_base: float = 0.004


@dataclass(frozen=True, slots=True)
class CostReport:
    total_nt: int
    rate_usd_per_base: float
    total_usd: Decimal  # rounded to cents
    total_usd_raw: Decimal  # exact, before rounding


def reverse_complement(seq: str) -> str:
    """Watson-Crick reverse complement.  Involutive."""
    bad = set(seq) - set(BASES)
    if bad:
        raise SequenceError(f"sequence contains non-ACGT characters: {sorted(bad)}")
    return seq.translate(_COMPLEMENT)[::-1]


_UNPACK_SHIFTS = np.array([0, 2, 4, 6], dtype=np.uint8)


class _DomainStream:
    """Deterministic base-code stream for one voxel.

    Digest i of the stream is blake2b(seed, x, y, k, i) keyed with a fixed
    tag; each 64-byte digest unpacks little-end-first into 256 two-bit base
    codes (0..3 -> ACGT).
    """

    def __init__(self, seed: int, x: int, y: int, k: int) -> None:
        self._prefix = struct.pack("<Qqqq", seed & 0xFFFFFFFFFFFFFFFF, x, y, k)
        self._digest_index = 0
        self._pending = b""

    def next_codes(self, n_bases: int) -> np.ndarray:
        n_bytes = (n_bases + 3) // 4
        chunks = [self._pending]
        have = len(self._pending)
        while have < n_bytes:
            digest = hashlib.blake2b(
                self._prefix + struct.pack("<Q", self._digest_index),
                digest_size=64,
                key=_STREAM_KEY,
            ).digest()
            self._digest_index += 1
            chunks.append(digest)
            have += 64
        buf = b"".join(chunks)
        self._pending = buf[n_bytes:]
        raw = np.frombuffer(buf[:n_bytes], dtype=np.uint8)
        codes = ((raw[:, None] >> _UNPACK_SHIFTS) & 3).reshape(-1)
        return codes[:n_bases].astype(np.uint8)


def _hard_valid_mask(cands: np.ndarray, gc_lo: int, gc_hi: int, max_run: int) -> np.ndarray:
    """Vectorized GC-window and run-length filter over (n, 8) code arrays."""
    gc = ((cands == 1) | (cands == 2)).sum(axis=1)
    ok = (gc >= gc_lo) & (gc <= gc_hi)
    if max_run < DOMAIN_LENGTH:
        eq = cands[:, 1:] == cands[:, :-1]
        for start in range(DOMAIN_LENGTH - max_run):
            ok &= ~eq[:, start : start + max_run].all(axis=1)
    return ok


def _codes_to_str(codes: np.ndarray) -> str:
    return "".join(BASES[c] for c in codes)


def generate_domains(
    spec: CanvasSpec, seed: int, config: ConstraintConfig | None = None
) -> DomainAssignment:
    """Assign one plus-side 8-mer to every voxel of the canvas.

    Voxels are processed in canonical (x, y, k) order.  For each voxel,
    candidates from its private stream are filtered by the hard constraints;
    the first candidate at Hamming distance >= target_hamming from every
    previously accepted plus-side 8-mer (and their reverse complements when
    check_complements is on) is accepted.  After retry_budget hard-valid
    candidates fail, the best-distance distinct candidate seen is accepted
    and recorded as a violation.  Minus sides are reverse complements.
    """
    config = config or ConstraintConfig()
    gc_lo, gc_hi = config.gc_count_window()
    if gc_lo > gc_hi:
        raise InfeasibleConfigError(
            f"GC window [{config.gc_min}, {config.gc_max}] admits no "
            f"{DOMAIN_LENGTH}-mer (integer counts {gc_lo}..{gc_hi})"
        )
    required = max(1, config.target_hamming)

    voxels = list(all_voxels(spec))
    rows_per_voxel = 2 if config.check_complements else 1
    accepted = np.empty(len(voxels) * rows_per_voxel, dtype=np.uint16)
    n_accepted = 0

    sequences: dict[DomainId, str] = {}
    violations: list[HammingViolation] = []

    for v in voxels:
        stream = _DomainStream(seed, v.x, v.y, v.k)
        budget_left = config.retry_budget
        best_codes: np.ndarray | None = None
        best_dist = 0
        chosen: np.ndarray | None = None
        extra_blocks = 0

        while chosen is None:
            codes = stream.next_codes(_CANDIDATE_BLOCK * DOMAIN_LENGTH).reshape(
                _CANDIDATE_BLOCK, DOMAIN_LENGTH
            )
            valid_idx = np.flatnonzero(
                _hard_valid_mask(codes, gc_lo, gc_hi, config.max_run)
            )
            if budget_left > 0:
                examined = valid_idx[:budget_left]
            else:
                examined = valid_idx
                extra_blocks += 1
                if extra_blocks > _DISTINCT_SEARCH_FACTOR * max(
                    1, config.retry_budget // _CANDIDATE_BLOCK
                ):
                    raise InfeasibleConfigError(
                        "candidate pool exhausted without finding a distinct 8-mer; "
                        "constraints leave too few sequences for this canvas"
                    )
            if examined.size == 0:
                continue
            cands = codes[examined]
            if n_accepted == 0:
                chosen = cands[0]
                break
            packed = _pack(cands)
            dists = _DIST_LUT[
                packed[:, None] ^ accepted[None, :n_accepted]
            ].min(axis=1)
            hit = np.flatnonzero(dists >= required)
            if budget_left > 0:
                if hit.size:
                    chosen = cands[hit[0]]
                    break
                block_best = int(np.max(dists))
                if block_best > best_dist and block_best >= 1:
                    best_dist = block_best
                    best_codes = cands[int(np.argmax(dists))].copy()
                budget_left -= examined.size
                if budget_left <= 0:
                    if best_codes is not None:
                        chosen = best_codes
                        violations.append(
                            HammingViolation(
                                domain=DomainId(v, Side.PLUS),
                                best_min_distance=best_dist,
                            )
                        )
                        break
                    # No distinct candidate inside the budget: keep scanning
                    # until one turns up (uniqueness is unconditional).
            else:
                distinct = np.flatnonzero(dists >= 1)
                if distinct.size:
                    chosen = cands[distinct[0]]
                    violations.append(
                        HammingViolation(
                            domain=DomainId(v, Side.PLUS),
                            best_min_distance=int(dists[distinct[0]]),
                        )
                    )
                    break

        plus_seq = _codes_to_str(chosen)
        rc_codes = (3 - chosen)[::-1]
        sequences[DomainId(v, Side.PLUS)] = plus_seq
        sequences[DomainId(v, Side.MINUS)] = _codes_to_str(rc_codes)
        accepted[n_accepted] = _pack(chosen[None, :])[0]
        n_accepted += 1
        if config.check_complements:
            accepted[n_accepted] = _pack(rc_codes[None, :])[0]
            n_accepted += 1

    return DomainAssignment(
        seed=seed,
        config=config,
        sequences=sequences,
        violations=tuple(violations),
    )


def assemble_strands(plan: StrandPlan, assignment: DomainAssignment) -> list[Strand]:
    """Turn every plan brick into a concrete strand.

    Domain sequences come from the assignment; domains marked protected read
    as eight thymidines.  Output order and ids are canonical.
    """
    strands: list[Strand] = []
    for brick in plan.bricks:
        parts: list[str] = []
        for d in brick.domains:
            if d in plan.protected_domains:
                parts.append(PROTECTOR_SEQUENCE)
                continue
            seq = assignment.sequences.get(d)
            if seq is None:
                raise MissingDomainError(
                    f"domain {d.coord_label()} missing from assignment; "
                    "plan and assignment likely built from different specs"
                )
            parts.append(seq)
        strands.append(
            Strand(
                strand_id=brick.brick_id,
                kind=brick.kind,
                orientation=brick.orientation,
                domains=brick.domains,
                sequence="".join(parts),
            )
        )
    return strands


def similarity_histogram(domains: list[str]) -> SimilarityHistogram:
    """Count unordered pairs of 8-mers with 8, 7 or 6 identical positions."""
    n = len(domains)
    for s in domains:
        if len(s) != DOMAIN_LENGTH:
            raise SequenceError(
                f"all domains must be {DOMAIN_LENGTH}-mers, got length {len(s)}"
            )
    if n < 2:
        return SimilarityHistogram(0, 0, 0, n)
    arr = np.frombuffer("".join(domains).encode("ascii"), dtype=np.uint8).reshape(
        n, DOMAIN_LENGTH
    )
    counts = {8: 0, 7: 0, 6: 0}
    chunk = max(1, 2_000_000 // max(n, 1))
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        ident = (arr[start:stop, None, :] == arr[None, :, :]).sum(axis=2)
        rows = np.arange(start, stop)[:, None]
        cols = np.arange(n)[None, :]
        upper = cols > rows
        for value in counts:
            counts[value] += int(np.count_nonzero(upper & (ident == value)))
    return SimilarityHistogram(
        pairs_8=counts[8], pairs_7=counts[7], pairs_6=counts[6], total_domains=n
    )


def estimate_cost(total_nt: int, config: CostConfig | None = None) -> CostReport:
    """Price a structure at a flat USD rate per base, reported to cents."""
    config = config or CostConfig()
    if total_nt < 0:
        raise CostError(f"total_nt must be >= 0, got {total_nt}")
    if config.rate_usd_per_base < 0:
        raise CostError(f"rate must be >= 0, got {config.rate_usd_per_base}")
    raw = Decimal(str(config.rate_usd_per_base)) * total_nt
    return CostReport(
        total_nt=total_nt,
        rate_usd_per_base=config.rate_usd_per_base,
        total_usd=raw.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP),
        total_usd_raw=raw,
    )
