"""Monte Carlo and exhaustive statistics for the recoding schemes.

Every experiment is driven by per-sample seeds derived from (run seed,
sample index) with BLAKE2b, so results are independent of worker count
and chunking: the multiset of samples for a given seed is always the
same.  Per-sample metrics use arithmetic fast paths (bit masks for the
single-exponent recoders, a counting loop for the joint form) that the
test suite cross-validates against the digit-level recoders.

Column statistics use a fixed width: signed schemes are measured at
length+1 columns (their maximum), the binary scheme at length columns.
With that convention mean_zeros + mean_weight is exactly the width, and
the evaluator identities give multiplications = weight1 - [top column
nonzero] and squarings = width - 1 per sample.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import random
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from itertools import product as iter_product
from typing import Iterator

from .recoding import RecodingScheme

_LOG = logging.getLogger(__name__)

_EXHAUSTIVE_BITS_BOUND = 24
_BIT_PROBABILITY_LENGTH_BOUND = 16

OUTPUT_FORMATS = ("json", "csv")


@dataclass(frozen=True)
class RunConfig:
    """One reproducible experiment: scheme, lengths, sample budget, seed."""

    seed: int
    samples: int
    lengths: tuple[int, ...]
    scheme: RecodingScheme
    dimension: int = 2
    output_format: str = "json"
    workers: int = 1

    def __post_init__(self) -> None:
        if not 0 <= self.seed < (1 << 64):
            raise ValueError("seed must fit in 64 bits")
        if self.samples < 1:
            raise ValueError("need at least one sample")
        if not self.lengths or any(l < 1 for l in self.lengths):
            raise ValueError("lengths must be positive")
        if self.dimension < 1:
            raise ValueError("dimension must be at least 1")
        if self.scheme is RecodingScheme.SJSF and self.dimension != 2:
            raise ValueError("the joint sparse form is two-dimensional")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")


@dataclass(frozen=True)
class StatRecord:
    """Aggregated metrics of one (length, scheme) experiment."""

    experiment: str
    length: int
    dimension: int
    scheme: str
    samples: int
    mean_weight: float
    mean_weight1: float
    mean_zeros: float
    mean_multiplications: float
    mean_squarings: float
    std_error: float
    seed: int


STAT_FIELDS = tuple(f.name for f in fields(StatRecord))

_FLOAT_FIELDS = (
    "mean_weight",
    "mean_weight1",
    "mean_zeros",
    "mean_multiplications",
    "mean_squarings",
    "std_error",
)


def record_to_json_line(record: StatRecord) -> str:
    data = asdict(record)
    for key in _FLOAT_FIELDS:
        data[key] = round(data[key], 6)
    return json.dumps(data)


def csv_header() -> str:
    return ",".join(STAT_FIELDS)


def record_to_csv_row(record: StatRecord) -> str:
    data = asdict(record)
    cells = []
    for key in STAT_FIELDS:
        value = data[key]
        cells.append(f"{value:.6f}" if key in _FLOAT_FIELDS else str(value))
    return ",".join(cells)


# ---------------------------------------------------------------------------
# Sampling.


def derive_sample_seed(seed: int, index: int) -> int:
    """Stable 64-bit stream seed for one sample, independent of worker layout."""
    digest = hashlib.blake2b(
        struct.pack("<QQ", seed, index), digest_size=8
    ).digest()
    return int.from_bytes(digest, "little")


def sample_exponents(
    seed: int,
    index: int,
    length: int,
    dimension: int,
    nonzero: bool = False,
) -> tuple[tuple[int, ...], int]:
    """Uniform exponent vector on [0, 2**length) per component.

    With nonzero=True the all-zero vector is redrawn from the same stream;
    the second return value counts how often that happened.
    """
    rng = random.Random(derive_sample_seed(seed, index))
    exps = tuple(rng.getrandbits(length) for _ in range(dimension))
    redraws = 0
    while nonzero and not any(exps):
        exps = tuple(rng.getrandbits(length) for _ in range(dimension))
        redraws += 1
    return exps, redraws


# ---------------------------------------------------------------------------
# Arithmetic per-sample metrics.


def _naf_support(n: int) -> int:
    # The nonzero positions of the non-adjacent form of n are the set bits
    # of ((3n) XOR n) >> 1; Python's two's-complement semantics make this
    # valid for negative n as well.
    return ((3 * n) ^ n) >> 1


def _wllc_support(n: int, length: int) -> tuple[int, bool]:
    """Nonzero positions of the complement-aware row, and a -2 flag.

    Mirrors wllc_recode(n, length): heavy words recode the non-positive
    value n - (2**length - 1), gaining +1 at the top position and -1 at
    position 0.  The +1 toggles the top bit of the support; the -1 either
    creates a nonzero digit (even value), cancels a +1 (making position 0
    zero), or deepens a -1 into -2 (the flag; position 0 stays nonzero).
    """
    if 2 * n.bit_count() > length:
        v = n - ((1 << length) - 1)
        mask = _naf_support(v) ^ (1 << length)
        if v & 1:
            if (3 * v >> 1) & 1:
                return mask & ~1, False
            return mask | 1, True
        return mask | 1, False
    return _naf_support(n), False


def _sjsf_counts(m: int, n: int) -> tuple[int, int]:
    """(joint weight, column count) of the joint sparse form of (m, n)."""
    r1, r2 = m, n
    columns = weight = 0
    while r1 or r2:
        p1, p2 = r1 & 1, r2 & 1
        if p1 and p2:
            d1 = 2 - (r1 & 3)
            d2 = 2 - (r2 & 3)
        elif p1:
            want = (r2 >> 1) & 1
            d1 = 1 if ((r1 - 1) >> 1) & 1 == want else -1
            d2 = 0
        elif p2:
            want = (r1 >> 1) & 1
            d2 = 1 if ((r2 - 1) >> 1) & 1 == want else -1
            d1 = 0
        else:
            d1 = d2 = 0
        if d1 or d2:
            weight += 1
        r1 = (r1 - d1) >> 1
        r2 = (r2 - d2) >> 1
        columns += 1
    return weight, columns


def _scheme_metrics(
    exps: tuple[int, ...], length: int, scheme: RecodingScheme
) -> tuple[int, int, int, int, int]:
    """(weight, weight1, zeros, multiplications, squarings) of one sample."""
    if scheme is RecodingScheme.BINARY:
        union = 0
        for n in exps:
            union |= n
        weight = union.bit_count()
        top = (union >> (length - 1)) & 1
        return weight, weight, length - weight, weight - top, length - 1
    width = length + 1
    if scheme in (RecodingScheme.NAF, RecodingScheme.STACKED_NAF):
        union = 0
        for n in exps:
            union |= _naf_support(n)
        weight = union.bit_count()
        top = (union >> length) & 1
        return weight, weight, width - weight, weight - top, width - 1
    if scheme is RecodingScheme.SJSF:
        if len(exps) != 2:
            raise ValueError("the joint sparse form is two-dimensional")
        weight, columns = _sjsf_counts(exps[0], exps[1])
        if columns > width:
            raise RuntimeError("joint sparse form exceeded its width bound")
        top = 1 if columns == width else 0
        return weight, weight, width - weight, weight - top, width - 1
    if scheme is RecodingScheme.WLLC:
        union = 0
        deep = False
        for n in exps:
            mask, minus2 = _wllc_support(n, length)
            union |= mask
            deep = deep or minus2
        weight = union.bit_count()
        weight1 = weight + (1 if deep else 0)
        top = (union >> length) & 1
        return weight, weight1, width - weight, weight1 - top, width - 1
    raise ValueError(f"unknown scheme {scheme!r}")


# ---------------------------------------------------------------------------
# Statistics runs.


def _chunk_bounds(samples: int, workers: int) -> list[tuple[int, int]]:
    if workers == 1:
        return [(0, samples)]
    step = max(1, -(-samples // (workers * 4)))
    return [(a, min(a + step, samples)) for a in range(0, samples, step)]


def _stats_chunk(args: tuple[int, str, int, int, int, int]) -> tuple[int, ...]:
    seed, scheme_name, length, dimension, start, stop = args
    scheme = RecodingScheme(scheme_name)
    nonzero = scheme is RecodingScheme.WLLC
    sum_w = sum_w1 = sum_z = sum_m = sum_s = sum_w1_sq = redraws = 0
    for index in range(start, stop):
        exps, r = sample_exponents(seed, index, length, dimension, nonzero)
        redraws += r
        w, w1, z, m, s = _scheme_metrics(exps, length, scheme)
        sum_w += w
        sum_w1 += w1
        sum_z += z
        sum_m += m
        sum_s += s
        sum_w1_sq += w1 * w1
    return (stop - start, sum_w, sum_w1, sum_z, sum_m, sum_s, sum_w1_sq, redraws)


def _merge_chunks(parts: list[tuple[int, ...]]) -> tuple[int, ...]:
    return tuple(sum(values) for values in zip(*parts))


def _std_error(count: int, total: int, total_sq: int) -> float:
    if count < 2:
        return 0.0
    variance = (total_sq - total * total / count) / (count - 1)
    return math.sqrt(max(variance, 0.0) / count)


def run_stats(config: RunConfig, experiment: str = "stats") -> Iterator[StatRecord]:
    """One StatRecord per configured length; deterministic given the seed."""
    for length in config.lengths:
        chunk_args = [
            (config.seed, config.scheme.value, length, config.dimension, a, b)
            for a, b in _chunk_bounds(config.samples, config.workers)
        ]
        if config.workers == 1:
            parts = [_stats_chunk(args) for args in chunk_args]
        else:
            with ProcessPoolExecutor(max_workers=config.workers) as pool:
                parts = list(pool.map(_stats_chunk, chunk_args))
        count, sum_w, sum_w1, sum_z, sum_m, sum_s, sum_w1_sq, redraws = _merge_chunks(
            parts
        )
        if redraws:
            _LOG.info(
                "length %d: redrew the all-zero exponent vector %d time(s)",
                length,
                redraws,
            )
        yield StatRecord(
            experiment=experiment,
            length=length,
            dimension=config.dimension,
            scheme=config.scheme.value,
            samples=count,
            mean_weight=sum_w / count,
            mean_weight1=sum_w1 / count,
            mean_zeros=sum_z / count,
            mean_multiplications=sum_m / count,
            mean_squarings=sum_s / count,
            std_error=_std_error(count, sum_w1, sum_w1_sq),
            seed=config.seed,
        )


def exhaustive_stats(
    scheme: RecodingScheme,
    length: int,
    dimension: int = 2,
    experiment: str = "exhaustive",
) -> StatRecord:
    """Exact means over every exponent vector in [0, 2**length)**dimension.

    The complement-aware scheme skips the all-zero vector (its common
    length is undefined there), matching the Monte Carlo redraw rule.
    """
    if length < 1 or dimension < 1:
        raise ValueError("length and dimension must be positive")
    if dimension * length > _EXHAUSTIVE_BITS_BOUND:
        raise ValueError(
            f"exhaustive mode capped at 2**{_EXHAUSTIVE_BITS_BOUND} vectors"
        )
    if scheme is RecodingScheme.SJSF and dimension != 2:
        raise ValueError("the joint sparse form is two-dimensional")
    skip_zero = scheme is RecodingScheme.WLLC
    count = sum_w = sum_w1 = sum_z = sum_m = sum_s = sum_w1_sq = 0
    for exps in iter_product(range(1 << length), repeat=dimension):
        if skip_zero and not any(exps):
            continue
        w, w1, z, m, s = _scheme_metrics(exps, length, scheme)
        count += 1
        sum_w += w
        sum_w1 += w1
        sum_z += z
        sum_m += m
        sum_s += s
        sum_w1_sq += w1 * w1
    return StatRecord(
        experiment=experiment,
        length=length,
        dimension=dimension,
        scheme=scheme.value,
        samples=count,
        mean_weight=sum_w / count,
        mean_weight1=sum_w1 / count,
        mean_zeros=sum_z / count,
        mean_multiplications=sum_m / count,
        mean_squarings=sum_s / count,
        std_error=0.0,
        seed=0,
    )


# ---------------------------------------------------------------------------
# Derived experiments.


@dataclass(frozen=True)
class SlopeReport:
    """Per-length growth of the total operation count, measured at a
    length pair (L, 2L) so constant offsets cancel."""

    scheme: str
    dimension: int
    base_length: int
    samples: int
    seed: int
    low: StatRecord
    high: StatRecord
    slope: float


def cost_slope(
    scheme: RecodingScheme,
    base_length: int,
    samples: int,
    seed: int,
    dimension: int = 2,
    workers: int = 1,
    experiment: str = "slope",
) -> SlopeReport:
    config = RunConfig(
        seed=seed,
        samples=samples,
        lengths=(base_length, 2 * base_length),
        scheme=scheme,
        dimension=dimension,
        workers=workers,
    )
    low, high = tuple(run_stats(config, experiment))
    total_low = low.mean_multiplications + low.mean_squarings
    total_high = high.mean_multiplications + high.mean_squarings
    return SlopeReport(
        scheme=scheme.value,
        dimension=dimension,
        base_length=base_length,
        samples=samples,
        seed=seed,
        low=low,
        high=high,
        slope=(total_high - total_low) / base_length,
    )


@dataclass(frozen=True)
class SchemeComparison:
    """Per-sample total-cost comparison of the complement-aware recoding
    against the joint sparse form on identical exponent pairs."""

    length: int
    samples: int
    seed: int
    violations: int
    min_margin: int


def _compare_chunk(args: tuple[int, int, int, int]) -> tuple[int, int]:
    seed, length, start, stop = args
    violations = 0
    margin: int | None = None
    for index in range(start, stop):
        exps, _ = sample_exponents(seed, index, length, 2, nonzero=True)
        _, _, _, m_w, s_w = _scheme_metrics(exps, length, RecodingScheme.WLLC)
        _, _, _, m_s, s_s = _scheme_metrics(exps, length, RecodingScheme.SJSF)
        diff = (m_w + s_w) - (m_s + s_s)
        if margin is None or diff < margin:
            margin = diff
        if diff < 0:
            violations += 1
    assert margin is not None
    return violations, margin


def compare_schemes(
    length: int, samples: int, seed: int, workers: int = 1
) -> SchemeComparison:
    chunk_args = [
        (seed, length, a, b) for a, b in _chunk_bounds(samples, workers)
    ]
    if workers == 1:
        parts = [_compare_chunk(args) for args in chunk_args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_compare_chunk, chunk_args))
    return SchemeComparison(
        length=length,
        samples=samples,
        seed=seed,
        violations=sum(p[0] for p in parts),
        min_margin=min(p[1] for p in parts),
    )


@dataclass(frozen=True)
class ComplementBitReport:
    """Exact bit-level zero probabilities after conditional complementing.

    A uniform word of the given length is replaced by its ones' complement
    when more than half of its digits are 1.  zero_probability[i] is
    P(digit i = 0) of the resulting word (positions least significant
    first); pair_zero_probability[(i, j)] is P(digit i = 0 and digit j = 0).
    """

    length: int
    samples: int
    zero_probability: tuple[Fraction, ...]
    pair_zero_probability: dict[tuple[int, int], Fraction]


def complement_bit_probabilities(length: int) -> ComplementBitReport:
    if not 1 <= length <= _BIT_PROBABILITY_LENGTH_BOUND:
        raise ValueError(
            f"exhaustive bit probabilities capped at length "
            f"{_BIT_PROBABILITY_LENGTH_BOUND}"
        )
    full = (1 << length) - 1
    zero_masks = []
    for n in range(1 << length):
        word = n ^ full if 2 * n.bit_count() > length else n
        zero_masks.append(~word & full)
    total = 1 << length
    singles = tuple(
        Fraction(sum((z >> i) & 1 for z in zero_masks), total)
        for i in range(length)
    )
    pairs = {
        (i, j): Fraction(sum((z >> i) & (z >> j) & 1 for z in zero_masks), total)
        for i in range(length)
        for j in range(i + 1, length)
    }
    return ComplementBitReport(length, total, singles, pairs)
