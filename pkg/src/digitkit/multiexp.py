"""Interleaved multi-exponentiation with an exact operation count.

The evaluator walks a joint expansion most significant column first,
squaring once per non-top column and multiplying by a precomputed table
entry per nonzero column.  Counts are exact: squarings = length - 1 and
multiplications = weight1 - 1 when the top column is nonzero (no
multiplication is spent on the leading column).  Magnitude-2 digits,
which the complement-assisted recoding can leave at digit 0, cost two
table multiplications, which is what weight1 charges them.
"""

from __future__ import annotations

import abc
import random
from dataclasses import dataclass, field
from itertools import product as iter_product
from typing import Any, Sequence

from .expansions import JointExpansion
from .recoding import RecodingScheme, recode_joint

Element = Any

MERSENNE61 = (1 << 61) - 1

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int, extra_rounds: int = 12) -> bool:
    """Miller-Rabin; deterministic for n below 3.3e24, randomized above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_MR_BASES)
    if n >= 3_317_044_064_679_887_385_961_981:
        rng = random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(extra_rounds)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class GroupOps(abc.ABC):
    """Abelian group interface used by the evaluators."""

    @property
    @abc.abstractmethod
    def identity(self) -> Element: ...

    @abc.abstractmethod
    def multiply(self, x: Element, y: Element) -> Element: ...

    @abc.abstractmethod
    def invert(self, x: Element) -> Element: ...

    def equals(self, x: Element, y: Element) -> bool:
        return x == y

    def element(self, x: Any) -> Element:
        """Validate and normalize a raw element; override where relevant."""
        return x


@dataclass(frozen=True)
class ModGroup(GroupOps):
    """Multiplicative group of nonzero residues modulo an odd prime."""

    modulus: int

    def __post_init__(self) -> None:
        if self.modulus <= 2 or not is_probable_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not an odd prime")

    @property
    def identity(self) -> int:
        return 1

    def multiply(self, x: int, y: int) -> int:
        return x * y % self.modulus

    def invert(self, x: int) -> int:
        return pow(x, self.modulus - 2, self.modulus)

    def element(self, x: Any) -> int:
        r = int(x) % self.modulus
        if r == 0:
            raise ValueError(f"{x} is not a unit modulo {self.modulus}")
        return r


@dataclass(frozen=True)
class AdditiveGroup(GroupOps):
    """Integers under addition; 'exponentiation' is n * x.

    Useful as an independent oracle: with indicator bases the evaluated
    product recovers each exponent exactly.
    """

    @property
    def identity(self) -> int:
        return 0

    def multiply(self, x: int, y: int) -> int:
        return x + y

    def invert(self, x: int) -> int:
        return -x

    def element(self, x: Any) -> int:
        return int(x)


@dataclass
class CostCounter:
    """Operation tally; monotone while an evaluation runs."""

    squarings: int = 0
    multiplications: int = 0
    inversions: int = 0
    precomp_multiplications: int = 0

    def total_multiplications(self) -> int:
        """Squarings plus general multiplications (precomputation excluded)."""
        return self.squarings + self.multiplications

    def reset(self) -> None:
        self.squarings = 0
        self.multiplications = 0
        self.inversions = 0
        self.precomp_multiplications = 0


class CountingGroup:
    """Wrap a group so squarings and multiplications are tallied apart.

    Squaring is syntactic (the square() call), not a value check, so
    coincidentally equal operands in multiply() never miscount.
    """

    def __init__(self, group: GroupOps, counter: CostCounter) -> None:
        self.group = group
        self.counter = counter

    def square(self, x: Element) -> Element:
        self.counter.squarings += 1
        return self.group.multiply(x, x)

    def multiply(self, x: Element, y: Element) -> Element:
        self.counter.multiplications += 1
        return self.group.multiply(x, y)

    def invert(self, x: Element) -> Element:
        self.counter.inversions += 1
        return self.group.invert(x)


@dataclass(frozen=True)
class PrecompTable:
    """Products a1^d1 * ... * aD^dD for every digit vector in {-1,0,1}^D."""

    group: GroupOps
    bases: tuple[Element, ...]
    entries: dict[tuple[int, ...], Element]
    precomp_multiplications: int
    inversions: int

    @property
    def dimension(self) -> int:
        return len(self.bases)

    def __getitem__(self, column: tuple[int, ...]) -> Element:
        return self.entries[column]


def precompute(bases: Sequence[Element], group: GroupOps) -> PrecompTable:
    """Build the 3^D-entry table (9 entries for a pair of bases).

    Entries with a leading positive digit are composed from the bases and
    their inverses; each remaining entry is the inverse of its negation,
    so the table always satisfies table[-v] = invert(table[v]).  Cost is
    independent of the exponent length: 2 multiplications for D = 2.
    """
    base_list = tuple(group.element(b) for b in bases)
    dim = len(base_list)
    if dim < 1:
        raise ValueError("need at least one base")
    mults = 0
    invs = 0
    inv_bases: dict[int, Element] = {}

    def inverted_base(k: int) -> Element:
        nonlocal invs
        if k not in inv_bases:
            invs += 1
            inv_bases[k] = group.invert(base_list[k])
        return inv_bases[k]

    entries: dict[tuple[int, ...], Element] = {(0,) * dim: group.identity}
    vectors = [v for v in iter_product((-1, 0, 1), repeat=dim) if any(v)]
    positive = [v for v in vectors if next(d for d in v if d) > 0]
    for v in positive:
        acc = None
        for k, d in enumerate(v):
            if not d:
                continue
            factor = base_list[k] if d > 0 else inverted_base(k)
            if acc is None:
                acc = factor
            else:
                acc = group.multiply(acc, factor)
                mults += 1
        entries[v] = acc
    for v in positive:
        neg = tuple(-d for d in v)
        invs += 1
        entries[neg] = group.invert(entries[v])
    return PrecompTable(group, base_list, entries, mults, invs)


def _clamp(column: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(-1, min(1, d)) for d in column)


def evaluate(
    joint: JointExpansion,
    table: PrecompTable,
    group: GroupOps,
) -> tuple[Element, CostCounter]:
    """Left-to-right interleaved evaluation of prod a_k^(row_k value).

    Accepts digits in {-2,...,2}; a column containing a magnitude-2 digit
    is applied as two table multiplications.  Returns the element and the
    exact operation counts (precomputation cost copied from the table).
    """
    if table.group != group:
        raise ValueError("table was precomputed for a different group")
    if table.dimension != joint.dimension:
        raise ValueError("table dimension does not match the joint expansion")
    counter = CostCounter(precomp_multiplications=table.precomp_multiplications)
    counter.inversions = table.inversions
    cg = CountingGroup(group, counter)
    length = len(joint)
    if length == 0:
        return group.identity, counter
    top = joint.column(length - 1)
    if any(top):
        first = _clamp(top)
        acc = table[first]
        rest = tuple(d - u for d, u in zip(top, first))
        if any(rest):
            acc = cg.multiply(acc, table[rest])
    else:
        acc = group.identity
    for j in range(length - 2, -1, -1):
        acc = cg.square(acc)
        col = joint.column(j)
        if any(col):
            first = _clamp(col)
            acc = cg.multiply(acc, table[first])
            rest = tuple(d - u for d, u in zip(col, first))
            if any(rest):
                acc = cg.multiply(acc, table[rest])
    return acc, counter


def square_and_multiply(a: Element, n: int, group: GroupOps) -> tuple[Element, CostCounter]:
    """Plain binary ladder for a single exponent; the baseline cost model."""
    if n < 0:
        raise ValueError("exponent must be non-negative")
    counter = CostCounter()
    if n == 0:
        return group.identity, counter
    cg = CountingGroup(group, counter)
    a = group.element(a)
    acc = a
    for j in range(n.bit_length() - 2, -1, -1):
        acc = cg.square(acc)
        if (n >> j) & 1:
            acc = cg.multiply(acc, a)
    return acc, counter


def multiexp(
    bases: Sequence[Element],
    exponents: Sequence[int],
    scheme: RecodingScheme,
    group: GroupOps,
) -> tuple[Element, CostCounter]:
    """Recode the exponent vector with a scheme and evaluate it."""
    if len(bases) != len(exponents):
        raise ValueError("bases and exponents must have the same dimension")
    joint = recode_joint(exponents, scheme)
    table = precompute(bases, group)
    return evaluate(joint, table, group)
