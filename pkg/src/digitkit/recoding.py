"""Recoding schemes for one or more exponents.

Covers the non-adjacent form, the simple joint sparse form for pairs, a
complement-aware scheme (wllc) that recodes heavy binary words through
their ones' complement, a digit-set reduction rewriting magnitude-2 digits
away, and brute-force minimal-cost oracles used to check optimality
claims.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .expansions import Expansion, JointExpansion, binary, ones_complement, stack


class RecodingScheme(Enum):
    BINARY = "binary"
    NAF = "naf"
    STACKED_NAF = "stacked-naf"
    SJSF = "sjsf"
    WLLC = "wllc"

    @classmethod
    def from_name(cls, name: str) -> "RecodingScheme":
        return cls(name.strip().lower().replace("_", "-"))


def naf(n: int) -> Expansion:
    """Non-adjacent form of any integer, least significant digit first.

    The unique {-1,0,1} expansion with no two adjacent nonzero digits; it
    has minimal weight among signed binary expansions of n.  At every odd
    step the digit is d = 2 - (n mod 4), which keeps the successor
    divisible by 4.  naf(0) is empty; for n < 0 the top digit is -1.
    """
    digits = []
    while n:
        if n & 1:
            d = 2 - (n & 3)
            n -= d
        else:
            d = 0
        digits.append(d)
        n >>= 1
    return Expansion(tuple(digits))


def is_naf(e: Expansion) -> bool:
    ds = e.digits
    if any(d not in (-1, 0, 1) for d in ds):
        return False
    return all(not (ds[j] and ds[j + 1]) for j in range(len(ds) - 1))


def sjsf(m: int, n: int) -> JointExpansion:
    """Simple joint sparse form of a pair of non-negative integers.

    Built right to left.  When both residuals are odd, each digit follows
    the d = 2 - (r mod 4) rule so both successors become even, forcing the
    next column to zero.  When exactly one residual is odd, its digit sign
    is chosen so the two successors get equal parity.  The result is the
    unique two-row {-1,0,1} word satisfying

    (1) unequal column magnitudes are followed by equal ones, and
    (2) a (+-1, +-1) column is followed by a zero column,

    and it minimizes the number of nonzero columns.
    """
    if m < 0 or n < 0:
        raise ValueError("sjsf requires non-negative inputs")
    r1, r2 = m, n
    d1s: list[int] = []
    d2s: list[int] = []
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
            d1 = 0
            d2 = 1 if ((r2 - 1) >> 1) & 1 == want else -1
        else:
            d1 = d2 = 0
        d1s.append(d1)
        d2s.append(d2)
        r1 = (r1 - d1) >> 1
        r2 = (r2 - d2) >> 1
    return JointExpansion((Expansion(tuple(d1s)), Expansion(tuple(d2s))))


def is_sjsf(joint: JointExpansion) -> bool:
    """Check the two syntactic conditions above; digits past the top count as 0."""
    if joint.dimension != 2:
        raise ValueError("is_sjsf is defined for two rows")
    cols = list(joint.columns())
    if any(abs(d) > 1 for col in cols for d in col):
        return False
    cols.append((0, 0))
    for j in range(len(cols) - 1):
        a1, a2 = abs(cols[j][0]), abs(cols[j][1])
        b1, b2 = abs(cols[j + 1][0]), abs(cols[j + 1][1])
        if a1 != a2 and b1 != b2:
            return False
        if a1 == 1 and a2 == 1 and (b1 or b2):
            return False
    return True


def wllc_recode(n: int, length: int) -> Expansion:
    """Complement-assisted recoding of one component to exactly length+1 digits.

    Words of binary weight above length/2 are recoded through the ones'
    complement: take the NAF of n - (2^length - 1), then add 1 at the top
    digit and subtract 1 at digit 0 to restore the value.  Light words
    just take the NAF of n.  Digits land in {-1,0,1} except digit 0,
    which may reach -2, and the top digit, which stays in {0,1}.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    if n < 0 or n >= (1 << length):
        raise ValueError(f"{n} is not representable in {length} bits")
    word = binary(n, length)
    if 2 * word.weight() > length:
        digits = list(naf(n - ((1 << length) - 1)).padded(length + 1).digits)
        digits[length] += 1
        digits[0] -= 1
    else:
        digits = list(naf(n).padded(length + 1).digits)
    return Expansion(tuple(digits))


def wllc_joint(exponents: Sequence[int]) -> JointExpansion:
    """Recode a vector of non-negative integers, not all zero, componentwise.

    The common length is the bit length of the largest component, so every
    row has exactly length+1 digits.
    """
    exps = tuple(int(n) for n in exponents)
    if not exps:
        raise ValueError("need at least one exponent")
    if any(n < 0 for n in exps):
        raise ValueError("exponents must be non-negative")
    if not any(exps):
        raise ValueError("all-zero exponent vector cannot be recoded")
    length = max(exps).bit_length()
    return JointExpansion(tuple(wllc_recode(n, length) for n in exps))


def reduce_digit2(joint: JointExpansion) -> JointExpansion:
    """Rewrite away all digits of magnitude 2 without raising weight1.

    Repeatedly, at the highest column containing a |2|, split each digit
    as d = 2q + r with r in {0,1} and q in {-1,0,1}, keep r and carry q
    into the next column.  Value is preserved; the result is a {-1,0,1}
    word at most one column longer.
    """
    rows = [list(r.digits) for r in joint.rows]
    length = len(joint)
    j = -1
    for pos in range(length - 1, -1, -1):
        if any(abs(row[pos]) == 2 for row in rows):
            j = pos
            break
    while j >= 0:
        if j + 1 == length:
            for row in rows:
                row.append(0)
            length += 1
        for row in rows:
            d = row[j]
            r = d & 1
            row[j] = r
            row[j + 1] += (d - r) >> 1
        if any(abs(row[j + 1]) == 2 for row in rows):
            j = j + 1
            continue
        while j >= 0 and not any(abs(row[j]) == 2 for row in rows):
            j -= 1
    return JointExpansion(tuple(Expansion(tuple(row)) for row in rows))


def naf_complement_weight_gap(word: Expansion) -> int:
    """weight(naf(v)) - weight(naf(2^len - v - 1)) for a {0,1} word of value v."""
    return naf(word.value()).weight() - naf(ones_complement(word).value()).weight()


def recode_joint(
    exponents: Sequence[int],
    scheme: RecodingScheme,
    length: int | None = None,
) -> JointExpansion:
    """Produce the joint expansion a scheme feeds to the evaluator."""
    exps = tuple(int(n) for n in exponents)
    if not exps:
        raise ValueError("need at least one exponent")
    if any(n < 0 for n in exps):
        raise ValueError("exponents must be non-negative")
    if scheme is RecodingScheme.BINARY:
        width = max(n.bit_length() for n in exps) if length is None else length
        return JointExpansion(tuple(binary(n, width) for n in exps))
    if scheme in (RecodingScheme.NAF, RecodingScheme.STACKED_NAF):
        joint = stack([naf(n) for n in exps])
        if length is not None:
            joint = JointExpansion(tuple(r.padded(length) for r in joint.rows))
        return joint
    if scheme is RecodingScheme.SJSF:
        if len(exps) != 2:
            raise ValueError("sjsf recodes exactly two exponents")
        joint = sjsf(exps[0], exps[1])
        if length is not None:
            joint = JointExpansion(tuple(r.padded(length) for r in joint.rows))
        return joint
    if scheme is RecodingScheme.WLLC:
        if length is None:
            return wllc_joint(exps)
        return JointExpansion(tuple(wllc_recode(n, length) for n in exps))
    raise ValueError(f"unknown scheme {scheme!r}")


# ---------------------------------------------------------------------------
# Brute-force minimal-cost oracles.

ORACLE_BOUND = 1 << 16


@dataclass(frozen=True)
class OracleResult:
    minimal_cost: int
    witness: JointExpansion


def _check_oracle_input(m: int, n: int) -> None:
    if abs(m) > ORACLE_BOUND or abs(n) > ORACLE_BOUND:
        raise ValueError(f"oracle inputs limited to |x| <= {ORACLE_BOUND}")


_ODD = (-1, 1)


def _witness(parent, columns_end) -> JointExpansion:
    cols = []
    node = columns_end
    while parent[node] is not None:
        prev, col = parent[node]
        cols.append(col)
        node = prev
    cols.reverse()
    row1 = Expansion(tuple(c[0] for c in cols))
    row2 = Expansion(tuple(c[1] for c in cols))
    return JointExpansion((row1, row2))


def min_weight1_oracle(m: int, n: int) -> OracleResult:
    """Cheapest two-row {-2..2} expansion of (m, n) under the weight1 cost.

    Shortest path over residual pairs: a column (d1, d2) with d_k matching
    the parity of residual k costs max|d_k| and halves both residuals.
    Residual magnitudes obey |r'| <= (|r| + 2) / 2, so the search stays in
    a logarithmic window around (m, n) and terminates.
    """
    _check_oracle_input(m, n)
    source = (m, n)
    dist = {source: 0}
    parent: dict = {source: None}
    heap = [(0, source)]
    while heap:
        cost, node = heapq.heappop(heap)
        if node == (0, 0):
            return OracleResult(cost, _witness(parent, node))
        if cost > dist.get(node, cost):
            continue
        a, b = node
        c1 = _ODD if a & 1 else (-2, 0, 2)
        c2 = _ODD if b & 1 else (-2, 0, 2)
        for d1 in c1:
            for d2 in c2:
                step = cost + max(abs(d1), abs(d2))
                succ = ((a - d1) >> 1, (b - d2) >> 1)
                if step < dist.get(succ, step + 1):
                    dist[succ] = step
                    parent[succ] = (node, (d1, d2))
                    heapq.heappush(heap, (step, succ))
    raise RuntimeError("unreachable: (0, 0) is always reachable")


def min_joint_weight_oracle(m: int, n: int) -> OracleResult:
    """Fewest nonzero columns over two-row {-1,0,1} expansions of (m, n).

    Same residual graph with digits capped at magnitude 1 (even residuals
    are forced to digit 0) and unit cost per nonzero column, solved by
    0-1 breadth-first search.
    """
    _check_oracle_input(m, n)
    source = (m, n)
    dist = {source: 0}
    parent: dict = {source: None}
    queue = deque([(0, source)])
    while queue:
        cost, node = queue.popleft()
        if node == (0, 0):
            return OracleResult(cost, _witness(parent, node))
        if cost > dist.get(node, cost):
            continue
        a, b = node
        c1 = _ODD if a & 1 else (0,)
        c2 = _ODD if b & 1 else (0,)
        for d1 in c1:
            for d2 in c2:
                edge = 1 if (d1 or d2) else 0
                step = cost + edge
                succ = ((a - d1) >> 1, (b - d2) >> 1)
                if step < dist.get(succ, step + 1):
                    dist[succ] = step
                    parent[succ] = (node, (d1, d2))
                    if edge:
                        queue.append((step, succ))
                    else:
                        queue.appendleft((step, succ))
    raise RuntimeError("unreachable: (0, 0) is always reachable")
