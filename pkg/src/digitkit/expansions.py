"""Radix-2 signed digit expansions and joint (multi-row) expansions.

Digits are plain integers in {-2, -1, 0, 1, 2}.  Expansions store their
digits least significant first; printing and JSON serialization use the
conventional most-significant-first order.  Equality compares digit
sequences, so a zero-padded word is distinct from its trimmed form even
though both denote the same integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Digit = int

DIGIT_MIN = -2
DIGIT_MAX = 2


def _validated(digits: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(d) for d in digits)
    for d in out:
        if d < DIGIT_MIN or d > DIGIT_MAX:
            raise ValueError(f"digit {d} outside [{DIGIT_MIN}, {DIGIT_MAX}]")
    return out


@dataclass(frozen=True)
class Expansion:
    """A finite signed digit word, least significant digit first."""

    digits: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "digits", _validated(self.digits))

    @classmethod
    def from_msb(cls, digits: Iterable[int]) -> "Expansion":
        """Build from digits given most significant first."""
        return cls(tuple(reversed(tuple(digits))))

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Expansion":
        return cls.from_msb(data)

    def to_json(self) -> list[int]:
        """Digits as a JSON-ready list, most significant first."""
        return [int(d) for d in reversed(self.digits)]

    def msb_digits(self) -> tuple[int, ...]:
        return tuple(reversed(self.digits))

    def value(self) -> int:
        """The integer sum(d_j * 2^j)."""
        return sum(d << j for j, d in enumerate(self.digits))

    def weight(self) -> int:
        """Number of nonzero digits."""
        return sum(1 for d in self.digits if d)

    def trimmed(self) -> "Expansion":
        """Drop most-significant zeros."""
        top = len(self.digits)
        while top and self.digits[top - 1] == 0:
            top -= 1
        return Expansion(self.digits[:top])

    def padded(self, length: int) -> "Expansion":
        """Extend with most-significant zeros to exactly `length` digits."""
        if length < len(self.digits):
            raise ValueError(f"cannot pad {len(self.digits)} digits down to {length}")
        return Expansion(self.digits + (0,) * (length - len(self.digits)))

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        if not self.digits:
            return "ε"
        return "".join(str(d) for d in self.msb_digits())


def binary(n: int, length: int) -> Expansion:
    """Standard binary expansion of n, zero-padded to exactly `length` digits."""
    if length < 0:
        raise ValueError("length must be non-negative")
    if n < 0 or n >= (1 << length):
        raise ValueError(f"{n} is not representable in {length} bits")
    return Expansion(tuple((n >> j) & 1 for j in range(length)))


def ones_complement(e: Expansion) -> Expansion:
    """Flip every digit of a {0,1} word; value becomes 2^len - value - 1."""
    if any(d not in (0, 1) for d in e.digits):
        raise ValueError("ones_complement requires a {0,1} word")
    return Expansion(tuple(1 - d for d in e.digits))


@dataclass(frozen=True)
class JointExpansion:
    """A stack of equal-length expansions, read column by column.

    Column j collects digit j of every row; the joint weight counts
    nonzero columns and weight1 adds max|digit| over each column, the
    number of table multiplications a column costs.
    """

    rows: tuple[Expansion, ...]

    def __post_init__(self) -> None:
        rows = tuple(self.rows)
        if not rows:
            raise ValueError("a joint expansion needs at least one row")
        for r in rows:
            if not isinstance(r, Expansion):
                raise TypeError("rows must be Expansion instances")
        if len({len(r) for r in rows}) > 1:
            raise ValueError("rows must have equal length")
        object.__setattr__(self, "rows", rows)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows[0])

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r.digits[j] for r in self.rows)

    def columns(self) -> Iterator[tuple[int, ...]]:
        """Columns least significant first."""
        for j in range(len(self)):
            yield self.column(j)

    def values(self) -> tuple[int, ...]:
        return tuple(r.value() for r in self.rows)

    def joint_weight(self) -> int:
        """Number of nonzero columns."""
        return sum(1 for col in self.columns() if any(col))

    def weight1(self) -> int:
        """Sum over columns of max|digit|."""
        return sum(max(abs(d) for d in col) for col in self.columns())

    def zeros(self) -> int:
        """Number of all-zero columns; zeros() + joint_weight() == len."""
        return len(self) - self.joint_weight()

    def to_json(self) -> list[list[int]]:
        return [r.to_json() for r in self.rows]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[int]]) -> "JointExpansion":
        return cls(tuple(Expansion.from_json(row) for row in data))

    def __str__(self) -> str:
        return " / ".join(str(r) for r in self.rows)


def stack(rows: Sequence[Expansion]) -> JointExpansion:
    """Stack expansions into a joint expansion, padding to the longest row."""
    if not rows:
        raise ValueError("nothing to stack")
    length = max(len(r) for r in rows)
    return JointExpansion(tuple(r.padded(length) for r in rows))
