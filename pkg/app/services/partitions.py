"""
Partition / Young-diagram arithmetic shared by every other service.

A partition is stored canonically as a weakly decreasing tuple of positive
integers. Ambient ranks (GL_l, SL_n) are never stored on the value; they are
passed explicitly to the operations that need them.
"""

import operator
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, List, Optional, Tuple

from app.exceptions import InvalidInputError


class Partition(tuple):
    """Weakly decreasing sequence of positive integers; ``Partition()`` is empty."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = list(parts)
        try:
            parts = [operator.index(part) for part in parts]
        except TypeError:
            raise InvalidInputError(f"Invalid partition {parts!r}: parts must be integers") from None
        while parts and parts[-1] == 0:
            parts.pop()
        for i, part in enumerate(parts):
            if part <= 0:
                raise InvalidInputError(f"Invalid partition {parts}: parts must be positive")
            if i and part > parts[i - 1]:
                raise InvalidInputError(f"Invalid partition {parts}: parts must be weakly decreasing")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def height(self) -> int:
        return len(self)

    def row(self, i: int) -> int:
        """Length of row ``i`` (0-based); rows past the height are empty."""
        return self[i] if i < len(self) else 0

    def padded(self, length: int) -> Tuple[int, ...]:
        if length < len(self):
            raise InvalidInputError(f"Cannot pad {self} to {length} rows")
        return tuple(self) + (0,) * (length - len(self))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    def __str__(self) -> str:
        return format_partition(self)


def parse_partition(text: Optional[str]) -> Partition:
    """Parse ``"4,2,1"``; the empty string is the empty partition.

    Rows are never re-sorted: an increasing sequence is rejected.
    """
    if text is None:
        return Partition()
    text = text.strip()
    if not text:
        return Partition()
    try:
        parts = [int(chunk) for chunk in text.split(",")]
    except ValueError:
        raise InvalidInputError(f"Invalid partition '{text}': expected comma-separated integers")
    if any(part <= 0 for part in parts):
        raise InvalidInputError(f"Invalid partition '{text}': parts must be positive")
    return Partition(parts)


def format_partition(p: Iterable[int]) -> str:
    return ",".join(str(part) for part in p)


def conjugate(p: Partition) -> Partition:
    if not p:
        return Partition()
    return Partition(sum(1 for part in p if part > j) for j in range(p[0]))


def pad_columns(p: Partition, n: int, m: int) -> Partition:
    """The λ(m) construction: prepend (m - |p|)/n columns of length n to p."""
    if n < 1 or m < 1:
        raise InvalidInputError(f"pad_columns needs positive n and m, got n={n}, m={m}")
    if p.height >= n:
        raise InvalidInputError(f"pad_columns needs height(p) < n, got {p} with n={n}")
    if m < p.size or (m - p.size) % n:
        raise InvalidInputError(f"pad_columns needs m >= |p| and m = |p| (mod n), got |p|={p.size}, m={m}, n={n}")
    extra = (m - p.size) // n
    return Partition(p.row(i) + extra for i in range(n))


def strip_columns(p: Partition, n: int) -> Partition:
    """Remove every full column of length n (the SL_n reduction of a GL_n weight)."""
    if p.height > n:
        raise InvalidInputError(f"strip_columns needs height(p) <= {n}, got {p}")
    if p.height < n:
        return p
    full = p[n - 1]
    return Partition(part - full for part in p)


def sl_dual(p: Partition, l: int) -> Partition:
    """Highest weight of V_p(SL_l)^*: box complement in the l x p[0] rectangle."""
    if l < 1:
        raise InvalidInputError(f"sl_dual needs a positive rank, got {l}")
    if p.height > l:
        raise InvalidInputError(f"sl_dual needs height(p) <= {l}, got {p}")
    reduced = strip_columns(p, l)
    if not reduced:
        return reduced
    width = reduced[0]
    return Partition(width - reduced.row(l - 1 - i) for i in range(l))


@lru_cache(maxsize=None)
def _partitions(n: int, max_part: int, max_height: int) -> Tuple[Tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    if max_height == 0:
        return ()
    result = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - first, first, max_height - 1):
            result.append((first,) + rest)
    return tuple(result)


def enumerate_partitions(n: int, max_height: Optional[int] = None) -> List[Partition]:
    """All partitions of n with at most ``max_height`` rows, decreasing lex order."""
    if n < 0:
        raise InvalidInputError(f"Cannot enumerate partitions of {n}")
    bound = n if max_height is None else max(0, min(max_height, n))
    return [Partition(parts) for parts in _partitions(n, n, bound)]


def is_rectangle(p: Partition, height: int) -> bool:
    return bool(p) and p.height == height and p[0] == p[-1]


def contains(outer: Partition, inner: Partition) -> bool:
    return inner.height <= outer.height and all(part <= outer[i] for i, part in enumerate(inner))


def add_partitions(a: Partition, b: Partition) -> Partition:
    """Row-wise sum a + b."""
    rows = max(a.height, b.height)
    return Partition(a.row(i) + b.row(i) for i in range(rows))


def hook_lengths(p: Partition) -> List[int]:
    conj = conjugate(p)
    return [p[i] - j + conj[j] - i - 1 for i in range(p.height) for j in range(p[i])]


def syt_count(p: Partition) -> int:
    """Number of standard Young tableaux (hook-length formula)."""
    return factorial(p.size) // prod(hook_lengths(p))


def gl_dimension(p: Partition, rank: int) -> int:
    """dim V_p(GL_rank) by the hook-content formula; 0 when p has too many rows."""
    if p.height > rank:
        return 0
    numerator = prod(rank + j - i for i in range(p.height) for j in range(p[i]))
    return numerator // prod(hook_lengths(p))


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        first = k * (3 * k - 1) // 2
        if first > n:
            break
        sign = 1 if k % 2 else -1
        total += sign * partition_count(n - first)
        second = k * (3 * k + 1) // 2
        if second <= n:
            total += sign * partition_count(n - second)
        k += 1
    return total
