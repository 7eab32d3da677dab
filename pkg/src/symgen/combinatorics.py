"""Partitions, integer vectors, straightening, falling factorials, Stirling numbers.

Partitions are plain tuples of weakly decreasing positive ints; integer
vectors are tuples of arbitrary ints.  Everything here is pure and exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional


def as_partition(parts: Iterable[int]) -> tuple[int, ...]:
    """Validate and canonicalize (strip trailing zeros)."""
    p = list(parts)
    while p and p[-1] == 0:
        p.pop()
    for a, b in zip(p, p[1:]):
        if a < b:
            raise ValueError(f"not weakly decreasing: {tuple(parts)}")
    if p and p[-1] < 0:
        raise ValueError(f"negative part in {tuple(parts)}")
    return tuple(p)


def weight(lam: tuple[int, ...]) -> int:
    return sum(lam)


def is_strict(lam: tuple[int, ...]) -> bool:
    return all(a > b for a, b in zip(lam, lam[1:]))


def conjugate(lam: tuple[int, ...]) -> tuple[int, ...]:
    """Transpose of the Young diagram."""
    if not lam:
        return ()
    out = [0] * lam[0]
    for part in lam:
        for i in range(part):
            out[i] += 1
    return tuple(out)


class StraightenResult:
    """Either zero, or a sign with the normalized partition."""

    __slots__ = ("sign", "partition")

    def __init__(self, sign: int = 0, partition: Optional[tuple[int, ...]] = None):
        self.sign = sign
        self.partition = partition

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __eq__(self, other):
        return (self.sign, self.partition) == (other.sign, other.partition)

    def __repr__(self):
        if self.is_zero:
            return "StraightenResult(zero)"
        return f"StraightenResult({self.sign:+d}, {self.partition})"


_ZERO = StraightenResult()


def straighten(alpha: Iterable[int]) -> StraightenResult:
    """Sign-tracked normalization of an integer vector index.

    Determinant-faithful rule: with c_i = alpha_i - i, the result is zero
    iff the c_i repeat or sorting them (descending) yields a vector with a
    negative entry after adding i back; otherwise the sign is the parity
    of the sorting permutation.  Equivalent to iterating the row swap
    s_(..., a, b, ...) = -s_(..., b-1, a+1, ...).
    """
    a = tuple(alpha)
    c = [a[i] - (i + 1) for i in range(len(a))]
    if len(set(c)) != len(c):
        return _ZERO
    order = sorted(range(len(c)), key=lambda i: -c[i])
    sign = _perm_sign(order)
    lam = [c[order[i]] + (i + 1) for i in range(len(c))]
    while lam and lam[-1] == 0:
        lam.pop()
    if lam and lam[-1] < 0:
        return _ZERO
    return StraightenResult(sign, tuple(lam))


def _perm_sign(perm: list[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def falling_factorial(u: Fraction | int, k: int) -> Fraction:
    """(u|k): u(u-1)...(u-k+1) for k>0, 1 for k=0, 1/((u+1)...(u+|k|)) for k<0."""
    u = Fraction(u)
    if k == 0:
        return Fraction(1)
    if k > 0:
        acc = Fraction(1)
        for j in range(k):
            acc *= u - j
        return acc
    acc = Fraction(1)
    for j in range(1, -k + 1):
        term = u + j
        if term == 0:
            raise ZeroDivisionError(f"(u|{k}) has a pole at u={u}")
        acc *= term
    return 1 / acc


@lru_cache(maxsize=None)
def stirling2(m: int, k: int) -> int:
    """Stirling numbers of the second kind; 0 when k > m."""
    if m < 0 or k < 0:
        raise ValueError("nonnegative arguments required")
    if k > m:
        return 0
    if m == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    return k * stirling2(m - 1, k) + stirling2(m - 1, k - 1)


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    if k < 0:
        return 0
    acc = 1
    for j in range(k):
        acc = acc * (n - j) // (j + 1)
    return acc


def partitions_upto(max_weight: int, max_length: Optional[int] = None,
                    max_part: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """All partitions of weight <= max_weight, ordered by weight."""
    for n in range(max_weight + 1):
        yield from partitions_of(n, max_length=max_length, max_part=max_part)


def partitions_of(n: int, max_length: Optional[int] = None,
                  max_part: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    ml = n if max_length is None else max_length
    mp = n if max_part is None else min(max_part, n)

    def rec(rem, largest, length):
        if rem == 0:
            yield ()
            return
        if length == 0:
            return
        for first in range(min(largest, rem), 0, -1):
            for rest in rec(rem - first, first, length - 1):
                yield (first,) + rest

    yield from rec(n, mp, ml)


def strict_partitions_upto(max_weight: int) -> Iterator[tuple[int, ...]]:
    for lam in partitions_upto(max_weight):
        if is_strict(lam):
            yield lam


def parse_int_vector(text: str) -> tuple[int, ...]:
    """Comma-separated integers; empty string is the empty vector."""
    text = text.strip()
    if not text:
        return ()
    return tuple(int(tok) for tok in text.split(","))


def format_int_vector(vec: tuple[int, ...]) -> str:
    return ",".join(str(v) for v in vec)
