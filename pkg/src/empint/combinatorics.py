"""Set-partition combinatorics, exact expectation/moment oracles, and the
constant tables used by the moment recursion.

Everything here is exact.  The oracles enumerate occupation-count vectors
with multinomial probabilities, which agrees with enumerating ordered
samples because the statistics only read counts; tests cross-check the two
enumerations on small cases.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import EnumerationTooLarge
from .integrals import eval_integral, eval_ustat
from .kernels import Kernel
from .space import enumerate_counts, enumerate_samples, sample_from_counts

__all__ = [
    "set_partitions", "stirling2", "bell_number", "partition_count_bound",
    "expectation_coefficient", "expectation_coefficient_scaled",
    "expected_integral_oracle", "moment_oracle", "ustat_moment_oracle",
    "damping_factor", "cumulative_constant", "recursion_weight",
    "check_moment_recursion", "profile_weight", "profile_maximizer",
    "MomentConstantTable", "moment_constant_table",
]

PARTITION_CAP = 12


def set_partitions(k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All partitions of {1..k} as tuples of blocks; blocks are ascending
    and ordered by smallest element (restricted-growth enumeration)."""
    if k > PARTITION_CAP:
        raise EnumerationTooLarge(f"Bell({k}) partitions exceed the cap (k <= {PARTITION_CAP})")
    if k == 0:
        yield ()
        return

    def grow(prefix: list[int], n_blocks: int):
        if len(prefix) == k:
            blocks: list[list[int]] = [[] for _ in range(n_blocks)]
            for i, b in enumerate(prefix):
                blocks[b].append(i + 1)
            yield tuple(tuple(b) for b in blocks)
            return
        for b in range(n_blocks + 1):
            yield from grow(prefix + [b], max(n_blocks, b + 1))

    yield from grow([], 0)


@lru_cache(maxsize=None)
def stirling2(k: int, s: int) -> int:
    """Partitions of a k-set into exactly s blocks, by the recurrence
    S(k, s) = s S(k-1, s) + S(k-1, s-1)."""
    if k == s == 0:
        return 1
    if k == 0 or s == 0 or s > k:
        return 0
    return s * stirling2(k - 1, s) + stirling2(k - 1, s - 1)


def bell_number(k: int) -> int:
    return sum(stirling2(k, s) for s in range(k + 1))


def partition_count_bound(k: int, s: int) -> int:
    """2^k s^{k-s}, an elementary upper bound for stirling2(k, s): choose
    which elements are smallest in their block, then place the rest."""
    return 2**k * s ** (k - s)


# -- expectation of the centered integral -----------------------------------

def _partition_profiles(k: int) -> Iterator[tuple[int, tuple[int, ...]]]:
    """(number of set partitions with these block sizes, sizes) for every
    multiset of block sizes >= 2 summing to k.  Sizes with a size-1 block
    are skipped because their weight vanishes below."""

    def compositions(remaining: int, minimum: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(minimum, remaining + 1):
            for rest in compositions(remaining - first, first):
                yield (first,) + rest

    for sizes in compositions(k, 2):
        count = math.factorial(k)
        for r in sizes:
            count //= math.factorial(r)
        for _, group in itertools.groupby(sizes):
            count //= math.factorial(len(list(group)))
        yield count, sizes


def expectation_coefficient(n: int, k: int) -> Fraction:
    """The exact rational r(n, k) with E[q] = r(n, k) * integral of f over
    the k-fold product measure, q the descaled centered integral.

    The sum runs over set partitions of the k coordinates: a partition with
    blocks D contributes (n falling |pi|) * prod over D of (-1)^{|D|-1}(|D|-1),
    all divided by k! n^k.  Partitions with singleton blocks vanish.
    """
    if k == 0:
        return Fraction(1)
    total = 0
    for count, sizes in _partition_profiles(k):
        s = len(sizes)
        falling = 1
        for i in range(s):
            falling *= n - i
        weight = 1
        for r in sizes:
            weight *= (-1) ** (r - 1) * (r - 1)
        total += count * falling * weight
    return Fraction(total, math.factorial(k) * n**k)


def expectation_coefficient_bruteforce(n: int, k: int) -> Fraction:
    """Same sum by explicit set-partition enumeration (for cross-checks)."""
    total = 0
    for blocks in set_partitions(k):
        s = len(blocks)
        falling = 1
        for i in range(s):
            falling *= n - i
        weight = 1
        for block in blocks:
            weight *= (-1) ** (len(block) - 1) * (len(block) - 1)
        total += falling * weight
    return Fraction(total, math.factorial(k) * n**k)


def expectation_coefficient_scaled(n: int, k: int) -> float:
    """The coefficient on the statistic's own scale: E[statistic] equals
    this times the k-fold integral of f.  Equals r(n, k) * n^{k/2}."""
    return float(expectation_coefficient(n, k)) * float(n) ** (k / 2)


# -- exact oracles by enumeration -------------------------------------------

def expected_integral_oracle(f: Kernel, n: int, method: str = "counts") -> Fraction:
    """E[q] for a size-n sample, by exhaustive enumeration."""
    if method == "counts":
        pairs = ((sample_from_counts(f.space, c), w) for c, w in enumerate_counts(f.space, n))
    elif method == "samples":
        pairs = enumerate_samples(f.space, n)
    else:
        raise ValueError(f"unknown method {method!r}")
    total = Fraction(0)
    for sample, w in pairs:
        total += w * eval_integral(f, sample).coeff
    return total


def moment_oracle(f: Kernel, n: int, order: int) -> Fraction:
    """E[q^order] by exhaustive enumeration over occupation counts."""
    if order < 1:
        raise ValueError("order must be a positive integer")
    total = Fraction(0)
    for counts, w in enumerate_counts(f.space, n):
        q = eval_integral(f, sample_from_counts(f.space, counts)).coeff
        total += w * q**order
    return total


def ustat_moment_oracle(f: Kernel, n: int, order: int) -> Fraction:
    """E[(U-statistic)^order] by exhaustive enumeration."""
    if order < 1:
        raise ValueError("order must be a positive integer")
    total = Fraction(0)
    for counts, w in enumerate_counts(f.space, n):
        u = eval_ustat(f, sample_from_counts(f.space, counts))
        total += w * u**order
    return total


# -- constants of the moment recursion --------------------------------------

def damping_factor(m: int) -> Fraction:
    """D(m) = 1 + 2^{4-m}: the per-level inflation of the recursion, large
    at the first levels (D(0) = 17) and tending to one."""
    if m >= 4:
        return 1 + Fraction(1, 2 ** (m - 4))
    return Fraction(1 + 2 ** (4 - m))


def cumulative_constant(k: int, m: int) -> Fraction:
    """The level-m constant: (product of D(0..m-1))^k, with level 0 equal
    to one."""
    prod = Fraction(1)
    for p in range(m):
        prod *= damping_factor(p)
    return prod**k


def _int_power(base: int, exponent: int) -> Fraction:
    """base^exponent for integer exponent of either sign, with 0^0 = 1."""
    if exponent == 0:
        return Fraction(1)
    if exponent > 0:
        return Fraction(base**exponent)
    return Fraction(1, base ** (-exponent))


def recursion_weight(l: int, p: int, k: int, m: int) -> Fraction:
    """The exact weight in front of the lower-level constant when a product
    of two level-m moments is expanded:

        A(l, p, k, m) = 2^{2l(4-m)} (2k)^{2k-l+p} (2k-l-p)^{3l-p-2k} / (2l)^{2l}

    with the 0^0 = 1 convention for l = 0 and for 2k - l - p = 0.
    """
    if not 0 <= p <= l <= k:
        raise ValueError(f"need 0 <= p <= l <= k, got l={l}, p={p}, k={k}")
    out = _int_power(2, 2 * l * (4 - m))
    out *= _int_power(2 * k, 2 * k - l + p)
    out *= _int_power(2 * k - l - p, 3 * l - p - 2 * k)
    out /= _int_power(2 * l, 2 * l)
    return out


def check_moment_recursion(k_max: int, m_max: int) -> list[tuple[int, int, int, int]]:
    """Verify, in exact arithmetic, that the level constants absorb the
    expansion weights:

        cumulative(k, m+1)^2 >= A(l, p, k, m) * cumulative(2k - l - p, m)

    for all 1 <= k <= k_max, 0 <= m <= m_max, 0 <= p <= l <= k.  Returns
    the list of violating (k, m, l, p); empty means the recursion closes.
    """
    bad = []
    for k in range(1, k_max + 1):
        for m in range(m_max + 1):
            lhs = cumulative_constant(k, m + 1) ** 2
            for l in range(k + 1):
                for p in range(l + 1):
                    rhs = recursion_weight(l, p, k, m) * cumulative_constant(2 * k - l - p, m)
                    if lhs < rhs:
                        bad.append((k, m, l, p))
    return bad


def profile_weight(k: int, m: int, v: float) -> float:
    """The continuous envelope of the expansion weights along the line
    l = p = v: 2^{2(4-m)v} (2k)^{2k} / ((2k-2v)^{2k-2v} (2v)^{2v}) for
    0 <= v <= k, with x^x -> 1 as x -> 0."""

    def xx(x: float) -> float:
        return 1.0 if x == 0 else x**x

    return 2.0 ** (2 * (4 - m) * v) * float(2 * k) ** (2 * k) / (xx(2 * k - 2 * v) * xx(2 * v))


def profile_maximizer(k: int, m: int) -> float:
    """Where profile_weight peaks: v = k / (2^{m-4} + 1); the peak value is
    damping_factor(m)^{2k}, which is what check_moment_recursion exploits."""
    return k / (2.0 ** (m - 4) + 1.0)


@dataclass(frozen=True)
class MomentConstantTable:
    """Rows (k, m, D(m), cumulative(k, m)) for reporting and CSV export."""

    k_max: int
    m_max: int
    rows: tuple[tuple[int, int, Fraction, Fraction], ...]


def moment_constant_table(k_max: int, m_max: int) -> MomentConstantTable:
    rows = []
    for k in range(1, k_max + 1):
        for m in range(m_max + 1):
            rows.append((k, m, damping_factor(m), cumulative_constant(k, m)))
    return MomentConstantTable(k_max, m_max, tuple(rows))
