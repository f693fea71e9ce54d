"""Integer partition enumeration and counting."""

from functools import lru_cache


def partitions(n, max_part=None):
    """All weakly decreasing partitions of n, as tuples."""
    if n < 0:
        return
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def distinct_partitions(n, max_part=None):
    """All strictly decreasing partitions of n, as tuples."""
    if n < 0:
        return
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in distinct_partitions(n - first, first - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def count_partitions_exact_parts(n, k):
    """p_k(n): partitions of n into exactly k parts."""
    if n == 0 and k == 0:
        return 1
    if n <= 0 or k <= 0:
        return 0
    # standard recurrence: smallest part is 1, or subtract 1 from every part
    return (count_partitions_exact_parts(n - 1, k - 1)
            + count_partitions_exact_parts(n - k, k))


@lru_cache(maxsize=None)
def count_distinct_exact_parts(n, k):
    """p'_k(n): partitions of n into exactly k distinct parts."""
    # remove a staircase 0,1,...,k-1 to land on ordinary partitions
    m = n - k * (k - 1) // 2
    if m < 0:
        return 0
    return count_partitions_exact_parts(m, k)
