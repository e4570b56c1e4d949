"""Integer index <-> fixed-depth word codec, and tree node counts.

Depth-d words over m symbols are numbered 0..m^d-1.  Digit i of index n,
counted from the right starting at i=1, is ((n // m^(i-1)) mod m) + 1; short
expansions are padded with digit 1 on the left.  Decoding is repeated
divmod, so a word is recovered from its index alone with no stored
dictionary, at constant working-set size per call.
"""

from __future__ import annotations

from dataclasses import dataclass

Word = tuple[int, ...]

INT64_MAX = 2**63 - 1


def max_depth(m: int) -> int:
    """Largest depth d with m**d representable in a signed 64-bit index."""
    if m < 2:
        raise ValueError(f"alphabet size must be at least 2, got {m}")
    d = 0
    span = 1
    while span <= INT64_MAX // m:
        span *= m
        d += 1
    return d


def _check_depth(m: int, d: int) -> None:
    if d < 1:
        raise ValueError(f"depth must be at least 1, got {d}")
    limit = max_depth(m)
    if d > limit:
        raise OverflowError(f"depth {d} exceeds the maximum {limit} for m={m} (indexes must fit in int64)")


def decode_index(n: int, m: int, d: int) -> Word:
    """Return the depth-d word of tree node n, leftmost digit first."""
    _check_depth(m, d)
    if not 0 <= n < m**d:
        raise ValueError(f"index {n} outside 0..{m**d - 1} for m={m}, depth={d}")
    digits = [0] * d
    q = n
    for i in range(d - 1, -1, -1):
        digits[i] = q % m + 1
        q //= m
    return tuple(digits)


def encode_word(word, m: int) -> int:
    """Inverse of decode_index for a word of the same depth."""
    if m < 2:
        raise ValueError(f"alphabet size must be at least 2, got {m}")
    _check_depth(m, len(word))
    n = 0
    for digit in word:
        if not 1 <= digit <= m:
            raise ValueError(f"digit {digit} outside 1..{m}")
        n = n * m + (digit - 1)
    return n


@dataclass(frozen=True)
class NodeCount:
    """Exact node counts of the depth-D word tree."""

    leaves: int
    total: int


def node_counts(m: int, depth: int) -> NodeCount:
    """leaves = m**depth, total = sum of m**d for d = 1..depth, both exact.

    Counts that do not fit in int64 raise OverflowError naming the largest
    supported depth for this m, since the renderer cannot index past it.
    """
    _check_depth(m, depth)
    leaves = m**depth
    total = (m**(depth + 1) - m) // (m - 1)
    if total > INT64_MAX:
        limit = depth
        while (m**(limit + 1) - m) // (m - 1) > INT64_MAX:
            limit -= 1
        raise OverflowError(
            f"node total for m={m}, depth={depth} exceeds int64; largest supported depth is {limit}"
        )
    return NodeCount(leaves=leaves, total=total)
