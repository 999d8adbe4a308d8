"""Kreweras complementation and the Simion-Ullman involution.

Drawing a noncrossing partition on a circle (labels 1..n clockwise) and
inserting a primed point i' immediately clockwise of each i, the Kreweras
complement k(pi) is the coarsest noncrossing partition of the primed points
whose union with pi is still noncrossing.  It satisfies
|pi| + |k(pi)| = n + 1, and applying it twice rotates the picture one
position counterclockwise, so k has order dividing 2n.

Two implementations are kept deliberately: a brute-force geometric oracle
that searches all candidate complements on the interleaved 2n points, and a
fast O(n^2) toggle-word route.  The oracle also pins down "coarsest" as the
unique candidate with the fewest blocks and fails hard if that minimizer is
ever not unique.

The relabeling i -> i+1 (mod n) of k(pi) — written k(pi)' — coincides with
the inverse complement and with the row toggle word applied to pi.  The
Simion-Ullman involution is eta . k, where eta reverses labels while fixing
n.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable

from .ncpartition import (
    NCPartition,
    arc_index,
    conflict_masks,
    enumerate_masks,
)
from .words import apply_word, kreweras_word


def relabel(partition: NCPartition, mapping: Callable[[int], int]) -> NCPartition:
    """Apply a bijective relabeling of [n] to a partition, block by block.

    Arcs are recomputed from the relabeled blocks, so relabelings that wrap
    around the circle (rotations, reflections) come out right.  Raises if
    the relabeled partition is no longer noncrossing.
    """
    n = partition.n
    image = sorted(mapping(v) for v in range(1, n + 1))
    if image != list(range(1, n + 1)):
        raise ValueError("mapping is not a bijection of 1..n")
    blocks = [tuple(sorted(mapping(v) for v in block)) for block in partition.blocks()]
    return NCPartition.from_blocks(blocks, n)


def rotate(partition: NCPartition, steps: int = 1) -> NCPartition:
    """Rotate the circular picture counterclockwise by ``steps`` positions.

    Relabels i -> i - steps (mod n, 1-based); rotating by n is the identity.
    """
    n = partition.n
    if n == 0:
        return partition
    return relabel(partition, lambda i: (i - 1 - steps) % n + 1)


def eta(partition: NCPartition) -> NCPartition:
    """The label reversal i -> n - i (fixing n); an involution."""
    n = partition.n
    if n <= 1:
        return partition
    return relabel(partition, lambda i: n if i == n else n - i)


# --- geometric oracle -------------------------------------------------------
#
# Interleave [n] and its primed copy into [2n].  With primes clockwise of
# their labels the order is 1, 1', 2, 2', ..., so i -> 2i-1 and i' -> 2i;
# with primes counterclockwise it is 1', 1, 2', 2, ..., so i -> 2i and
# i' -> 2i-1.  A candidate complement is valid iff the union of the two
# mapped arc diagrams is noncrossing on [2n], and since both sides are
# internally valid only cross-conflicts need checking.


def _map_arcs_mask(n: int, mask: int, position: Callable[[int], int]) -> int:
    out = 0
    rest = mask
    from .ncpartition import index_arc

    while rest:
        low = rest & -rest
        i, j = index_arc(n, low.bit_length() - 1)
        out |= 1 << arc_index(2 * n, (position(i), position(j)))
        rest ^= low
    return out


@lru_cache(maxsize=8)
def _complement_table(n: int, primes_clockwise: bool) -> tuple[tuple[int, int], ...]:
    # For every candidate complement sigma, precompute the set of arc slots
    # of [2n] that conflict with sigma's mapped arcs.
    table2n = conflict_masks(2 * n)
    if primes_clockwise:
        prime_pos = lambda i: 2 * i
    else:
        prime_pos = lambda i: 2 * i - 1
    entries = []
    for sigma in enumerate_masks(n):
        mapped = _map_arcs_mask(n, sigma, prime_pos)
        forbidden = 0
        rest = mapped
        while rest:
            low = rest & -rest
            forbidden |= table2n[low.bit_length() - 1]
            rest ^= low
        entries.append((sigma, forbidden))
    return tuple(entries)


def _coarsest_complement(partition: NCPartition, primes_clockwise: bool) -> NCPartition:
    n = partition.n
    if n <= 1:
        return partition
    if primes_clockwise:
        plain_pos = lambda i: 2 * i - 1
    else:
        plain_pos = lambda i: 2 * i
    mapped = _map_arcs_mask(n, partition.mask, plain_pos)
    best_mask = -1
    best_arcs = -1
    ties = 0
    for sigma, forbidden in _complement_table(n, primes_clockwise):
        if mapped & forbidden:
            continue
        arcs = sigma.bit_count()
        if arcs > best_arcs:
            best_arcs, best_mask, ties = arcs, sigma, 1
        elif arcs == best_arcs:
            ties += 1
    if best_mask < 0:  # pragma: no cover - the empty complement always works
        raise RuntimeError("no valid complement found")
    if ties != 1:
        raise RuntimeError(
            f"coarsest complement is not unique for {partition!r} ({ties} ties)"
        )
    return NCPartition._raw(n, best_mask)


def kreweras_oracle(partition: NCPartition) -> NCPartition:
    """Brute-force Kreweras complement (primes clockwise of their labels)."""
    return _coarsest_complement(partition, primes_clockwise=True)


def kreweras_prime_oracle(partition: NCPartition) -> NCPartition:
    """Brute-force relabeled complement, built with primes counterclockwise."""
    return _coarsest_complement(partition, primes_clockwise=False)


# --- fast route -------------------------------------------------------------


def kreweras(partition: NCPartition) -> NCPartition:
    """Kreweras complement via its toggle word; |pi| + |k(pi)| = n + 1."""
    n = partition.n
    if n <= 1:
        return partition
    return apply_word(kreweras_word(n), partition)


def kreweras_prime(partition: NCPartition) -> NCPartition:
    """The complement relabeled by i -> i+1 (mod n); equals the inverse complement."""
    n = partition.n
    if n <= 1:
        return partition
    return relabel(kreweras(partition), lambda i: i % n + 1)


def kreweras_inverse(partition: NCPartition) -> NCPartition:
    return kreweras_prime(partition)


def kreweras_power(partition: NCPartition, power: int) -> NCPartition:
    """Iterate the complement ``power`` times (negative powers invert)."""
    out = partition
    if power >= 0:
        for _ in range(power):
            out = kreweras(out)
    else:
        for _ in range(-power):
            out = kreweras_prime(out)
    return out


def simion_ullman(partition: NCPartition) -> NCPartition:
    """The Simion-Ullman involution eta . k; |pi| + |lambda(pi)| = n + 1."""
    return eta(kreweras(partition))


def circular_text(partition: NCPartition) -> str:
    """Render the circular view: each label with its block id, clockwise."""
    block_of = {}
    for idx, block in enumerate(partition.blocks()):
        for v in block:
            block_of[v] = idx
    cells = " ".join(f"{v}[B{block_of[v]}]" for v in range(1, partition.n + 1))
    return f"clockwise: {cells}" if cells else "clockwise: (empty)"


def circular_dot(partition: NCPartition) -> str:
    """DOT rendering of the circular view (labels on a circle, arcs as edges)."""
    lines = ["graph partition {", "  layout=circo;"]
    lines += [f"  {v};" for v in range(1, partition.n + 1)]
    lines += [f"  {i} -- {j};" for i, j in partition.arcs()]
    lines.append("}")
    return "\n".join(lines)
