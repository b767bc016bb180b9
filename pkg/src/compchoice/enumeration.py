"""Exhaustive and randomized generators for small instances.

Two independent enumerations of the complementary choice functions exist:
filtering every contracting table through the analyzer, and walking every
union-closed family containing the empty set (the two are in bijection via
open sets / interior). Running both and comparing counts is the keystone
cross-check of the verification harness: a bug in either direction breaks
the agreement.
"""

from __future__ import annotations

import random
from itertools import product
from typing import Iterator

from .choicefn import ChoiceFunction
from .core import GroundSet, Preorder, SetFamily
from .pretop import interior_cf

# Bounds chosen so the double enumeration stays a desk-scale computation:
# contracting tables number 2^(n * 2^(n-1)), union-closed families grow like
# the Moore-family counts.
MAX_FILTER_N = 3
MAX_FAMILY_N = 5


def iter_union_closed_mask_sets(n: int) -> Iterator[tuple[int, ...]]:
    """All union-closed mask sets over n elements containing the empty mask.

    Masks are decided in ascending numeric order; since a union is
    numerically at least as large as both operands, an obligation created
    by two chosen masks always lies ahead of them, tracked in a pending
    counter and forcing inclusion when reached.
    """
    if n < 0:
        raise ValueError("ground-set size must be nonnegative")
    if n > MAX_FAMILY_N:
        raise ValueError(
            f"family enumeration supports n <= {MAX_FAMILY_N}, got {n}"
        )
    full = 1 << n
    chosen = [0]
    pending = [0] * (full + 1)

    def rec(m: int) -> Iterator[tuple[int, ...]]:
        if m == full:
            yield tuple(chosen)
            return
        if pending[m] == 0:
            yield from rec(m + 1)
        added = []
        for c in chosen:
            u = m | c
            if u > m:
                pending[u] += 1
                added.append(u)
        chosen.append(m)
        yield from rec(m + 1)
        chosen.pop()
        for u in added:
            pending[u] -= 1

    yield from rec(1)


def count_union_closed_families(n: int) -> int:
    """Family count without materializing the families."""
    if n < 0:
        raise ValueError("ground-set size must be nonnegative")
    if n > MAX_FAMILY_N:
        raise ValueError(
            f"family enumeration supports n <= {MAX_FAMILY_N}, got {n}"
        )
    full = 1 << n
    chosen = [0]
    pending = [0] * (full + 1)

    def rec(m: int) -> int:
        if m == full:
            return 1
        total = 0
        if pending[m] == 0:
            total += rec(m + 1)
        added = []
        for c in chosen:
            u = m | c
            if u > m:
                pending[u] += 1
                added.append(u)
        chosen.append(m)
        total += rec(m + 1)
        chosen.pop()
        for u in added:
            pending[u] -= 1
        return total

    return rec(1)


def iter_union_closed_families(ground: GroundSet) -> Iterator[SetFamily]:
    for masks in iter_union_closed_mask_sets(ground.n):
        yield SetFamily(ground, frozenset(masks))


def iter_contracting_tables(ground: GroundSet) -> Iterator[ChoiceFunction]:
    """Every contracting table over the ground set, in deterministic order."""
    if ground.n > MAX_FILTER_N:
        raise ValueError(
            f"contracting-table enumeration supports n <= {MAX_FILTER_N}, "
            f"got {ground.n}"
        )
    options = [
        [s for s in range(m + 1) if s & m == s] for m in range(ground.n_masks)
    ]
    for table in product(*options):
        yield ChoiceFunction(ground, table)


def iter_complementary_by_filter(ground: GroundSet) -> Iterator[ChoiceFunction]:
    """Route one: filter every contracting table through the analyzer."""
    for f in iter_contracting_tables(ground):
        if f.analysis.complementary:
            yield f


def iter_complementary_by_families(ground: GroundSet) -> Iterator[ChoiceFunction]:
    """Route two: the interior operator of every union-closed family."""
    for fam in iter_union_closed_families(ground):
        yield interior_cf(fam)


def dual_enumeration_counts(n: int) -> tuple[int | None, int]:
    """Count complementary choice functions along both routes.

    The filter route is skipped (None) beyond its feasible size; whenever
    both run the counts must be asserted equal by the caller.
    """
    ground = GroundSet(tuple(f"x{i}" for i in range(n)))
    family_count = count_union_closed_families(n)
    filter_count = None
    if n <= MAX_FILTER_N:
        filter_count = sum(1 for _ in iter_complementary_by_filter(ground))
    return filter_count, family_count


def iter_preorders(carrier: tuple[str, ...]) -> Iterator[Preorder]:
    """Every preorder on the carrier, enumerated as reflexive down-mask rows
    filtered by transitivity. Deterministic order."""
    n = len(carrier)
    if n > 4:
        raise ValueError(f"preorder enumeration supports n <= 4, got {n}")
    row_options = []
    for i in range(n):
        rows = []
        for m in range(1 << n):
            if m >> i & 1:
                rows.append(m)
        row_options.append(rows)
    for masks in product(*row_options):
        ok = True
        for i in range(n):
            probe = masks[i]
            while probe:
                j = (probe & -probe).bit_length() - 1
                probe &= probe - 1
                if masks[j] & ~masks[i]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield Preorder(carrier, masks)


def random_family(
    ground: GroundSet, rng: random.Random, max_members: int | None = None
) -> SetFamily:
    """A random base: a handful of random subsets (not necessarily closed)."""
    if max_members is None:
        max_members = ground.n + 1
    count = rng.randint(0, max_members)
    masks = frozenset(rng.randrange(ground.n_masks) for _ in range(count))
    return SetFamily(ground, masks)


def random_complementary_cf(ground: GroundSet, rng: random.Random) -> ChoiceFunction:
    """Interior operator of a random base: a random complementary function."""
    return interior_cf(random_family(ground, rng))
