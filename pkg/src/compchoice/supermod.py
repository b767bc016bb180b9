"""Set functions on the powerset: modularity classification and choice induction.

Values are exact rationals throughout; induced choices hinge on ties, so
floating point is rejected at construction. Classification runs two
independent sweeps (the definitional pairwise inequality and the local
two-element exchange criterion, equivalent on finite powersets) and
requires them to agree, guarding an inequality-heavy module against sign
errors.

A supermodular function induces a complementary choice function by sending
each menu to the least maximizer of the function over the menu's subsets;
conversely every complementary choice function arises from the supermodular
function counting open sets inside a menu. Subtracting a small multiple of
cardinality sharpens the maximizer to a unique one without losing
supermodularity.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .choicefn import ChoiceFunction
from .core import GroundSet, SetFamily, Subset, SubsetWeakOrder, ensure_tractable
from .errors import (
    GroundSetMismatchError,
    InternalInvariantError,
    NoUniqueMinimizerError,
    PreconditionError,
)
from .pretop import _require_complementary, open_sets

_NUMPY_MIN_MASKS = 256
_INT64_GUARD = 1 << 61


def _as_fraction(v) -> Fraction:
    if isinstance(v, float):
        raise ValueError(
            "set-function values must be exact rationals; floats are rejected "
            "because induced choices are tie-driven"
        )
    return Fraction(v)


@dataclass(frozen=True)
class SetFunction:
    """An exact-rational-valued function on the full powerset."""

    ground: GroundSet
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        ensure_tractable(self.ground.n, what="set-function table")
        values = tuple(_as_fraction(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if len(values) != self.ground.n_masks:
            raise ValueError("one value per subset required")

    @classmethod
    def tabulate(cls, ground: GroundSet, rule: Callable[[int], Fraction | int]) -> SetFunction:
        ensure_tractable(ground.n, what="set-function table")
        return cls(ground, tuple(_as_fraction(rule(m)) for m in range(ground.n_masks)))

    @classmethod
    def from_subset_values(
        cls,
        ground: GroundSet,
        assignments: Mapping[tuple[str, ...], Fraction | int] | Iterable[tuple[Iterable[str], Fraction | int]],
        default: Fraction | int | None = None,
    ) -> SetFunction:
        """Build from (names, value) assignments; ``default`` fills any
        unassigned subsets, and None makes full coverage mandatory."""
        items = assignments.items() if isinstance(assignments, Mapping) else assignments
        values: list[Fraction | None] = [None] * ground.n_masks
        for names, v in items:
            mask = ground.subset(names).bits
            if values[mask] is not None:
                raise ValueError(f"duplicate assignment for {Subset(ground, mask)!r}")
            values[mask] = _as_fraction(v)
        for m, v in enumerate(values):
            if v is None:
                if default is None:
                    raise ValueError(f"no value assigned for {Subset(ground, m)!r}")
                values[m] = _as_fraction(default)
        return cls(ground, tuple(values))

    def value(self, s: Subset | int) -> Fraction:
        mask = s.bits if isinstance(s, Subset) else s
        return self.values[mask]

    def __add__(self, other: SetFunction) -> SetFunction:
        if other.ground != self.ground:
            raise GroundSetMismatchError("sum across different ground sets")
        return SetFunction(self.ground, tuple(a + b for a, b in zip(self.values, other.values)))

    def scale(self, c: Fraction | int) -> SetFunction:
        c = _as_fraction(c)
        return SetFunction(self.ground, tuple(c * v for v in self.values))

    def is_monotone(self) -> bool:
        """Nondecreasing under inclusion (checked one added element at a time)."""
        n = self.ground.n
        for m in range(self.ground.n_masks):
            for i in range(n):
                if not m >> i & 1 and self.values[m] > self.values[m | 1 << i]:
                    return False
        return True

    @cached_property
    def _scaled_ints(self) -> tuple[int, ...]:
        """Values on a common denominator, as exact integers."""
        denom = 1
        for v in self.values:
            denom = denom * v.denominator // math.gcd(denom, v.denominator)
        return tuple(int(v * denom) for v in self.values)

    def __repr__(self) -> str:
        return f"SetFunction(n={self.ground.n})"


@dataclass(frozen=True)
class ModularityClass:
    """Where a function sits relative to the modularity inequalities.

    ``kind`` is one of supermodular / submodular / modular / neither; a
    failed side carries the first violating pair in lexicographic order.
    """

    kind: str
    not_supermodular: tuple | None
    not_submodular: tuple | None

    @property
    def is_supermodular(self) -> bool:
        return self.not_supermodular is None

    @property
    def is_submodular(self) -> bool:
        return self.not_submodular is None

    @property
    def is_modular(self) -> bool:
        return self.is_supermodular and self.is_submodular

    @staticmethod
    def kind_of(is_super: bool, is_sub: bool) -> str:
        if is_super and is_sub:
            return "modular"
        if is_super:
            return "supermodular"
        if is_sub:
            return "submodular"
        return "neither"


def _pairwise_violations(vals: Sequence[int], n_masks: int) -> tuple[tuple[int, int] | None, tuple[int, int] | None]:
    """First pair breaking the supermodular inequality and first breaking
    the submodular one, scanning (A, B) in ascending mask order."""
    first_super = None
    first_sub = None
    if n_masks >= _NUMPY_MIN_MASKS and max(abs(v) for v in vals) < _INT64_GUARD // 2:
        v = np.asarray(vals, dtype=np.int64)
        masks = np.arange(n_masks, dtype=np.int64)
        block = max(1, (1 << 22) // n_masks)
        for start in range(0, n_masks, block):
            a = masks[start : start + block, None]
            lhs = v[a] + v[None, :]
            rhs = v[a & masks[None, :]] + v[a | masks[None, :]]
            if first_super is None:
                hit = np.argwhere(lhs > rhs)
                if hit.size:
                    first_super = (start + int(hit[0][0]), int(hit[0][1]))
            if first_sub is None:
                hit = np.argwhere(lhs < rhs)
                if hit.size:
                    first_sub = (start + int(hit[0][0]), int(hit[0][1]))
            if first_super is not None and first_sub is not None:
                break
        return first_super, first_sub
    for a in range(n_masks):
        va = vals[a]
        for b in range(n_masks):
            lhs = va + vals[b]
            rhs = vals[a & b] + vals[a | b]
            if first_super is None and lhs > rhs:
                first_super = (a, b)
            if first_sub is None and lhs < rhs:
                first_sub = (a, b)
            if first_super is not None and first_sub is not None:
                return first_super, first_sub
    return first_super, first_sub


def _local_exchange_flags(vals: Sequence[int], n: int) -> tuple[bool, bool]:
    """(is_supermodular, is_submodular) via the two-element exchange
    criterion: compare adding elements i and j separately against adding
    neither and both, over all menus avoiding i and j."""
    is_super = True
    is_sub = True
    for i in range(n):
        bi = 1 << i
        for j in range(i + 1, n):
            bj = 1 << j
            both = bi | bj
            for m in range(1 << n):
                if m & both:
                    continue
                lhs = vals[m | bi] + vals[m | bj]
                rhs = vals[m] + vals[m | both]
                if lhs > rhs:
                    is_super = False
                if lhs < rhs:
                    is_sub = False
                if not is_super and not is_sub:
                    return False, False
    return is_super, is_sub


def classify(u: SetFunction) -> ModularityClass:
    """Classify u by exhaustive pair sweep, cross-checked against the local
    exchange criterion; disagreement raises ``InternalInvariantError``."""
    vals = u._scaled_ints
    n_masks = u.ground.n_masks
    w_super, w_sub = _pairwise_violations(vals, n_masks)
    loc_super, loc_sub = _local_exchange_flags(vals, u.ground.n)
    if (w_super is None) != loc_super or (w_sub is None) != loc_sub:
        raise InternalInvariantError(
            "pairwise modularity sweep disagrees with the local exchange sweep"
        )

    def wrap(pair):
        if pair is None:
            return None
        return (Subset(u.ground, pair[0]), Subset(u.ground, pair[1]))

    return ModularityClass(
        kind=ModularityClass.kind_of(w_super is None, w_sub is None),
        not_supermodular=wrap(w_super),
        not_submodular=wrap(w_sub),
    )


def elementary(u_set: Subset) -> SetFunction:
    """Indicator of the menus containing ``u_set``: the basic supermodular
    building block; nonnegative combinations of these stay supermodular."""
    ground = u_set.ground
    ub = u_set.bits
    return SetFunction.tabulate(ground, lambda m: 1 if ub & ~m == 0 else 0)


def synthesize(f: ChoiceFunction) -> SetFunction:
    """Count the open sets inside each menu.

    For complementary f this is a monotone, integer-valued, supermodular
    function (a sum of indicators over the open sets) whose induced choice
    function is f again.
    """
    _require_complementary(f, "synthesize")
    opens = open_sets(f).sorted_masks
    return SetFunction.tabulate(
        f.ground, lambda m: sum(1 for u in opens if u & ~m == 0)
    )


def default_epsilon(ground: GroundSet) -> Fraction:
    """Tie-breaking rate 1/(n+1): the total cardinality penalty stays below
    one, so it never reorders menus whose integer values differ."""
    return Fraction(1, ground.n + 1)


def perturb(u: SetFunction, eps: Fraction | int) -> SetFunction:
    """Subtract eps times the cardinality; modularity of cardinality keeps
    every modularity class intact. Requires eps > 0."""
    eps = _as_fraction(eps)
    if eps <= 0:
        raise ValueError("perturbation rate must be positive")
    return SetFunction(
        u.ground,
        tuple(v - eps * m.bit_count() for m, v in enumerate(u.values)),
    )


def argmax_family(u: SetFunction, menu: Subset) -> SetFamily:
    """All subsets of the menu attaining the maximum of u there. For
    supermodular u the family is closed under unions and intersections."""
    if menu.ground != u.ground:
        raise GroundSetMismatchError("menu over a different ground set")
    vals = u.values
    m = menu.bits
    best = None
    args: list[int] = []
    sub = m
    while True:
        v = vals[sub]
        if best is None or v > best:
            best = v
            args = [sub]
        elif v == best:
            args.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & m
    return SetFamily(u.ground, frozenset(args))


def _first_incomparable_pair(masks: Sequence[int]) -> tuple[int, int] | None:
    ordered = sorted(masks)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1 :]:
            if a & ~b and b & ~a:
                return a, b
    return None


def induce_cf(u: SetFunction) -> ChoiceFunction:
    """Send each menu to the least maximizer of u over its subsets.

    The least maximizer is computed as the intersection of all maximizers
    and then verified to be a maximizer itself; uniqueness is only
    guaranteed for supermodular u, so a failed verification raises
    ``NoUniqueMinimizerError`` with the offending menu and an incomparable
    pair of maximizers rather than guessing.
    """
    ground = u.ground
    vals = u.values
    table = []
    for m in range(ground.n_masks):
        best = None
        inter = None
        args: list[int] = []
        sub = m
        while True:
            v = vals[sub]
            if best is None or v > best:
                best = v
                inter = sub
                args = [sub]
            elif v == best:
                inter &= sub
                args.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & m
        if vals[inter] != best:
            # a chain of maximizers would make its least member the
            # intersection, so a failure always exhibits an incomparable pair
            pair = _first_incomparable_pair(args)
            assert pair is not None
            raise NoUniqueMinimizerError(
                f"menu {Subset(ground, m)!r} has no least maximizer; e.g. "
                f"{Subset(ground, pair[0])!r} and {Subset(ground, pair[1])!r} "
                f"both attain the maximum but their intersection does not",
                where=Subset(ground, m),
                pair=(Subset(ground, pair[0]), Subset(ground, pair[1])),
            )
        table.append(inter)
    return ChoiceFunction(ground, tuple(table))


def order_from_setfn(u: SetFunction) -> SubsetWeakOrder:
    """The weak order the values induce on subsets: only the comparisons
    matter for choice, not the numbers themselves."""
    tiers = {v: r for r, v in enumerate(sorted(set(u.values)))}
    return SubsetWeakOrder(u.ground, tuple(tiers[v] for v in u.values))


def is_supermodular_order(
    w: SubsetWeakOrder,
) -> tuple[bool, tuple[Subset, Subset] | None]:
    """Check the two exchange conditions defining a supermodular weak order:
    for every pair, either A is below the intersection or B is below the
    union; and when the intersection drops strictly below A, B must drop
    strictly below the union. Returns (holds, first violating pair)."""
    ranks = w.ranks
    n_masks = w.ground.n_masks
    for a in range(n_masks):
        ra = ranks[a]
        for b in range(n_masks):
            ri = ranks[a & b]
            ru = ranks[a | b]
            rb = ranks[b]
            if not (ra <= ri or rb <= ru):
                return False, (Subset(w.ground, a), Subset(w.ground, b))
            if ri < ra and not rb < ru:
                return False, (Subset(w.ground, a), Subset(w.ground, b))
    return True, None


def cf_from_order(w: SubsetWeakOrder) -> ChoiceFunction:
    """Choose, from each menu, the least subset among the order-maximal ones.

    Requires a supermodular weak order, which makes the maximal tier of
    every menu closed under intersection, so the least member exists and is
    unique; that uniqueness is asserted, not assumed.
    """
    ok, witness = is_supermodular_order(w)
    if not ok:
        raise PreconditionError(
            f"supermodular weak order required; exchange conditions fail at "
            f"A={witness[0]!r} B={witness[1]!r}",
            witness=witness,
        )
    ground = w.ground
    ranks = w.ranks
    table = []
    for m in range(ground.n_masks):
        best = None
        inter = None
        sub = m
        while True:
            r = ranks[sub]
            if best is None or r > best:
                best = r
                inter = sub
            elif r == best:
                inter &= sub
            if sub == 0:
                break
            sub = (sub - 1) & m
        if ranks[inter] != best:
            raise InternalInvariantError(
                f"maximal tier of menu {Subset(ground, m)!r} is not closed "
                f"under intersection despite a supermodular order"
            )
        table.append(inter)
    return ChoiceFunction(ground, tuple(table))


def random_modular(ground: GroundSet, rng: random.Random, span: int = 3) -> SetFunction:
    """A random modular function: a constant plus per-element weights."""
    alpha = rng.randint(-span, span)
    beta = [rng.randint(-span, span) for _ in range(ground.n)]

    def rule(m: int) -> int:
        total = alpha
        probe = m
        while probe:
            i = (probe & -probe).bit_length() - 1
            probe &= probe - 1
            total += beta[i]
        return total

    return SetFunction.tabulate(ground, rule)


def random_supermodular(
    ground: GroundSet,
    rng: random.Random,
    terms: int | None = None,
    coeff_max: int = 3,
    span: int = 3,
) -> SetFunction:
    """A random supermodular function: a sparse nonnegative combination of
    indicator building blocks plus a random modular part.

    Sufficient for generating test instances, not exhaustive: the extreme
    rays of the supermodular cone are not fully known, so no generator of
    this shape can cover them all.
    """
    if terms is None:
        terms = ground.n + 2
    total = random_modular(ground, rng, span=span)
    for _ in range(terms):
        u_mask = rng.randrange(ground.n_masks)
        coeff = rng.randint(1, coeff_max)
        total = total + elementary(Subset(ground, u_mask)).scale(coeff)
    return total
