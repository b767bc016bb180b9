"""Ground sets, bitmask subsets, set families, preorders, weak orders, lattices.

This is the substrate every other module builds on. Subsets are stored as
bitmasks over a named, ordered ground set; families are sets of masks. All
types are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import (
    GroundSetMismatchError,
    NotALatticeError,
    PowersetLimitError,
)

DEFAULT_POWERSET_LIMIT = 20

_powerset_limit = DEFAULT_POWERSET_LIMIT


def powerset_limit() -> int:
    """Current cap on the number of elements for powerset-table construction."""
    return _powerset_limit


def set_powerset_limit(n: int) -> None:
    """Raise or lower the cap. Tables are 2^n entries, so go gently."""
    global _powerset_limit
    if n < 1:
        raise ValueError("powerset limit must be >= 1")
    _powerset_limit = n


def ensure_tractable(n_elements: int, what: str = "powerset table") -> None:
    """Fail fast before any 2^n-sized structure above the configured cap."""
    if n_elements > _powerset_limit:
        raise PowersetLimitError(needed=n_elements, limit=_powerset_limit, what=what)


@dataclass(frozen=True)
class GroundSet:
    """An ordered finite universe of named elements."""

    elements: tuple[str, ...]

    def __post_init__(self) -> None:
        elems = tuple(self.elements)
        object.__setattr__(self, "elements", elems)
        for e in elems:
            if not isinstance(e, str) or not e:
                raise ValueError(f"element names must be non-empty strings, got {e!r}")
        if len(set(elems)) != len(elems):
            raise ValueError("element names must be distinct")

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def n_masks(self) -> int:
        return 1 << len(self.elements)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.elements)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown element {name!r}") from None

    def subset(self, names: Iterable[str] = ()) -> Subset:
        bits = 0
        for name in names:
            bits |= 1 << self.index(name)
        return Subset(self, bits)

    def subset_from_mask(self, mask: int) -> Subset:
        return Subset(self, mask)

    def empty(self) -> Subset:
        return Subset(self, 0)

    def full(self) -> Subset:
        return Subset(self, self.n_masks - 1)

    def singleton(self, name: str) -> Subset:
        return Subset(self, 1 << self.index(name))

    def all_masks(self) -> range:
        """All subset masks in ascending numeric order (lexicographic by bits)."""
        ensure_tractable(self.n)
        return range(self.n_masks)

    def all_subsets(self) -> Iterator[Subset]:
        for mask in self.all_masks():
            yield Subset(self, mask)

    def __repr__(self) -> str:
        return f"GroundSet({', '.join(self.elements)})"


@dataclass(frozen=True)
class Subset:
    """A subset of a ground set, stored as a bitmask (bit i = element i)."""

    ground: GroundSet
    bits: int

    def __post_init__(self) -> None:
        if not 0 <= self.bits < self.ground.n_masks:
            raise ValueError(f"mask {self.bits:#x} out of range for {self.ground!r}")

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    def names(self) -> tuple[str, ...]:
        """Member names in ground-set order."""
        return tuple(
            name for i, name in enumerate(self.ground.elements) if self.bits >> i & 1
        )

    def sorted_names(self) -> list[str]:
        """Member names sorted alphabetically (the serialization order)."""
        return sorted(self.names())

    def _check(self, other: Subset) -> None:
        if other.ground != self.ground:
            raise GroundSetMismatchError(
                f"cannot combine subsets over {self.ground!r} and {other.ground!r}"
            )

    def __contains__(self, name: str) -> bool:
        return bool(self.bits >> self.ground.index(name) & 1)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names())

    def __or__(self, other: Subset) -> Subset:
        self._check(other)
        return Subset(self.ground, self.bits | other.bits)

    def __and__(self, other: Subset) -> Subset:
        self._check(other)
        return Subset(self.ground, self.bits & other.bits)

    def __sub__(self, other: Subset) -> Subset:
        self._check(other)
        return Subset(self.ground, self.bits & ~other.bits)

    def issubset(self, other: Subset) -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    __le__ = issubset

    def complement(self) -> Subset:
        return Subset(self.ground, self.ground.n_masks - 1 - self.bits)

    def __repr__(self) -> str:
        return "{" + ",".join(self.names()) + "}"


@dataclass(frozen=True)
class SetFamily:
    """A deduplicated collection of subsets over one ground set."""

    ground: GroundSet
    masks: frozenset[int]

    def __post_init__(self) -> None:
        masks = frozenset(self.masks)
        object.__setattr__(self, "masks", masks)
        limit = self.ground.n_masks
        for m in masks:
            if not 0 <= m < limit:
                raise ValueError(f"mask {m:#x} out of range for {self.ground!r}")

    @classmethod
    def of(cls, ground: GroundSet, members: Iterable[Subset | Iterable[str]]) -> SetFamily:
        masks = set()
        for member in members:
            if isinstance(member, Subset):
                if member.ground != ground:
                    raise GroundSetMismatchError("family member over a different ground set")
                masks.add(member.bits)
            else:
                masks.add(ground.subset(member).bits)
        return cls(ground, frozenset(masks))

    @cached_property
    def sorted_masks(self) -> tuple[int, ...]:
        return tuple(sorted(self.masks))

    def subsets(self) -> tuple[Subset, ...]:
        return tuple(Subset(self.ground, m) for m in self.sorted_masks)

    def __contains__(self, item: Subset | int) -> bool:
        if isinstance(item, Subset):
            if item.ground != self.ground:
                raise GroundSetMismatchError("membership test across ground sets")
            return item.bits in self.masks
        return item in self.masks

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self.subsets())

    def __repr__(self) -> str:
        inner = ", ".join(repr(s) for s in self.subsets())
        return f"SetFamily[{inner}]"


def union_closure(base: SetFamily) -> SetFamily:
    """Smallest family containing the empty set and `base`, closed under unions.

    Closure under pairwise unions gives closure under all finite unions by
    induction, and the empty set is the union of the empty subfamily.
    Idempotent, extensive and monotone as an operator on families.
    """
    ensure_tractable(base.ground.n, what="union closure")
    closed: set[int] = {0}
    stack = list(base.masks)
    while stack:
        m = stack.pop()
        if m in closed:
            continue
        unions = [m | c for c in closed]
        closed.add(m)
        stack.extend(u for u in unions if u not in closed)
    return SetFamily(base.ground, frozenset(closed))


def is_union_closed(fam: SetFamily) -> bool:
    """True iff the family contains the empty set and all pairwise unions."""
    if 0 not in fam.masks:
        return False
    masks = fam.sorted_masks
    for i, a in enumerate(masks):
        for b in masks[i + 1 :]:
            if a | b not in fam.masks:
                return False
    return True


def is_intersection_closed(fam: SetFamily) -> bool:
    """True iff pairwise intersections of members are members.

    The full ground set is not required, and neither is the empty set
    unless it arises as an intersection.
    """
    masks = fam.sorted_masks
    for i, a in enumerate(masks):
        for b in masks[i + 1 :]:
            if a & b not in fam.masks:
                return False
    return True


def _close_reflexive_transitive(n: int, masks: list[int]) -> list[int]:
    """Reflexive-transitive closure of down-masks (bit j of masks[i]: j <= i)."""
    for i in range(n):
        masks[i] |= 1 << i
    changed = True
    while changed:
        changed = False
        for i in range(n):
            acc = masks[i]
            probe = acc
            while probe:
                j = (probe & -probe).bit_length() - 1
                probe &= probe - 1
                acc |= masks[j]
            if acc != masks[i]:
                masks[i] = acc
                changed = True
    return masks


@dataclass(frozen=True)
class Preorder:
    """A reflexive transitive relation on named points.

    Bit j of ``ideal_masks[i]`` says that point j lies below point i; the
    mask is therefore the principal ideal of point i. Both reflexivity and
    transitivity are checked at construction.
    """

    carrier: tuple[str, ...]
    ideal_masks: tuple[int, ...]

    def __post_init__(self) -> None:
        carrier = tuple(self.carrier)
        masks = tuple(self.ideal_masks)
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "ideal_masks", masks)
        if len(set(carrier)) != len(carrier):
            raise ValueError("carrier points must be distinct")
        n = len(carrier)
        if len(masks) != n:
            raise ValueError("one ideal mask per carrier point required")
        full = 1 << n
        for i, m in enumerate(masks):
            if not 0 <= m < full:
                raise ValueError(f"ideal mask for {carrier[i]!r} out of range")
            if not m >> i & 1:
                raise ValueError(f"relation is not reflexive at {carrier[i]!r}")
        for i in range(n):
            probe = masks[i]
            while probe:
                j = (probe & -probe).bit_length() - 1
                probe &= probe - 1
                if masks[j] & ~masks[i]:
                    raise ValueError(
                        f"relation is not transitive: {carrier[j]!r} <= "
                        f"{carrier[i]!r} but the ideal of {carrier[j]!r} leaks"
                    )

    @classmethod
    def from_pairs(
        cls,
        carrier: Sequence[str],
        pairs: Iterable[tuple[str, str]],
        *,
        close: bool = True,
    ) -> Preorder:
        """Build from (y, x) pairs meaning y <= x.

        With ``close=True`` the reflexive-transitive closure is applied;
        otherwise the given pairs must already form a preorder.
        """
        carrier = tuple(carrier)
        index = {name: i for i, name in enumerate(carrier)}
        masks = [0] * len(carrier)
        seen: set[tuple[str, str]] = set()
        for y, x in pairs:
            if y not in index or x not in index:
                raise ValueError(f"pair ({y!r}, {x!r}) mentions unknown points")
            seen.add((y, x))
            masks[index[x]] |= 1 << index[y]
        if close:
            masks = _close_reflexive_transitive(len(carrier), masks)
        else:
            for name in carrier:
                seen.add((name, name))
            closed = _close_reflexive_transitive(len(carrier), list(masks))
            for i in range(len(carrier)):
                masks[i] |= 1 << i
            if masks != closed:
                raise ValueError("pairs are not reflexively and transitively closed")
        return cls(carrier, tuple(masks))

    @property
    def n(self) -> int:
        return len(self.carrier)

    @cached_property
    def ground(self) -> GroundSet:
        return GroundSet(self.carrier)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.carrier)}

    def leq(self, y: str, x: str) -> bool:
        try:
            iy, ix = self._index[y], self._index[x]
        except KeyError as exc:
            raise ValueError(f"unknown point {exc.args[0]!r}") from None
        return bool(self.ideal_masks[ix] >> iy & 1)

    def pairs(self) -> list[tuple[str, str]]:
        """All (y, x) pairs with y <= x, in carrier order."""
        out = []
        for x_i, mask in enumerate(self.ideal_masks):
            probe = mask
            while probe:
                y_i = (probe & -probe).bit_length() - 1
                probe &= probe - 1
                out.append((self.carrier[y_i], self.carrier[x_i]))
        return sorted(out, key=lambda p: (self._index[p[0]], self._index[p[1]]))

    def all_ideal_masks(self) -> list[int]:
        """Masks of all down-closed subsets of the carrier."""
        ensure_tractable(self.n, what="ideal enumeration")
        ideals = []
        for mask in range(1 << self.n):
            probe = mask
            ok = True
            while probe:
                i = (probe & -probe).bit_length() - 1
                probe &= probe - 1
                if self.ideal_masks[i] & ~mask:
                    ok = False
                    break
            if ok:
                ideals.append(mask)
        return ideals

    def all_ideals(self) -> SetFamily:
        return SetFamily(self.ground, frozenset(self.all_ideal_masks()))


def principal_ideal(p: Preorder, x: str) -> Subset:
    """The set of points lying below x (always contains x itself)."""
    if x not in p._index:
        raise ValueError(f"unknown point {x!r}")
    return Subset(p.ground, p.ideal_masks[p._index[x]])


@dataclass(frozen=True)
class SubsetWeakOrder:
    """A complete preorder on all subsets, stored as one integer rank per mask.

    Higher rank means strictly preferred; equal rank means indifferent.
    Integer ranks keep indifference exact and serializable.
    """

    ground: GroundSet
    ranks: tuple[int, ...]

    def __post_init__(self) -> None:
        ranks = tuple(self.ranks)
        object.__setattr__(self, "ranks", ranks)
        ensure_tractable(self.ground.n, what="subset weak order")
        if len(ranks) != self.ground.n_masks:
            raise ValueError("exactly one rank per subset required")
        if not all(isinstance(r, int) for r in ranks):
            raise ValueError("ranks must be integers")

    def rank(self, s: Subset | int) -> int:
        mask = s.bits if isinstance(s, Subset) else s
        return self.ranks[mask]

    def le(self, a: Subset | int, b: Subset | int) -> bool:
        return self.rank(a) <= self.rank(b)

    def lt(self, a: Subset | int, b: Subset | int) -> bool:
        return self.rank(a) < self.rank(b)

    @property
    def n_tiers(self) -> int:
        return len(set(self.ranks))


@dataclass(frozen=True)
class FiniteLattice:
    """An explicit finite lattice: order table plus meet and join tables.

    ``down_masks[i]`` has bit j set iff elems[j] <= elems[i]. The meet and
    join tables hold element indices and are validated exhaustively against
    the order: every entry must be the greatest lower / least upper bound.
    A global bottom and top must exist.
    """

    elems: tuple[str, ...]
    down_masks: tuple[int, ...]
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        elems = tuple(self.elems)
        object.__setattr__(self, "elems", elems)
        object.__setattr__(self, "down_masks", tuple(self.down_masks))
        object.__setattr__(self, "meet_table", tuple(tuple(r) for r in self.meet_table))
        object.__setattr__(self, "join_table", tuple(tuple(r) for r in self.join_table))
        if len(set(elems)) != len(elems):
            raise ValueError("lattice element names must be distinct")
        n = len(elems)
        if n == 0:
            raise NotALatticeError("a lattice needs at least one element")
        down = self.down_masks
        if len(down) != n:
            raise ValueError("one down-mask per element required")
        for i in range(n):
            if not 0 <= down[i] < 1 << n:
                raise ValueError("down-mask out of range")
            if not down[i] >> i & 1:
                raise NotALatticeError(f"order not reflexive at {elems[i]!r}")
        for i in range(n):
            probe = down[i]
            while probe:
                j = (probe & -probe).bit_length() - 1
                probe &= probe - 1
                if j != i and down[i] >> j & 1 and down[j] >> i & 1:
                    raise NotALatticeError(
                        f"order not antisymmetric between {elems[i]!r} and {elems[j]!r}"
                    )
                if down[j] & ~down[i]:
                    raise NotALatticeError(
                        f"order not transitive below {elems[i]!r} via {elems[j]!r}"
                    )
        if len(self.meet_table) != n or len(self.join_table) != n:
            raise ValueError("meet/join tables must be n x n")
        for i in range(n):
            if len(self.meet_table[i]) != n or len(self.join_table[i]) != n:
                raise ValueError("meet/join tables must be n x n")
            for j in range(n):
                m = self.meet_table[i][j]
                z = self.join_table[i][j]
                if not (0 <= m < n and 0 <= z < n):
                    raise ValueError("meet/join entries must be element indices")
                lower = down[i] & down[j]
                if down[m] != lower:
                    raise NotALatticeError(
                        f"meet({elems[i]!r},{elems[j]!r})={elems[m]!r} is not the "
                        f"greatest lower bound"
                    )
                upper = self._up_masks[i] & self._up_masks[j]
                if self._up_masks[z] != upper:
                    raise NotALatticeError(
                        f"join({elems[i]!r},{elems[j]!r})={elems[z]!r} is not the "
                        f"least upper bound"
                    )
        # bottom: below everything; top: above everything
        full = (1 << n) - 1
        bottoms = [i for i in range(n) if all(down[j] >> i & 1 for j in range(n))]
        tops = [i for i in range(n) if down[i] == full]
        if not bottoms:
            raise NotALatticeError("no global bottom element")
        if not tops:
            raise NotALatticeError("no global top element")
        object.__setattr__(self, "_bottom_i", bottoms[0])
        object.__setattr__(self, "_top_i", tops[0])

    @cached_property
    def _up_masks(self) -> tuple[int, ...]:
        n = len(self.elems)
        ups = [0] * n
        for j in range(n):
            for i in range(n):
                if self.down_masks[j] >> i & 1:
                    ups[i] |= 1 << j
        return tuple(ups)

    @classmethod
    def from_leq_pairs(
        cls,
        elems: Sequence[str],
        pairs: Iterable[tuple[str, str]],
        *,
        close: bool = True,
    ) -> FiniteLattice:
        """Build from (x, y) pairs meaning x <= y; meet and join are derived.

        The reflexive-transitive closure is applied by default, so a Hasse
        diagram's cover pairs are valid input. Raises ``NotALatticeError``
        when some pair of elements lacks a greatest lower or least upper
        bound, or when the closure is not antisymmetric.
        """
        elems = tuple(elems)
        index = {name: i for i, name in enumerate(elems)}
        n = len(elems)
        down = [0] * n
        for x, y in pairs:
            if x not in index or y not in index:
                raise ValueError(f"pair ({x!r}, {y!r}) mentions unknown elements")
            down[index[y]] |= 1 << index[x]
        if close:
            down = _close_reflexive_transitive(n, down)
        else:
            for i in range(n):
                down[i] |= 1 << i
        ups = [0] * n
        for j in range(n):
            for i in range(n):
                if down[j] >> i & 1:
                    ups[i] |= 1 << j
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                lower = down[i] & down[j]
                glb = [k for k in range(n) if down[k] == lower]
                if not glb:
                    raise NotALatticeError(
                        f"{elems[i]!r} and {elems[j]!r} have no greatest lower bound"
                    )
                meet[i][j] = glb[0]
                upper = ups[i] & ups[j]
                lub = [k for k in range(n) if ups[k] == upper]
                if not lub:
                    raise NotALatticeError(
                        f"{elems[i]!r} and {elems[j]!r} have no least upper bound"
                    )
                join[i][j] = lub[0]
        return cls(elems, tuple(down), tuple(tuple(r) for r in meet), tuple(tuple(r) for r in join))

    @property
    def n(self) -> int:
        return len(self.elems)

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.elems)}

    def index(self, x: str) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise ValueError(f"unknown element {x!r}") from None

    def leq(self, x: str, y: str) -> bool:
        return bool(self.down_masks[self.index(y)] >> self.index(x) & 1)

    def meet(self, x: str, y: str) -> str:
        return self.elems[self.meet_table[self.index(x)][self.index(y)]]

    def join(self, x: str, y: str) -> str:
        return self.elems[self.join_table[self.index(x)][self.index(y)]]

    @property
    def bottom(self) -> str:
        return self.elems[self._bottom_i]

    @property
    def top(self) -> str:
        return self.elems[self._top_i]

    def downset_mask(self, i: int) -> int:
        return self.down_masks[i]

    def leq_pairs(self) -> list[tuple[str, str]]:
        """All (x, y) pairs with x <= y, ordered by element indices."""
        out = []
        for j in range(self.n):
            probe = self.down_masks[j]
            while probe:
                i = (probe & -probe).bit_length() - 1
                probe &= probe - 1
                out.append((i, j))
        out.sort()
        return [(self.elems[i], self.elems[j]) for i, j in out]

    def __repr__(self) -> str:
        return f"FiniteLattice({len(self.elems)} elements)"


def downset(lattice: FiniteLattice, x: str) -> tuple[str, ...]:
    """All elements below x, including the bottom and x itself."""
    mask = lattice.down_masks[lattice.index(x)]
    return tuple(e for i, e in enumerate(lattice.elems) if mask >> i & 1)
