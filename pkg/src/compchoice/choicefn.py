"""Choice functions on finite powersets: the table type, axiom analysis, constructors.

A choice function assigns to every menu (subset of the ground set) a chosen
subset of that menu. ``analyze`` sweeps the defining quantifiers of each
axiom exhaustively and reports one reproducible witness per failed axiom:
always the first violation when menus are ordered by ascending bitmask.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator, Mapping, Sequence

import numpy as np

from .core import GroundSet, Preorder, Subset, ensure_tractable
from .errors import (
    ContractionError,
    GroundSetMismatchError,
    InfiniteGroundSetError,
    InternalInvariantError,
    PreconditionError,
)

# Below this many menus plain loops beat array overhead; above it the pair
# sweeps run as chunked numpy scans. Both paths visit pairs in the same
# order, so the first witness found is identical regardless of partitioning.
_NUMPY_MIN_MASKS = 512

AXIOMS = (
    "consistent",
    "monotone",
    "idempotent",
    "subadditive",
    "superadditive",
    "substitutable_heredity",
    "complementary",
    "completely_complementary",
)


@dataclass(frozen=True)
class Witness:
    """One violating instance of an axiom: the menus involved, plus an
    offending element where one exists (heredity)."""

    kind: str  # "pair" | "menu" | "full_menu"
    menus: tuple[Subset, ...]
    element: str | None = None

    def describe(self) -> str:
        parts = []
        labels = "AB"
        for label, menu in zip(labels, self.menus):
            parts.append(f"{label}={menu!r}")
        if self.element is not None:
            parts.append(f"element={self.element}")
        return " ".join(parts)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the exhaustive axiom sweeps for one choice function."""

    consistent: bool
    monotone: bool
    idempotent: bool
    subadditive: bool
    superadditive: bool
    substitutable_heredity: bool
    complementary: bool
    completely_complementary: bool
    witnesses: Mapping[str, Witness] = field(default_factory=dict)

    def flag(self, axiom: str) -> bool:
        if axiom not in AXIOMS:
            raise ValueError(f"unknown axiom {axiom!r}")
        return getattr(self, axiom)

    def flags(self) -> dict[str, bool]:
        return {a: getattr(self, a) for a in AXIOMS}


@dataclass(frozen=True)
class ChoiceFunction:
    """A contracting self-map of the powerset, stored as a full table.

    ``table[mask]`` is the mask of the set chosen from the menu ``mask``.
    Contraction (choice within the menu) is enforced at construction, which
    forces choosing nothing from the empty menu.
    """

    ground: GroundSet
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        ensure_tractable(self.ground.n, what="choice table")
        if len(table) != self.ground.n_masks:
            raise ValueError(
                f"table must cover all {self.ground.n_masks} menus, got {len(table)}"
            )
        for menu, choice in enumerate(table):
            if choice & ~menu:
                raise ContractionError(
                    f"choice {Subset(self.ground, choice & (self.ground.n_masks - 1))!r} "
                    f"is not contained in menu {Subset(self.ground, menu)!r}"
                )

    @classmethod
    def build(cls, ground: GroundSet, rule: Callable[[int], int]) -> ChoiceFunction:
        """Tabulate ``rule`` (mask to mask) over every menu."""
        ensure_tractable(ground.n, what="choice table")
        return cls(ground, tuple(rule(m) for m in range(ground.n_masks)))

    @classmethod
    def from_choices(
        cls, ground: GroundSet, choices: Mapping[frozenset[str], Sequence[str]]
    ) -> ChoiceFunction:
        """Build from a menu-to-choice mapping keyed by frozensets of names."""
        table = [0] * ground.n_masks
        seen = set()
        for menu_names, choice_names in choices.items():
            menu = ground.subset(menu_names)
            if menu.bits in seen:
                raise ValueError(f"duplicate menu {menu!r}")
            seen.add(menu.bits)
            table[menu.bits] = ground.subset(choice_names).bits
        if len(seen) != ground.n_masks:
            raise ValueError("every menu must be assigned a choice")
        return cls(ground, tuple(table))

    def choice_mask(self, mask: int) -> int:
        return self.table[mask]

    def apply(self, menu: Subset) -> Subset:
        if menu.ground != self.ground:
            raise GroundSetMismatchError("menu over a different ground set")
        return Subset(self.ground, self.table[menu.bits])

    __call__ = apply

    def menus(self) -> Iterator[Subset]:
        return self.ground.all_subsets()

    @cached_property
    def _np_table(self) -> np.ndarray:
        return np.asarray(self.table, dtype=np.uint32)

    @cached_property
    def analysis(self) -> AxiomReport:
        return _compute_report(self)

    def __repr__(self) -> str:
        return f"ChoiceFunction(n={self.ground.n})"


def analyze(f: ChoiceFunction) -> AxiomReport:
    """Exhaustively classify f against all tracked axioms (cached per table)."""
    return f.analysis


# ---------------------------------------------------------------------------
# quantifier sweeps
#
# Each sweep returns the first violating instance in lexicographic-by-mask
# order, or None. The numpy variants scan the same (A, B) grid in the same
# row-major order in chunks, so witnesses agree across both paths.


def _consistency_violation(f: ChoiceFunction) -> tuple[int, int] | None:
    """First (A, B) with f(A) <= B <= A but f(B) != f(A)."""
    t = f.table
    n_masks = len(t)
    if n_masks < _NUMPY_MIN_MASKS:
        for a in range(n_masks):
            fa = t[a]
            for b in range(n_masks):
                if fa & ~b == 0 and b & ~a == 0 and t[b] != fa:
                    return a, b
        return None
    tn = f._np_table
    masks = np.arange(n_masks, dtype=np.uint32)
    for start, stop in _chunks(n_masks):
        a = masks[start:stop, None]
        ta = tn[start:stop, None]
        bad = ((ta & ~masks[None, :]) == 0) & ((masks[None, :] & ~a) == 0) & (tn[None, :] != ta)
        hit = _first_true(bad)
        if hit is not None:
            return start + hit[0], hit[1]
    return None


def _monotonicity_violation(f: ChoiceFunction) -> tuple[int, int] | None:
    """First (A, B) with A <= B but f(A) not within f(B)."""
    t = f.table
    n_masks = len(t)
    if n_masks < _NUMPY_MIN_MASKS:
        for a in range(n_masks):
            fa = t[a]
            for b in range(n_masks):
                if a & ~b == 0 and fa & ~t[b]:
                    return a, b
        return None
    tn = f._np_table
    masks = np.arange(n_masks, dtype=np.uint32)
    for start, stop in _chunks(n_masks):
        a = masks[start:stop, None]
        ta = tn[start:stop, None]
        bad = ((a & ~masks[None, :]) == 0) & ((ta & ~tn[None, :]) != 0)
        hit = _first_true(bad)
        if hit is not None:
            return start + hit[0], hit[1]
    return None


def _idempotency_violation(f: ChoiceFunction) -> int | None:
    t = f.table
    for a in range(len(t)):
        if t[t[a]] != t[a]:
            return a
    return None


def _subadditivity_violation(f: ChoiceFunction) -> tuple[int, int] | None:
    """First (A, B) with f(A | B) not within f(A) | f(B)."""
    t = f.table
    n_masks = len(t)
    if n_masks < _NUMPY_MIN_MASKS:
        for a in range(n_masks):
            fa = t[a]
            for b in range(n_masks):
                if t[a | b] & ~(fa | t[b]):
                    return a, b
        return None
    tn = f._np_table
    masks = np.arange(n_masks, dtype=np.uint32)
    for start, stop in _chunks(n_masks):
        a = masks[start:stop, None]
        ta = tn[start:stop, None]
        tu = tn[a | masks[None, :]]
        bad = (tu & ~(ta | tn[None, :])) != 0
        hit = _first_true(bad)
        if hit is not None:
            return start + hit[0], hit[1]
    return None


def _superadditivity_violation(f: ChoiceFunction) -> tuple[int, int] | None:
    """First (A, B) with f(A) | f(B) not within f(A | B)."""
    t = f.table
    n_masks = len(t)
    if n_masks < _NUMPY_MIN_MASKS:
        for a in range(n_masks):
            fa = t[a]
            for b in range(n_masks):
                if (fa | t[b]) & ~t[a | b]:
                    return a, b
        return None
    tn = f._np_table
    masks = np.arange(n_masks, dtype=np.uint32)
    for start, stop in _chunks(n_masks):
        a = masks[start:stop, None]
        ta = tn[start:stop, None]
        tu = tn[a | masks[None, :]]
        bad = ((ta | tn[None, :]) & ~tu) != 0
        hit = _first_true(bad)
        if hit is not None:
            return start + hit[0], hit[1]
    return None


def _heredity_violation(f: ChoiceFunction) -> tuple[int, int] | None:
    """First (A, B) with A <= B but f(B) & A not within f(A)."""
    t = f.table
    n_masks = len(t)
    if n_masks < _NUMPY_MIN_MASKS:
        for a in range(n_masks):
            fa = t[a]
            for b in range(n_masks):
                if a & ~b == 0 and t[b] & a & ~fa:
                    return a, b
        return None
    tn = f._np_table
    masks = np.arange(n_masks, dtype=np.uint32)
    for start, stop in _chunks(n_masks):
        a = masks[start:stop, None]
        ta = tn[start:stop, None]
        bad = ((a & ~masks[None, :]) == 0) & ((tn[None, :] & a & ~ta) != 0)
        hit = _first_true(bad)
        if hit is not None:
            return start + hit[0], hit[1]
    return None


def _meet_preservation_violation(f: ChoiceFunction) -> tuple[int, int] | None:
    """First (A, B) with f(A & B) != f(A) & f(B)."""
    t = f.table
    n_masks = len(t)
    if n_masks < _NUMPY_MIN_MASKS:
        for a in range(n_masks):
            fa = t[a]
            for b in range(n_masks):
                if t[a & b] != fa & t[b]:
                    return a, b
        return None
    tn = f._np_table
    masks = np.arange(n_masks, dtype=np.uint32)
    for start, stop in _chunks(n_masks):
        a = masks[start:stop, None]
        ta = tn[start:stop, None]
        bad = tn[a & masks[None, :]] != (ta & tn[None, :])
        hit = _first_true(bad)
        if hit is not None:
            return start + hit[0], hit[1]
    return None


def _chunks(n_masks: int) -> Iterator[tuple[int, int]]:
    block = max(1, (1 << 22) // n_masks)
    for start in range(0, n_masks, block):
        yield start, min(start + block, n_masks)


def _first_true(bad: np.ndarray) -> tuple[int, int] | None:
    if bad.any():
        i, j = np.argwhere(bad)[0]
        return int(i), int(j)
    return None


def _compute_report(f: ChoiceFunction) -> AxiomReport:
    ground = f.ground
    n_masks = ground.n_masks

    def sub(mask: int) -> Subset:
        return Subset(ground, mask)

    witnesses: dict[str, Witness] = {}

    w_cons = _consistency_violation(f)
    if w_cons is not None:
        witnesses["consistent"] = Witness("pair", (sub(w_cons[0]), sub(w_cons[1])))
    w_mono = _monotonicity_violation(f)
    if w_mono is not None:
        witnesses["monotone"] = Witness("pair", (sub(w_mono[0]), sub(w_mono[1])))
    w_idem = _idempotency_violation(f)
    if w_idem is not None:
        witnesses["idempotent"] = Witness("menu", (sub(w_idem),))
    w_subadd = _subadditivity_violation(f)
    if w_subadd is not None:
        witnesses["subadditive"] = Witness("pair", (sub(w_subadd[0]), sub(w_subadd[1])))
    w_superadd = _superadditivity_violation(f)
    if w_superadd is not None:
        witnesses["superadditive"] = Witness("pair", (sub(w_superadd[0]), sub(w_superadd[1])))
    w_her = _heredity_violation(f)
    if w_her is not None:
        a, b = w_her
        offending = f.table[b] & a & ~f.table[a]
        name = ground.elements[(offending & -offending).bit_length() - 1]
        witnesses["substitutable_heredity"] = Witness("pair", (sub(a), sub(b)), element=name)

    consistent = w_cons is None
    monotone = w_mono is None
    superadditive = w_superadd is None
    # superadditivity and monotonicity are equivalent for contracting maps;
    # the two sweeps are independent implementations and must agree.
    if superadditive != monotone:
        raise InternalInvariantError(
            "superadditivity sweep disagrees with monotonicity sweep"
        )

    complementary = consistent and monotone
    if not complementary:
        witnesses["complementary"] = (
            witnesses["consistent"] if not consistent else witnesses["monotone"]
        )

    # Complete complementarity: preservation of intersections of arbitrary
    # families of menus. Pairwise preservation gives every finite nonempty
    # family by induction; the empty family has intersection X on both
    # sides, which forces f(X) = X. Consistency is part of the definition
    # and does not follow from the rest.
    full_ok = f.table[n_masks - 1] == n_masks - 1
    w_meet = _meet_preservation_violation(f)
    completely = consistent and full_ok and w_meet is None
    if not completely:
        if not consistent:
            witnesses["completely_complementary"] = witnesses["consistent"]
        elif not full_ok:
            witnesses["completely_complementary"] = Witness("full_menu", (sub(n_masks - 1),))
        else:
            witnesses["completely_complementary"] = Witness(
                "pair", (sub(w_meet[0]), sub(w_meet[1]))
            )

    return AxiomReport(
        consistent=consistent,
        monotone=monotone,
        idempotent=w_idem is None,
        subadditive=w_subadd is None,
        superadditive=superadditive,
        substitutable_heredity=w_her is None,
        complementary=complementary,
        completely_complementary=completely,
        witnesses=witnesses,
    )


def witness_violates(f: ChoiceFunction, axiom: str, witness: Witness) -> bool:
    """Re-verify a witness: True iff it indeed violates the named axiom."""
    t = f.table
    menus = tuple(m.bits for m in witness.menus)
    if axiom == "consistent":
        a, b = menus
        return t[a] & ~b == 0 and b & ~a == 0 and t[b] != t[a]
    if axiom == "monotone":
        a, b = menus
        return a & ~b == 0 and bool(t[a] & ~t[b])
    if axiom == "idempotent":
        (a,) = menus
        return t[t[a]] != t[a]
    if axiom == "subadditive":
        a, b = menus
        return bool(t[a | b] & ~(t[a] | t[b]))
    if axiom == "superadditive":
        a, b = menus
        return bool((t[a] | t[b]) & ~t[a | b])
    if axiom == "substitutable_heredity":
        a, b = menus
        return a & ~b == 0 and bool(t[b] & a & ~t[a])
    if axiom == "complementary":
        a, b = menus
        # witness came from either the consistency or the monotonicity sweep
        return (t[a] & ~b == 0 and b & ~a == 0 and t[b] != t[a]) or (
            a & ~b == 0 and bool(t[a] & ~t[b])
        )
    if axiom == "completely_complementary":
        if witness.kind == "full_menu":
            full = len(t) - 1
            return t[full] != full
        a, b = menus
        return (t[a & b] != t[a] & t[b]) or (
            t[a] & ~b == 0 and b & ~a == 0 and t[b] != t[a]
        )
    raise ValueError(f"unknown axiom {axiom!r}")


# ---------------------------------------------------------------------------
# constructors


def packaged(k: Subset) -> ChoiceFunction:
    """The choice function fixated on the bundle k: it selects all of k
    whenever the menu makes k available, and nothing otherwise."""
    ground = k.ground
    kb = k.bits
    return ChoiceFunction.build(ground, lambda m: kb if kb & ~m == 0 else 0)


def ideal_cf(p: Preorder, ground: GroundSet | None = None) -> ChoiceFunction:
    """Choose the largest down-closed subset of each menu.

    Equivalently: keep exactly the menu items whose principal ideal fits
    inside the menu.
    """
    if ground is None:
        ground = p.ground
    elif ground.elements != p.carrier:
        raise GroundSetMismatchError(
            "preorder carrier must list exactly the ground-set elements, in order"
        )
    ideals = p.ideal_masks

    def rule(m: int) -> int:
        out = 0
        probe = m
        while probe:
            i = (probe & -probe).bit_length() - 1
            probe &= probe - 1
            if ideals[i] & ~m == 0:
                out |= 1 << i
        return out

    return ChoiceFunction.build(ground, rule)


def threshold(ground: GroundSet, k: int) -> ChoiceFunction:
    """Select the whole menu when it has at least k items, nothing otherwise."""
    if isinstance(k, float):
        if k == float("inf"):
            raise InfiniteGroundSetError(
                "an infinite threshold requires an infinite ground set"
            )
        raise ValueError("threshold must be an integer")
    if k < 1:
        raise ValueError("threshold must be at least 1")
    return ChoiceFunction.build(ground, lambda m: m if m.bit_count() >= k else 0)


def cofinite(ground: GroundSet) -> ChoiceFunction:
    """Select menus with finite complement. Meaningful only on infinite
    ground sets, where it is a choice function without minimal neighborhoods;
    on a finite one it would silently degenerate to the identity, so it is
    rejected instead."""
    raise InfiniteGroundSetError(
        "the cofinite choice function requires an infinite ground set"
    )


def identity_cf(ground: GroundSet) -> ChoiceFunction:
    """Select every menu in full."""
    return ChoiceFunction.build(ground, lambda m: m)


def union(fs: Sequence[ChoiceFunction]) -> ChoiceFunction:
    """Pointwise union of choice functions over one ground set.

    The union of complementary choice functions is again complementary,
    which makes them an upper semilattice under this operation.
    """
    if not fs:
        raise ValueError("union needs at least one choice function")
    ground = fs[0].ground
    for f in fs[1:]:
        if f.ground != ground:
            raise GroundSetMismatchError("union across different ground sets")
    n_masks = ground.n_masks
    table = [0] * n_masks
    for f in fs:
        for m in range(n_masks):
            table[m] |= f.table[m]
    return ChoiceFunction(ground, tuple(table))


def consistency_matches_idempotence(f: ChoiceFunction) -> bool:
    """For a monotone choice function, consistency and idempotence are
    equivalent; this returns whether the two computed flags agree.

    Used as a metamorphic check: it must return True for every monotone
    input. Raises ``PreconditionError`` on non-monotone input.
    """
    rep = f.analysis
    if not rep.monotone:
        raise PreconditionError(
            "monotone choice function required",
            witness=rep.witnesses.get("monotone"),
        )
    return rep.consistent == rep.idempotent
