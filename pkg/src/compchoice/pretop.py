"""Open sets, interior operators, neighborhood systems, and preorder extraction.

A menu is open for f when f chooses it in full. For complementary f the
open sets form a pre-topology (a union-closed family containing the empty
set), f is exactly the induced interior operator, and f decomposes as the
union of bundle-fixated choice functions over its open sets. Completely
complementary choice functions additionally have a unique minimal
neighborhood per element and are precisely the largest-ideal choosers of a
preorder; ``preorder_from_cf`` extracts that preorder.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .choicefn import ChoiceFunction, packaged, union
from .core import GroundSet, Preorder, SetFamily, Subset, union_closure
from .errors import (
    InternalInvariantError,
    NeighborhoodPropertyError,
    NotComplementaryError,
    NotCompletelyComplementaryError,
)


def _require_complementary(f: ChoiceFunction, op: str) -> None:
    rep = f.analysis
    if not rep.complementary:
        failed = "consistency" if not rep.consistent else "monotonicity"
        wit = rep.witnesses["complementary"]
        raise NotComplementaryError(
            f"{op} needs a complementary choice function; {failed} fails at "
            f"{wit.describe()}",
            report=rep,
            witness=wit,
        )


def open_sets(f: ChoiceFunction) -> SetFamily:
    """All menus chosen in full. Contains the empty set for any f; for
    monotone f the family is closed under unions."""
    masks = frozenset(m for m, c in enumerate(f.table) if c == m)
    return SetFamily(f.ground, masks)


def image_family(f: ChoiceFunction) -> SetFamily:
    """All values taken by f. Coincides with the open sets when f is
    complementary; computed separately so nothing assumes the coincidence
    for arbitrary f."""
    return SetFamily(f.ground, frozenset(f.table))


def interior_cf(family: SetFamily) -> ChoiceFunction:
    """The interior operator of the pre-topology generated by ``family``.

    The input is treated as a base: its union closure is formed first, and
    each menu is sent to the largest closed member inside it (equivalently,
    the union of all of them).
    """
    closed = union_closure(family)
    members = closed.sorted_masks

    def rule(m: int) -> int:
        out = 0
        for b in members:
            if b & ~m == 0:
                out |= b
        return out

    return ChoiceFunction.build(family.ground, rule)


def decompose(f: ChoiceFunction) -> SetFamily:
    """The open sets of a complementary f, which reassemble it exactly as
    the union of bundle-fixated choice functions, one per open set."""
    _require_complementary(f, "decompose")
    return open_sets(f)


def reconstruct(family: SetFamily) -> ChoiceFunction:
    """Union of bundle-fixated choice functions over the family's members."""
    ground = family.ground
    parts = [packaged(Subset(ground, m)) for m in family.sorted_masks]
    if not parts:
        parts = [packaged(ground.empty())]
    return union(parts)


def neighborhoods(f: ChoiceFunction, x: str) -> SetFamily:
    """All menus from which x is chosen. Upward closed for complementary f."""
    _require_complementary(f, "neighborhoods")
    bit = 1 << f.ground.index(x)
    return SetFamily(f.ground, frozenset(m for m in range(f.ground.n_masks) if f.table[m] & bit))


def open_neighborhoods(f: ChoiceFunction, x: str) -> SetFamily:
    """All open menus containing x."""
    _require_complementary(f, "open_neighborhoods")
    bit = 1 << f.ground.index(x)
    return SetFamily(
        f.ground,
        frozenset(m for m, c in enumerate(f.table) if c == m and m & bit),
    )


def minimal_neighborhoods(f: ChoiceFunction, x: str) -> SetFamily:
    """Inclusion-minimal neighborhoods of x: an antichain of open menus.

    Openness of each member is a theorem, not an assumption; it is verified
    here and a failure raises ``InternalInvariantError``.
    """
    nbhd = neighborhoods(f, x)
    masks = sorted(nbhd.masks, key=lambda m: (m.bit_count(), m))
    minimal = []
    for m in masks:
        if not any(s != m and s & ~m == 0 for s in minimal):
            minimal.append(m)
    for m in minimal:
        if f.table[m] != m:
            raise InternalInvariantError(
                f"minimal neighborhood {Subset(f.ground, m)!r} of {x!r} is not open"
            )
    return SetFamily(f.ground, frozenset(minimal))


def is_continuous(f: ChoiceFunction) -> bool:
    """True when every neighborhood of every element contains one of the
    element's minimal neighborhoods. Automatic on a finite ground set; the
    check exists so the finite construction mirrors the general one."""
    _require_complementary(f, "is_continuous")
    for x in f.ground.elements:
        minimal = minimal_neighborhoods(f, x).sorted_masks
        for n in neighborhoods(f, x).sorted_masks:
            if not any(s & ~n == 0 for s in minimal):
                return False
    return True


@dataclass(frozen=True)
class NeighborhoodSystem:
    """A minimal-neighborhood assignment: one antichain of menus per element.

    Construction enforces the three properties that characterize such
    systems: every assigned menu contains its element (point-membership),
    the menus of one element are pairwise incomparable (antichain), and any
    member y of an assigned menu S has an assigned menu of its own inside S
    (refinement).
    """

    ground: GroundSet
    minimal: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        minimal = tuple(frozenset(s) for s in self.minimal)
        object.__setattr__(self, "minimal", minimal)
        ground = self.ground
        if len(minimal) != ground.n:
            raise ValueError("one neighborhood family per element required")
        for i, fam in enumerate(minimal):
            name = ground.elements[i]
            for s in fam:
                if not 0 <= s < ground.n_masks:
                    raise ValueError(f"mask {s:#x} out of range for {ground!r}")
                if not s >> i & 1:
                    raise NeighborhoodPropertyError(
                        "point-membership",
                        name,
                        f"{Subset(ground, s)!r} assigned to {name!r} does not contain it",
                    )
            members = sorted(fam)
            for a in members:
                for b in members:
                    if a != b and a & ~b == 0:
                        raise NeighborhoodPropertyError(
                            "antichain",
                            name,
                            f"{Subset(ground, a)!r} and {Subset(ground, b)!r} assigned "
                            f"to {name!r} are comparable",
                        )
        for i, fam in enumerate(minimal):
            for s in fam:
                probe = s
                while probe:
                    j = (probe & -probe).bit_length() - 1
                    probe &= probe - 1
                    if not any(t & ~s == 0 for t in minimal[j]):
                        raise NeighborhoodPropertyError(
                            "refinement",
                            ground.elements[j],
                            f"{ground.elements[j]!r} lies in "
                            f"{Subset(ground, s)!r} assigned to "
                            f"{ground.elements[i]!r} but has no assigned menu inside it",
                        )

    @classmethod
    def of(
        cls,
        ground: GroundSet,
        assignment: Mapping[str, Iterable[Subset | Iterable[str]]],
    ) -> NeighborhoodSystem:
        minimal: list[frozenset[int]] = []
        for name in ground.elements:
            fam = assignment.get(name, ())
            masks = set()
            for s in fam:
                masks.add(s.bits if isinstance(s, Subset) else ground.subset(s).bits)
            minimal.append(frozenset(masks))
        return cls(ground, tuple(minimal))

    def family(self, x: str) -> SetFamily:
        return SetFamily(self.ground, self.minimal[self.ground.index(x)])


def cf_from_neighborhood_system(system: NeighborhoodSystem) -> ChoiceFunction:
    """Choose from each menu the elements having an assigned menu inside it.

    The result is complementary, and its minimal neighborhoods recover the
    system exactly.
    """
    ground = system.ground
    minimal = system.minimal

    def rule(m: int) -> int:
        out = 0
        probe = m
        while probe:
            i = (probe & -probe).bit_length() - 1
            probe &= probe - 1
            if any(s & ~m == 0 for s in minimal[i]):
                out |= 1 << i
        return out

    return ChoiceFunction.build(ground, rule)


def neighborhood_system_of(f: ChoiceFunction) -> NeighborhoodSystem:
    """Collect the minimal neighborhoods of every element of a
    complementary choice function into one system."""
    _require_complementary(f, "neighborhood_system_of")
    return NeighborhoodSystem(
        f.ground,
        tuple(minimal_neighborhoods(f, x).masks for x in f.ground.elements),
    )


def preorder_from_cf(f: ChoiceFunction) -> Preorder:
    """Extract the preorder of a completely complementary choice function.

    Each element then has a unique minimal neighborhood S(x), and y <= x is
    defined as membership of y in S(x); the largest-ideal chooser of the
    result reproduces f. Inputs that are not completely complementary are
    rejected with a witness: an element whose minimal-neighborhood count is
    not one when f is complementary, or the failing axiom instance otherwise.
    """
    rep = f.analysis
    if not rep.completely_complementary:
        if rep.complementary:
            for x in f.ground.elements:
                fam = minimal_neighborhoods(f, x)
                if len(fam) != 1:
                    raise NotCompletelyComplementaryError(
                        f"element {x!r} has {len(fam)} minimal neighborhoods "
                        f"({', '.join(repr(s) for s in fam.subsets())}); exactly one is required",
                        report=rep,
                        witness=rep.witnesses["completely_complementary"],
                    )
            raise InternalInvariantError(
                "complementary input with singleton minimal neighborhoods "
                "failed the meet-preservation sweep"
            )
        wit = rep.witnesses["completely_complementary"]
        raise NotCompletelyComplementaryError(
            f"completely complementary choice function required; violation at "
            f"{wit.describe()}",
            report=rep,
            witness=wit,
        )
    ideal_masks = []
    for i, x in enumerate(f.ground.elements):
        (s,) = minimal_neighborhoods(f, x).masks
        ideal_masks.append(s)
    try:
        return Preorder(f.ground.elements, tuple(ideal_masks))
    except ValueError as exc:  # refinement property guarantees transitivity
        raise InternalInvariantError(
            f"extracted relation is not a preorder: {exc}"
        ) from exc
