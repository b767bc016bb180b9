"""Built-in worked instances, loadable by name through the CLI.

The centerpiece is the three-element submodular table whose induced choice
function violates heredity: submodularity does not buy substitutability.
The remaining fixtures are the small instances the documentation and the
verification suite keep returning to.
"""

from __future__ import annotations

from typing import Callable

from . import documents
from .choicefn import ideal_cf
from .core import GroundSet, Preorder, SetFamily
from .latticecf import cf_from_fix, divisor_lattice
from .pretop import interior_cf
from .supermod import SetFunction, induce_cf

_ABC = GroundSet(("a", "b", "c"))


def submodular_counterexample() -> SetFunction:
    """Submodular on {a,b,c}, yet its induced choice drops b when the menu
    shrinks from the full set to {a,b}: not substitutable."""
    return SetFunction.from_subset_values(
        _ABC,
        [
            ((), 0),
            (("a",), 3),
            (("b",), 2),
            (("c",), 2),
            (("a", "b"), 2),
            (("a", "c"), 2),
            (("b", "c"), 4),
            (("a", "b", "c"), 1),
        ],
    )


def _fixture_builders() -> dict[str, tuple[str, Callable[[], object]]]:
    return {
        "submodular-counterexample": (
            "submodular set function on {a,b,c} whose induced choice is not substitutable",
            submodular_counterexample,
        ),
        "submodular-counterexample-cf": (
            "the choice function induced by submodular-counterexample",
            lambda: induce_cf(submodular_counterexample()),
        ),
        "overlapping-pairs-cf": (
            "interior operator of the base {{a,b},{a,c}}: complementary but not completely so",
            lambda: interior_cf(SetFamily.of(_ABC, [("a", "b"), ("a", "c")])),
        ),
        "partition-pretopology": (
            "union-closed family {{},{a,b},{c},{a,b,c}}; its interior is completely complementary",
            lambda: SetFamily.of(_ABC, [(), ("a", "b"), ("c",), ("a", "b", "c")]),
        ),
        "twin-elements-preorder": (
            "preorder on {a,b,c} with a and b equivalent and c isolated",
            lambda: Preorder.from_pairs(("a", "b", "c"), [("a", "b"), ("b", "a")]),
        ),
        "twin-elements-cf": (
            "largest-ideal chooser of twin-elements-preorder",
            lambda: ideal_cf(
                Preorder.from_pairs(("a", "b", "c"), [("a", "b"), ("b", "a")])
            ),
        ),
        "divisors-12-lattice": (
            "divisors of 12 under divisibility",
            lambda: divisor_lattice(12),
        ),
        "divisors-12-lattice-cf": (
            "choice function on divisors of 12 with fixed set {1,2,3,6,12}",
            lambda: cf_from_fix(divisor_lattice(12), ("1", "2", "3", "6", "12")),
        ),
    }


def list_fixtures() -> list[tuple[str, str]]:
    return [(name, desc) for name, (desc, _) in _fixture_builders().items()]


def get_fixture(name: str) -> object:
    builders = _fixture_builders()
    if name not in builders:
        known = ", ".join(builders)
        raise ValueError(f"unknown fixture {name!r}; known fixtures: {known}")
    return builders[name][1]()


def get_fixture_document(name: str) -> dict:
    return documents.to_document(get_fixture(name))
