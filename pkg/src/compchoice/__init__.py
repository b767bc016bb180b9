"""Complementary choice functions on finite powersets and lattices.

A choice function picks a subset of every menu; it is complementary when it
is consistent (discarding rejected items never changes the choice) and
monotone (larger menus never lose chosen items). This package constructs,
analyzes and inter-converts such functions through their three universal
representations: union-closed families of open sets, direct images of
completely complementary choice functions on a pair space, and least
maximizers of supermodular set functions, together with the same story on
arbitrary finite lattices.
"""

from .choicefn import (
    AxiomReport,
    ChoiceFunction,
    Witness,
    analyze,
    cofinite,
    consistency_matches_idempotence,
    ideal_cf,
    identity_cf,
    packaged,
    threshold,
    union,
    witness_violates,
)
from .core import (
    DEFAULT_POWERSET_LIMIT,
    FiniteLattice,
    GroundSet,
    Preorder,
    SetFamily,
    Subset,
    SubsetWeakOrder,
    downset,
    is_intersection_closed,
    is_union_closed,
    powerset_limit,
    principal_ideal,
    set_powerset_limit,
    union_closure,
)
from .errors import (
    CompChoiceError,
    ContractionError,
    DocumentError,
    GroundSetMismatchError,
    InfiniteGroundSetError,
    InternalInvariantError,
    JoinClosureError,
    LiftVerificationError,
    NeighborhoodPropertyError,
    NoUniqueMinimizerError,
    NotALatticeError,
    NotComplementaryError,
    NotCompletelyComplementaryError,
    PowersetLimitError,
    PreconditionError,
)
from .latticecf import (
    LatticeAxiomReport,
    LatticeCF,
    LatticeFunction,
    analyze_lattice,
    cf_from_fix,
    chain_lattice,
    classify_lattice,
    divisor_lattice,
    fix_set,
    grid_lattice,
    induce_lattice_cf,
    powerset_lattice,
    standard_lattice_suite,
)
from .pretop import (
    NeighborhoodSystem,
    cf_from_neighborhood_system,
    decompose,
    image_family,
    interior_cf,
    is_continuous,
    minimal_neighborhoods,
    neighborhood_system_of,
    neighborhoods,
    open_neighborhoods,
    open_sets,
    preorder_from_cf,
    reconstruct,
)
from .supermod import (
    ModularityClass,
    SetFunction,
    argmax_family,
    cf_from_order,
    classify,
    default_epsilon,
    elementary,
    induce_cf,
    is_supermodular_order,
    order_from_setfn,
    perturb,
    random_modular,
    random_supermodular,
    synthesize,
)
from .transport import Lift, PointMap, direct_image, economical_lift, full_lift

__version__ = "0.1.0"
