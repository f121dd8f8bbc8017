"""Permutation groups, subnormality, and special triples of transitive actions."""

from .algorithms import (
    GroupCatalog,
    SubnormalChain,
    WielandtReport,
    all_subgroups,
    are_conjugate,
    conjugacy_classes,
    conjugate_subgroup,
    is_normal,
    is_subnormal,
    join,
    normal_closure,
    normal_subgroups,
    subnormal_chain,
    transitive_groups,
    wielandt_sweep,
    wielandt_verify,
)
from .core import (
    Permutation,
    PermGroup,
    compose,
    format_cycles,
    group_from_generators,
    identity,
    inverse,
    is_member,
    is_transitive,
    orbit,
    order,
    parse_cycles,
    point_stabilizer,
    symmetric_group,
    trivial_group,
)
from .errors import (
    CapacityError,
    CycleParseError,
    InputError,
    InvariantError,
    NotInStabilizerError,
    NotNormalError,
    NotTransitiveError,
    TripleError,
)
from .triples import (
    SpecialityReport,
    SplittingReport,
    Triple,
    descending_chain,
    f_circle,
    h_at,
    is_special,
    make_triple,
    monodromy_splitting,
    search_special,
    span,
)

__version__ = "0.1.0"
