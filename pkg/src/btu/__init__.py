"""Construction, enumeration and analysis of Balanced Tanner Units."""

from .core import (
    INFINITE_GIRTH,
    Btu,
    CanonicalKey,
    cage,
    canonical_form,
    canonical_key,
    complement,
    count_nonisomorphic,
    enumerate_cycles,
    enumerate_nonisomorphic,
    gf2_rank,
    girth,
    is_isomorphic,
    known_cycle_lengths,
    psi,
    random_btu,
)
from .cycle_index import (
    CycleIndexPoly,
    CycleType,
    cap,
    cup,
    h_count,
    upper_bound_phi,
    z_automorphism_of_psi,
    z_cyclic,
    z_dihedral,
    z_symmetric,
)
from .errors import BtuError, DomainError, NotFoundError, ResourceError
from .partitions import Partition, count_p2, count_unrestricted, enumerate_p2
from .permutations import (
    Permutation,
    PermutationRep,
    beta_by_traversal,
    beta_of,
    decompose,
    enumerate_compatible,
    enumerate_compatible_with_partition,
    is_compatible,
    iter_compatible,
    published_f_beta,
    spt_node_count,
    spt_successor_profile,
    to_btu,
)
from .phi import (
    PhiSpec,
    build_phi_member,
    count_nonisomorphic_in_phi,
    enumerate_phi,
    has_4cycle,
    partition_profile,
)

__all__ = [
    "BtuError",
    "DomainError",
    "NotFoundError",
    "ResourceError",
    "Partition",
    "count_p2",
    "count_unrestricted",
    "enumerate_p2",
    "INFINITE_GIRTH",
    "Btu",
    "CanonicalKey",
    "cage",
    "canonical_form",
    "canonical_key",
    "complement",
    "count_nonisomorphic",
    "enumerate_cycles",
    "enumerate_nonisomorphic",
    "gf2_rank",
    "girth",
    "is_isomorphic",
    "known_cycle_lengths",
    "psi",
    "random_btu",
    "CycleIndexPoly",
    "CycleType",
    "cap",
    "cup",
    "h_count",
    "upper_bound_phi",
    "z_automorphism_of_psi",
    "z_cyclic",
    "z_dihedral",
    "z_symmetric",
    "Permutation",
    "PermutationRep",
    "beta_by_traversal",
    "beta_of",
    "decompose",
    "enumerate_compatible",
    "enumerate_compatible_with_partition",
    "is_compatible",
    "iter_compatible",
    "published_f_beta",
    "spt_node_count",
    "spt_successor_profile",
    "to_btu",
    "PhiSpec",
    "build_phi_member",
    "count_nonisomorphic_in_phi",
    "enumerate_phi",
    "has_4cycle",
    "partition_profile",
]

__version__ = "0.1.0"
