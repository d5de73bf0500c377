"""Equivariant discrete Morse theory on the nerve of the partition lattice."""

from .setpart import (
    Partition,
    PartitionParseError,
    all_partitions,
    enumerate_proper,
    format_partition,
    parse_partition,
)
from .ordercomplex import (
    ExplicitComplex,
    InvalidPosetError,
    OrderComplex,
    Simplex,
    build_order_complex,
    parse_simplex,
    proper_part_complex,
)
from .perm import (
    ComplexAction,
    Orbit,
    Perm,
    PermGroup,
    QuotientComplex,
    act,
    orbits,
    quotient_complex,
)
from .morse import (
    InvalidMatchingError,
    Matching,
    MatchingCertificate,
    MorseData,
    check_equivariance,
    closure_matching,
    cohomology_pairing,
    cohomology_representatives,
    cone_matching,
    equivariant_patchwork_matching,
    gradient_chain,
    matching_from_dump,
    morse_data,
    patchwork_matching,
    quotient_matching,
    validate_matching,
)
from .construction import (
    SpecialCells,
    anchored_flags,
    anchored_vertices,
    block_size_label,
    build_main_matching,
    fiber_of,
    fiber_zero_matching,
    get_action,
    get_complex,
    is_anchored,
    is_pair_vertex,
    lift_chain,
    lift_partition,
    matching_report,
    orbit_vertex_label,
    pair_vertex,
    pair_vertices,
    quotient_critical_cells,
    restrict_permutation,
    special_cells,
    split_vertex,
    unlift_chain,
    unlift_partition,
)
from .homology import (
    DimHomology,
    HomologyResult,
    InvalidComplexError,
    homology_of,
    is_unimodular,
    smith_normal_form,
    verify_wedge,
)

__version__ = "0.1.0"
