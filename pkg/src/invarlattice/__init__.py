"""Exact lattice computations of degree bounds for rational invariants of
diagonal representations of finite abelian groups."""

from .bounds import (
    BoundsReport,
    DegreeProfile,
    beta_poly,
    beta_rational,
    check_extremal,
    extension_index,
    family_support,
    family_value,
    gamma_poly,
    gamma_rational,
    hard_floor,
    minkowski_rhs,
    root_lower_bound,
    successive_minima,
    support_from,
    verify_all,
)
from .enumeration import CROSS, SIMPLEX, Geometry, ball_points, shell_points
from .group_chars import (
    AbelianGroup,
    Character,
    CharSupport,
    Representation,
    Weight,
    effective_order,
    is_involution,
    make_group,
    reduce_support,
    representation,
    weight,
)
from .lattice import INFINITE, Lattice, PointSet, contains, index_of, invariant_lattice, span
from .witness import generator_witness, monomial_string, ratio_decomposition

__version__ = "0.1.0"
