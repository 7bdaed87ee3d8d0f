"""
Toeplitz operators on Landau levels of C^n and their Fredholm indices.

Submodules
----------
specfun   multi-indices, Gamma ratios, sphere and radial moments
symbols   polynomial symbols on the sphere and their algebra
landau    ladder operators, Landau level bases, reproducing kernels
bergman   Bergman space of the ball and weight comparisons
toeplitz  graded truncations of Toeplitz operators
index     graded kernel/cokernel counts and the trace-formula check
chern     winding numbers and the odd Chern character
cli       command-line front end
"""

__version__ = "0.1.0"

from .bergman import (
    BallMonomial,
    bergman_coordinate_element,
    compare_weights,
    landau_coordinate_element,
    asymptotic_bergman_element,
    shift_structure,
)
from .chern import (
    SphereQuadrature,
    chern_form_trace,
    landau_prediction,
    odd_chern,
    odd_chern_integral,
    sphere_quadrature,
    winding_number,
)
from .errors import (LandauToeplitzError, DimensionMismatch, CapacityExceeded, DomainError, IndexOutOfRange, NotOnSphere, InvalidEpsilon, NotFredholm, NotStabilized, NotUnitarySymbol, NotConverged, NotInvertibleOnCircle, QuadratureNotConverged, MismatchExceedsTolerance, SymbolParseError)
from .index import IndexReport, check_fredholm, fedosov_index, graded_index, index_vs_level
from .landau import LevelSpec, PolyGaussian, hamiltonian_apply, inner_product, landau_kernel
from .symbols import (
    BoundarySymbol,
    FullSymbol,
    builtin_symbol,
    coordinate_symbol,
    lipschitz_split,
    parse_symbol,
    su2_symbol,
    symbol_product,
    zpow_symbol,
)
from .toeplitz import (
    GradedMatrix,
    assemble_commutator,
    assemble_toeplitz,
    commutator_decay,
    direct_sum_level,
    multiplicativity_defect,
)
