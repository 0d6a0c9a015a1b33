"""Bounds and a numerical oracle for approximation numbers of composition operators on Hardy spaces."""

from .errors import (AccuracyError, ConstructionError, DegenerateSequenceError, DomainError,
                     HardyApproxError, RangeError)
from .disk import (PointSequence, SeparationData, carleson_embedding_constant, evaluation_norm,
                   geometric_test_sequence, hardy_norm, interpolation_constant_bounds, mobius_automorphism,
                   pseudo_hyperbolic_distance, uniform_separation_constant)
from .symbols import (Modulus, SymbolSpec, normalize_at, parse_symbol, pseudo_hyperbolic_derivative,
                      pseudo_hyperbolic_sup, taylor_coefficients)
from .oracle import (SingularValueTable, TruncatedMatrix, adjoint_kernel_check, approximation_numbers,
                     build_matrix, eigenvalues_normalized, kernel_approximation_numbers, oracle_table,
                     snumber_cross_check)
from .bounds import (BoundConstants, BoundReport, carl_triebel_lower_bound, carleson_window_upper_bound,
                     geometric_decay_floor, global_regular_upper_bound, lens_asymptotic_lower_bound,
                     lobo_lower_bound, optimize_lobo_sequence, radial_lower_bound)
from .decay import DecayModel, compare, fit

__version__ = "0.1.0"
