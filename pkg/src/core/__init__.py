"""Numerical core for pipframe"""
from .errors import (
    ConfigError, ConvergenceError, DimensionError, DomainError,
    NotInvertibleError, PreconditionError, UndefinedProductError
)
from .measure import FiniteMeasureSpace, ScalarField, pair, total_mass
from .lattice import LpIndex, ScaleIndex, leq, involution, meet, join
from .spaces import (
    Lp, WeightedL2, Projective, Inductive, norm, inductive_norm,
    dual_descriptor, dual_norm, holder_bound_check, realize_lp_index
)
from .operators import (
    IndexedSpaceFamily, PipOperator, operator_norm, adjoint, multiply, is_symmetric
)
from .frames import (
    VectorFamily, FrameBounds, PairReport, analysis, synthesis, frame_bounds,
    resolution_operator, check_reproducing_pair, canonical_dual, weighted_pair,
    minmax_pair, semiframe_sweep, range_containment
)
from .vspace import (
    SynthesisMap, QuotientSpace, synthesis_map, class_norm, class_inner,
    duality_pairing, represent_functional, is_mu_total, is_mu_independent,
    quotient_dimensions
)
from .scales import (
    HilbertScale, DiscreteRKHS, scale_space, triplet, rkhs_weight_pair, range_certificates
)

__all__ = [
    'ConfigError', 'ConvergenceError', 'DimensionError', 'DomainError',
    'NotInvertibleError', 'PreconditionError', 'UndefinedProductError',
    'FiniteMeasureSpace', 'ScalarField', 'pair', 'total_mass',
    'LpIndex', 'ScaleIndex', 'leq', 'involution', 'meet', 'join',
    'Lp', 'WeightedL2', 'Projective', 'Inductive', 'norm', 'inductive_norm',
    'dual_descriptor', 'dual_norm', 'holder_bound_check', 'realize_lp_index',
    'IndexedSpaceFamily', 'PipOperator', 'operator_norm', 'adjoint', 'multiply', 'is_symmetric',
    'VectorFamily', 'FrameBounds', 'PairReport', 'analysis', 'synthesis', 'frame_bounds',
    'resolution_operator', 'check_reproducing_pair', 'canonical_dual', 'weighted_pair',
    'minmax_pair', 'semiframe_sweep', 'range_containment',
    'SynthesisMap', 'QuotientSpace', 'synthesis_map', 'class_norm', 'class_inner',
    'duality_pairing', 'represent_functional', 'is_mu_total', 'is_mu_independent',
    'quotient_dimensions',
    'HilbertScale', 'DiscreteRKHS', 'scale_space', 'triplet', 'rkhs_weight_pair',
    'range_certificates',
]
