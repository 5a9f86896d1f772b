from .audit import alg_mul, multiplication_continuity_check, multiplicativity_audit, unit_law_check
from .base import DEPENDENCE_TOL, AlgebraElement, AlgebraInstance, Kind, NormVariant
from .operator import OPERATOR_NORM_BUDGET, OperatorAlgebra, OperatorElement, OperatorNormEstimate, operator_b_norm
from .pointwise import PointwiseAlgebra, PointwiseElement, sup_n_norm
from .series import DEFAULT_DEGREE, SeriesAlgebra, TruncatedSeries, eq21_n_norm, l1_n_norm
from .unitization import UnitizationAlgebra, UnitizationElement, unitization_n_norm, unitize_mul

__all__ = (
    'alg_mul',
    'multiplication_continuity_check',
    'multiplicativity_audit',
    'unit_law_check',

    'DEPENDENCE_TOL',
    'AlgebraElement',
    'AlgebraInstance',
    'Kind',
    'NormVariant',

    'OPERATOR_NORM_BUDGET',
    'OperatorAlgebra',
    'OperatorElement',
    'OperatorNormEstimate',
    'operator_b_norm',

    'PointwiseAlgebra',
    'PointwiseElement',
    'sup_n_norm',

    'DEFAULT_DEGREE',
    'SeriesAlgebra',
    'TruncatedSeries',
    'eq21_n_norm',
    'l1_n_norm',

    'UnitizationAlgebra',
    'UnitizationElement',
    'unitization_n_norm',
    'unitize_mul',
)
