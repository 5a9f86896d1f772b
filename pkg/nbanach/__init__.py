__version__ = '0.1.0'

from .algebra import (  # noqa: E402
    NormVariant,
    OperatorAlgebra,
    PointwiseAlgebra,
    SeriesAlgebra,
    UnitizationAlgebra,
)
from .core import AnchorTuple, CheckReport, ComplexScalar, Outcome, Vector  # noqa: E402
from .functionals import BLinearFunctional, make_functional  # noqa: E402
from .invertibility import classify_element, neumann_inverse, resolvent_inverse, tdz_scan  # noqa: E402

__all__ = (
    'NormVariant',
    'OperatorAlgebra',
    'PointwiseAlgebra',
    'SeriesAlgebra',
    'UnitizationAlgebra',

    'AnchorTuple',
    'CheckReport',
    'ComplexScalar',
    'Outcome',
    'Vector',

    'BLinearFunctional',
    'make_functional',

    'classify_element',
    'neumann_inverse',
    'resolvent_inverse',
    'tdz_scan',
)
