from .anchors import AnchorTuple
from .axioms import GramNorm, NNorm, cauchy_schwarz_check, check_n_norm_axioms
from .gram import DEFAULT_TOL, GramMatrix, cauchy_schwarz_gap, gram_n_norm, gram_n_norm_squared, standard_n_inner
from .report import CheckReport, Outcome, jsonable
from .sampling import SweepSettings, sweep
from .scalar import Arithmetic, ComplexScalar
from .topology import BallRegion, ball_membership, sequence_converges, sequence_is_cauchy
from .vector import LinearElement, Vector

__all__ = (
    'AnchorTuple',

    'GramNorm',
    'NNorm',
    'cauchy_schwarz_check',
    'check_n_norm_axioms',

    'DEFAULT_TOL',
    'GramMatrix',
    'cauchy_schwarz_gap',
    'gram_n_norm',
    'gram_n_norm_squared',
    'standard_n_inner',

    'CheckReport',
    'Outcome',
    'jsonable',

    'SweepSettings',
    'sweep',

    'Arithmetic',
    'ComplexScalar',

    'BallRegion',
    'ball_membership',
    'sequence_converges',
    'sequence_is_cauchy',

    'LinearElement',
    'Vector',
)
