from .exponential import EXP_TOL, algebra_exponential, exponential_identities_check, exponential_terms
from .functional import (
    BLinearFunctional,
    FunctionalNorm,
    character_functionals,
    coordinate_functional,
    eval_functional,
    functional_norm,
    functional_norm_check,
    make_functional,
)
from .homomorphism import (
    CHARACTER_CANDIDATES,
    HomomorphismVerdict,
    character_grid,
    character_search,
    gkz_converse_check,
    gkz_forward_check,
    homomorphism_lemma_check,
    invertible_kernel_element,
    is_b_homomorphism,
)

__all__ = (
    'EXP_TOL',
    'algebra_exponential',
    'exponential_identities_check',
    'exponential_terms',

    'BLinearFunctional',
    'FunctionalNorm',
    'character_functionals',
    'coordinate_functional',
    'eval_functional',
    'functional_norm',
    'functional_norm_check',
    'make_functional',

    'CHARACTER_CANDIDATES',
    'HomomorphismVerdict',
    'character_grid',
    'character_search',
    'gkz_converse_check',
    'gkz_forward_check',
    'homomorphism_lemma_check',
    'invertible_kernel_element',
    'is_b_homomorphism',
)
