from .bounds import (
    inversion_continuity_check,
    inversion_continuity_sweep,
    invertibility_radius,
    openness_check,
    perturbation_bound_check,
    perturbation_scaling,
    perturbation_sweep,
)
from .classify import ElementClass, Verdict, classification_check, classify_element, group_property_check
from .neumann import (
    DEFAULT_MAX_TERMS,
    NeumannResult,
    near_identity_inverse,
    neumann_inverse,
    neumann_soundness_check,
    resolvent_check,
    resolvent_inverse,
)
from .tdz import TDZ_K_MAX, TDZ_THRESHOLD, NoWitness, Side, TdzWitness, boundary_tdz_witness, tdz_scan, tdz_subset_check

__all__ = (
    'inversion_continuity_check',
    'inversion_continuity_sweep',
    'invertibility_radius',
    'openness_check',
    'perturbation_bound_check',
    'perturbation_scaling',
    'perturbation_sweep',

    'ElementClass',
    'Verdict',
    'classification_check',
    'classify_element',
    'group_property_check',

    'DEFAULT_MAX_TERMS',
    'NeumannResult',
    'near_identity_inverse',
    'neumann_inverse',
    'neumann_soundness_check',
    'resolvent_check',
    'resolvent_inverse',

    'TDZ_K_MAX',
    'TDZ_THRESHOLD',
    'NoWitness',
    'Side',
    'TdzWitness',
    'boundary_tdz_witness',
    'tdz_scan',
    'tdz_subset_check',
)
