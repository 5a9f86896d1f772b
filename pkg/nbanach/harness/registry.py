"""Registered checks: name -> runner.

Every runner takes a CheckContext and returns one CheckReport. Runners that need a
b-linear functional use the configured one or, failing that, the instance's first known
character; an instance without characters makes those checks hypothesis-violated.
"""

import attr

from typing import Any, Callable

from ..algebra import multiplication_continuity_check, multiplicativity_audit, unit_law_check
from ..algebra.base import AlgebraInstance
from ..core import cauchy_schwarz_check, check_n_norm_axioms
from ..core.report import CheckReport
from ..core.sampling import SERIAL, SweepSettings
from ..errors import PreconditionError
from ..functionals import (
    BLinearFunctional,
    character_functionals,
    character_search,
    exponential_identities_check,
    functional_norm_check,
    gkz_converse_check,
    gkz_forward_check,
    homomorphism_lemma_check,
)
from ..invertibility import (
    classification_check,
    group_property_check,
    inversion_continuity_sweep,
    neumann_soundness_check,
    openness_check,
    perturbation_scaling,
    perturbation_sweep,
    resolvent_check,
    tdz_subset_check,
)
from ..invertibility.bounds import OPENNESS_PERTURBATIONS


@attr.s(slots=True, frozen=True, kw_only=True)
class CheckContext:
    instance: AlgebraInstance = attr.ib()
    samples: int = attr.ib()
    seed: int = attr.ib()
    tol: float = attr.ib()
    settings: SweepSettings = attr.ib(default=SERIAL)
    functional: BLinearFunctional | None = attr.ib(default=None)
    params: dict[str, Any] = attr.ib(factory=dict)

    def functional_or_character(self) -> BLinearFunctional:
        if self.functional is not None:
            return self.functional
        characters = character_functionals(self.instance)
        if not characters:
            raise PreconditionError("no functional configured and the instance has no known character",
                                    witness=self.instance.describe())
        return characters[0]


Runner = Callable[[CheckContext], CheckReport]

CHECKS: dict[str, Runner] = {}

# subcommand -> the checks it runs
GROUPS: dict[str, tuple[str, ...]] = {}

# check -> the config parameters its runner reads
PARAMS: dict[str, frozenset[str]] = {}


def register(name: str, group: str, params: tuple[str, ...] = ()) -> Callable[[Runner], Runner]:
    def decorator(runner: Runner) -> Runner:
        CHECKS[name] = runner
        PARAMS[name] = frozenset(params)
        GROUPS[group] = (*GROUPS.get(group, ()), name)
        return runner
    return decorator


def _sweep_args(ctx: CheckContext) -> dict[str, Any]:
    return {'samples': ctx.samples, 'seed': ctx.seed, 'tol': ctx.tol, 'settings': ctx.settings}


@register('n-norm-axioms', 'check-axioms')
def _(ctx: CheckContext) -> CheckReport:
    return check_n_norm_axioms(ctx.instance.as_nnorm(), **_sweep_args(ctx))


@register('cauchy-schwarz', 'check-axioms', params=('n', 'dim'))
def _(ctx: CheckContext) -> CheckReport:
    n = ctx.params.get('n', ctx.instance.n)
    dim = ctx.params.get('dim', max(4, n))
    return cauchy_schwarz_check(dim, n, exact=ctx.instance.exact, **_sweep_args(ctx))


@register('multiplicativity-audit', 'audit')
def _(ctx: CheckContext) -> CheckReport:
    return multiplicativity_audit(ctx.instance, **_sweep_args(ctx))


@register('unit-law', 'audit')
def _(ctx: CheckContext) -> CheckReport:
    return unit_law_check(ctx.instance, **_sweep_args(ctx))


@register('mul-continuity', 'audit')
def _(ctx: CheckContext) -> CheckReport:
    return multiplication_continuity_check(ctx.instance, **_sweep_args(ctx))


@register('invert', 'invert')
def _(ctx: CheckContext) -> CheckReport:
    return neumann_soundness_check(ctx.instance, **_sweep_args(ctx))


@register('classify', 'invert')
def _(ctx: CheckContext) -> CheckReport:
    return classification_check(ctx.instance, **_sweep_args(ctx))


@register('openness', 'invert', params=('perturbations',))
def _(ctx: CheckContext) -> CheckReport:
    perturbations = ctx.params.get('perturbations', OPENNESS_PERTURBATIONS)
    return openness_check(ctx.instance, perturbations=perturbations, **_sweep_args(ctx))


@register('inversion-continuity', 'invert')
def _(ctx: CheckContext) -> CheckReport:
    return inversion_continuity_sweep(ctx.instance, **_sweep_args(ctx))


@register('perturbation', 'invert')
def _(ctx: CheckContext) -> CheckReport:
    return perturbation_sweep(ctx.instance, **_sweep_args(ctx))


@register('perturbation-scaling', 'invert')
def _(ctx: CheckContext) -> CheckReport:
    return perturbation_scaling(ctx.instance, ctx.tol)


@register('group-property', 'invert')
def _(ctx: CheckContext) -> CheckReport:
    return group_property_check(ctx.instance, **_sweep_args(ctx))


@register('resolvent', 'resolvent')
def _(ctx: CheckContext) -> CheckReport:
    return resolvent_check(ctx.instance, **_sweep_args(ctx))


@register('tdz-scan', 'tdz-scan', params=('k_max', 'threshold'))
def _(ctx: CheckContext) -> CheckReport:
    extra = {k: ctx.params[k] for k in ('k_max', 'threshold') if k in ctx.params}
    return tdz_subset_check(ctx.instance, **extra, **_sweep_args(ctx))


@register('functional-norm', 'gkz')
def _(ctx: CheckContext) -> CheckReport:
    return functional_norm_check(ctx.functional_or_character(), ctx.instance, **_sweep_args(ctx))


@register('homomorphism-lemma', 'gkz')
def _(ctx: CheckContext) -> CheckReport:
    return homomorphism_lemma_check(ctx.functional_or_character(), ctx.instance, **_sweep_args(ctx))


@register('gkz-forward', 'gkz')
def _(ctx: CheckContext) -> CheckReport:
    return gkz_forward_check(ctx.functional_or_character(), ctx.instance, **_sweep_args(ctx))


@register('gkz-converse', 'gkz')
def _(ctx: CheckContext) -> CheckReport:
    return gkz_converse_check(ctx.functional_or_character(), ctx.instance, **_sweep_args(ctx))


@register('character-search', 'gkz')
def _(ctx: CheckContext) -> CheckReport:
    return character_search(ctx.instance, ctx.tol)


@register('exponential', 'gkz')
def _(ctx: CheckContext) -> CheckReport:
    return exponential_identities_check(ctx.instance, **_sweep_args(ctx))


def checks_for(group: str) -> tuple[str, ...]:
    """Check names run by a subcommand; ``run`` means all of them."""

    if group == 'run':
        return tuple(CHECKS)
    return GROUPS[group]
