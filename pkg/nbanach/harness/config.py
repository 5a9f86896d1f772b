"""Run configuration.

A config is a UTF-8 JSON object::

    {
      "instance": {"kind": "pointwise", "m": 4, "n": 3},
      "checks": ["n-norm-axioms", {"name": "openness", "samples": 20, "perturbations": 50}],
      "seed": 42,
      "samples": 200,
      "tolerance": 1e-9,
      "arithmetic_mode": "approximate",
      "functional": {"coeffs": [1, 0, 0, 0]}
    }

Everything but ``instance`` is optional. ``checks`` defaults to every registered check; an
entry is a check name or an object with ``name``, an optional ``samples`` override and
check-specific parameters (``n``/``dim`` for cauchy-schwarz, ``perturbations`` for
openness, ``k_max``/``threshold`` for tdz-scan; anything else is an error). ``functional``
(coefficients over the flattened coordinates, optional ``anchors``) feeds the functional
checks, which otherwise use the instance's first known character.
"""

import attr
import json
import logging
import math

from pathlib import Path
from typing import Any, Mapping

from ..algebra.base import AlgebraInstance
from ..core.anchors import AnchorTuple
from ..core.gram import DEFAULT_TOL
from ..core.scalar import Arithmetic, scalar_from_json
from ..errors import ConfigError, DimensionMismatchError, PreconditionError
from ..functionals import BLinearFunctional, make_functional
from .registry import CHECKS, PARAMS
from .serialize import anchor_from_json, instance_from_json


DEFAULT_SAMPLES = 200

TOP_LEVEL_KEYS = {'instance', 'checks', 'seed', 'samples', 'tolerance', 'arithmetic_mode', 'functional'}

logger = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True, kw_only=True)
class CheckSpec:
    name: str = attr.ib()
    samples: int | None = attr.ib(default=None)
    params: dict[str, Any] = attr.ib(factory=dict)


@attr.s(slots=True, frozen=True, kw_only=True)
class RunConfig:
    instance: AlgebraInstance = attr.ib()
    checks: tuple[CheckSpec, ...] = attr.ib(converter=tuple)
    seed: int = attr.ib(default=0)
    samples: int = attr.ib(default=DEFAULT_SAMPLES)
    tolerance: float = attr.ib(default=DEFAULT_TOL)
    arithmetic_mode: Arithmetic = attr.ib(default=Arithmetic.APPROXIMATE)
    functional: BLinearFunctional | None = attr.ib(default=None)

    @property
    def exact(self) -> bool:
        return self.arithmetic_mode is Arithmetic.EXACT

    def echo(self) -> dict[str, Any]:
        return {
            'instance': self.instance.describe(),
            'checks': [c.name for c in self.checks],
            'seed': self.seed,
            'samples': self.samples,
            'tolerance': self.tolerance,
            'arithmetic_mode': self.arithmetic_mode.value,
            'functional': None if self.functional is None else self.functional.label,
        }


def _integer(doc: Mapping[str, Any], key: str, default: int, errors: list[str], *, minimum: int) -> int:
    value = doc.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        errors.append(f"{key}: expected an integer >= {minimum}, got {value!r}")
        return default
    return value


def _tolerance(doc: Mapping[str, Any], errors: list[str]) -> float:
    value = doc.get('tolerance', DEFAULT_TOL)
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value) or value <= 0:
        errors.append(f"tolerance: expected a positive number, got {value!r}")
        return DEFAULT_TOL
    return float(value)


def _mode(doc: Mapping[str, Any], errors: list[str]) -> Arithmetic:
    try:
        return Arithmetic(doc.get('arithmetic_mode', Arithmetic.APPROXIMATE.value))
    except ValueError:
        errors.append(f"arithmetic_mode: expected 'approximate' or 'exact', got {doc.get('arithmetic_mode')!r}")
        return Arithmetic.APPROXIMATE


def _checks(raw: Any, errors: list[str]) -> list[CheckSpec]:
    if raw is None:
        return [CheckSpec(name=name) for name in CHECKS]
    if not isinstance(raw, list) or not raw:
        errors.append("checks: expected a non-empty list of check names")
        return []

    specs, seen = [], set()
    for i, entry in enumerate(raw):
        if isinstance(entry, str):
            entry = {'name': entry}
        if not isinstance(entry, dict) or not isinstance(entry.get('name'), str):
            errors.append(f"checks[{i}]: expected a check name or an object with a 'name'")
            continue
        params = dict(entry)
        name = params.pop('name')
        samples = params.pop('samples', None)
        if name not in CHECKS:
            errors.append(f"checks[{i}]: unknown check {name!r}; registered checks are {sorted(CHECKS)}")
            continue
        if name in seen:
            errors.append(f"checks[{i}]: {name!r} listed twice")
            continue
        unknown = sorted(set(params) - PARAMS[name])
        if unknown:
            errors.append(f"checks[{i}]: unknown parameter(s) {unknown} for {name!r}; "
                          f"accepted are {sorted(PARAMS[name])}")
            continue
        if samples is not None and (isinstance(samples, bool) or not isinstance(samples, int) or samples < 1):
            errors.append(f"checks[{i}].samples: expected a positive integer, got {samples!r}")
            continue
        seen.add(name)
        specs.append(CheckSpec(name=name, samples=samples, params=params))
    return specs


def _functional(raw: Any, inst: AlgebraInstance, errors: list[str]) -> BLinearFunctional | None:
    if not isinstance(raw, dict) or not isinstance(raw.get('coeffs'), list):
        errors.append("functional: expected an object with a 'coeffs' list")
        return None
    try:
        coeffs = [scalar_from_json(c, inst.exact) for c in raw['coeffs']]
        anchors = None
        if 'anchors' in raw:
            anchors = AnchorTuple(anchors=[anchor_from_json(a, inst) for a in raw['anchors']])
        return make_functional(inst, coeffs, anchors=anchors, label=raw.get('label', 'T'))
    except (ValueError, DimensionMismatchError, PreconditionError) as exc:
        errors.append(f"functional: {exc}")
        return None


def parse_config(text: str, overrides: Mapping[str, Any] | None = None) -> RunConfig:
    """
    Validate a JSON config; ``overrides`` (non-None entries win) come from the command line.

    :raises ConfigError: with every problem found, not just the first
    """

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([f"malformed JSON: {exc}"]) from exc
    if not isinstance(doc, dict):
        raise ConfigError(["the config must be a JSON object"])
    doc = {**doc, **{k: v for k, v in (overrides or {}).items() if v is not None}}

    errors = [f"{key}: unknown key" for key in sorted(set(doc) - TOP_LEVEL_KEYS)]
    seed = _integer(doc, 'seed', 0, errors, minimum=0)
    samples = _integer(doc, 'samples', DEFAULT_SAMPLES, errors, minimum=1)
    tolerance = _tolerance(doc, errors)
    mode = _mode(doc, errors)
    checks = _checks(doc.get('checks'), errors)

    inst = None
    if 'instance' not in doc:
        errors.append("instance: missing")
    else:
        inst = instance_from_json(doc['instance'], exact=mode is Arithmetic.EXACT, tol=tolerance, errors=errors)

    functional = None
    if inst is not None and doc.get('functional') is not None:
        functional = _functional(doc['functional'], inst, errors)

    if errors:
        for error in errors:
            logger.debug("config error: %s", error)
        raise ConfigError(errors)
    return RunConfig(
        instance=inst,
        checks=checks,
        seed=seed,
        samples=samples,
        tolerance=tolerance,
        arithmetic_mode=mode,
        functional=functional,
    )


def load_config(path: str | Path, overrides: Mapping[str, Any] | None = None) -> RunConfig:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise ConfigError([f"cannot read {path}: {exc}"]) from exc
    return parse_config(text, overrides)
