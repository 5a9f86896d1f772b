"""JSON forms of scalars, elements, anchors and algebra instances.

Scalars are ``{"re": ..., "im": ...}`` with number or ``"p/q"`` components (a bare real is
accepted too). Elements are plain lists: coordinates (pointwise), coefficients (series),
rows (operators); a unitization pair is ``{"x": <base element>, "a": <scalar>}``. The dict
forms written into reports (``{"coords": ...}``, ``{"coeffs": ...}``, ``{"matrix": ...}``)
are read back as well, so a recorded counterexample can be replayed.
"""

import attr
import logging

from typing import Any

from ..algebra import (
    DEFAULT_DEGREE,
    Kind,
    NormVariant,
    OperatorAlgebra,
    PointwiseAlgebra,
    SeriesAlgebra,
    UnitizationAlgebra,
)
from ..algebra.base import AlgebraInstance
from ..core.anchors import AnchorTuple
from ..core.report import jsonable
from ..core.scalar import scalar_from_json
from ..core.vector import LinearElement, Vector
from ..errors import ConfigError, DimensionMismatchError, PreconditionError


logger = logging.getLogger(__name__)

_PAYLOAD_KEYS = ('coords', 'coeffs', 'matrix')


def _payload(data: Any) -> Any:
    if isinstance(data, dict):
        for key in _PAYLOAD_KEYS:
            if key in data:
                return data[key]
        raise ValueError(f"cannot read an element from keys {sorted(data)}")
    if not isinstance(data, list):
        raise ValueError(f"an element is a list, got {type(data).__name__}")
    return data


def scalars_from_json(data: Any, exact: bool) -> list[Any]:
    return [scalar_from_json(v, exact) for v in _payload(data)]


def element_from_json(data: Any, inst: AlgebraInstance) -> LinearElement:
    """
    Read an element of ``inst``.

    :raises ValueError: unreadable data
    :raises DimensionMismatchError: wrong number of coordinates
    """

    if inst.kind is Kind.UNITIZATION:
        if not isinstance(data, dict) or set(data) - {'x', 'a'}:
            raise ValueError('a unitization element is {"x": ..., "a": ...}')
        x = element_from_json(data.get('x', [0] * inst.base.size), inst.base)
        return inst.pair(x, scalar_from_json(data.get('a', 0), inst.exact))

    if inst.kind is Kind.OPERATOR:
        rows = _payload(data)
        if not all(isinstance(row, list) for row in rows):
            raise ValueError("an operator is a list of rows")
        element = inst.element([scalars_from_json(row, inst.exact) for row in rows])
    elif inst.kind is Kind.TRUNCATED_SERIES:
        element = inst.series(*scalars_from_json(data, inst.exact))
    else:
        element = inst.element(*scalars_from_json(data, inst.exact))
    inst.check_element(element)
    return element


def anchor_from_json(data: Any, inst: AlgebraInstance) -> LinearElement:
    if inst.kind is Kind.OPERATOR:
        anchor = Vector.from_iterable(scalars_from_json(data, inst.exact), exact=inst.exact)
        inst.check_anchor(anchor)
        return anchor
    return element_from_json(data, inst)


def element_to_json(x: LinearElement) -> Any:
    return jsonable(x)


def _kind(spec: dict[str, Any], errors: list[str]) -> Kind | None:
    try:
        return Kind(spec.get('kind', Kind.POINTWISE.value))
    except ValueError:
        errors.append(f"instance.kind: unknown kind {spec.get('kind')!r}; "
                      f"expected one of {[k.value for k in Kind]}")
        return None


def _positive_int(spec: dict[str, Any], key: str, default: int | None, errors: list[str],
                  *, minimum: int = 1) -> int | None:
    value = spec.get(key, default)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        errors.append(f"instance.{key}: expected an integer >= {minimum}, got {value!r}")
        return None
    return value


def _build_default(kind: Kind, spec: dict[str, Any], n: int, exact: bool, tol: float,
                   errors: list[str]) -> AlgebraInstance | None:
    try:
        if kind is Kind.POINTWISE:
            m = _positive_int(spec, 'm', 3, errors)
            return None if m is None else PointwiseAlgebra.create(n=n, m=m, exact=exact, tol=tol)
        if kind is Kind.TRUNCATED_SERIES:
            degree = _positive_int(spec, 'degree', DEFAULT_DEGREE, errors)
            extra = {'norm_variant': NormVariant(spec['norm_variant'])} if 'norm_variant' in spec else {}
            if degree is None:
                return None
            return SeriesAlgebra.create(n=n, degree=degree, exact=exact, tol=tol, **extra)
        if kind is Kind.OPERATOR:
            d = _positive_int(spec, 'd', 3, errors)
            budget = _positive_int(spec, 'budget', None, errors)
            extra = {} if budget is None else {'budget': budget}
            return None if d is None else OperatorAlgebra.create(n=n, d=d, exact=exact, tol=tol, **extra)
        base_spec = spec.get('base')
        if not isinstance(base_spec, dict):
            errors.append("instance.base: a unitization needs a base instance object")
            return None
        nested: list[str] = []
        base = instance_from_json(base_spec, exact=exact, tol=tol, errors=nested)
        errors.extend(f"instance.base: {e}" for e in nested)
        return None if base is None else UnitizationAlgebra.create(base)
    except (PreconditionError, DimensionMismatchError, ValueError, TypeError) as exc:
        errors.append(f"instance: {exc}")
        return None


def _with_anchors(inst: AlgebraInstance, raw: Any, n: int | None, errors: list[str]) -> AlgebraInstance | None:
    if not isinstance(raw, list) or not raw:
        errors.append("instance.anchors: missing anchors; an n-norm needs n - 1 >= 1 anchors")
        return None
    if n is not None and len(raw) != n - 1:
        errors.append(f"instance.anchors: n = {n} needs {n - 1} anchors, got {len(raw)}")
        return None

    anchors = []
    for i, data in enumerate(raw):
        try:
            anchors.append(anchor_from_json(data, inst))
        except (ValueError, DimensionMismatchError) as exc:
            errors.append(f"instance.anchors[{i}]: {exc}")
    if len(anchors) != len(raw):
        return None

    try:
        tuple_ = AnchorTuple(anchors=anchors)
        if inst.norm_variant is not NormVariant.GRAM_INDUCED:
            tuple_ = tuple_.normalize(inst.magnitude)
        return attr.evolve(inst, anchors=tuple_)
    except PreconditionError as exc:
        errors.append(f"instance.anchors: {exc}")
        return None


def instance_from_json(
    spec: Any,
    *,
    exact: bool = False,
    tol: float = 1e-9,
    errors: list[str] | None = None,
) -> AlgebraInstance | None:
    """
    Build an algebra instance from its JSON description::

        {"kind": "pointwise", "m": 4, "n": 3}
        {"kind": "truncated_series", "degree": 8, "norm_variant": "eq21_max_product"}
        {"kind": "operator", "d": 3, "anchors": [[0, 1, 0]]}
        {"kind": "unitization", "base": {"kind": "pointwise", "m": 2}}

    Anchors default to the instance's standard ones; given anchors are normalized to
    magnitude 1 (except for Gram-induced operator norms) and must be independent.

    Problems are appended to ``errors`` when a list is passed (the result is then None);
    otherwise they are raised together as one ConfigError.
    """

    collect: list[str] = []
    inst = None
    if not isinstance(spec, dict):
        collect.append("instance: expected an object")
    else:
        kind = _kind(spec, collect)
        n = _positive_int(spec, 'n', None, collect, minimum=2)
        anchors = spec.get('anchors')
        if n is None and isinstance(anchors, list) and anchors:
            n = len(anchors) + 1
        if kind is not None and not any(e.startswith('instance.n') for e in collect):
            inst = _build_default(kind, spec, n or 2, exact, tol, collect)
        if inst is not None and 'anchors' in spec:
            inst = _with_anchors(inst, anchors, _positive_int(spec, 'n', None, []), collect)

    if errors is not None:
        errors.extend(collect)
    elif collect:
        raise ConfigError(collect)
    return None if collect else inst
