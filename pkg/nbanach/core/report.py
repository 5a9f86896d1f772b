import attr
import enum
import math
import numpy as np

from fractions import Fraction
from typing import Any

from .scalar import ComplexScalar, scalar_to_json
from .vector import LinearElement


class Outcome(enum.Enum):
    PASS = 'pass'
    FAIL = 'fail'
    HYPOTHESIS_VIOLATED = 'hypothesis_violated'
    ERROR = 'error'


def jsonable(value: Any) -> Any:
    """
    Convert library values into plain JSON data.

    Elements embed their full coordinates (so a counterexample can be replayed), exact
    rationals become ``"p/q"`` strings and non-finite floats become ``"inf"``/``"nan"``.
    """

    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, LinearElement):
        return {'type': type(value).__name__, **value.to_dict()}
    if isinstance(value, (ComplexScalar, complex, np.complexfloating)):
        return scalar_to_json(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if attr.has(type(value)):
        return {f.name.lstrip('_'): jsonable(getattr(value, f.name)) for f in attr.fields(type(value))}
    return repr(value)


@attr.s(slots=True, frozen=True, kw_only=True)
class CheckReport:
    """
    Outcome of one property / axiom check with its provenance.

    ``flags`` collects numerical warnings raised while the check ran (clamped Gram
    determinants, series truncation); they never change the outcome by themselves.
    """

    name: str = attr.ib()
    outcome: Outcome = attr.ib(validator=attr.validators.instance_of(Outcome))
    seed: int | None = attr.ib(default=None)
    samples: int = attr.ib(default=0)
    tol: float = attr.ib(default=1e-9)
    counterexample: Any = attr.ib(default=None)
    witness: Any = attr.ib(default=None)
    message: str = attr.ib(default='')
    details: dict[str, Any] = attr.ib(factory=dict)
    flags: tuple[str, ...] = attr.ib(default=(), converter=lambda v: tuple(sorted(set(v))))

    @property
    def passed(self) -> bool:
        return self.outcome is Outcome.PASS

    def to_dict(self) -> dict[str, Any]:
        return {
            'name': self.name,
            'outcome': self.outcome.value,
            'seed': self.seed,
            'samples': self.samples,
            'tol': self.tol,
            'counterexample': jsonable(self.counterexample),
            'witness': jsonable(self.witness),
            'message': self.message,
            'details': jsonable(self.details),
            'flags': list(self.flags),
        }


def verdict(failed: bool) -> Outcome:
    return Outcome.FAIL if failed else Outcome.PASS
