import attr
import logging
import time

from typing import Any, Iterable

from .. import __version__
from ..core.report import CheckReport, Outcome
from ..core.sampling import SERIAL, SweepSettings
from ..errors import ConfigError, NBanachError, PreconditionError
from .config import RunConfig
from .registry import CHECKS, CheckContext


SCHEMA_VERSION = 1

logger = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True, kw_only=True)
class RunReport:
    """
    Outcomes of one run. ``timing`` (seconds per check) is None in exact mode so that
    identical configs give byte-identical reports.
    """

    version: str = attr.ib()
    config: dict[str, Any] = attr.ib()
    checks: tuple[CheckReport, ...] = attr.ib(converter=tuple)
    timing: dict[str, float] | None = attr.ib(default=None)

    @property
    def passed(self) -> bool:
        return all(r.outcome in (Outcome.PASS, Outcome.HYPOTHESIS_VIOLATED) for r in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def counts(self) -> dict[str, int]:
        return {o.value: sum(r.outcome is o for r in self.checks) for o in Outcome}

    def to_dict(self) -> dict[str, Any]:
        out = {
            'schema_version': SCHEMA_VERSION,
            'version': self.version,
            'seed': self.config['seed'],
            'config': self.config,
            'passed': self.passed,
            'counts': self.counts(),
            'checks': [r.to_dict() for r in self.checks],
        }
        if self.timing is not None:
            out['timing'] = self.timing
        return out


def select_checks(cfg: RunConfig, names: Iterable[str]) -> RunConfig:
    """Keep the configured checks that belong to ``names`` (a subcommand's group)."""

    names = set(names)
    kept = [c for c in cfg.checks if c.name in names]
    if not kept:
        raise ConfigError([f"checks: none of {[c.name for c in cfg.checks]} runs under this command; "
                           f"expected some of {sorted(names)}"])
    return attr.evolve(cfg, checks=kept)


def _failed(name: str, cfg: RunConfig, samples: int, outcome: Outcome, exc: Exception,
            witness: Any = None) -> CheckReport:
    return CheckReport(name=name, outcome=outcome, seed=cfg.seed, samples=samples, tol=cfg.tolerance,
                       witness=witness, message=f"{type(exc).__name__}: {exc}")


def run_check(cfg: RunConfig, name: str, samples: int, params: dict[str, Any],
              settings: SweepSettings = SERIAL) -> CheckReport:
    """
    Run one registered check. Broken hypotheses become HYPOTHESIS_VIOLATED and any other
    library or numerical exception an ERROR outcome; nothing escapes.
    """

    ctx = CheckContext(instance=cfg.instance, samples=samples, seed=cfg.seed, tol=cfg.tolerance,
                       settings=settings, functional=cfg.functional, params=params)
    try:
        report = CHECKS[name](ctx)
    except PreconditionError as exc:
        logger.info("%s: hypothesis violated: %s", name, exc)
        return _failed(name, cfg, samples, Outcome.HYPOTHESIS_VIOLATED, exc, witness=exc.witness)
    except (NBanachError, ArithmeticError, ValueError, TypeError, OverflowError) as exc:
        logger.warning("%s: %s", name, exc)
        return _failed(name, cfg, samples, Outcome.ERROR, exc)
    # runners report their own name; the registry key is what the config asked for
    return attr.evolve(report, name=name)


def run_suite(cfg: RunConfig, settings: SweepSettings = SERIAL) -> RunReport:
    """Run every configured check in order; the report lists each exactly once."""

    reports, timing = [], {}
    for spec in cfg.checks:
        samples = spec.samples or cfg.samples
        logger.info("running %s (%d samples)", spec.name, samples)
        start = time.perf_counter()
        report = run_check(cfg, spec.name, samples, spec.params, settings)
        timing[spec.name] = round(time.perf_counter() - start, 6)
        logger.info("%s: %s", spec.name, report.outcome.value)
        reports.append(report)

    logger.debug("suite finished in %.2fs", sum(timing.values()))
    return RunReport(
        version=__version__,
        config=cfg.echo(),
        checks=reports,
        timing=None if cfg.exact else timing,
    )


def summary_lines(report: RunReport) -> list[str]:
    """Human summary: one line per check, then the totals."""

    width = max((len(r.name) for r in report.checks), default=0)
    lines = []
    for r in report.checks:
        line = f"{r.name:<{width}}  {r.outcome.value}"
        if r.message and r.outcome is not Outcome.PASS:
            line += f"  ({r.message})"
        lines.append(line)
    counts = ', '.join(f"{v} {k}" for k, v in report.counts().items() if v)
    lines.append(f"{len(report.checks)} checks: {counts}")
    return lines
