"""Seeded sample sweeps, serial or over a process pool.

Every sample gets its own generator spawned from one SeedSequence, so a sample's
value depends only on (seed, index); results are merged back in index order no
matter which worker finished first.
"""

import attr
import logging
import multiprocessing
import numpy as np
import tqdm
import warnings

from typing import Any, Callable, Iterable


logger = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True, kw_only=True)
class SweepSettings:
    parallel: bool = attr.ib(default=False)
    num_workers: int | None = attr.ib(default=None)
    verbose: bool = attr.ib(default=False)


SERIAL = SweepSettings()


@attr.s(slots=True, frozen=True)
class SampleResult:
    index: int = attr.ib()
    value: Any = attr.ib()
    warnings: tuple[str, ...] = attr.ib(default=())


def _run_sample(task: Callable[[int, np.random.Generator], Any], index: int,
                seed: np.random.SeedSequence) -> SampleResult:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter('always')
        value = task(index, np.random.default_rng(seed))
    return SampleResult(index, value, tuple(sorted({type(w.message).__name__ for w in caught})))


def sweep(
    task: Callable[[int, np.random.Generator], Any],
    count: int,
    seed: int,
    *,
    settings: SweepSettings = SERIAL,
    desc: str = "Sampling",
) -> list[SampleResult]:
    """
    Run ``task(index, rng)`` for ``count`` independent seeded samples.

    With ``settings.parallel`` the task must be picklable (a module-level function or a
    functools.partial of one).

    :return: results ordered by sample index
    """

    seeds = np.random.SeedSequence(seed).spawn(count)
    results: list[SampleResult] = [None] * count  # type: ignore
    if settings.parallel and count > 1:
        pending = []
        num_workers = settings.num_workers or max(1, multiprocessing.cpu_count() - 1)
        logger.debug("%s: %d samples on %d workers", desc, count, num_workers)
        with multiprocessing.Pool(num_workers) as pool:
            for i in tqdm.tqdm(range(count), desc="Pool preparation", disable=not settings.verbose):
                pending.append(pool.apply_async(_run_sample, (task, i, seeds[i])))

            for res in tqdm.tqdm(pending, total=len(pending), desc=desc, disable=not settings.verbose):
                result = res.get()
                results[result.index] = result
    else:
        for i in tqdm.tqdm(range(count), desc=desc, disable=not settings.verbose):
            results[i] = _run_sample(task, i, seeds[i])

    return results


def collect_flags(results: Iterable[SampleResult]) -> tuple[str, ...]:
    return tuple(sorted({name for r in results for name in r.warnings}))


def first_failure(results: Iterable[SampleResult]) -> SampleResult | None:
    """First result (by index) whose value is not None."""

    return next((r for r in results if r.value is not None), None)
