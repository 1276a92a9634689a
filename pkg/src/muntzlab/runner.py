"""
Concurrent dispatch of independent checks.

Each check runs in a worker thread; reports come back in submission order
with their wall time filled in.
"""

import asyncio
import logging
import time
from typing import Callable, List, NamedTuple, Sequence

from .reports import CheckReport


__all__ = ("Check", "run_check", "run_checks", "run_checks_sync")

log = logging.getLogger(__name__)


class Check(NamedTuple):
    """
    A named zero-argument callable producing a report.
    """

    name: str
    run: Callable[[], CheckReport]


def _timed(check: Check) -> CheckReport:
    log.debug("running check %s", check.name)
    started = time.perf_counter()
    report = check.run()
    elapsed = time.perf_counter() - started
    log.debug("check %s finished in %.3fs (passed=%s)", check.name, elapsed, report.passed)

    return report._replace(wall_time=elapsed)


async def run_check(check: Check, /) -> CheckReport:
    return await asyncio.to_thread(_timed, check)


async def run_checks(checks: Sequence[Check], /) -> List[CheckReport]:
    """
    Run every check concurrently. The first exception raised by a check
    propagates once all of them have settled.

    :raises MuntzLabError: whatever the failing check raised
    """
    results = await asyncio.gather(
        *(run_check(check) for check in checks), return_exceptions=True
    )
    reports: List[CheckReport] = []
    for check, result in zip(checks, results):
        if isinstance(result, BaseException):
            log.debug("check %s raised %r", check.name, result)
            raise result
        reports.append(result)

    return reports


def run_checks_sync(checks: Sequence[Check], /) -> List[CheckReport]:
    """
    Synchronous version of :func:`run_checks`, using `asyncio.run`.

    This method must not be called from within an event loop.
    """

    async def run_checks_coroutine() -> List[CheckReport]:
        return await run_checks(checks)

    return asyncio.run(run_checks_coroutine())
