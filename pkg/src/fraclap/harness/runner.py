"""Run suite checks concurrently on worker threads and collect records."""

import asyncio
import math
import time

import psutil

from fraclap.harness.reports import build_report, write_report
from fraclap.harness.suites import build_checks
from fraclap.logging import get_logger
from fraclap.types import Check, CheckRecord, Outcome, Report, SuiteConfig

logger = get_logger(__name__)


def judge(outcome: Outcome) -> bool:
    """A check passes when its value is finite and within tol of the oracle."""
    if not (math.isfinite(outcome.value) and math.isfinite(outcome.oracle)):
        return False
    return abs(outcome.value - outcome.oracle) <= outcome.tol


def _failed(check: Check, ms: float, diagnostic: str) -> CheckRecord:
    return CheckRecord(
        id=check.id,
        suite=check.suite.value,
        inputs=check.inputs,
        value=math.nan,
        oracle=math.nan,
        err_est=math.nan,
        tol=math.nan,
        passed=False,
        ms=ms,
        diagnostic=diagnostic,
    )


async def execute_check(check: Check, limit: asyncio.Semaphore) -> CheckRecord:
    """Run one check; errors become failed records rather than aborting the suite."""
    async with limit:
        start = time.perf_counter()
        try:
            outcome = await asyncio.to_thread(check.run)
        except Exception as e:
            ms = 1000.0 * (time.perf_counter() - start)
            logger.warning({"event": "check_error", "id": check.id, "error": str(e)})
            return _failed(check, ms, f"{type(e).__name__}: {e}")
        ms = 1000.0 * (time.perf_counter() - start)

    passed = judge(outcome)
    record = CheckRecord(
        id=check.id,
        suite=check.suite.value,
        inputs={**check.inputs, **outcome.details},
        value=outcome.value,
        oracle=outcome.oracle,
        err_est=outcome.err_est,
        tol=outcome.tol,
        passed=passed,
        ms=ms,
        diagnostic=None if passed else f"|value - oracle| = {abs(outcome.value - outcome.oracle):.3e} > tol",
    )
    logger.debug({"event": "check_done", "id": check.id, "passed": passed, "ms": round(ms, 1)})
    return record


async def run_checks(checks: list[Check], workers: int | None = None) -> list[CheckRecord]:
    limit = asyncio.Semaphore(workers or psutil.cpu_count(logical=False) or 1)
    records = await asyncio.gather(*(execute_check(check, limit) for check in checks))
    return sorted(records, key=lambda r: r.id)


async def run_suite(config: SuiteConfig, workers: int | None = None) -> Report:
    """Build, run and summarize every check of config.suite; records are sorted by id.

    The report is written to config.output when one is set.
    """
    checks = build_checks(config)
    logger.info({"event": "suite_started", "suite": config.suite.value, "checks": len(checks)})
    records = await run_checks(checks, workers)
    report = build_report(config, records)
    if config.output is not None:
        write_report(report, config.output)
    logger.info({"event": "suite_finished", "suite": config.suite.value, **report.summary})
    return report
