"""Report assembly and persistence as JSON plus a CSV summary table."""

import csv
import json
from dataclasses import asdict
from enum import Enum
from pathlib import Path
from typing import Any

import appdirs
from fuuid import b58_fuuid

from fraclap.logging import get_logger, to_plain
from fraclap.types import CheckRecord, Report, SuiteConfig

logger = get_logger(__name__)

VERSION = "0.1.0"

CSV_COLUMNS = ["id", "suite", "value", "oracle", "err_est", "tol", "pass", "ms", "diagnostic"]


def _echo(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, dict):
        return {k: _echo(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_echo(v) for v in value]
    return value


def config_echo(config: SuiteConfig) -> dict[str, Any]:
    """The full configuration, quadrature settings included, as plain data."""
    return _echo(asdict(config))


def summarize(records: list[CheckRecord]) -> dict[str, int]:
    passed = sum(1 for r in records if r.passed)
    return {"total": len(records), "passed": passed, "failed": len(records) - passed}


def build_report(config: SuiteConfig, records: list[CheckRecord]) -> Report:
    return Report(
        version=VERSION,
        config=config_echo(config),
        records=sorted(records, key=lambda r: r.id),
        summary=summarize(records),
    )


def record_dict(record: CheckRecord) -> dict[str, Any]:
    data = {
        "id": record.id,
        "suite": record.suite,
        "inputs": record.inputs,
        "value": record.value,
        "oracle": record.oracle,
        "err_est": record.err_est,
        "tol": record.tol,
        "pass": record.passed,
        "ms": record.ms,
    }
    if record.diagnostic is not None:
        data["diagnostic"] = record.diagnostic
    return data


def report_dict(report: Report) -> dict[str, Any]:
    return {
        "version": report.version,
        "config": report.config,
        "records": [record_dict(r) for r in report.records],
        "summary": report.summary,
    }


def default_report_path(suite: str) -> Path:
    return Path(appdirs.user_data_dir("fraclap")) / "reports" / f"{suite}-{b58_fuuid()}.json"


def write_report(report: Report, path: Path | None = None) -> Path:
    """Write report JSON to path and the CSV summary next to it; returns the JSON path."""
    if path is None:
        path = default_report_path(report.config["suite"])
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as f:
            json.dump(report_dict(report), f, indent=2, sort_keys=True, default=to_plain)
            f.write("\n")
        with open(path.with_suffix(".csv"), "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS, extrasaction="ignore")
            writer.writeheader()
            for record in report.records:
                writer.writerow({**record_dict(record), "diagnostic": record.diagnostic or ""})
    except OSError as e:
        logger.error({"event": "report_write_failed", "path": str(path), "error": str(e)})
        raise RuntimeError(f"Cannot write report {path}: {e}") from e
    logger.info({"event": "report_written", "path": str(path), **report.summary})
    return path
