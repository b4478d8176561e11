"""JSON log lines on stderr; event dicts are lifted into top-level fields."""

import json
import logging
import sys
from typing import Any, Dict

import numpy as np

root = logging.getLogger()
root.handlers = []

APP_LOGGER = "fraclap"

RESET = "\033[0m"

LEVEL_COLORS = {
    "DEBUG": "\033[34m",
    "INFO": "\033[32m",
    "WARNING": "\033[33m",
    "ERROR": "\033[31m\033[1m",
    "CRITICAL": "\033[35m\033[1m",
}


def to_plain(value: Any) -> Any:
    """Convert numpy scalars and arrays into JSON-friendly values."""
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


def _payload(record: logging.LogRecord) -> tuple[str | None, str | None, dict[str, Any]]:
    """(event, msg, data) for a record; numerical modules log {"event": ..., **fields}."""
    data = dict(getattr(record, "data", None) or {})
    if isinstance(record.msg, dict):
        fields = dict(record.msg)
        event = fields.pop("event", None)
        return (None if event is None else str(event)), None, {**fields, **data}
    return None, record.getMessage(), data


class JsonFormatter(logging.Formatter):
    """Format log records as color-coded JSON."""

    def format(self, record: logging.LogRecord) -> str:
        color = LEVEL_COLORS.get(record.levelname, "")
        event, msg, data = _payload(record)

        output: dict[str, Any] = {
            "ts": self.formatTime(record),
            "level": record.levelname,
            "logger": record.name,
            "func": record.funcName,
            "line": record.lineno,
        }
        if event is not None:
            output["event"] = event
        if msg is not None:
            output["msg"] = msg
        if data:
            output["data"] = data

        json_str = json.dumps(output, default=to_plain)
        return f"{color}{json_str}{RESET}"


def configure_logging(level: int | str = logging.INFO):
    """Attach the JSON stderr handler to the fraclap logger; level may be a name such as "DEBUG"."""
    if isinstance(level, str):
        if level.upper() not in LEVEL_COLORS:
            raise ValueError(f"Unknown log level: {level}")
        level = logging.getLevelName(level.upper())
    app_logger = logging.getLogger(APP_LOGGER)

    if not app_logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(JsonFormatter())
        handler.setLevel(logging.DEBUG)

        app_logger.addHandler(handler)
        app_logger.propagate = False

    app_logger.setLevel(level)


def get_logger(name: str) -> logging.Logger:
    """Get a logger under the fraclap namespace."""
    if name.startswith(f"{APP_LOGGER}."):
        return logging.getLogger(name)
    return logging.getLogger(f"{APP_LOGGER}.{name}")


def log_with_data(
    logger: logging.Logger, level: int, msg: str, data: Dict[str, Any] | None = None
):
    """Log a message with optional structured data."""
    if data:
        record = logger.makeRecord(
            logger.name, level, "(unknown)", 0, msg, (), None, extra={"data": data}
        )
        logger.handle(record)
    else:
        logger.log(level, msg)
