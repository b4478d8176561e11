import json
import logging
import re
from io import StringIO

import numpy as np
import pytest
from fraclap.logging import (
    JsonFormatter,
    configure_logging,
    get_logger,
    log_with_data,
    to_plain,
)

ANSI = re.compile(r"\x1B\[[0-?]*[ -/]*[@-~]")


def parse(line: str) -> dict:
    return json.loads(ANSI.sub("", line.strip()))


def make_record(msg, level=logging.INFO):
    return logging.LogRecord("fraclap.quad.radial", level, "radial.py", 10, msg, (), None)


def test_plain_message_goes_to_msg():
    """A string message stays under msg and carries no event field"""
    data = parse(JsonFormatter().format(make_record("zone budget exhausted")))

    assert data["level"] == "INFO"
    assert data["logger"] == "fraclap.quad.radial"
    assert data["msg"] == "zone budget exhausted"
    assert "event" not in data
    assert "data" not in data


def test_event_dict_is_lifted():
    """The event name becomes a top-level field and the rest lands under data"""
    event = {"event": "radial_zones", "value": np.float64(0.25), "x": np.array([0.5, -0.5])}
    data = parse(JsonFormatter().format(make_record(event)))

    assert data["event"] == "radial_zones"
    assert data["data"] == {"value": 0.25, "x": [0.5, -0.5]}
    assert "msg" not in data


def test_event_dict_merges_record_data():
    record = make_record({"event": "wos_batch", "batch": 3})
    record.data = {"accepted": np.int64(812)}
    data = parse(JsonFormatter().format(record))

    assert data["event"] == "wos_batch"
    assert data["data"] == {"batch": 3, "accepted": 812}


def test_to_plain():
    assert to_plain(np.float32(0.5)) == 0.5
    assert to_plain(np.arange(3)) == [0, 1, 2]
    assert to_plain(complex(1, 2)) == "(1+2j)"


@pytest.mark.parametrize(
    "level,expected_color",
    [
        (logging.DEBUG, "\033[34m"),
        (logging.INFO, "\033[32m"),
        (logging.WARNING, "\033[33m"),
        (logging.ERROR, "\033[31m\033[1m"),
        (logging.CRITICAL, "\033[35m\033[1m"),
    ],
)
def test_level_colors(level, expected_color):
    output = JsonFormatter().format(make_record({"event": "tail_split"}, level))
    assert output.startswith(expected_color)
    assert output.endswith("\033[0m")


def test_log_with_data_json_structure():
    logger = logging.getLogger("fraclap.test_structure")
    logger.setLevel(logging.INFO)
    stream = StringIO()
    handler = logging.StreamHandler(stream)
    handler.setFormatter(JsonFormatter())
    logger.addHandler(handler)
    try:
        payload = {"zone": "tail", "err_est": 1e-3}
        log_with_data(logger, logging.ERROR, "numerical failure", payload)
    finally:
        logger.removeHandler(handler)

    data = parse(stream.getvalue())
    assert data["level"] == "ERROR"
    assert data["msg"] == "numerical failure"
    assert data["data"] == payload


def test_get_logger():
    assert get_logger("harness").name == "fraclap.harness"
    assert get_logger("fraclap.poisson.solver").name == "fraclap.poisson.solver"


def test_configure_logging_accepts_names_and_ints():
    logger = logging.getLogger("fraclap")
    try:
        configure_logging("debug")
        assert logger.level == logging.DEBUG
        assert len(logger.handlers) == 1
        assert isinstance(logger.handlers[0].formatter, JsonFormatter)
        assert not logger.propagate

        configure_logging(logging.WARNING)
        assert logger.level == logging.WARNING

        configure_logging()
        assert logger.level == logging.INFO
        assert len(logger.handlers) == 1
    finally:
        logger.handlers = []


def test_configure_logging_rejects_unknown_name():
    with pytest.raises(ValueError, match="log level"):
        configure_logging("LOUD")
