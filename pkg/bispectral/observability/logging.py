# bispectral/observability/logging.py
from __future__ import annotations
from fractions import Fraction
import json
import logging
import os
import time
from typing import Any, Dict, Optional

from pydantic import BaseModel

# structured fields solver code attaches through `extra=`
_EXTRA_FIELDS = (
    "command",
    "status",
    "stage",
    "round",
    "family",
    "relation",
    "truncation",
    "ansatz",
    "unknowns",
    "equations",
    "rank",
    "dimension",
    "dims",
    "residuals",
    "elapsed_ms",
)


def _plain(value: Any) -> Any:
    """JSON-ready form of a structured field; ansatz models log their bounds summary."""
    if isinstance(value, BaseModel):
        summary = getattr(value, "to_summary", None)
        return summary() if callable(summary) else value.model_dump(mode="json")
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


class JsonFormatter(logging.Formatter):
    """One JSON object per record, with the solver's structured fields when present."""

    def format(self, record: logging.LogRecord) -> str:
        base: Dict[str, Any] = {
            "timestamp": int(time.time() * 1000),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        for attr in _EXTRA_FIELDS:
            if hasattr(record, attr):
                base[attr] = _plain(getattr(record, attr))

        if record.exc_info:
            base["exception"] = self.formatException(record.exc_info)

        return json.dumps(base, ensure_ascii=False, default=str)


def configure_logging(
    level: int | str = logging.INFO,
    log_to_file: Optional[str] = None,
    extra_modules: Optional[Dict[str, int]] = None,
    json_logs: bool = True,
):
    """
    Configure the root logger for the workbench:
    - JSON (or plain) records on stderr
    - optional file handler
    - per-module level overrides
    """
    root = logging.getLogger()
    root.setLevel(level)

    for h in list(root.handlers):
        root.removeHandler(h)

    formatter: logging.Formatter = JsonFormatter() if json_logs else logging.Formatter(
        "%(levelname)s %(name)s: %(message)s"
    )

    ch = logging.StreamHandler()
    ch.setFormatter(formatter)
    root.addHandler(ch)

    if log_to_file:
        os.makedirs(os.path.dirname(log_to_file) or ".", exist_ok=True)
        fh = logging.FileHandler(log_to_file, encoding="utf-8")
        fh.setFormatter(formatter)
        root.addHandler(fh)

    if extra_modules:
        for mod, lvl in extra_modules.items():
            logging.getLogger(mod).setLevel(lvl)

    logging.getLogger(__name__).debug("Structured logging configured.")
