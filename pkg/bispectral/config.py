# bispectral/config.py
from __future__ import annotations
from dataclasses import dataclass


@dataclass
class WorkbenchConfig:
    # assembly
    thread_workers: int = 4  # 1 = build columns inline

    # solving
    verify_solutions: bool = True  # re-check every basis pair after elimination
    escalate_rounds: int = 4

    # observability / logging
    log_level: str = "INFO"
    json_logs: bool = True
    log_to_file: str | None = None
