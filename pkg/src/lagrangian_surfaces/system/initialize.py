#!/usr/bin/env python3
# initialize.py - Job bootstrap

from typing import Any, Dict, Optional

from ..logging import set_logging
from .config import JobConfig
from .observability import BaseEvent, event_bus

_state: Dict[str, Any] = {
    "config": None,
}


def initialize_from_config(cfg: JobConfig) -> None:
    """Apply the logging section and remember the active job."""
    set_logging(
        cfg.logging.level,
        show_time=cfg.logging.show_time,
        show_level=cfg.logging.show_level,
        forward_events=cfg.logging.forward_events,
        job=cfg.meta.name,
        seed=cfg.seed,
    )
    _state["config"] = cfg
    event_bus.publish(BaseEvent(
        event_type="system.init",
        component="bootstrap",
        data={"job": cfg.meta.name, "seed": cfg.seed},
    ))


def get_active_config() -> Optional[JobConfig]:
    return _state["config"]


__all__ = ["initialize_from_config", "get_active_config"]
