#!/usr/bin/env python3
# logging.py - Per-module loggers under ``lagrangian_surfaces``, configured from a job's logging section

import logging
import sys
import threading
from enum import Enum
from typing import List, Optional, TextIO, Union

ROOT_LOGGER = 'lagrangian_surfaces'


class LogLevel(str, Enum):
    DEBUG = 'DEBUG'
    INFO = 'INFO'
    WARNING = 'WARNING'
    ERROR = 'ERROR'
    CRITICAL = 'CRITICAL'


_root_logger = logging.getLogger(ROOT_LOGGER)
_root_logger.addHandler(logging.NullHandler())
_root_logger.setLevel(logging.DEBUG)

_handlers: List[logging.Handler] = []


def get_logger(name: str) -> logging.Logger:
    """Logger of one subpackage, e.g. ``get_logger('curves.integrator')``."""
    return logging.getLogger(f'{ROOT_LOGGER}.{name}')


class _JobContext(logging.Filter):
    """Stamps records with the job name and seed so runs can be replayed from their logs."""

    def __init__(self, job: Optional[str], seed: Optional[int]):
        super().__init__()
        self.job = job
        self.seed = seed

    def filter(self, record: logging.LogRecord) -> bool:
        record.job = self.job
        record.seed = self.seed
        record.run = '' if self.job is None else f'{self.job}#{self.seed} '
        return True


class _EventBusLogHandler(logging.Handler):
    """Publishes records as ``LogEvent`` on the package event bus."""

    def __init__(self) -> None:
        super().__init__()
        self._local = threading.local()

    def emit(self, record: logging.LogRecord) -> None:
        # a "log" subscriber that logs would otherwise feed itself
        if getattr(self._local, 'busy', False):
            return
        from .system.observability import LogEvent, event_bus

        self._local.busy = True
        try:
            event_bus.publish(LogEvent(
                event_type='log',
                level=record.levelname,
                message=record.getMessage(),
                component=record.name,
                data={'job': getattr(record, 'job', None), 'seed': getattr(record, 'seed', None)},
            ))
        except Exception:
            self.handleError(record)
        finally:
            self._local.busy = False


def set_logging(
    level: Union[LogLevel, str] = LogLevel.WARNING,
    *,
    stream: Optional[TextIO] = None,
    show_time: bool = False,
    show_level: bool = False,
    forward_events: bool = False,
    job: Optional[str] = None,
    seed: Optional[int] = None,
) -> None:
    """Replace the package handlers; until called the package is silent.

    Lines read ``[lagrangian_surfaces.curves] message``, prefixed with
    ``job#seed`` when a job is given.

    Args:
        level: Threshold for the stream and the event forwarder
        stream: Output stream, stderr when omitted
        show_time: Prefix a timestamp
        show_level: Prefix the level name
        forward_events: Also publish every record as a ``log`` event
        job: Job name stamped on every record
        seed: Seed stamped on every record
    """
    parts = []
    if show_time:
        parts.append('%(asctime)s')
    if show_level:
        parts.append('%(levelname)-8s')
    parts.append('%(run)s[%(name)s] %(message)s')
    formatter = logging.Formatter(' '.join(parts))

    name = level.value if isinstance(level, LogLevel) else LogLevel(level.upper()).value
    numeric = logging.getLevelName(name)

    for old in _handlers:
        _root_logger.removeHandler(old)
    _handlers.clear()

    context = _JobContext(job, seed)
    stream_handler = logging.StreamHandler(sys.stderr if stream is None else stream)
    _handlers.append(stream_handler)
    if forward_events:
        _handlers.append(_EventBusLogHandler())
    for handler in _handlers:
        handler.setLevel(numeric)
        handler.setFormatter(formatter)
        handler.addFilter(context)
        _root_logger.addHandler(handler)


__all__ = ['LogLevel', 'ROOT_LOGGER', 'get_logger', 'set_logging']
