#!/usr/bin/env python3
# __init__.py - Command-line front end

from .commands import (
    EXIT_CONFIG,
    EXIT_GEOMETRY,
    EXIT_OK,
    CommandResult,
    cmd_curve,
    cmd_export,
    cmd_surface,
)
from .app import build_arg_parser, main
from .verify import VerificationSuite, cmd_verify, run_verification

__all__ = [
    'EXIT_CONFIG', 'EXIT_GEOMETRY', 'EXIT_OK', 'CommandResult',
    'cmd_curve', 'cmd_export', 'cmd_surface', 'cmd_verify',
    'VerificationSuite', 'run_verification', 'build_arg_parser', 'main',
]
