#!/usr/bin/env python3
# app.py - Command-line entry point

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

from pydantic import ValidationError

from ..exceptions import ConfigurationError, LagrangianSurfacesError
from ..logging import get_logger
from ..system.config import JobConfig, load_job_config, parse_grid
from ..system.initialize import initialize_from_config
from .commands import EXIT_CONFIG, EXIT_GEOMETRY, CommandResult, cmd_curve, cmd_export, cmd_surface
from .verify import cmd_verify

logger = get_logger('cli')

Command = Callable[[JobConfig, Path], CommandResult]

COMMANDS: Dict[str, Command] = {
    "curve": cmd_curve,
    "surface": cmd_surface,
    "verify": cmd_verify,
    "export": cmd_export,
}


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lagrangian-surfaces",
        description="Lagrangian surfaces in C^2 from Legendre curves in S^3 and H^3_1",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "curve": "Build one Legendre curve and write CSV, descriptor and invariant report",
        "surface": "Build, classify and cross-check a surface; write OBJ, CSV and report",
        "verify": "Run the seeded invariant suite",
        "export": "Write mesh and curve files without verification",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", required=name != "verify", help="Job config (JSON or YAML)")
        p.add_argument("--out", default="out", help="Output directory (default: out)")
        p.add_argument("--seed", type=int, help="Override the config seed")
        p.add_argument("--tolerance", type=float, help="Override the residual gate")
        p.add_argument("--grid", help="Override the mesh resolution, e.g. 201x201")
    return parser


def resolve_config(args: argparse.Namespace) -> JobConfig:
    """Load the job file (or defaults) and apply command-line overrides."""
    cfg = load_job_config(args.config) if args.config else JobConfig()
    updates = {}
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigurationError(f"seed must be non-negative, got {args.seed}")
        updates["seed"] = args.seed
    if args.tolerance is not None:
        if not args.tolerance > 0.0:
            raise ConfigurationError(f"tolerance must be positive, got {args.tolerance}")
        updates["tolerances"] = cfg.tolerances.model_copy(update={"gate": args.tolerance})
    if args.grid is not None:
        updates["grid"] = parse_grid(args.grid)
    return cfg.model_copy(update=updates) if updates else cfg


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point; returns 0 on success, 1 on geometric failure, 2 on configuration errors."""
    args = build_arg_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
    except (ConfigurationError, ValidationError, FileNotFoundError) as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    initialize_from_config(cfg)
    out = Path(args.out)
    try:
        result = COMMANDS[args.command](cfg, out)
    except ConfigurationError as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except LagrangianSurfacesError as e:
        print(f"❌ {args.command} failed: {e}", file=sys.stderr)
        return EXIT_GEOMETRY

    for path in result.files:
        print(f"📁 {path}")
    if result.exit_code == 0:
        print(f"✅ {args.command}: all gated residuals pass")
    else:
        print(f"💥 {args.command}: gated residuals failed", file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
