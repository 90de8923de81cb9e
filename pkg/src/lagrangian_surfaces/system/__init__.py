#!/usr/bin/env python3
"""System layer package: job configuration, observability, bootstrap.

Kept import-free: the curve and surface modules import ``system.observability``
while ``system.config`` imports the curve catalog.
"""
