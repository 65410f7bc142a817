"""Experiment layer: scans, reports and the ``serival-lab`` command."""

from .params import ConfigError, ScanParams, load_config, parse_config
from .report import Fit, ScanReport, envelope_fit
from .scans import (
    artin_estimate,
    dioph_scan,
    family_scan,
    greenberg_estimate,
    izumi_probe,
    lojasiewicz_scan,
    solution_lines,
)

__all__ = [
    "ConfigError", "ScanParams", "load_config", "parse_config", "Fit", "ScanReport",
    "envelope_fit", "artin_estimate", "dioph_scan", "family_scan", "greenberg_estimate",
    "izumi_probe", "lojasiewicz_scan", "solution_lines",
]
