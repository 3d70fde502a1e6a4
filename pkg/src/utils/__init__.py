"""Utility modules for pipframe"""
from .serialization import dumps, load_families, save_families, to_plain
from .config_io import Scenario, load_scenario, validate_scenario
from .report_writer import ReportWriter, render_text

__all__ = [
    'dumps',
    'load_families',
    'save_families',
    'to_plain',
    'Scenario',
    'load_scenario',
    'validate_scenario',
    'ReportWriter',
    'render_text'
]
