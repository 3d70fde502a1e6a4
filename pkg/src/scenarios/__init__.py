"""Built-in scenarios and the steps they are made of"""
from .catalog import BUILTIN_SCENARIOS, builtin_scenario, explain, list_scenarios
from .steps import (
    CertificateStep, DualityGridStep, LatticeStep, OperatorAlgebraStep, PairStep,
    QuotientStep, ScaleStep, SweepStep, check
)

__all__ = [
    'BUILTIN_SCENARIOS',
    'builtin_scenario',
    'explain',
    'list_scenarios',
    'CertificateStep',
    'DualityGridStep',
    'LatticeStep',
    'OperatorAlgebraStep',
    'PairStep',
    'QuotientStep',
    'ScaleStep',
    'SweepStep',
    'check'
]
