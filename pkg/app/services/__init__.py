"""
Tame Langlands Workbench - Services Package

One service per concern: symbols, characters, covers, the character formula,
Deligne-Lusztig values, the verification suites and reporting.
"""

from . import symbols_service
from . import character_service
from . import cover_service
from . import formula_service
from . import dl_service
from . import suite_service
from . import report_service

__all__ = [
    'symbols_service',
    'character_service',
    'cover_service',
    'formula_service',
    'dl_service',
    'suite_service',
    'report_service',
]
