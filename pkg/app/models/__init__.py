# Models package for the Tame Langlands Workbench

from . import primes
from . import values
from . import reports

# Export all models
__all__ = [
    "primes",
    "values",
    "reports",
]
