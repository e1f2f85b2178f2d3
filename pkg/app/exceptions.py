"""
Tame Langlands Workbench - Exceptions

Error hierarchy shared by the algebra layer, the services and the CLI.
"""


class LanglandsError(Exception):
    """Base class for every error raised by the workbench"""

    exit_code = 1


class ConfigError(LanglandsError):
    """Invalid prime/precision/ell combination or malformed config file"""

    exit_code = 2


class PrecisionExhausted(LanglandsError):
    """Effective p-adic precision dropped below one digit"""

    exit_code = 3


class DomainError(LanglandsError):
    """An operation was called outside its domain (non-regular input, zero division, ...)"""


class ModelMismatch(LanglandsError):
    """A cover-model element or case tag does not fit the extension"""


class VerificationError(LanglandsError):
    """An internal cross-check between two independent computations failed"""


class ConductorOverflow(LanglandsError):
    """A cyclotomic conductor exceeded the configured bound"""
