"""
Tame Langlands Workbench - Shared test fixtures
"""

import pytest
import structlog

from app.algebra.extensions import build_extension
from app.models.primes import ExtensionKind, build_prime_config
from app.services.suite_service import SuiteContext


@pytest.fixture(autouse=True)
def _restore_structlog_config():
    # The CLI binds structlog to the sys.stderr that pytest captures per test;
    # restore the config so later tests don't log to a closed stream.
    saved = structlog.get_config()
    yield
    structlog.configure(**saved)


@pytest.fixture
def prime3():
    return build_prime_config(3, 12, 2)


@pytest.fixture
def prime5():
    return build_prime_config(5, 10, 2)


@pytest.fixture
def prime7_cubic():
    return build_prime_config(7, 8, 3)


@pytest.fixture
def unram_quad(prime3):
    return build_extension(prime3, ExtensionKind.UNRAM_QUAD)


@pytest.fixture
def ram_quad(prime3):
    return build_extension(prime3, ExtensionKind.RAM_QUAD, 3)


@pytest.fixture
def small_context(prime3):
    return SuiteContext(prime=prime3, seed=0, cutoff=2, odd_cutoff=1, samples=3)
