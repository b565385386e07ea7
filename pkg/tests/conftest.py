import pytest

from cartanmaps import PrimeContext

# Exhaustive property range and the full desk-scale sweep.
PRIMES_SMALL = (3, 5, 7, 11, 13)
PRIMES_ALL = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


@pytest.fixture(scope="session")
def contexts():
    return {ell: PrimeContext(ell) for ell in PRIMES_ALL}
