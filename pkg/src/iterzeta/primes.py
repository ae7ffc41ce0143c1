"""Prime tables by Eratosthenes sieve, with cached logarithms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LimitExceeded

SIEVE_MAX = 100_000_000


@dataclass(frozen=True)
class PrimeTable:
    limit: int
    primes: np.ndarray
    logs: np.ndarray

    def __len__(self) -> int:
        return int(self.primes.size)

    def first(self, n: int) -> np.ndarray:
        if n > len(self):
            raise LimitExceeded(
                f"asked for {n} primes, table holds {len(self)}")
        return self.primes[:n]


def sieve_primes(limit: int) -> PrimeTable:
    """Primes up to limit inclusive; 3 <= limit <= 1e8."""
    limit = int(limit)
    if limit < 3 or limit > SIEVE_MAX:
        raise LimitExceeded(
            f"sieve limit must be in [3, {SIEVE_MAX}], got {limit}")
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if flags[p]:
            flags[p * p::p] = False
    primes = np.nonzero(flags)[0].astype(np.int64)
    return PrimeTable(limit, primes, np.log(primes.astype(np.float64)))
