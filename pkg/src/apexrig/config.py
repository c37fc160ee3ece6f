"""Run configuration and deterministic seed derivation."""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass, field, replace

# 2^61 - 1 and 2^62 - 57, the largest prime below 2^62.
BUILTIN_PRIMES = (2305843009213693951, 4611686018427387847)
PRIMES_ENV = "APEXRIG_PRIMES"


def default_primes() -> tuple[int, ...]:
    """Primes from $APEXRIG_PRIMES (comma separated) or the built-in pair."""
    raw = os.environ.get(PRIMES_ENV, "").strip()
    if not raw:
        return BUILTIN_PRIMES
    primes = tuple(int(tok) for tok in raw.replace(" ", "").split(",") if tok)
    if not primes:
        raise ValueError(f"{PRIMES_ENV} is set but lists no primes")
    for p in primes:
        if p <= 2**40:
            raise ValueError(f"prime {p} from {PRIMES_ENV} must exceed 2^40")
    return primes


def derive_seed(*parts: object) -> int:
    """64-bit seed from the SHA-256 of the colon-joined string forms of ``parts``."""
    text = ":".join(str(p) for p in parts)
    return int.from_bytes(hashlib.sha256(text.encode("utf-8")).digest()[:8], "big")


@dataclass(frozen=True)
class RunConfig:
    dim: int = 3
    primes: tuple[int, ...] = field(default_factory=default_primes)
    seed: int = 0
    trials: int = 3
    jobs: int = 1

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be at least 1")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not self.primes:
            raise ValueError("at least one prime is required")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")

    def for_graph(self, index: int) -> "RunConfig":
        """Configuration whose seed depends only on the global seed and input index."""
        return replace(self, seed=derive_seed(self.seed, index))
