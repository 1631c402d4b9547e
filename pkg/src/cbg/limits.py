"""Size guards.

Every exhaustive routine checks its input against a hard limit.  The
``CBG_MAX_N`` environment variable can lower (never raise) these limits.
"""

from __future__ import annotations

import os

from .errors import GuardError

HARD_LIMITS = {
    "leibniz": 9,
    "enumerate_gl": 5,
    "embedding": 10,
    "isomorphism": 10,
    "minor_host": 12,
    "linkless": 12,
    "tracks": 8,
}


def limit(name: str) -> int:
    hard = HARD_LIMITS[name]
    env = os.environ.get("CBG_MAX_N")
    if env:
        try:
            return min(hard, int(env))
        except ValueError:
            raise GuardError(f"CBG_MAX_N must be an integer, got {env!r}") from None
    return hard


def check(name: str, n: int, what: str = "size") -> None:
    bound = limit(name)
    if n > bound:
        raise GuardError(f"{name}: {what} {n} exceeds guard {bound}")
