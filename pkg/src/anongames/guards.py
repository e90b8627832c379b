"""Resource caps for the enumerative searches.

Every enumeration whose size is a simple closed form checks the size
*before* materializing anything.  The env var ANON_GUARD_CELLS, when set,
overrides every default cap with a single global value.
"""

import os

from .errors import GuardExceeded

# default caps, per enumeration family
SEARCH_CAP = 10_000_000   # quantized strategies, theta partitions, grids, multisets
LATTICE_CAP = 1_000_000   # partition-lattice cells held in memory at once


def _env_cap() -> int | None:
    raw = os.environ.get("ANON_GUARD_CELLS")
    if raw is None:
        return None
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"ANON_GUARD_CELLS must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError("ANON_GUARD_CELLS must be positive")
    return cap


def check_guard(size: int, what: str, default_cap: int = SEARCH_CAP) -> None:
    """Raise GuardExceeded when `size` is over the active cap."""
    cap = _env_cap()
    if cap is None:
        cap = default_cap
    if size > cap:
        raise GuardExceeded(what, size, cap)
