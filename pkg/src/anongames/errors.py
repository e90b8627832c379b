"""Exception types shared across the package."""


class GameFormatError(ValueError):
    """A game/profile/function file violates its format or an invariant."""


class GuardExceeded(RuntimeError):
    """A requested enumeration is larger than the configured resource cap."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what} has size {size}, exceeding the cap of {cap} "
                         f"(override with ANON_GUARD_CELLS)")
        self.what = what
        self.size = size
        self.cap = cap


class TdpStructureError(RuntimeError):
    """The split-index uniqueness assumption failed for some input.

    This is believed unreachable for strictly positive exact inputs; it is
    surfaced rather than silently resolved so counterexamples are visible.
    """
