import time


class SolverTimeout(Exception):
    pass


class Deadline:
    """Cooperative wall-clock limit; solvers call :meth:`check` as they recurse."""

    def __init__(self, seconds: float | None):
        self.seconds = seconds
        self.until = None if seconds is None else time.monotonic() + seconds
        self._ticks = 0

    def check(self) -> None:
        if self.until is None:
            return
        self._ticks += 1
        if self._ticks & 255 == 0 and time.monotonic() > self.until:
            raise SolverTimeout(f"exceeded {self.seconds:g} s")


NO_DEADLINE = Deadline(None)
