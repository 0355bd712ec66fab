"""Exception types shared across the planning modules."""


class ScenarioError(ValueError):
    """Raised when a scenario file or its fields violate an invariant."""


class InfeasibleError(RuntimeError):
    """Raised when no trajectory can respect the requested outage budget."""


class NonConvergenceError(RuntimeError):
    """Raised when the waypoint solver exhausts its iteration budget.

    Carries the best feasible iterate found so far in ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class DpInfeasibleError(InfeasibleError):
    """Raised when no grid path respects the budget.

    This can happen even when the continuous problem is feasible; the grid
    quantization simply has no admissible path.
    """
