class SingularConfigurationError(ZeroDivisionError):
    """A steady-state denominator vanishes (e.g. ``i*Delta_a2 + kappa_2 == 0``)."""


class EmptySolutionError(ValueError):
    """The steady-state cubic has no non-negative real root."""


class PoleError(ArithmeticError):
    """The linear response diverges at the requested probe detuning.

    Attributes
    ----------
    delta : float
        Probe-pump detuning (rad/s) at which the evaluation failed.
    lam : float
        ``delta - omega_b`` (rad/s).
    condition : float
        Condition estimate of the response matrix (``inf`` for an exact zero
        denominator in the closed form).
    nearest_eigenvalue : complex or None
        Drift-matrix eigenvalue closest to the real-frequency axis point
        ``-i*delta``, when known.
    """

    def __init__(self, message, *, delta=float("nan"), lam=float("nan"),
                 condition=float("inf"), nearest_eigenvalue=None):
        super().__init__(message)
        self.delta = delta
        self.lam = lam
        self.condition = condition
        self.nearest_eigenvalue = nearest_eigenvalue


class ConfigError(ValueError):
    """Configuration document could not be parsed or validated."""

    def __init__(self, message, *, line=None, key=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.key = key
