"""opcalc: exact operator calculus for symmetric powers of curves and their Jacobians."""

__version__ = "0.1.0"
