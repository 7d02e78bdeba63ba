"""
Rotation du plan en forme close, oracle des tests d'intégration.
"""
import math


def exact_rotation(x: float, y: float, alpha: float) -> tuple[float, float]:
    """(x cos α − y sin α, x sin α + y cos α)."""
    c, s = math.cos(alpha), math.sin(alpha)
    return x * c - y * s, x * s + y * c
