"""
Observables cinématiques: énergie cinétique T, moment cinétique l.

Pour un point du plan (f, g): T = ½(f'² + g'²), l = f·g' − g·f'.
Sur le flot de rotation, f'² + g'² = f·g' − g·f' (T = l/2), relation
vraie seulement sur les extrémales.
"""
from __future__ import annotations

from fractions import Fraction

from src.symbolic_core.chart import JetChart
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import substitute
from src.lagrangian.lie_system import LieSystem, on_shell_bindings


def kinetic_energy(chart: JetChart) -> Expr:
    """T = ½ Σ q_i'²."""
    T = Expr.zero(chart)
    for v in chart.velocities:
        T = T + Expr.variable(chart, v) ** 2
    return T.scale(Fraction(1, 2))


def kinetic_momentum(chart: JetChart) -> Expr | None:
    """l = q_1·q_2' − q_2·q_1' pour un système plan, None sinon."""
    if len(chart.fields) != 2:
        return None
    f, g = (Expr.variable(chart, q) for q in chart.fields)
    df, dg = (Expr.variable(chart, v) for v in chart.velocities)
    return f * dg - g * df


def energy_momentum_residual(chart: JetChart) -> Expr | None:
    """Résidu 2T − l = f'² + g'² − (f·g' − g·f'), None hors du plan."""
    l = kinetic_momentum(chart)
    if l is None:
        return None
    return kinetic_energy(chart).scale(2) - l


def on_shell(e: Expr, gen: LieSystem) -> Expr:
    """Restreint e aux solutions du système de Lie (vitesses, accélérations)."""
    return substitute(e, on_shell_bindings(gen))
