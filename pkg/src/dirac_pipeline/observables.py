"""
Observables de l'espace des phases: moment angulaire, énergie totale.

L'énergie E = ½Σp² + T mélange moments et vitesses; ses deux
présentations ne coïncident pas hors des extrémales. Elles sont
rapportées côte à côte, sans égalité affirmée.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from src.symbolic_core.chart import JetChart
from src.symbolic_core.expr import Expr
from src.lagrangian.observables import kinetic_energy
from src.dirac_pipeline.system import ConstrainedSystem


def angular_momentum(chart: JetChart) -> Expr | None:
    """J = q_1·p_2 − q_2·p_1 (f·s − g·p pour SO(2)), None hors du plan."""
    if len(chart.fields) != 2:
        return None
    f, g = (Expr.variable(chart, q) for q in chart.fields)
    p, s = (Expr.variable(chart, m) for m in chart.momenta)
    return f * s - g * p


@dataclass(frozen=True)
class EnergyReport:
    """
    Attributes:
        momentum_form: ½Σp² + T.
        angular_form: weak_reduce(½J) + T, None hors du plan.
        momentum_form_weak: Forme moment après réduction faible.
    """
    momentum_form: Expr
    angular_form: Expr | None
    momentum_form_weak: Expr

    @property
    def presentations_agree(self) -> bool | None:
        if self.angular_form is None:
            return None
        return self.momentum_form_weak == self.angular_form


def energy_report(system: ConstrainedSystem) -> EnergyReport:
    chart = system.chart
    T = kinetic_energy(chart)
    cinetique_p = Expr.zero(chart)
    for p in chart.momenta:
        cinetique_p = cinetique_p + Expr.variable(chart, p) ** 2
    E_p = cinetique_p.scale(Fraction(1, 2)) + T

    J = angular_momentum(chart)
    E_J = system.weak(J.scale(Fraction(1, 2))) + T if J is not None else None
    return EnergyReport(
        momentum_form=E_p,
        angular_form=E_J,
        momentum_form_weak=system.weak(E_p),
    )
