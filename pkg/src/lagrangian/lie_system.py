"""
Systèmes de Lie: équations q_i' = ξ_i(q) d'un groupe à un paramètre.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from src.common.constants import VarKind
from src.common.exceptions import ChartMismatchError
from src.symbolic_core.chart import JetChart, VarId
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import partial_derivative


@dataclass(frozen=True)
class LieSystem:
    """Générateurs infinitésimaux ξ_i, un par champ, en champs seulement."""
    chart: JetChart
    generators: tuple[Expr, ...]

    def __post_init__(self):
        if len(self.generators) != len(self.chart.fields):
            raise ValueError(
                f"{len(self.chart.fields)} générateurs attendus, reçu {len(self.generators)}"
            )
        for q, xi in zip(self.chart.fields, self.generators):
            if xi.chart != self.chart:
                raise ChartMismatchError(f"Générateur de {q.name} sur une autre carte")
            if any(v.kind != VarKind.FIELD for v in xi.variables()):
                raise ValueError(
                    f"Le générateur de {q.name} doit dépendre des champs seulement"
                )

    @classmethod
    def from_exprs(cls, chart: JetChart, generators: Sequence[Expr]) -> LieSystem:
        return cls(chart, tuple(generators))

    def generator_of(self, field: VarId) -> Expr:
        return self.generators[field.slot]


def lie_equations_from_generators(gen: LieSystem) -> list[tuple[VarId, Expr]]:
    """Système du premier ordre [(q_i', ξ_i)]."""
    chart = gen.chart
    return [(chart.velocity_of(q), xi) for q, xi in zip(chart.fields, gen.generators)]


def second_order_form(gen: LieSystem) -> list[tuple[VarId, Expr]]:
    """
    Prolongement du flot: q_i'' = Σ_j (∂ξ_i/∂q_j)·ξ_j.

    Pour ξ = (−g, f): f'' = −f, g'' = −g.
    """
    chart = gen.chart
    equations = []
    for q, xi in zip(chart.fields, gen.generators):
        acc = Expr.zero(chart)
        for qj, xj in zip(chart.fields, gen.generators):
            acc = acc + partial_derivative(xi, qj) * xj
        equations.append((chart.acceleration_of(q), acc))
    return equations


def on_shell_bindings(gen: LieSystem) -> dict[VarId, Expr]:
    """Liaisons vitesse ↦ ξ et accélération ↦ forme du second ordre."""
    liaisons = dict(lie_equations_from_generators(gen))
    if gen.chart.jet_order >= 2:
        liaisons.update(dict(second_order_form(gen)))
    return liaisons
