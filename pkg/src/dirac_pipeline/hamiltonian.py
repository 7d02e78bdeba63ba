"""
Hamiltoniens H' et H = H' + Σ λ_a φ_a, équations de Hamilton.
"""
from __future__ import annotations

import logging
from typing import Sequence

from src.common.constants import VarKind
from src.common.exceptions import LegendreError, PipelineError
from src.symbolic_core.chart import JetChart, VarId
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import partial_derivative, substitute
from src.dirac_pipeline.constraints import Constraint, solve_velocities, weak_reduce

logger = logging.getLogger(__name__)


def base_hamiltonian(
    L: Expr,
    momenta: Sequence[Expr],
    constraints: Sequence[Constraint],
    chart: JetChart,
) -> Expr:
    """
    H' = Σ p_i q_i' − L, vitesses éliminées.

    Les vitesses régulières sont remplacées par l'inversion de Legendre;
    les directions contraintes disparaissent après p_i ↦ h_i, puisque
    leur coefficient est p_i − ∂L/∂q_i' (faiblement nul).

    Raises:
        LegendreError: Dépendance résiduelle en vitesses.
    """
    H = Expr.zero(chart)
    for v, p in zip(chart.velocities, chart.momenta):
        H = H + Expr.variable(chart, p) * Expr.variable(chart, v)
    H = H - L

    H = substitute(H, solve_velocities(momenta, constraints, chart))
    H = weak_reduce(H, constraints)

    restantes = [v for v in H.variables() if v.kind == VarKind.VELOCITY]
    if restantes:
        noms = ", ".join(chart.display(v) for v in sorted(restantes))
        raise LegendreError(f"Legendre elimination failed (vitesses résiduelles : {noms})")
    logger.info(f"  H' = {H!r}")
    return H


def multiplier_variables(constraints: Sequence[Constraint], chart: JetChart) -> tuple[VarId, ...]:
    """λ_1..λ_k, un par contrainte primaire."""
    primaires = [c for c in constraints if c.primary]
    if len(primaires) > len(chart.multipliers):
        raise PipelineError(
            f"{len(primaires)} contraintes primaires pour {len(chart.multipliers)} multiplicateurs"
        )
    return chart.multipliers[:len(primaires)]


def total_hamiltonian(base: Expr, constraints: Sequence[Constraint], chart: JetChart) -> Expr:
    """
    H = H' + Σ_a λ_a φ_a sur les contraintes primaires (prescription de Dirac).

    Les contraintes secondaires ne reçoivent pas de multiplicateur.
    """
    primaires = [c for c in constraints if c.primary]
    H = base
    for lam, c in zip(multiplier_variables(primaires, chart), primaires):
        H = H + Expr.variable(chart, lam) * c.expr
    return H


def hamilton_equations(H: Expr, chart: JetChart) -> list[tuple[VarId, Expr]]:
    """
    q_i' = ∂H/∂p_i, p_i' = −∂H/∂q_i.

    Les dérivées portent sur H tel quel; la réduction faible éventuelle
    est une étape séparée (reduce_equations).

    Returns:
        [(variable, membre de droite)], champs puis moments.
    """
    equations = [(q, partial_derivative(H, p)) for q, p in zip(chart.fields, chart.momenta)]
    equations += [(p, -partial_derivative(H, q)) for q, p in zip(chart.fields, chart.momenta)]
    return equations


def reduce_equations(
    equations: Sequence[tuple[VarId, Expr]],
    constraints: Sequence[Constraint],
) -> list[tuple[VarId, Expr]]:
    """Réduction faible des membres de droite, après dérivation."""
    return [(v, weak_reduce(rhs, constraints)) for v, rhs in equations]
