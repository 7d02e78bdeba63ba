"""
Dérivée totale le long des trajectoires (prolongement des jets).
"""
from __future__ import annotations

import logging

from src.common.constants import VarKind
from src.common.exceptions import JetOrderError
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import partial_derivative

logger = logging.getLogger(__name__)


def total_derivative(e: Expr) -> Expr:
    """
    Dérivée totale d/dα: q ↦ q', q' ↦ q'', étendue comme dérivation.

    D(e) = Σ_v ∂e/∂v · D(v) sur les champs et vitesses présents dans e.

    Args:
        e: Polynôme en champs et vitesses (ordre de jet <= 1).

    Returns:
        Dérivée totale en forme canonique.

    Raises:
        JetOrderError: e contient des accélérations (troisième jet requis),
            des moments ou des multiplicateurs, ou la carte n'a pas
            l'ordre de jet nécessaire.
    """
    chart = e.chart
    resultat = Expr.zero(chart)
    for v in sorted(e.variables()):
        if v.kind == VarKind.FIELD:
            image = chart.velocity_of(v)
        elif v.kind == VarKind.VELOCITY:
            image = chart.acceleration_of(chart.field_of(v))
        elif v.kind == VarKind.ACCELERATION:
            raise JetOrderError(
                f"Dérivée totale de {chart.display(v)} : jets d'ordre 3 non supportés"
            )
        else:
            raise JetOrderError(
                f"Dérivée totale non définie pour {chart.display(v)} ({v.kind})"
            )
        resultat = resultat + partial_derivative(e, v) * Expr.variable(chart, image)
    return resultat
