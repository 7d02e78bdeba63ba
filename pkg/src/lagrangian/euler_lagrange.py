"""
Équations d'Euler-Lagrange d'un lagrangien polynomial du premier ordre.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from src.common.constants import VarKind
from src.common.exceptions import ChartMismatchError, JetOrderError
from src.symbolic_core.chart import JetChart
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import partial_derivative
from src.lagrangian.jets import total_derivative

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ELSystem:
    """
    Résidus E_i = ∂L/∂q_i − d/dα(∂L/∂q_i'), un par champ, non normalisés.
    """
    chart: JetChart
    residuals: tuple[Expr, ...]

    def __iter__(self):
        return iter(zip(self.chart.fields, self.residuals))


def verifier_lagrangien(L: Expr, chart: JetChart) -> None:
    """
    Vérifie que L ne dépend que des champs et des vitesses.

    Raises:
        ChartMismatchError: L construit sur une autre carte.
        JetOrderError: L contient accélérations, moments ou multiplicateurs.
    """
    if L.chart != chart:
        raise ChartMismatchError("Lagrangien construit sur une autre carte")
    interdits = [v for v in L.variables() if v.kind not in (VarKind.FIELD, VarKind.VELOCITY)]
    if interdits:
        noms = ", ".join(chart.display(v) for v in sorted(interdits))
        raise JetOrderError(
            f"Le lagrangien doit dépendre des champs et vitesses seulement (trouvé : {noms})"
        )


def euler_lagrange(L: Expr, chart: JetChart) -> ELSystem:
    """
    Calcule E_i = ∂L/∂q_i − total_derivative(∂L/∂q_i').

    Args:
        L: Lagrangien en champs et vitesses.
        chart: Carte avec accélérations (ordre de jet 2).

    Returns:
        ELSystem aligné sur les champs de la carte.
    """
    verifier_lagrangien(L, chart)
    if chart.jet_order < 2:
        raise JetOrderError("Euler-Lagrange requiert une carte d'ordre de jet 2")

    residus = []
    for q in chart.fields:
        dl_dq = partial_derivative(L, q)
        dl_dv = partial_derivative(L, chart.velocity_of(q))
        residus.append(dl_dq - total_derivative(dl_dv))
    logger.debug(f"Euler-Lagrange : {len(residus)} résidus")
    return ELSystem(chart, tuple(residus))
