"""
Vérification « Euler-Lagrange = Lie »: les résidus s'annulent sur le flot.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from src.common.exceptions import ChartMismatchError
from src.symbolic_core.chart import VarId
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import substitute
from src.lagrangian.euler_lagrange import ELSystem
from src.lagrangian.lie_system import LieSystem, on_shell_bindings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LieVerdict:
    """
    Résultat de la comparaison.

    Attributes:
        equivalent: True si tous les résidus substitués sont nuls.
        residuals: Résidus non nuls [(champ, résidu)].
    """
    equivalent: bool
    residuals: tuple[tuple[VarId, Expr], ...] = ()


def verify_el_equals_lie(el: ELSystem, gen: LieSystem) -> LieVerdict:
    """
    Substitue q' ↦ ξ et q'' ↦ Σ ∂ξ/∂q·ξ dans chaque E_i.

    L'équivalence est jugée par résidu nul, jamais par comparaison d'une
    présentation normalisée: ġ − f et ½ġ − f + ½ġ ont le même contenu.

    Raises:
        ChartMismatchError: Cartes différentes.
    """
    if el.chart != gen.chart:
        raise ChartMismatchError("ELSystem et LieSystem sur des cartes différentes")

    liaisons = on_shell_bindings(gen)
    non_nuls = []
    for q, residu in el:
        reste = substitute(residu, liaisons)
        if not reste.is_zero:
            non_nuls.append((q, reste))

    if non_nuls:
        logger.warning(
            f"Euler-Lagrange ≠ Lie : résidus non nuls pour "
            f"{[el.chart.display(q) for q, _ in non_nuls]}"
        )
    else:
        logger.info("Euler-Lagrange = Lie : tous les résidus s'annulent")
    return LieVerdict(equivalent=not non_nuls, residuals=tuple(non_nuls))
