"""
Compilation d'un système du premier ordre en champ de vecteurs numérique.

Les membres de droite sont compilés par compile_terms, le même chemin
qu'eval_numeric: pour un état scalaire l'évaluation est identique bit à
bit à celle des Expr sources.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from src.common.constants import VarKind
from src.common.exceptions import ChartMismatchError, CompileError, EvaluationError
from src.symbolic_core.chart import JetChart, VarId
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import CompiledTerm, compile_terms, evaluate_terms

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompiledField:
    """
    Champ y' = F(y) sur l'état ordonné `variables`.

    Attributes:
        chart: Carte d'origine.
        equations: Équations sources [(variable, membre de droite)].
        terms: Termes compilés, un tuple par variable.
    """
    chart: JetChart
    equations: tuple[tuple[VarId, Expr], ...]
    terms: tuple[tuple[CompiledTerm, ...], ...]

    @property
    def variables(self) -> tuple[VarId, ...]:
        return tuple(v for v, _ in self.equations)

    @property
    def dimension(self) -> int:
        return len(self.variables)

    @property
    def positions(self) -> dict[VarId, int]:
        return {v: i for i, v in enumerate(self.variables)}

    def __call__(self, y: np.ndarray) -> np.ndarray:
        """
        Évalue F(y).

        Args:
            y: État (dim,) ou lot d'états (dim, N).
        """
        valeurs = y.tolist() if y.ndim == 1 else y
        sortie = np.empty_like(y, dtype=float)
        for i, termes in enumerate(self.terms):
            sortie[i] = evaluate_terms(termes, valeurs)
        return sortie


def compile_field(
    equations: Sequence[tuple[VarId, Expr]],
    chart: JetChart,
) -> CompiledField:
    """
    Compile [(variable, membre de droite)] en CompiledField.

    L'état est formé des variables de gauche, dans l'ordre donné.

    Raises:
        CompileError: Multiplicateur libre, vitesse, ou variable hors de
            l'état dans un membre de droite.
    """
    variables = tuple(v for v, _ in equations)
    positions = {v: i for i, v in enumerate(variables)}
    compiles = []
    for v, rhs in equations:
        if rhs.chart != chart:
            raise ChartMismatchError(f"Équation de {v.name} sur une autre carte")
        interdites = [
            w for w in rhs.variables()
            if w.kind in (VarKind.MULTIPLIER, VarKind.VELOCITY, VarKind.ACCELERATION)
        ]
        if interdites:
            noms = ", ".join(chart.display(w) for w in sorted(interdites))
            raise CompileError(
                f"Membre de droite de {chart.display(v)} non compilable "
                f"(multiplicateur ou jet libre : {noms})"
            )
        try:
            compiles.append(compile_terms(rhs, positions))
        except EvaluationError as e:
            raise CompileError(
                f"Membre de droite de {chart.display(v)} : {e}"
            ) from e
    logger.debug(f"Champ compilé : dimension {len(variables)}")
    return CompiledField(chart, tuple(equations), tuple(compiles))
