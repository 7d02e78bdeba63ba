"""
Champs numériques tirés d'un système dérivé: flot de Hamilton complet
(champs et moments) ou flot de Lie réduit (champs seuls).
"""
from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from src.common.constants import VarKind
from src.common.exceptions import IntegrationError
from src.symbolic_core.operations import eval_numeric
from src.lagrangian.lie_system import LieSystem
from src.dirac_pipeline.system import ConstrainedSystem
from src.numeric_flow.field import CompiledField, compile_field

logger = logging.getLogger(__name__)


def phase_flow(system: ConstrainedSystem) -> CompiledField:
    """
    Équations de Hamilton de H_λ, sans réduction faible.

    Hors de la surface, la dérive des contraintes reste visible.

    Raises:
        CompileError: Multiplicateur indéterminé (système de première classe).
    """
    return compile_field(system.equations(weak=False), system.chart)


def lie_flow(gen: LieSystem) -> CompiledField:
    """q_i' = ξ_i(q), état réduit aux champs."""
    chart = gen.chart
    return compile_field(list(zip(chart.fields, gen.generators)), chart)


def complete_initial_state(system: ConstrainedSystem, values: Sequence[float]) -> np.ndarray:
    """
    Complète (champs) en (champs, moments) par les formes résolues p_i = h_i(q).

    Args:
        system: Système dérivé.
        values: n valeurs (champs) ou 2n valeurs (état complet).

    Raises:
        IntegrationError: Longueur invalide ou moment non déterminé par les
            champs seuls.
    """
    chart = system.chart
    n = len(chart.fields)
    values = [float(x) for x in values]
    if len(values) == 2 * n:
        return np.array(values, dtype=float)
    if len(values) != n:
        raise IntegrationError(
            f"État initial : {n} ou {2 * n} valeurs attendues, reçu {len(values)}"
        )

    point = dict(zip(chart.fields, values))
    resolues = {c.solved_var: c.solved_value for c in system.constraints}
    moments = []
    for p in chart.momenta:
        h = resolues.get(p)
        if h is None or any(v.kind != VarKind.FIELD for v in h.variables()):
            raise IntegrationError(
                f"Moment {chart.display(p)} non déterminé par les champs : "
                f"fournir {2 * n} valeurs initiales"
            )
        moments.append(eval_numeric(h, {v: point[v] for v in h.variables()}))
    logger.info(
        "Moments initialisés sur la surface des contraintes : "
        + ", ".join(f"{chart.display(p)} = {m:.6g}" for p, m in zip(chart.momenta, moments))
    )
    return np.array(values + moments, dtype=float)
