"""
Orchestration du pipeline de Dirac-Bergmann.

Étapes:
    1. Moments canoniques p_i = ∂L/∂q_i'
    2. Contraintes primaires
    3. Hamiltonien de base H'
    4. Hamiltonien total H = H' + Σ λ_a φ_a
    5. Conditions de cohérence (multiplicateurs, contraintes secondaires)
    6. Matrice des contraintes et classification
"""
from __future__ import annotations

import logging
from dataclasses import replace

from src.common.constants import MAX_CONSISTENCY_ROUNDS
from src.symbolic_core.chart import JetChart
from src.symbolic_core.expr import Expr
from src.dirac_pipeline.brackets import constraint_matrix
from src.dirac_pipeline.constraints import detect_primary_constraints, legendre_momenta
from src.dirac_pipeline.hamiltonian import base_hamiltonian, total_hamiltonian
from src.dirac_pipeline.multipliers import classify_constraints, solve_multipliers
from src.dirac_pipeline.system import ConstrainedSystem

logger = logging.getLogger(__name__)


def derive_constrained_system(
    L: Expr,
    chart: JetChart,
    max_rounds: int = MAX_CONSISTENCY_ROUNDS,
) -> ConstrainedSystem:
    """
    Exécute le pipeline complet sur un lagrangien.

    Args:
        L: Lagrangien en champs et vitesses.
        chart: Carte des variables.
        max_rounds: Plafond des rondes de cohérence.

    Returns:
        ConstrainedSystem complet (solution et classification remplies).

    Raises:
        JetOrderError, LegendreError, PipelineError: Étape en échec.
    """
    logger.info("[ÉTAPE 1] Moments canoniques")
    momenta = legendre_momenta(L, chart)
    for p, m in zip(chart.momenta, momenta):
        logger.info(f"  {chart.display(p)} := {m!r}")

    logger.info("[ÉTAPE 2] Contraintes primaires")
    primaires = detect_primary_constraints(momenta, chart)

    logger.info("[ÉTAPE 3] Hamiltonien de base")
    H_base = base_hamiltonian(L, momenta, primaires, chart)

    logger.info("[ÉTAPE 4] Hamiltonien total")
    H_total = total_hamiltonian(H_base, primaires, chart)
    logger.info(f"  H = {H_total!r}")

    system = ConstrainedSystem(
        chart=chart,
        lagrangian=L,
        momenta=tuple(momenta),
        primary=tuple(primaires),
        base_hamiltonian=H_base,
        total_hamiltonian=H_total,
    )

    logger.info("[ÉTAPE 5] Conditions de cohérence")
    solution = solve_multipliers(system, max_rounds=max_rounds)
    system = replace(system, solution=solution)

    logger.info("[ÉTAPE 6] Classification des contraintes")
    C = constraint_matrix(system.constraints, chart)
    classes = classify_constraints(C, solution)
    for label, classe in classes.items():
        logger.info(f"  {label} : {classe}")

    return replace(
        system,
        constraint_matrix=tuple(tuple(ligne) for ligne in C),
        classification=classes,
    )
