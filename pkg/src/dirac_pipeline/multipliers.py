"""
Conditions de cohérence et classification des contraintes.

Pour chaque contrainte χ_A (primaire ou secondaire):

    {χ_A, H'} + Σ_b λ_b {χ_A, φ_b} ≈ 0      (φ_b primaires)

Système linéaire en λ à matrice M constante, résolu par Gauss-Jordan.
Une ligne nulle de M de second membre non nul devient une contrainte
secondaire; on itère jusqu'à stabilité (plafond de rondes).
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Sequence

from src.common.constants import MAX_CONSISTENCY_ROUNDS, ConstraintClass, VarKind
from src.common.exceptions import PipelineError
from src.symbolic_core.chart import VarId
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import partial_derivative, substitute
from src.dirac_pipeline.brackets import poisson_bracket
from src.dirac_pipeline.constraints import Constraint, weak_reduce
from src.dirac_pipeline.linalg import constant_matrix, rref
from src.dirac_pipeline.system import ConsistencyRound, ConstrainedSystem, MultiplierSolution

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Contraintes secondaires
# ---------------------------------------------------------------------------

def _variable_resoluble(chi: Expr, deja_resolues: set[VarId]) -> tuple[VarId, Fraction] | None:
    """Moment puis champ apparaissant linéairement, coefficient constant."""
    candidats = sorted(
        (v for v in chi.variables() if v not in deja_resolues),
        key=lambda v: (v.kind != VarKind.MOMENTUM, v.index),
    )
    for v in candidats:
        if v.kind not in (VarKind.MOMENTUM, VarKind.FIELD):
            continue
        if chi.degree_in(v) != 1:
            continue
        c = partial_derivative(chi, v)
        if c.is_constant:
            return v, c.constant_value()
    return None


def _ajouter_secondaire(chi: Expr, contraintes: list[Constraint]) -> Constraint:
    """
    Met χ ≈ 0 sous forme résolue et met à jour les formes existantes.

    Raises:
        PipelineError: χ constante non nulle, ou non résoluble.
    """
    chart = chi.chart
    if chi.is_constant:
        raise PipelineError(
            f"inconsistent system: consistency condition reduces to {chi!r} = 0"
        )
    choix = _variable_resoluble(chi, {c.solved_var for c in contraintes})
    if choix is None:
        raise PipelineError(
            f"secondary constraint {chi!r} not solvable for a single variable (unsupported)"
        )
    v, coef = choix
    valeur = Expr.variable(chart, v) - chi.scale(1 / coef)

    for i, c in enumerate(contraintes):
        contraintes[i] = c.with_solved_value(substitute(c.solved_value, {v: valeur}))
    nouvelle = Constraint(
        index=len(contraintes) + 1,
        expr=chi,
        solved_var=v,
        solved_value=valeur,
        primary=False,
    )
    contraintes.append(nouvelle)
    logger.info(f"  Contrainte secondaire {nouvelle.label} : {chi!r} (résolue pour {chart.display(v)})")
    return nouvelle


# ---------------------------------------------------------------------------
# Résolution
# ---------------------------------------------------------------------------

def solve_multipliers(
    system: ConstrainedSystem,
    max_rounds: int = MAX_CONSISTENCY_ROUNDS,
) -> MultiplierSolution:
    """
    Résout {φ_a, H} ≈ 0 pour les λ, en émettant les contraintes secondaires.

    Args:
        system: Système issu de la détection des contraintes primaires.
        max_rounds: Plafond d'itérations.

    Returns:
        MultiplierSolution (λ déterminés, indéterminés, secondaires, trace).

    Raises:
        PipelineError: Matrice non constante, système incohérent, plafond atteint.
    """
    chart = system.chart
    primaires = list(system.primary)
    lambdas = system.multipliers
    if not primaires:
        return MultiplierSolution({}, (), (), ())

    contraintes = list(primaires)
    rondes: list[ConsistencyRound] = []

    for numero in range(1, max_rounds + 1):
        v = [
            weak_reduce(poisson_bracket(chi.expr, system.base_hamiltonian, chart), contraintes)
            for chi in contraintes
        ]
        M = constant_matrix(
            [[weak_reduce(poisson_bracket(chi.expr, phi.expr, chart), contraintes)
              for phi in primaires]
             for chi in contraintes],
            "M",
        )
        reduction = rref(M, rhs=[-x for x in v])

        nouvelles = []
        for r in reduction.zero_rows():
            reste = weak_reduce(reduction.rhs[r], contraintes)
            if not reste.is_zero:
                nouvelles.append(_ajouter_secondaire(reste, contraintes))

        libres = reduction.free_columns(len(lambdas))
        rondes.append(ConsistencyRound(
            number=numero,
            equations=len(M),
            secondary=tuple(c.label for c in nouvelles),
            undetermined=tuple(chart.display(lambdas[k]) for k in libres),
        ))
        logger.debug(f"  Ronde {numero} : {len(M)} équations, {len(nouvelles)} secondaire(s)")
        if nouvelles:
            continue

        valeurs: dict[VarId, Expr] = {}
        for r, col in reduction.pivots:
            valeur = reduction.rhs[r]
            for k in libres:
                if reduction.rows[r][k] != 0:
                    valeur = valeur - Expr.variable(chart, lambdas[k]).scale(reduction.rows[r][k])
            valeurs[lambdas[col]] = weak_reduce(valeur, contraintes)

        for lam, valeur in valeurs.items():
            logger.info(f"  {chart.display(lam)} = {valeur!r}")
        for k in libres:
            logger.info(f"  {chart.display(lambdas[k])} indéterminé")
        return MultiplierSolution(
            values=dict(sorted(valeurs.items())),
            undetermined=tuple(lambdas[k] for k in libres),
            secondary=tuple(c for c in contraintes if not c.primary),
            constraints=tuple(contraintes),
            rounds=tuple(rondes),
        )

    raise PipelineError(f"consistency iteration cap exceeded ({max_rounds} rounds)")


def classify_constraints(
    C: Sequence[Sequence[Expr]],
    solution: MultiplierSolution,
) -> dict[str, str]:
    """
    Seconde classe ssi la ligne de C réduite est non nulle.

    Args:
        C: Matrice {φ_a, φ_b} faiblement réduite, sur toutes les contraintes.
        solution: Résultat de solve_multipliers (ordre des contraintes).

    Returns:
        {label: "first-class" | "second-class"} dans l'ordre des contraintes.
    """
    if len(C) != len(solution.constraints):
        raise PipelineError(
            f"Matrice {len(C)}x{len(C)} pour {len(solution.constraints)} contraintes"
        )
    classes = {}
    for c, ligne in zip(solution.constraints, C):
        if any(not x.is_zero for x in ligne):
            classes[c.label] = ConstraintClass.SECOND_CLASS
        else:
            classes[c.label] = ConstraintClass.FIRST_CLASS
    return classes
