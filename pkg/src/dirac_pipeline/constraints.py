"""
Transformation de Legendre, contraintes primaires et égalité faible.

Classe supportée: hessien W_ij = ∂²L/∂q_i'∂q_j' constant. Les contraintes
sont les combinaisons de p_i − ∂L/∂q_i' libres de vitesses (noyau à
gauche de W), chacune de coefficient 1 sur un moment, mise sous forme
résolue p_i = h_i. Les champs les plus tôt enregistrés sont résolus en
priorité.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Sequence

from src.common.constants import VarKind
from src.common.exceptions import ChartMismatchError, LegendreError
from src.symbolic_core.chart import JetChart, VarId
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import partial_derivative, substitute
from src.lagrangian.euler_lagrange import verifier_lagrangien
from src.dirac_pipeline.linalg import Matrix, invert, left_kernel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Constraint:
    """
    Contrainte φ_a ≈ 0 et sa forme résolue v = h.

    Attributes:
        index: Numéro a (base 1, primaires puis secondaires).
        expr: φ_a telle que dérivée.
        solved_var: Variable éliminée par la réduction faible.
        solved_value: h, libre de vitesses et de toute variable résolue.
        primary: False pour une contrainte secondaire.
    """
    index: int
    expr: Expr
    solved_var: VarId
    solved_value: Expr
    primary: bool = True

    @property
    def label(self) -> str:
        return f"phi_{self.index}"

    def with_solved_value(self, value: Expr) -> Constraint:
        return replace(self, solved_value=value)


# ---------------------------------------------------------------------------
# Égalité faible
# ---------------------------------------------------------------------------

def weak_bindings(constraints: Sequence[Constraint]) -> dict[VarId, Expr]:
    return {c.solved_var: c.solved_value for c in constraints}


def weak_reduce(e: Expr, constraints: Sequence[Constraint]) -> Expr:
    """
    Restriction à la surface des contraintes: v_a ↦ h_a simultanément.

    Idempotente (aucun h ne contient de variable résolue) et morphisme
    d'anneau; weak_reduce(φ_a) == 0 pour toute contrainte.
    """
    return substitute(e, weak_bindings(constraints))


# ---------------------------------------------------------------------------
# Legendre
# ---------------------------------------------------------------------------

def legendre_momenta(L: Expr, chart: JetChart) -> tuple[Expr, ...]:
    """
    Moments canoniques p_i := ∂L/∂q_i'.

    Raises:
        JetOrderError: L contient moments, multiplicateurs ou accélérations.
    """
    verifier_lagrangien(L, chart)
    return tuple(partial_derivative(L, v) for v in chart.velocities)


def legendre_structure(momenta: Sequence[Expr], chart: JetChart) -> tuple[Matrix, tuple[Expr, ...]]:
    """
    Décompose m_i = Σ_j W_ij q_j' + b_i(q) avec W constant.

    Returns:
        (W, b)

    Raises:
        LegendreError: W non constant (inversion non polynomiale).
    """
    if len(momenta) != len(chart.fields):
        raise LegendreError(f"{len(chart.fields)} moments attendus, reçu {len(momenta)}")
    zero_vitesses = {v: Expr.zero(chart) for v in chart.velocities}
    W: Matrix = []
    b = []
    for i, m in enumerate(momenta):
        if m.chart != chart:
            raise ChartMismatchError("Moment construit sur une autre carte")
        ligne = []
        for v in chart.velocities:
            w = partial_derivative(m, v)
            if not w.is_constant:
                raise LegendreError(
                    "non-invertible Legendre transform beyond supported class "
                    f"(∂p_{i + 1}/∂{chart.display(v)} = {w!r})"
                )
            ligne.append(w.constant_value())
        W.append(ligne)
        b.append(substitute(m, zero_vitesses))
    return W, tuple(b)


def detect_primary_constraints(momenta: Sequence[Expr], chart: JetChart) -> list[Constraint]:
    """
    Contraintes primaires φ = p_i − h_i.

    Les lignes libres de vitesses du hessien donnent directement
    p_i − m_i; plus généralement chaque vecteur c du noyau à gauche de W
    donne Σ c_j (p_j − m_j), normalisé à 1 sur p_i.

    Raises:
        LegendreError: Hessien non constant.
    """
    W, b = legendre_structure(momenta, chart)
    n = len(chart.fields)
    if n == 0:
        return []

    # Pivots cherchés depuis le dernier champ pour que les premiers champs
    # restent libres (donc résolus).
    p = [Expr.variable(chart, m) for m in chart.momenta]
    contraintes: list[Constraint] = []
    for k, c in left_kernel(W, column_order=range(n - 1, -1, -1)):
        phi = Expr.zero(chart)
        for j in range(n):
            if c[j] != 0:
                phi = phi + (p[j] - momenta[j]).scale(c[j])
        if any(v.kind == VarKind.VELOCITY for v in phi.variables()):
            raise LegendreError("Legendre elimination failed (contrainte dépendant des vitesses)")

        contraintes.append(Constraint(
            index=len(contraintes) + 1,
            expr=phi,
            solved_var=chart.momenta[k],
            solved_value=p[k] - phi,
        ))
        logger.info(f"  Contrainte primaire phi_{len(contraintes)} : {phi!r}")

    if not contraintes:
        logger.info("  Aucune contrainte primaire (système régulier)")
    return contraintes


def solve_velocities(
    momenta: Sequence[Expr],
    constraints: Sequence[Constraint],
    chart: JetChart,
) -> dict[VarId, Expr]:
    """
    Inverse la partie régulière: q_P' en fonction de p_P et des q_F'.

    P = indices non résolus par une contrainte, F = indices résolus.
    W_PP est inversible (sous-matrice principale sur des lignes
    indépendantes d'une matrice symétrique).
    """

    W, b = legendre_structure(momenta, chart)
    resolus = {c.solved_var.slot for c in constraints if c.solved_var.kind == VarKind.MOMENTUM}
    P = [i for i in range(len(chart.fields)) if i not in resolus]
    F = sorted(resolus)
    if not P:
        return {}

    inverse = invert([[W[i][j] for j in P] for i in P])
    vitesses = [Expr.variable(chart, v) for v in chart.velocities]
    seconds_membres = []
    for i in P:
        terme = Expr.variable(chart, chart.momenta[i]) - b[i]
        for j in F:
            terme = terme - vitesses[j].scale(W[i][j])
        seconds_membres.append(terme)

    solution = {}
    for a, i in enumerate(P):
        valeur = Expr.zero(chart)
        for c, terme in zip(inverse[a], seconds_membres):
            if c != 0:
                valeur = valeur + terme.scale(c)
        solution[chart.velocities[i]] = valeur
    return solution
