"""
Crochets de Poisson et de Dirac.

{F, G} = Σ_i (∂F/∂q_i ∂G/∂p_i − ∂F/∂p_i ∂G/∂q_i) sur les n paires
canoniques de la carte. Les multiplicateurs sont des coefficients
inertes: aucune dérivée partielle n'est prise par rapport à eux.
"""
from __future__ import annotations

from typing import Sequence

from src.common.constants import VarKind
from src.common.exceptions import ChartMismatchError, DiracBracketError, JetOrderError, PipelineError
from src.symbolic_core.chart import JetChart
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import partial_derivative
from src.dirac_pipeline.constraints import Constraint, weak_reduce
from src.dirac_pipeline.linalg import constant_matrix, invert, rank


def _verifier_espace_des_phases(e: Expr, chart: JetChart) -> None:
    if e.chart != chart:
        raise ChartMismatchError("Crochet entre expressions de cartes différentes")
    jets = [v for v in e.variables() if v.kind in (VarKind.VELOCITY, VarKind.ACCELERATION)]
    if jets:
        noms = ", ".join(chart.display(v) for v in sorted(jets))
        raise JetOrderError(f"Crochet de Poisson hors de l'espace des phases ({noms})")


def poisson_bracket(F: Expr, G: Expr, chart: JetChart) -> Expr:
    """
    Crochet de Poisson canonique.

    Raises:
        JetOrderError: F ou G contient des vitesses ou accélérations.
    """
    _verifier_espace_des_phases(F, chart)
    _verifier_espace_des_phases(G, chart)
    resultat = Expr.zero(chart)
    for q, p in zip(chart.fields, chart.momenta):
        resultat = (
            resultat
            + partial_derivative(F, q) * partial_derivative(G, p)
            - partial_derivative(F, p) * partial_derivative(G, q)
        )
    return resultat


def constraint_matrix(constraints: Sequence[Constraint], chart: JetChart) -> list[list[Expr]]:
    """
    C_ab = {φ_a, φ_b}, faiblement réduit.

    Seul le triangle supérieur est calculé; C est antisymétrique par
    construction.
    """
    n = len(constraints)
    C = [[Expr.zero(chart) for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            c_ab = weak_reduce(
                poisson_bracket(constraints[a].expr, constraints[b].expr, chart),
                constraints,
            )
            C[a][b] = c_ab
            C[b][a] = -c_ab
    return C


def observable_eom(F: Expr, H: Expr, chart: JetChart) -> Expr:
    """F' = {F, H}; la réduction faible est laissée à l'appelant."""
    return poisson_bracket(F, H, chart)


def dirac_bracket(F: Expr, G: Expr, constraints: Sequence[Constraint], chart: JetChart) -> Expr:
    """
    {F,G}_D = {F,G} − Σ_ab {F,φ_a} (C⁻¹)_ab {φ_b,G}.

    Args:
        F, G: Observables de l'espace des phases.
        constraints: Contraintes, toutes de seconde classe.
        chart: Carte commune.

    Raises:
        DiracBracketError: Contrainte de première classe, C non constante
            ou singulière.
    """
    if not constraints:
        return poisson_bracket(F, G, chart)

    C_expr = constraint_matrix(constraints, chart)
    premiere_classe = [c.label for c, ligne in zip(constraints, C_expr) if all(x.is_zero for x in ligne)]
    if premiere_classe:
        raise DiracBracketError(
            f"Dirac bracket undefined: first-class constraints present ({', '.join(premiere_classe)})"
        )
    try:
        C = constant_matrix(C_expr, "C")
    except PipelineError as e:
        raise DiracBracketError(f"Dirac bracket undefined: {e}") from e
    if rank(C) < len(C):
        raise DiracBracketError(f"Dirac bracket undefined: C singular (rank {rank(C)} < {len(C)})")
    C_inv = invert(C)

    F_phi = [poisson_bracket(F, c.expr, chart) for c in constraints]
    phi_G = [poisson_bracket(c.expr, G, chart) for c in constraints]
    resultat = poisson_bracket(F, G, chart)
    for a, fa in enumerate(F_phi):
        if fa.is_zero:
            continue
        for b, gb in enumerate(phi_G):
            if C_inv[a][b] != 0 and not gb.is_zero:
                resultat = resultat - (fa * gb).scale(C_inv[a][b])
    return resultat
