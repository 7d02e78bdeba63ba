"""
Opérations sur les polynômes: dérivée partielle, substitution, évaluation.

Toutes les fonctions sont pures; les Expr ne sont jamais modifiées.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from src.common.exceptions import ChartMismatchError, EvaluationError
from src.symbolic_core.chart import VarId
from src.symbolic_core.expr import Expr, Monomial

# Terme compilé: (coefficient flottant, ((position, exposant), ...))
CompiledTerm = tuple[float, tuple[tuple[int, int], ...]]


def _verifier_variable(e: Expr, v: VarId) -> None:
    if not e.chart.owns(v):
        raise ChartMismatchError(f"Variable {v.name} étrangère à la carte de l'expression")


# ---------------------------------------------------------------------------
# Dérivation
# ---------------------------------------------------------------------------

def partial_derivative(e: Expr, v: VarId) -> Expr:
    """
    Dérivée partielle formelle ∂e/∂v.

    Args:
        e: Polynôme.
        v: Variable de la même carte.

    Returns:
        Forme canonique de la dérivée.
    """
    _verifier_variable(e, v)
    derivee: dict[Monomial, Fraction] = {}
    for mono, coef in e.terms():
        exposants = dict(mono)
        k = exposants.get(v.index, 0)
        if k == 0:
            continue
        exposants[v.index] = k - 1
        m = tuple(sorted(exposants.items()))
        derivee[m] = derivee.get(m, Fraction(0)) + coef * k
    return Expr(e.chart, derivee)


def coefficient(e: Expr, v: VarId, degree: int = 1) -> Expr:
    """
    Coefficient de v**degree dans e (polynôme en les autres variables).

    coefficient(3*f*g + g, f) == 3*g ; coefficient(e, v, 0) = e|_{v=0}.
    """
    _verifier_variable(e, v)
    extrait: dict[Monomial, Fraction] = {}
    for mono, coef in e.terms():
        exposants = dict(mono)
        if exposants.get(v.index, 0) != degree:
            continue
        exposants.pop(v.index, None)
        m = tuple(sorted(exposants.items()))
        extrait[m] = extrait.get(m, Fraction(0)) + coef
    return Expr(e.chart, extrait)


# ---------------------------------------------------------------------------
# Substitution simultanée
# ---------------------------------------------------------------------------

def substitute(e: Expr, bindings: Mapping[VarId, Expr]) -> Expr:
    """
    Substitution simultanée v ↦ bindings[v] (morphisme d'anneau).

    Les variables absentes de `bindings` restent inchangées. Les liaisons
    ne se voient pas entre elles: substitute(f, {f: g, g: f}) == g.

    Raises:
        ChartMismatchError: Liaison d'une autre carte.
    """
    if not bindings:
        return e
    chart = e.chart
    for v, valeur in bindings.items():
        _verifier_variable(e, v)
        if valeur.chart != chart:
            raise ChartMismatchError(f"Liaison de {v.name} sur une autre carte")

    par_index = {v.index: valeur for v, valeur in bindings.items()}
    puissances: dict[tuple[int, int], Expr] = {}
    resultat = Expr.zero(chart)
    for mono, coef in e.terms():
        libre: list[tuple[int, int]] = []
        terme = Expr.constant(chart, coef)
        for idx, k in mono:
            if idx in par_index:
                if (idx, k) not in puissances:
                    puissances[(idx, k)] = par_index[idx] ** k
                terme = terme * puissances[(idx, k)]
            else:
                libre.append((idx, k))
        resultat = resultat + terme * Expr(chart, {tuple(libre): 1})
    return resultat


# ---------------------------------------------------------------------------
# Évaluation numérique
# ---------------------------------------------------------------------------

def compile_terms(e: Expr, positions: Mapping[VarId, int]) -> tuple[CompiledTerm, ...]:
    """
    Compile e pour une évaluation répétée sur un vecteur de valeurs.

    Args:
        e: Polynôme.
        positions: Position de chaque variable dans le vecteur évalué.

    Raises:
        EvaluationError: Variable de e absente de `positions` (nommée).
    """
    par_index = {v.index: pos for v, pos in positions.items()}
    compiles: list[CompiledTerm] = []
    for mono, coef in e.terms():
        facteurs = []
        for idx, k in mono:
            if idx not in par_index:
                v = e.chart.variables[idx]
                raise EvaluationError(
                    f"Variable non liée : {e.chart.display(v)}",
                    variable=e.chart.display(v),
                )
            facteurs.append((par_index[idx], k))
        compiles.append((float(coef), tuple(facteurs)))
    return tuple(compiles)


def evaluate_terms(termes: Sequence[CompiledTerm], valeurs: Sequence):
    """
    Évalue des termes compilés, dans l'ordre canonique des monômes.

    Fonctionne sur des flottants ou, terme à terme, sur des tableaux numpy
    (évaluation par lots).
    """
    acc = 0.0
    for coef, facteurs in termes:
        terme = coef
        for pos, k in facteurs:
            terme = terme * (valeurs[pos] if k == 1 else valeurs[pos] ** k)
        acc = acc + terme
    return acc


def eval_numeric(e: Expr, point: Mapping[VarId, float]) -> float:
    """
    Évalue e en double précision.

    Args:
        e: Polynôme.
        point: Valeur de chaque variable de e.

    Returns:
        Valeur flottante (ordre des termes déterministe).

    Raises:
        EvaluationError: Variable non liée (nommée dans le message).
    """
    ordre = list(point.keys())
    positions = {v: i for i, v in enumerate(ordre)}
    valeurs = [float(point[v]) for v in ordre]
    return float(evaluate_terms(compile_terms(e, positions), valeurs))
