"""
Génération pseudo-aléatoire de polynômes pour les vérifications de
propriétés (crochets, réduction faible, aller-retour du parseur).
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from src.symbolic_core.chart import JetChart, VarId
from src.symbolic_core.expr import Expr


def random_fraction(rng: random.Random, max_abs: int = 9) -> Fraction:
    """Rationnel non nul, numérateur et dénominateur bornés par max_abs."""
    num = rng.choice([k for k in range(-max_abs, max_abs + 1) if k != 0])
    return Fraction(num, rng.randint(1, max_abs))


def random_expr(
    chart: JetChart,
    rng: random.Random,
    variables: Sequence[VarId] | None = None,
    max_degree: int = 3,
    max_terms: int = 4,
    max_abs: int = 9,
) -> Expr:
    """
    Polynôme aléatoire de degré total ≤ max_degree.

    Args:
        chart: Carte.
        rng: Générateur initialisé (reproductibilité).
        variables: Variables autorisées (défaut: espace des phases).
        max_degree: Degré total maximal de chaque monôme.
        max_terms: Nombre maximal de termes tirés.
        max_abs: Borne des numérateurs et dénominateurs.
    """
    variables = list(variables if variables is not None else chart.phase_variables)
    termes: dict = {}
    for _ in range(rng.randint(1, max_terms)):
        degre = rng.randint(0, max_degree)
        exposants: dict[int, int] = {}
        for _ in range(degre):
            v = rng.choice(variables)
            exposants[v.index] = exposants.get(v.index, 0) + 1
        mono = tuple(sorted(exposants.items()))
        termes[mono] = termes.get(mono, 0) + random_fraction(rng, max_abs)
    return Expr(chart, termes)
