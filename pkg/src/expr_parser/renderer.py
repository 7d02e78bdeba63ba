"""
Rendu textuel canonique des expressions (relisible par parse_expr).
"""
from __future__ import annotations

from fractions import Fraction

from src.common.constants import MAX_EXPONENT
from src.common.exceptions import ChartMismatchError
from src.symbolic_core.chart import JetChart
from src.symbolic_core.expr import Expr, Monomial


def _rationnel(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _puissance(nom: str, k: int) -> list[str]:
    """Un exposant au-delà de MAX_EXPONENT est écrit en plusieurs facteurs relisibles."""
    pleins, reste = divmod(k, MAX_EXPONENT)
    facteurs = [f"{nom}^{MAX_EXPONENT}"] * pleins
    if reste == 1:
        facteurs.append(nom)
    elif reste:
        facteurs.append(f"{nom}^{reste}")
    return facteurs


def _monome(mono: Monomial, chart: JetChart) -> str:
    facteurs = []
    for idx, k in mono:
        facteurs.extend(_puissance(chart.display(chart.variables[idx]), k))
    return "*".join(facteurs)


def render_expr(e: Expr, chart: JetChart | None = None) -> str:
    """
    Rendu déterministe: termes en ordre canonique, noms affichés (alias).

    Exemples: "1/2*f^2 + 1/2*g^2", "-1/2*g", "f*s - g*p", "0".
    Relisible par parse_expr tant que numérateurs et dénominateurs ont
    au plus MAX_LITERAL_DIGITS chiffres.

    Raises:
        ChartMismatchError: `chart` différente de celle de l'expression.
    """
    if chart is None:
        chart = e.chart
    elif chart != e.chart:
        raise ChartMismatchError("Rendu demandé dans une autre carte")

    if e.is_zero:
        return "0"

    morceaux: list[str] = []
    for i, (mono, coef) in enumerate(e.terms()):
        negatif = coef < 0
        absolu = -coef if negatif else coef
        if not mono:
            corps = _rationnel(absolu)
        elif absolu == 1:
            corps = _monome(mono, chart)
        else:
            corps = f"{_rationnel(absolu)}*{_monome(mono, chart)}"

        if i == 0:
            morceaux.append(f"-{corps}" if negatif else corps)
        else:
            morceaux.append(f" - {corps}" if negatif else f" + {corps}")
    return "".join(morceaux)
