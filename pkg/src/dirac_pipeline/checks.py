"""
Vérifications exactes sur un système contraint dérivé.

Chaque vérification renvoie un verdict et les résidus non nuls; aucun
seuil numérique n'intervient.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from src.common.constants import VarKind
from src.common.exceptions import ChartMismatchError
from src.symbolic_core.chart import JetChart, VarId
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import substitute
from src.lagrangian.jets import total_derivative
from src.lagrangian.lie_system import LieSystem
from src.lagrangian.observables import on_shell
from src.lagrangian.verification import LieVerdict
from src.dirac_pipeline.brackets import poisson_bracket
from src.dirac_pipeline.system import ConstrainedSystem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckVerdict:
    """Verdict exact: passed ssi aucun résidu."""
    passed: bool
    residuals: tuple[tuple[str, Expr], ...] = ()


def consistency_check(system: ConstrainedSystem) -> CheckVerdict:
    """weak_reduce({φ_a, H_λ}) == 0 pour toute contrainte."""
    H = system.hamiltonian
    residus = []
    for c in system.constraints:
        reste = system.weak(poisson_bracket(c.expr, H, system.chart))
        if not reste.is_zero:
            residus.append((c.label, reste))
    return CheckVerdict(not residus, tuple(residus))


def canonical_pairs_check(chart: JetChart) -> CheckVerdict:
    """{q_i, p_j} = δ_ij, tous les autres crochets de base nuls."""
    phase = chart.phase_variables
    residus = []
    for a in phase:
        for b in phase:
            attendu = 0
            if a.kind == VarKind.FIELD and b.kind == VarKind.MOMENTUM and a.slot == b.slot:
                attendu = 1
            elif a.kind == VarKind.MOMENTUM and b.kind == VarKind.FIELD and a.slot == b.slot:
                attendu = -1
            valeur = poisson_bracket(Expr.variable(chart, a), Expr.variable(chart, b), chart)
            if valeur != attendu:
                residus.append((f"{{{chart.display(a)}, {chart.display(b)}}}", valeur - attendu))
    return CheckVerdict(not residus, tuple(residus))


# ---------------------------------------------------------------------------
# Comparaison avec le flot de Lie
# ---------------------------------------------------------------------------

def _vers_champs(e: Expr, system: ConstrainedSystem, gen: LieSystem) -> Expr:
    """Réduction faible, puis moments restants ↦ définition sur le flot."""
    chart = system.chart
    liaisons = {
        p: on_shell(m, gen)
        for p, m in zip(chart.momenta, system.momenta)
    }
    return substitute(system.weak(e), liaisons)


def _ecarts_hamilton_lie(
    system: ConstrainedSystem,
    gen: LieSystem,
    variables: tuple[VarId, ...],
) -> list[tuple[VarId, Expr]]:
    chart = system.chart
    if gen.chart != chart:
        raise ChartMismatchError("LieSystem et système contraint sur des cartes différentes")
    H = system.hamiltonian
    ecarts = []
    for v in variables:
        membre = _vers_champs(poisson_bracket(Expr.variable(chart, v), H, chart), system, gen)
        if v.kind == VarKind.FIELD:
            attendu = gen.generator_of(v)
        else:
            attendu = on_shell(total_derivative(system.momenta[v.slot]), gen)
        reste = membre - attendu
        if not reste.is_zero:
            ecarts.append((v, reste))
    return ecarts


def poisson_hamilton_form(system: ConstrainedSystem, gen: LieSystem) -> CheckVerdict:
    """
    {v, H} ≈ membre de droite de Lie pour chaque variable canonique.

    Champs: {q_i, H} ≈ ξ_i. Moments: {p_i, H} ≈ d/dα(∂L/∂q_i') sur le flot.
    Les deux côtés sont ramenés aux champs avant comparaison.
    """
    ecarts = _ecarts_hamilton_lie(system, gen, system.chart.phase_variables)
    return CheckVerdict(
        not ecarts,
        tuple((system.chart.display(v), r) for v, r in ecarts),
    )


def hamilton_matches_lie(system: ConstrainedSystem, gen: LieSystem) -> LieVerdict:
    """Les équations de Hamilton des champs, sur la surface, sont celles de Lie."""
    ecarts = _ecarts_hamilton_lie(system, gen, system.chart.fields)
    if ecarts:
        logger.warning(
            f"Hamilton ≠ Lie : {[system.chart.display(v) for v, _ in ecarts]}"
        )
    return LieVerdict(equivalent=not ecarts, residuals=tuple(ecarts))
