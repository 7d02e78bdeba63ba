"""
Moniteurs le long d'une trajectoire: H, rayon², dérive des contraintes,
résidu énergie-moment.

Les moniteurs sont compilés depuis les Expr symboliques du système (même
source que les équations), jamais réécrits à la main.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from src.common.constants import CONSTRAINT_DRIFT_WARNING, VarKind
from src.common.exceptions import EvaluationError
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import CompiledTerm, compile_terms, evaluate_terms, substitute
from src.lagrangian.observables import energy_momentum_residual
from src.dirac_pipeline.system import ConstrainedSystem
from src.numeric_flow.field import CompiledField

logger = logging.getLogger(__name__)

MONITOR_H = "H"
MONITOR_RADIUS2 = "radius2"
MONITOR_EM_RESIDUAL = "em_residual"


@dataclass(frozen=True)
class MonitorSet:
    """
    Moniteurs compilés sur l'état d'un CompiledField.

    Un moniteur sans termes (None) n'est pas défini pour ce système et
    vaut NaN à chaque état.
    """
    names: tuple[str, ...]
    terms: tuple[tuple[CompiledTerm, ...] | None, ...]
    constraint_labels: tuple[str, ...] = ()

    def __call__(self, y: np.ndarray) -> list[float]:
        valeurs = y.tolist()
        return [
            float(evaluate_terms(t, valeurs)) if t is not None else math.nan
            for t in self.terms
        ]


def _compiler_ou_none(e: Expr | None, positions) -> tuple[CompiledTerm, ...] | None:
    if e is None:
        return None
    try:
        return compile_terms(e, positions)
    except EvaluationError as err:
        logger.debug(f"Moniteur non défini sur cet état : {err}")
        return None


def build_monitors(system: ConstrainedSystem, champ: CompiledField) -> MonitorSet:
    """
    Construit H, radius2, |φ_a| et em_residual pour l'état du champ.

    En mode réduit (champs seuls), H est remplacé par sa réduction
    faible et les contraintes ne sont pas suivies.

    Args:
        system: Système dérivé (H_λ, contraintes).
        champ: Champ compilé définissant l'ordre de l'état.
    """
    chart = system.chart
    positions = champ.positions
    reduit = all(v.kind == VarKind.FIELD for v in champ.variables)

    H = system.weak(system.hamiltonian) if reduit else system.hamiltonian
    rayon = Expr.zero(chart)
    for q in chart.fields:
        rayon = rayon + Expr.variable(chart, q) ** 2

    noms = [MONITOR_H, MONITOR_RADIUS2]
    exprs: list[Expr | None] = [H, rayon]

    labels = ()
    if not reduit:
        labels = tuple(c.label for c in system.constraints)
        noms += list(labels)
        exprs += [c.expr for c in system.constraints]

    # q' remplacé par le membre de droite du champ
    residu = energy_momentum_residual(chart)
    if residu is not None:
        vitesses = {}
        for q in chart.fields:
            if q in positions:
                i = positions[q]
                vitesses[chart.velocity_of(q)] = champ.equations[i][1]
        residu = substitute(residu, vitesses) if len(vitesses) == len(chart.fields) else None
    noms.append(MONITOR_EM_RESIDUAL)
    exprs.append(residu)

    return MonitorSet(
        names=tuple(noms),
        terms=tuple(_compiler_ou_none(e, positions) for e in exprs),
        constraint_labels=labels,
    )


# ---------------------------------------------------------------------------
# Synthèse
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonitorSummary:
    """
    Maxima le long d'une trajectoire (None si le moniteur n'est pas défini).

    Attributes:
        h_drift: max |H(α) − H(0)|.
        radius2_drift: max |r²(α) − r²(0)|.
        constraint_max: max |φ_a| par contrainte.
        em_residual_max: max |2T − l|.
    """
    h_drift: float | None
    radius2_drift: float | None
    constraint_max: dict[str, float] = field(default_factory=dict)
    em_residual_max: float | None = None

    @property
    def constraint_drift(self) -> float:
        return max(self.constraint_max.values(), default=0.0)

    def as_dict(self) -> dict:
        return {
            "max_abs_delta_H": self.h_drift,
            "max_abs_delta_radius2": self.radius2_drift,
            "max_abs_phi": dict(self.constraint_max),
            "max_abs_em_residual": self.em_residual_max,
        }


def _max_ou_none(valeurs: np.ndarray) -> float | None:
    if valeurs.size == 0 or np.all(np.isnan(valeurs)):
        return None
    return float(np.max(np.abs(valeurs)))


def monitor_report(traj) -> MonitorSummary:
    """
    Synthèse des moniteurs d'une trajectoire non vide.

    Écarts à la valeur initiale pour H et rayon², valeurs absolues pour
    les contraintes et le résidu.
    """
    if len(traj) == 0:
        raise ValueError("Trajectoire vide")
    moniteurs = traj.monitors

    def derive(nom: str) -> float | None:
        if nom not in moniteurs:
            return None
        colonne = moniteurs[nom]
        return _max_ou_none(colonne - colonne[0])

    contraintes = {}
    for label in traj.constraint_labels:
        m = _max_ou_none(moniteurs[label])
        if m is not None:
            contraintes[label] = m
            if m > CONSTRAINT_DRIFT_WARNING:
                logger.warning(f"Dérive de contrainte {label} : {m:.3g} (état hors surface ?)")

    em = moniteurs.get(MONITOR_EM_RESIDUAL)
    return MonitorSummary(
        h_drift=derive(MONITOR_H),
        radius2_drift=derive(MONITOR_RADIUS2),
        constraint_max=contraintes,
        em_residual_max=_max_ou_none(em) if em is not None else None,
    )
