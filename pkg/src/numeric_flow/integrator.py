"""
Runge-Kutta classique d'ordre 4, pas fixe.

Grille: α_k = k·h pour k = 0..N, puis un dernier pas raccourci pour
atterrir exactement sur alpha_max. Les moniteurs sont évalués à chaque
état accepté.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from src.common.constants import STEP_SNAP_TOLERANCE
from src.common.exceptions import IntegrationError
from src.symbolic_core.chart import VarId
from src.numeric_flow.field import CompiledField
from src.numeric_flow.monitors import MonitorSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhaseState:
    """
    Point de l'espace des phases au paramètre α.

    values suit l'ordre de l'état du champ: (champs..., moments...), ou
    champs seuls en mode réduit.
    """
    alpha: float
    values: np.ndarray

    def __post_init__(self):
        valeurs = np.asarray(self.values, dtype=float)
        if valeurs.ndim != 1:
            raise ValueError(f"État de dimension {valeurs.ndim}, vecteur attendu")
        if not math.isfinite(self.alpha) or not np.all(np.isfinite(valeurs)):
            raise IntegrationError("État initial non fini", alpha=self.alpha)
        object.__setattr__(self, "values", valeurs)


@dataclass
class Trajectory:
    """
    États acceptés et colonnes de moniteurs alignées.

    Attributes:
        variables: Variables de l'état.
        alphas: (N,) strictement croissant.
        values: (N, dim).
        monitors: nom ↦ colonne (N,).
        constraint_labels: Colonnes de contraintes parmi les moniteurs.
    """
    variables: tuple[VarId, ...]
    alphas: np.ndarray
    values: np.ndarray
    monitors: dict[str, np.ndarray] = field(default_factory=dict)
    constraint_labels: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.alphas)

    def __iter__(self):
        for alpha, valeurs in zip(self.alphas, self.values):
            yield PhaseState(float(alpha), valeurs)

    def state(self, k: int) -> PhaseState:
        return PhaseState(float(self.alphas[k]), self.values[k])

    @property
    def initial(self) -> PhaseState:
        return self.state(0)

    @property
    def final(self) -> PhaseState:
        return self.state(-1)


# ---------------------------------------------------------------------------
# Schéma
# ---------------------------------------------------------------------------

def _verifier_parametres(alpha_max: float, step: float) -> None:
    if not (math.isfinite(step) and step > 0):
        raise IntegrationError(f"Pas invalide : {step} (doit être > 0)")
    if not (math.isfinite(alpha_max) and alpha_max >= 0):
        raise IntegrationError(f"alpha_max invalide : {alpha_max} (doit être >= 0)")


def alpha_grid(alpha_max: float, step: float) -> np.ndarray:
    """
    Grille α_0 = 0 < α_1 < ... = alpha_max.

    Raises:
        IntegrationError: step <= 0, alpha_max < 0 ou non fini.
    """
    _verifier_parametres(alpha_max, step)
    ratio = alpha_max / step
    n = round(ratio)
    if abs(ratio - n) > STEP_SNAP_TOLERANCE * max(1.0, ratio):
        n = math.floor(ratio)
        grille = np.arange(n + 1, dtype=float) * step
        return np.append(grille, alpha_max)
    grille = np.arange(n + 1, dtype=float) * step
    grille[-1] = alpha_max
    return grille


def rk4_step(champ: CompiledField, y: np.ndarray, h: float) -> np.ndarray:
    k1 = champ(y)
    k2 = champ(y + 0.5 * h * k1)
    k3 = champ(y + 0.5 * h * k2)
    k4 = champ(y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(
    champ: CompiledField,
    init: PhaseState,
    alpha_max: float,
    step: float,
    monitors: MonitorSet | None = None,
) -> Trajectory:
    """
    Intègre y' = F(y) de α = init.alpha (0) à alpha_max.

    Args:
        champ: Champ compilé.
        init: État initial (dimension du champ).
        alpha_max: Borne finale (>= 0).
        step: Pas fixe (> 0).
        monitors: Moniteurs évalués à chaque état (optionnel).

    Returns:
        Trajectory (un seul état si alpha_max = 0).

    Raises:
        IntegrationError: Paramètres invalides ou valeur non finie (α fautif).
    """
    if len(init.values) != champ.dimension:
        raise IntegrationError(
            f"État initial de dimension {len(init.values)}, champ de dimension {champ.dimension}"
        )
    grille = alpha_grid(alpha_max, step)
    etats = np.empty((len(grille), champ.dimension), dtype=float)
    etats[0] = init.values

    y = init.values.copy()
    for k in range(1, len(grille)):
        y = rk4_step(champ, y, grille[k] - grille[k - 1])
        if not np.all(np.isfinite(y)):
            raise IntegrationError(
                f"Valeur non finie à alpha = {grille[k]:.6g}", alpha=float(grille[k])
            )
        etats[k] = y

    colonnes: dict[str, np.ndarray] = {}
    labels: tuple[str, ...] = ()
    if monitors is not None:
        valeurs = np.array([monitors(e) for e in etats], dtype=float).reshape(len(grille), -1)
        colonnes = {nom: valeurs[:, i] for i, nom in enumerate(monitors.names)}
        labels = monitors.constraint_labels

    logger.info(f"Intégration RK4 : {len(grille) - 1} pas jusqu'à alpha = {alpha_max:.6g}")
    return Trajectory(champ.variables, grille, etats, colonnes, labels)


def integrate_batch(
    champ: CompiledField,
    inits: np.ndarray,
    alpha_max: float | np.ndarray,
    step: float,
) -> np.ndarray:
    """
    RK4 vectorisé sur un lot de conditions initiales indépendantes.

    Chaque trajectoire avance sur la grille commune k·step et s'arrête à
    son propre alpha_max (dernier pas raccourci, puis pas nuls).

    Args:
        champ: Champ compilé.
        inits: (N, dim).
        alpha_max: Borne commune ou une borne par condition (N,).
        step: Pas fixe (> 0).

    Returns:
        États finaux (N, dim).
    """
    inits = np.asarray(inits, dtype=float)
    if inits.ndim != 2 or inits.shape[1] != champ.dimension:
        raise IntegrationError(
            f"Lot de forme {inits.shape}, attendu (N, {champ.dimension})"
        )
    bornes = np.broadcast_to(np.asarray(alpha_max, dtype=float), (inits.shape[0],))
    for borne in bornes:
        _verifier_parametres(float(borne), step)

    n_pas = math.ceil(float(bornes.max(initial=0.0)) / step)
    y = inits.T.copy()
    for k in range(n_pas):
        h = np.clip(bornes - k * step, 0.0, step)
        y = rk4_step(champ, y, h)
        if not np.all(np.isfinite(y)):
            raise IntegrationError(
                f"Valeur non finie à alpha = {(k + 1) * step:.6g}", alpha=(k + 1) * step
            )
    return y.T
