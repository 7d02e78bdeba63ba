"""
Export CSV d'une trajectoire.

En-tête: alpha, variables de l'état, puis moniteurs
(H, radius2, phi_1..., em_residual).
"""
from __future__ import annotations

from pathlib import Path

from src.common.constants import CSV_FLOAT_FORMAT
from src.common.file_utils import ecrire_csv
from src.symbolic_core.chart import JetChart
from src.numeric_flow.integrator import Trajectory


def _fmt(x: float) -> str:
    return format(float(x), CSV_FLOAT_FORMAT)


def trajectory_header(traj: Trajectory, chart: JetChart) -> list[str]:
    return ["alpha"] + [chart.display(v) for v in traj.variables] + list(traj.monitors)


def trajectory_rows(traj: Trajectory) -> list[list[str]]:
    colonnes = list(traj.monitors.values())
    lignes = []
    for k, alpha in enumerate(traj.alphas):
        ligne = [_fmt(alpha)] + [_fmt(x) for x in traj.values[k]]
        ligne += [_fmt(c[k]) for c in colonnes]
        lignes.append(ligne)
    return lignes


def write_trajectory_csv(traj: Trajectory, chart: JetChart, chemin: str | Path) -> Path:
    """Écrit la trajectoire, une ligne par état accepté (17 chiffres significatifs)."""
    return ecrire_csv(chemin, trajectory_header(traj, chart), trajectory_rows(traj))
