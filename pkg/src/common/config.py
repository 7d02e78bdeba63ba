"""
Paramètres d'exécution surchargeables par l'environnement ou un fichier .env.

Priorité: option CLI > section [integrate] du fichier système
> variables d'environnement (.env) > constantes.
"""
import os
import logging
from dataclasses import dataclass
from pathlib import Path

from dotenv import load_dotenv

from src.common.constants import (
    DEFAULT_STEP,
    DEFAULT_ALPHA_MAX,
    MAX_CONSISTENCY_ROUNDS,
    SYSTEMS_DIR,
)
from src.common.exceptions import DiracException

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).parent.parent.parent


@dataclass(frozen=True)
class Settings:
    """Valeurs par défaut effectives d'une exécution."""
    step: float = DEFAULT_STEP
    alpha_max: float = DEFAULT_ALPHA_MAX
    max_rounds: int = MAX_CONSISTENCY_ROUNDS
    log_dir: Path | None = None
    systems_dir: Path = PROJECT_ROOT / SYSTEMS_DIR


def _lire_float(nom: str, defaut: float) -> float:
    brut = os.getenv(nom)
    if brut is None or not brut.strip():
        return defaut
    try:
        return float(brut)
    except ValueError as e:
        raise DiracException(f"{nom} invalide dans l'environnement : {brut!r}") from e


def _lire_int(nom: str, defaut: int) -> int:
    brut = os.getenv(nom)
    if brut is None or not brut.strip():
        return defaut
    try:
        return int(brut)
    except ValueError as e:
        raise DiracException(f"{nom} invalide dans l'environnement : {brut!r}") from e


def load_settings(env_file: str | Path | None = None) -> Settings:
    """
    Charge le .env (s'il existe) puis construit les paramètres.

    Args:
        env_file: Fichier .env explicite. Si None, recherche standard de python-dotenv.

    Returns:
        Settings figés.

    Raises:
        DiracException: Valeur numérique illisible dans l'environnement.
    """
    if env_file is not None:
        load_dotenv(env_file, override=False)
    else:
        load_dotenv(override=False)

    log_dir = os.getenv("DIRAC_LOG_DIR")
    settings = Settings(
        step=_lire_float("DIRAC_STEP", DEFAULT_STEP),
        alpha_max=_lire_float("DIRAC_ALPHA_MAX", DEFAULT_ALPHA_MAX),
        max_rounds=_lire_int("DIRAC_MAX_ROUNDS", MAX_CONSISTENCY_ROUNDS),
        log_dir=Path(log_dir) if log_dir else None,
        systems_dir=Path(os.getenv("DIRAC_SYSTEMS_DIR") or PROJECT_ROOT / SYSTEMS_DIR),
    )
    logger.debug(f"Paramètres chargés : {settings}")
    return settings
