"""
Utilitaires fichiers partagés : localisation des systèmes, lecture, CSV.
"""
import csv
import logging
from pathlib import Path
from typing import Iterable, Sequence

from src.common.constants import SYSTEMS_DIR, SYSTEM_FILE_SUFFIX

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Localisation d'un fichier système
# ---------------------------------------------------------------------------

def localiser_fichier_systeme(
    chemin: str | Path,
    systems_dir: str | Path = SYSTEMS_DIR,
) -> Path:
    """
    Localise un fichier système, chemin direct ou preset livré.

    Ordre de recherche:
    1. Chemin tel quel (relatif au dossier courant ou absolu)
    2. `systems_dir/<nom>` (ex: "so2.system")
    3. `systems_dir/<nom>.system` (ex: "so2")

    Args:
        chemin: Chemin ou nom de preset.
        systems_dir: Dossier des presets livrés.

    Returns:
        Chemin existant vers le fichier.

    Raises:
        FileNotFoundError: Aucun candidat n'existe.
    """
    chemin = Path(chemin)
    systems_dir = Path(systems_dir)

    candidats = [chemin]
    if not chemin.is_absolute():
        candidats.append(systems_dir / chemin)
        if chemin.suffix != SYSTEM_FILE_SUFFIX:
            candidats.append(systems_dir / f"{chemin.name}{SYSTEM_FILE_SUFFIX}")

    for candidat in candidats:
        if candidat.is_file():
            logger.debug(f"Fichier système trouvé : {candidat}")
            return candidat

    # Pas de fallback silencieux, erreur explicite
    raise FileNotFoundError(
        f"Fichier système introuvable : {chemin} "
        f"(cherché: {', '.join(str(c) for c in candidats)})"
    )


def lire_texte_utf8(chemin: str | Path) -> str:
    """
    Lit un fichier texte UTF-8.

    Raises:
        FileNotFoundError: Fichier absent.
        UnicodeDecodeError: Contenu non UTF-8.
    """
    chemin = Path(chemin)
    with open(chemin, "r", encoding="utf-8") as f:
        contenu = f.read()
    logger.info(f"Lu {chemin.name} ({len(contenu)} caractères)")
    return contenu


# ---------------------------------------------------------------------------
# Écriture CSV
# ---------------------------------------------------------------------------

def ecrire_csv(
    chemin: str | Path,
    entetes: Sequence[str],
    lignes: Iterable[Sequence[str]],
) -> Path:
    """
    Écrit un CSV UTF-8 (séparateur virgule, fins de ligne \\n).

    Args:
        chemin: Fichier de sortie (dossiers parents créés au besoin).
        entetes: Ligne d'en-tête.
        lignes: Lignes déjà formatées en chaînes.

    Returns:
        Chemin écrit.
    """
    chemin = Path(chemin)
    chemin.parent.mkdir(parents=True, exist_ok=True)

    nb = 0
    with open(chemin, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(entetes)
        for ligne in lignes:
            writer.writerow(ligne)
            nb += 1

    logger.info(f"CSV écrit : {chemin} ({nb} lignes)")
    return chemin
