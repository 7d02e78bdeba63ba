"""
Configuration logging et fix encodage UTF-8 Windows.

Appeler fix_utf8_windows() au début de chaque commande.
Appeler setup_logging() pour configurer la sortie stderr + fichier optionnel.
La sortie standard reste réservée aux rapports (texte ou JSON).
"""
import sys
import io
import logging
from pathlib import Path
from datetime import datetime


def fix_utf8_windows():
    """
    Corrige l'encodage de la console Windows (CP1252 → UTF-8).
    Évite UnicodeEncodeError sur λ, ≈ et les indices des rapports.
    """
    if sys.platform == "win32":
        sys.stdout = io.TextIOWrapper(
            sys.stdout.buffer, encoding="utf-8", errors="replace"
        )
        sys.stderr = io.TextIOWrapper(
            sys.stderr.buffer, encoding="utf-8", errors="replace"
        )


def setup_logging(
    level: int = logging.INFO,
    log_dir: Path | None = None,
    command_name: str = "dirac",
) -> logging.Logger:
    """
    Configure le logging racine avec sortie stderr + fichier optionnel.

    Args:
        level: Niveau minimal (INFO par défaut, WARNING avec --quiet).
        log_dir: Dossier pour le fichier .log. Si None, stderr seulement.
        command_name: Préfixe du fichier log (nom de la sous-commande).

    Returns:
        Logger racine du paquet `src`.
    """
    handlers: list[logging.Handler] = [
        logging.StreamHandler(sys.stderr),
    ]

    if log_dir is not None:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        log_file = log_dir / f"{command_name}_{timestamp}.log"
        handlers.append(
            logging.FileHandler(log_file, encoding="utf-8")
        )

    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
        handlers=handlers,
        force=True,
    )

    return logging.getLogger("src")
