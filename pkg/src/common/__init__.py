# Module commun: Exceptions, constantes, configuration, utilitaires partagés
from src.common.exceptions import (
    DiracException,
    ChartMismatchError,
    EvaluationError,
    JetOrderError,
    LegendreError,
    PipelineError,
    DiracBracketError,
    IntegrationError,
    CompileError,
    ParseError,
    LocatedParseError,
    ParseErrorKind,
    SourceSpan,
)
from src.common.constants import VarKind, ConstraintClass
from src.common.config import Settings, load_settings
from src.common.logging_setup import setup_logging, fix_utf8_windows
from src.common.file_utils import localiser_fichier_systeme, lire_texte_utf8, ecrire_csv
