"""
Exceptions personnalisées pour le pipeline Dirac-Bergmann.
"""
from __future__ import annotations

from dataclasses import dataclass


class DiracException(Exception):
    """Exception de base pour toutes les erreurs du pipeline."""
    pass


class ChartMismatchError(DiracException):
    """Opération entre expressions de cartes (JetChart) différentes."""
    pass


class EvaluationError(DiracException):
    """Évaluation numérique impossible (variable non liée)."""

    def __init__(self, message: str, variable: str | None = None):
        super().__init__(message)
        self.variable = variable


class JetOrderError(DiracException):
    """Ordre de jet non supporté (troisième jet, variable hors jets)."""
    pass


class LegendreError(DiracException):
    """Transformation de Legendre hors de la classe supportée."""
    pass


class PipelineError(DiracException):
    """Erreur de l'algorithme de Dirac (matrice, itérations, cohérence)."""
    pass


class DiracBracketError(DiracException):
    """Crochet de Dirac non défini pour ce système."""
    pass


class IntegrationError(DiracException):
    """Erreur d'intégration numérique (valeur non finie, pas invalide)."""

    def __init__(self, message: str, alpha: float | None = None):
        super().__init__(message)
        self.alpha = alpha


class CompileError(IntegrationError):
    """Second membre non compilable (multiplicateur ou vitesse libre)."""
    pass


# ---------------------------------------------------------------------------
# Erreurs de lecture (expressions et fichiers système)
# ---------------------------------------------------------------------------

class ParseErrorKind:
    """Catégories d'erreurs de lecture."""
    UNEXPECTED_TOKEN = "unexpected token"
    UNKNOWN_IDENTIFIER = "unknown identifier"
    BAD_NUMBER = "bad number"
    UNMATCHED_PARENTHESIS = "unmatched parenthesis"
    EMPTY_INPUT = "empty input"

    # Niveau fichier système
    MISSING_SECTION = "missing section"
    MISSING_KEY = "missing key"
    DUPLICATE_FIELD = "duplicate field"
    UNKNOWN_FIELD = "unknown field"
    BAD_VALUE = "bad value"


@dataclass(frozen=True)
class SourceSpan:
    """Intervalle d'octets [begin, end) dans le texte source (UTF-8)."""
    begin: int
    end: int

    def __post_init__(self):
        if self.begin < 0 or self.end < self.begin:
            raise ValueError(f"Intervalle invalide : {self.begin}..{self.end}")

    def shifted(self, offset: int) -> SourceSpan:
        return SourceSpan(self.begin + offset, self.end + offset)


class ParseError(DiracException):
    """
    Erreur de lecture d'une expression ou d'un fichier système.

    Attributes:
        span: Position fautive (octets) dans le texte lu.
        kind: Une des constantes de ParseErrorKind.
        message: Description lisible.
    """

    def __init__(self, span: SourceSpan, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.span = span
        self.kind = kind
        self.message = message

    def shifted(self, offset: int) -> ParseError:
        """Même erreur, décalée de `offset` octets (expression dans un fichier)."""
        return ParseError(self.span.shifted(offset), self.kind, self.message)

    def line_col(self, text: str) -> tuple[int, int]:
        """Ligne et colonne (base 1) du début de l'erreur dans `text`."""
        prefix = text.encode("utf-8")[: self.span.begin].decode("utf-8", errors="replace")
        line = prefix.count("\n") + 1
        col = len(prefix) - (prefix.rfind("\n") + 1) + 1
        return line, col

    def located(self, text: str, origin: str) -> LocatedParseError:
        """Même erreur, préfixée par `origine:ligne:colonne`."""
        line, col = self.line_col(text)
        return LocatedParseError(self.span, self.kind, self.message, f"{origin}:{line}:{col}")


class LocatedParseError(ParseError):
    """ParseError rattachée à sa source (fichier ou argument)."""

    def __init__(self, span: SourceSpan, kind: str, message: str, location: str):
        super().__init__(span, kind, message)
        self.location = location
        self.args = (f"{location}: {kind}: {message}",)

    def __str__(self) -> str:
        return self.args[0]
