"""
Lecture des expressions polynomiales textuelles.

Grammaire (EBNF):
    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := ['-'] atom ['^' uint]
    atom     := rational | ident | '(' expr ')'
    rational := int ['/' uint]
    ident    := lettre (lettre | chiffre | '_')* suivi de 0, 1 ou 2 apostrophes

Les espaces sont ignorés, pas de multiplication implicite, division
uniquement dans les littéraux rationnels. Le moins unaire lie plus fort
que +/- et moins fort que ^.
"""
from __future__ import annotations

import re
import logging
from dataclasses import dataclass
from fractions import Fraction

from src.common.constants import (
    JET_SUFFIX,
    MAX_EXPONENT,
    MAX_LITERAL_DIGITS,
    MAX_NESTING,
    VarKind,
)
from src.common.exceptions import ParseError, ParseErrorKind, SourceSpan
from src.symbolic_core.chart import JetChart, VarId
from src.symbolic_core.expr import Expr

logger = logging.getLogger(__name__)

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[0-9]+")
_OPERATEURS = set("+-*/^()")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op", "eof"
    text: str
    span: SourceSpan


def _octets(c: str) -> int:
    """Longueur UTF-8 d'un caractère (octets échappés comptés pour 1)."""
    o = ord(c)
    if 0xDC80 <= o <= 0xDCFF or o < 0x80:
        return 1
    if o < 0x800:
        return 2
    if o < 0x10000:
        return 3
    return 4


def _abrege(texte: str, n: int = 12) -> str:
    return texte if len(texte) <= n else f"{texte[:n]}..."


def _decoder(text: str | bytes) -> str:
    if isinstance(text, bytes):
        return text.decode("utf-8", errors="surrogateescape")
    return text


# ---------------------------------------------------------------------------
# Découpage lexical
# ---------------------------------------------------------------------------

def tokenize(text: str) -> list[Token]:
    """
    Découpe le texte en jetons avec positions en octets.

    Raises:
        ParseError: Caractère inattendu ou apostrophes en excès.
    """
    offsets = [0]
    for c in text:
        offsets.append(offsets[-1] + _octets(c))

    def span(debut: int, fin: int) -> SourceSpan:
        return SourceSpan(offsets[debut], offsets[fin])

    jetons: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c in _OPERATEURS:
            jetons.append(Token("op", c, span(i, i + 1)))
            i += 1
            continue
        m = _INT_RE.match(text, i)
        if m:
            jetons.append(Token("int", m.group(0), span(i, m.end())))
            i = m.end()
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            fin = m.end()
            while fin < n and text[fin] == JET_SUFFIX:
                fin += 1
            if fin - m.end() > 2:
                debut_excedent = m.end() + 2
                raise ParseError(
                    span(debut_excedent, debut_excedent + 1),
                    ParseErrorKind.UNEXPECTED_TOKEN,
                    f"jet d'ordre {fin - m.end()} non supporté dans {text[i:fin]!r}",
                )
            jetons.append(Token("ident", text[i:fin], span(i, fin)))
            i = fin
            continue
        raise ParseError(
            span(i, i + 1),
            ParseErrorKind.UNEXPECTED_TOKEN,
            f"caractère inattendu {c!r}",
        )
    jetons.append(Token("eof", "", SourceSpan(offsets[-1], offsets[-1])))
    return jetons


# ---------------------------------------------------------------------------
# Analyse syntaxique
# ---------------------------------------------------------------------------

class _Parser:
    """Descente récursive sur la liste de jetons."""

    def __init__(self, jetons: list[Token], chart: JetChart):
        self.jetons = jetons
        self.pos = 0
        self.chart = chart
        self.profondeur = 0

    def peek(self) -> Token:
        return self.jetons[self.pos]

    def advance(self) -> Token:
        jeton = self.jetons[self.pos]
        if jeton.kind != "eof":
            self.pos += 1
        return jeton

    def at_op(self, op: str) -> bool:
        jeton = self.peek()
        return jeton.kind == "op" and jeton.text == op

    def inattendu(self, jeton: Token, attendu: str) -> ParseError:
        if jeton.kind == "eof":
            return ParseError(jeton.span, ParseErrorKind.UNEXPECTED_TOKEN,
                              f"fin de texte inattendue, attendu {attendu}")
        if jeton.kind == "op" and jeton.text == ")":
            return ParseError(jeton.span, ParseErrorKind.UNMATCHED_PARENTHESIS,
                              "parenthèse fermante sans ouvrante")
        return ParseError(jeton.span, ParseErrorKind.UNEXPECTED_TOKEN,
                          f"jeton inattendu {jeton.text!r}, attendu {attendu}")

    def parse_expr(self) -> Expr:
        resultat = self.parse_term()
        while self.at_op("+") or self.at_op("-"):
            op = self.advance().text
            droite = self.parse_term()
            resultat = resultat + droite if op == "+" else resultat - droite
        return resultat

    def parse_term(self) -> Expr:
        resultat = self.parse_factor()
        while self.at_op("*"):
            self.advance()
            resultat = resultat * self.parse_factor()
        return resultat

    def parse_factor(self) -> Expr:
        negatif = False
        if self.at_op("-"):
            self.advance()
            negatif = True
        base = self.parse_atom()
        if self.at_op("^"):
            self.advance()
            jeton = self.peek()
            if jeton.kind != "int":
                raise self.inattendu(jeton, "un exposant entier")
            self.advance()
            # Longueur bornée avant int()
            chiffres = jeton.text.lstrip("0") or "0"
            if len(chiffres) > len(str(MAX_EXPONENT)) or int(chiffres) > MAX_EXPONENT:
                raise ParseError(jeton.span, ParseErrorKind.BAD_NUMBER,
                                 f"exposant {_abrege(jeton.text)} > {MAX_EXPONENT}")
            exposant = int(chiffres)
            base = base ** exposant
        return -base if negatif else base

    def parse_atom(self) -> Expr:
        jeton = self.peek()
        if jeton.kind == "int":
            return self.parse_rational()
        if jeton.kind == "ident":
            self.advance()
            return Expr.variable(self.chart, self.resoudre(jeton))
        if self.at_op("("):
            ouvrante = self.advance()
            self.profondeur += 1
            if self.profondeur > MAX_NESTING:
                raise ParseError(ouvrante.span, ParseErrorKind.UNEXPECTED_TOKEN,
                                 f"imbrication au-delà de {MAX_NESTING} niveaux")
            interieur = self.parse_expr()
            self.profondeur -= 1
            if not self.at_op(")"):
                fermeture = self.peek()
                if fermeture.kind == "eof":
                    raise ParseError(ouvrante.span, ParseErrorKind.UNMATCHED_PARENTHESIS,
                                     "parenthèse ouvrante jamais fermée")
                raise self.inattendu(fermeture, "')'")
            self.advance()
            return interieur
        raise self.inattendu(jeton, "un nombre, un identifiant ou '('")

    def parse_rational(self) -> Expr:
        numerateur = self.advance()
        valeur = Fraction(self.entier(numerateur))
        if self.at_op("/"):
            self.advance()
            denominateur = self.peek()
            if denominateur.kind != "int":
                raise self.inattendu(denominateur, "un dénominateur entier")
            self.advance()
            d = self.entier(denominateur)
            if d == 0:
                raise ParseError(
                    SourceSpan(numerateur.span.begin, denominateur.span.end),
                    ParseErrorKind.BAD_NUMBER,
                    f"dénominateur nul dans {numerateur.text}/{denominateur.text}",
                )
            valeur = valeur / d
        return Expr.constant(self.chart, valeur)

    def entier(self, jeton: Token) -> int:
        if len(jeton.text) > MAX_LITERAL_DIGITS:
            raise ParseError(jeton.span, ParseErrorKind.BAD_NUMBER,
                             f"littéral de {len(jeton.text)} chiffres (> {MAX_LITERAL_DIGITS})")
        return int(jeton.text)

    def resoudre(self, jeton: Token) -> VarId:
        nom = jeton.text
        base = nom.rstrip(JET_SUFFIX)
        ordre = len(nom) - len(base)
        v = self.chart.lookup(base)
        if ordre == 0 and v is not None:
            return v
        if ordre > 0 and v is not None and v.kind == VarKind.FIELD:
            if ordre > self.chart.jet_order:
                raise ParseError(
                    jeton.span, ParseErrorKind.UNKNOWN_IDENTIFIER,
                    f"{nom!r}: la carte n'a pas de jets d'ordre {ordre}",
                )
            if ordre == 1:
                return self.chart.velocity_of(v)
            return self.chart.acceleration_of(v)
        raise ParseError(jeton.span, ParseErrorKind.UNKNOWN_IDENTIFIER,
                         f"identifiant inconnu {nom!r}")


def parse_expr(text: str | bytes, chart: JetChart) -> Expr:
    """
    Lit une expression dans la carte donnée.

    Args:
        text: Texte (ou octets UTF-8) de l'expression.
        chart: Carte définissant les identifiants admis.

    Returns:
        Expr en forme canonique.

    Raises:
        ParseError: Entrée vide, jeton inattendu, identifiant inconnu,
            nombre invalide ou parenthèse non appariée.
    """
    text = _decoder(text)
    jetons = tokenize(text)
    if jetons[0].kind == "eof":
        total = jetons[0].span.end
        raise ParseError(SourceSpan(0, total), ParseErrorKind.EMPTY_INPUT,
                         "expression vide")
    parser = _Parser(jetons, chart)
    resultat = parser.parse_expr()
    reste = parser.peek()
    if reste.kind != "eof":
        raise parser.inattendu(reste, "'+', '-', '*' ou la fin")
    return resultat
