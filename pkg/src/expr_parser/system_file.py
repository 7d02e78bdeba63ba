"""
Lecture des fichiers de définition de système (format INI, UTF-8).

Sections (clés sans ordre imposé):
  [system]      name = <texte> ; fields = <identifiants séparés par des virgules>
                parameter = <nom du paramètre d'évolution>   (optionnel)
  [lagrangian]  L = <expression>
  [generators]  <champ> = <expression en champs seulement>      (optionnel)
  [integrate]   init = <flottants> ; alpha_max = <flottant> ; step = <flottant>
  [aliases]     <nom canonique> = <nom affiché>                  (optionnel)

Les commentaires commencent par '#', en début de ligne comme après une
valeur, avec ou sans espace avant (`L = f#c` se lit `L = f`).
"""
from __future__ import annotations

import re
import math
import logging
import configparser
from dataclasses import dataclass

from src.common.constants import VarKind, BUILTIN_ALIASES, DEFAULT_PARAMETER
from src.common.exceptions import ParseError, ParseErrorKind, SourceSpan
from src.symbolic_core.chart import JetChart, IDENTIFIER_RE
from src.symbolic_core.expr import Expr
from src.expr_parser.parser import parse_expr

logger = logging.getLogger(__name__)

SECTIONS_CONNUES = ["system", "lagrangian", "generators", "integrate", "aliases"]

_SECTION_RE = re.compile(r"^\s*\[([^\]]+)\]")


@dataclass(frozen=True)
class IntegrationDefaults:
    """Valeurs de la section [integrate] (None si absentes)."""
    init: tuple[float, ...] | None = None
    alpha_max: float | None = None
    step: float | None = None


@dataclass(frozen=True)
class SystemDefinition:
    """
    Système lu depuis un fichier.

    Attributes:
        name: Nom du système ([system] name).
        chart: Carte (champs, jets, moments, multiplicateurs, alias).
        lagrangian: Lagrangien L.
        generators: Générateurs ξ_i (un par champ, ordre des champs) ou None.
        integration: Valeurs par défaut d'intégration.
        source: Texte du fichier (pour le contexte des erreurs).
    """
    name: str
    chart: JetChart
    lagrangian: Expr
    generators: tuple[Expr, ...] | None
    integration: IntegrationDefaults
    source: str = ""


# ---------------------------------------------------------------------------
# Positions dans le texte source
# ---------------------------------------------------------------------------

def _debuts_de_ligne(text: str) -> list[int]:
    """Offset en octets du début de chaque ligne (index 0 = ligne 1)."""
    debuts = [0]
    for ligne in text.encode("utf-8", errors="surrogatepass").splitlines(keepends=True):
        debuts.append(debuts[-1] + len(ligne))
    return debuts


def _span_ligne(text: str, lineno: int) -> SourceSpan:
    debuts = _debuts_de_ligne(text)
    lineno = max(1, min(lineno, len(debuts) - 1)) if len(debuts) > 1 else 1
    debut = debuts[lineno - 1]
    fin = debuts[lineno] if lineno < len(debuts) else debut
    return SourceSpan(debut, max(debut, fin))


def _span_valeur(text: str, section: str, cle: str) -> SourceSpan:
    """Position de la valeur `cle` de `section` (début de ligne en repli)."""
    section_courante = None
    offset = 0
    cle_re = re.compile(rf"^(\s*{re.escape(cle)}\s*=\s*)")
    for ligne in text.splitlines(keepends=True):
        taille = len(ligne.encode("utf-8", errors="surrogatepass"))
        m_section = _SECTION_RE.match(ligne)
        if m_section:
            section_courante = m_section.group(1).strip()
        elif section_courante == section:
            m = cle_re.match(ligne)
            if m:
                prefixe = len(m.group(1).encode("utf-8", errors="surrogatepass"))
                contenu = ligne.rstrip("\r\n")
                fin = offset + len(contenu.encode("utf-8", errors="surrogatepass"))
                return SourceSpan(offset + prefixe, max(offset + prefixe, fin))
        offset += taille
    return SourceSpan(0, 0)


def _erreur(text: str, section: str, cle: str, kind: str, message: str) -> ParseError:
    return ParseError(_span_valeur(text, section, cle), kind, message)


def _borner(erreur: ParseError, text: str) -> ParseError:
    """Ramène un intervalle dans les limites du texte."""
    total = len(text.encode("utf-8", errors="surrogatepass"))
    debut = min(erreur.span.begin, total)
    fin = min(max(erreur.span.end, debut), total)
    return ParseError(SourceSpan(debut, fin), erreur.kind, erreur.message)


# ---------------------------------------------------------------------------
# Lecture
# ---------------------------------------------------------------------------

def _masquer_commentaires(text: str) -> str:
    """
    Remplace tout ce qui suit '#' par des espaces de même taille en octets.

    '#' n'apparaît dans aucune valeur admise; les positions (lignes,
    octets) du texte restent celles du fichier.
    """
    lignes = []
    for ligne in text.splitlines(keepends=True):
        corps = ligne.rstrip("\r\n")
        i = corps.find("#")
        if i >= 0:
            masque = " " * len(corps[i:].encode("utf-8", errors="surrogatepass"))
            ligne = corps[:i] + masque + ligne[len(corps):]
        lignes.append(ligne)
    return "".join(lignes)


def _lire_ini(text: str) -> configparser.ConfigParser:
    config = configparser.ConfigParser(
        interpolation=None,
        comment_prefixes=("#",),
        inline_comment_prefixes=("#",),
        delimiters=("=",),
        strict=True,
        default_section="__defaut__",
    )
    config.optionxform = str  # noms de champs sensibles à la casse
    try:
        config.read_string(text)
    except configparser.MissingSectionHeaderError as e:
        raise ParseError(_span_ligne(text, e.lineno), ParseErrorKind.UNEXPECTED_TOKEN,
                         "clé hors de toute section") from e
    except (configparser.DuplicateSectionError, configparser.DuplicateOptionError) as e:
        raise ParseError(_span_ligne(text, e.lineno or 1), ParseErrorKind.BAD_VALUE,
                         f"doublon : {e.message}") from e
    except configparser.ParsingError as e:
        lineno = e.errors[0][0] if e.errors else 1
        raise ParseError(_span_ligne(text, lineno), ParseErrorKind.UNEXPECTED_TOKEN,
                         "ligne illisible (ni section, ni clé = valeur)") from e
    return config


def _lire_expression(text: str, section: str, cle: str, valeur: str, chart: JetChart) -> Expr:
    debut = _span_valeur(text, section, cle).begin
    try:
        return parse_expr(valeur, chart)
    except ParseError as e:
        raise _borner(e.shifted(debut), text) from e


def _lire_flottant(text: str, section: str, cle: str, valeur: str) -> float:
    try:
        x = float(valeur)
    except ValueError as e:
        raise _erreur(text, section, cle, ParseErrorKind.BAD_NUMBER,
                      f"{section}.{cle} : flottant attendu, reçu {valeur!r}") from e
    if not math.isfinite(x):
        raise _erreur(text, section, cle, ParseErrorKind.BAD_NUMBER,
                      f"{section}.{cle} : valeur non finie {valeur!r}")
    return x


def _lire_integration(text: str, config: configparser.ConfigParser, nb_champs: int) -> IntegrationDefaults:
    if not config.has_section("integrate"):
        return IntegrationDefaults()
    section = config["integrate"]

    init = None
    if "init" in section:
        morceaux = [m.strip() for m in section["init"].split(",")]
        init = tuple(_lire_flottant(text, "integrate", "init", m) for m in morceaux)
        if len(init) not in (nb_champs, 2 * nb_champs):
            raise _erreur(text, "integrate", "init", ParseErrorKind.BAD_VALUE,
                          f"init : {nb_champs} valeurs attendues (ou {2 * nb_champs} "
                          f"avec les moments), reçu {len(init)}")

    alpha_max = None
    if "alpha_max" in section:
        alpha_max = _lire_flottant(text, "integrate", "alpha_max", section["alpha_max"])
        if alpha_max < 0:
            raise _erreur(text, "integrate", "alpha_max", ParseErrorKind.BAD_VALUE,
                          f"alpha_max doit être >= 0, reçu {alpha_max}")

    step = None
    if "step" in section:
        step = _lire_flottant(text, "integrate", "step", section["step"])
        if step <= 0:
            raise _erreur(text, "integrate", "step", ParseErrorKind.BAD_VALUE,
                          f"step doit être > 0, reçu {step}")

    for cle in section:
        if cle not in ("init", "alpha_max", "step"):
            logger.warning(f"Clé ignorée dans [integrate] : {cle}")
    return IntegrationDefaults(init=init, alpha_max=alpha_max, step=step)


def parse_system_file(text: str) -> SystemDefinition:
    """
    Lit une définition de système.

    Args:
        text: Contenu du fichier (UTF-8 décodé).

    Returns:
        SystemDefinition (carte, lagrangien, générateurs, valeurs d'intégration).

    Raises:
        ParseError: Section [system] ou [lagrangian] absente, champ dupliqué,
            générateur pour un champ inconnu, expression ou nombre invalide.
    """
    source = text
    text = _masquer_commentaires(text)
    config = _lire_ini(text)

    for section in config.sections():
        if section not in SECTIONS_CONNUES:
            logger.warning(f"Section inconnue ignorée : [{section}]")

    # [system]
    if not config.has_section("system"):
        raise ParseError(SourceSpan(0, 0), ParseErrorKind.MISSING_SECTION,
                         "section [system] absente")
    systeme = config["system"]
    if "fields" not in systeme:
        raise ParseError(SourceSpan(0, 0), ParseErrorKind.MISSING_KEY,
                         "clé fields absente de [system]")
    nom = systeme.get("name", "").strip() or "system"
    parametre = systeme.get("parameter", DEFAULT_PARAMETER).strip() or DEFAULT_PARAMETER

    champs = [c.strip() for c in systeme["fields"].split(",") if c.strip()]
    if not champs:
        raise _erreur(text, "system", "fields", ParseErrorKind.BAD_VALUE,
                      "aucun champ déclaré")
    vus = set()
    for champ in champs:
        if not IDENTIFIER_RE.match(champ):
            raise _erreur(text, "system", "fields", ParseErrorKind.BAD_VALUE,
                          f"nom de champ invalide : {champ!r}")
        if champ in vus:
            raise _erreur(text, "system", "fields", ParseErrorKind.DUPLICATE_FIELD,
                          f"champ dupliqué : {champ!r}")
        vus.add(champ)

    # Alias: table intégrée puis section [aliases]
    aliases = dict(BUILTIN_ALIASES.get(nom.lower(), {}))
    if config.has_section("aliases"):
        aliases.update({k: v.strip() for k, v in config["aliases"].items()})

    try:
        chart = JetChart(champs, parameter=parametre, aliases=aliases)
    except ValueError as e:
        raise _erreur(text, "system", "fields", ParseErrorKind.BAD_VALUE, str(e)) from e

    # [lagrangian]
    if not config.has_section("lagrangian"):
        raise ParseError(SourceSpan(0, 0), ParseErrorKind.MISSING_SECTION,
                         "section [lagrangian] absente")
    if "L" not in config["lagrangian"]:
        raise ParseError(SourceSpan(0, 0), ParseErrorKind.MISSING_KEY,
                         "clé L absente de [lagrangian]")
    lagrangien = _lire_expression(text, "lagrangian", "L", config["lagrangian"]["L"], chart)

    # [generators]
    generateurs = None
    if config.has_section("generators"):
        par_champ: dict[str, Expr] = {}
        for cle, valeur in config["generators"].items():
            if cle not in vus:
                raise _erreur(text, "generators", cle, ParseErrorKind.UNKNOWN_FIELD,
                              f"générateur pour un champ non déclaré : {cle!r}")
            xi = _lire_expression(text, "generators", cle, valeur, chart)
            if any(v.kind != VarKind.FIELD for v in xi.variables()):
                raise _erreur(text, "generators", cle, ParseErrorKind.BAD_VALUE,
                              f"le générateur de {cle} doit dépendre des champs seulement")
            par_champ[cle] = xi
        manquants = [c for c in champs if c not in par_champ]
        if manquants:
            raise ParseError(SourceSpan(0, 0), ParseErrorKind.MISSING_KEY,
                             f"générateurs manquants pour : {', '.join(manquants)}")
        generateurs = tuple(par_champ[c] for c in champs)

    integration = _lire_integration(text, config, len(champs))

    logger.info(
        f"Système '{nom}' lu : champs {champs}, "
        f"{'avec' if generateurs else 'sans'} générateurs"
    )
    return SystemDefinition(
        name=nom,
        chart=chart,
        lagrangian=lagrangien,
        generators=generateurs,
        integration=integration,
        source=source,
    )
