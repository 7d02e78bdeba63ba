"""Tests de lecture des fichiers système (.system)."""

import math
from fractions import Fraction

import pytest

from src.common.exceptions import LocatedParseError, ParseError, ParseErrorKind
from src.expr_parser import parse_system_file, render_expr
from src.symbolic_core.expr import Expr


MINIMAL = """
[system]
name = essai
fields = x

[lagrangian]
L = 1/2*x'^2
"""


class TestSystemesLivres:

    def test_so2(self, so2_definition):
        d = so2_definition
        chart = d.chart
        assert d.name == "so2"
        assert [v.name for v in chart.fields] == ["f", "g"]
        assert chart.display(chart.var("p_f")) == "p"
        f, g = Expr.variable(chart, "f"), Expr.variable(chart, "g")
        fp, gp = Expr.variable(chart, "f'"), Expr.variable(chart, "g'")
        attendu = Fraction(1, 2) * (f * gp - fp * g) - Fraction(1, 2) * (f ** 2 + g ** 2)
        assert d.lagrangian == attendu
        assert d.generators == (-g, f)
        assert d.integration.init == (1.0, 0.0)
        assert d.integration.alpha_max == pytest.approx(2 * math.pi)
        assert d.integration.step == 0.001

    def test_alias_section(self, load_system):
        d = load_system("broken")
        assert render_expr(Expr.variable(d.chart, "p_g")) == "s"

    def test_sans_generateurs(self, load_system):
        d = load_system("firstclass")
        assert d.generators is None
        assert d.integration.init is None

    def test_source_conservee(self, systems_dir, load_system):
        texte = (systems_dir / "regular.system").read_text(encoding="utf-8")
        assert load_system("regular").source == texte


class TestErreursFichier:

    def test_minimal(self):
        d = parse_system_file(MINIMAL)
        assert d.name == "essai"
        assert d.generators is None

    def test_section_system_absente(self):
        with pytest.raises(ParseError) as exc:
            parse_system_file("[lagrangian]\nL = 0\n")
        assert exc.value.kind == ParseErrorKind.MISSING_SECTION

    def test_lagrangien_absent(self):
        with pytest.raises(ParseError) as exc:
            parse_system_file("[system]\nfields = x\n")
        assert exc.value.kind == ParseErrorKind.MISSING_SECTION

    def test_champ_duplique(self):
        with pytest.raises(ParseError) as exc:
            parse_system_file("[system]\nfields = x, x\n[lagrangian]\nL = 0\n")
        assert exc.value.kind == ParseErrorKind.DUPLICATE_FIELD

    def test_generateur_champ_inconnu(self):
        texte = MINIMAL + "\n[generators]\ny = 1\n"
        with pytest.raises(ParseError) as exc:
            parse_system_file(texte)
        assert exc.value.kind == ParseErrorKind.UNKNOWN_FIELD

    def test_generateur_non_champ(self):
        texte = MINIMAL + "\n[generators]\nx = p_x\n"
        with pytest.raises(ParseError) as exc:
            parse_system_file(texte)
        assert exc.value.kind == ParseErrorKind.BAD_VALUE

    def test_erreur_expression_positionnee(self):
        """La position d'une erreur d'expression est relative au fichier."""
        texte = "[system]\nfields = x\n[lagrangian]\nL = x + y\n"
        with pytest.raises(ParseError) as exc:
            parse_system_file(texte)
        assert exc.value.kind == ParseErrorKind.UNKNOWN_IDENTIFIER
        assert exc.value.line_col(texte) == (4, 9)

    def test_commentaire_en_fin_de_valeur(self):
        texte = MINIMAL.replace("L = 1/2*x'^2", "L = x#c") + "# fin\n"
        d = parse_system_file(texte)
        assert d.lagrangian == Expr.variable(d.chart, "x")
        assert d.source == texte

    def test_commentaire_sans_decalage(self):
        """Un commentaire multi-octets ne décale pas les positions suivantes."""
        texte = "[system]\nfields = x  # champ é\n[lagrangian]\nL = x + y\n"
        with pytest.raises(ParseError) as exc:
            parse_system_file(texte)
        assert exc.value.kind == ParseErrorKind.UNKNOWN_IDENTIFIER
        assert exc.value.line_col(texte) == (4, 9)

    def test_erreur_localisee(self):
        texte = "[system]\nfields = x\n[lagrangian]\nL = x + y\n"
        with pytest.raises(ParseError) as exc:
            parse_system_file(texte)
        localisee = exc.value.located(texte, "essai.system")
        assert isinstance(localisee, LocatedParseError)
        assert str(localisee).startswith("essai.system:4:9: unknown identifier")

    @pytest.mark.parametrize("ligne, kind", [
        ("init = 1, 2, 3", ParseErrorKind.BAD_VALUE),
        ("step = 0", ParseErrorKind.BAD_VALUE),
        ("step = abc", ParseErrorKind.BAD_NUMBER),
        ("alpha_max = -1", ParseErrorKind.BAD_VALUE),
        ("alpha_max = inf", ParseErrorKind.BAD_NUMBER),
    ])
    def test_integration_invalide(self, ligne, kind):
        with pytest.raises(ParseError) as exc:
            parse_system_file(MINIMAL + f"\n[integrate]\n{ligne}\n")
        assert exc.value.kind == kind

    def test_ligne_illisible(self):
        with pytest.raises(ParseError) as exc:
            parse_system_file("[system]\nfields = x\nn'importe quoi\n")
        assert exc.value.kind == ParseErrorKind.UNEXPECTED_TOKEN
