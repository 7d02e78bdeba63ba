"""Tests de l'anneau de polynômes exacts (Expr) et de la carte de jets."""

from fractions import Fraction

import pytest

from src.common.constants import VarKind
from src.common.exceptions import ChartMismatchError, JetOrderError
from src.symbolic_core.chart import JetChart
from src.symbolic_core.expr import Expr


class TestJetChart:
    """Ordre d'enregistrement et noms des variables."""

    def test_ordre_enregistrement(self, chart):
        """Champs, vitesses, accélérations, moments puis multiplicateurs."""
        noms = [v.name for v in chart.variables]
        assert noms == ["f", "g", "f'", "g'", "f''", "g''",
                        "p_f", "p_g", "lambda_1", "lambda_2"]

    def test_alias_resolus(self, chart):
        assert chart.var("p") is chart.var("p_f")
        assert chart.display(chart.var("p_g")) == "s"

    def test_genres(self, chart):
        assert {v.kind for v in chart.fields} == {VarKind.FIELD}
        assert {v.kind for v in chart.momenta} == {VarKind.MOMENTUM}
        assert len(chart.multipliers) == 2

    def test_cartes_identiques_egales(self):
        a = JetChart(["f", "g"])
        b = JetChart(["f", "g"])
        assert a == b
        assert hash(a) == hash(b)

    def test_champ_duplique(self):
        with pytest.raises(ValueError):
            JetChart(["f", "f"])

    def test_ordre_jet_non_supporte(self):
        with pytest.raises(JetOrderError):
            JetChart(["f"], jet_order=3)

    def test_ordre_jet_un_sans_acceleration(self):
        c = JetChart(["f"], jet_order=1)
        assert c.accelerations == ()
        assert c.lookup("f''") is None


class TestArithmetique:
    """Forme canonique et opérations d'anneau."""

    def test_annulation(self, var):
        f, g = var("f"), var("g")
        assert (f + g - f - g).is_zero
        assert (f * g - g * f).is_zero

    def test_scalaires(self, var):
        f = var("f")
        e = 2 * f + Fraction(1, 2)
        assert e - Fraction(1, 2) == 2 * f
        assert (1 - f) + f == 1

    def test_distributivite(self, random_phase_expr):
        for _ in range(20):
            a, b, c = random_phase_expr(), random_phase_expr(), random_phase_expr()
            assert a * (b + c) == a * b + a * c

    def test_commutativite_associativite(self, random_phase_expr):
        for _ in range(20):
            a, b, c = random_phase_expr(), random_phase_expr(), random_phase_expr()
            assert a + b == b + a
            assert a * b == b * a
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)

    def test_hachage_constante(self, chart):
        """Égale à 3, une constante se hache comme 3."""
        trois = Expr.constant(chart, 3)
        assert trois == 3
        assert hash(trois) == hash(3)
        assert 3 in {trois}
        assert Expr.constant(chart, Fraction(1, 2)) in {Fraction(1, 2)}

    def test_hachage_coherent(self, var):
        f, g = var("f"), var("g")
        assert hash(f * g + 1) == hash(1 + g * f)
        assert len({f + g, g + f, f - g}) == 2

    def test_puissance(self, var):
        f, g = var("f"), var("g")
        assert (f + g) ** 2 == f * f + 2 * f * g + g * g
        assert (f + g) ** 0 == 1

    @pytest.mark.parametrize("exposant", [-1, 1.5, True])
    def test_puissance_invalide(self, var, exposant):
        with pytest.raises(ValueError):
            var("f") ** exposant

    def test_egalite_independante_construction(self, var):
        f, g = var("f"), var("g")
        a = (f + g) * (f - g)
        b = f ** 2 - g ** 2
        assert a == b
        assert hash(a) == hash(b)

    def test_cartes_differentes(self, chart):
        autre = JetChart(["x"])
        with pytest.raises(ChartMismatchError):
            Expr.variable(chart, "f") + Expr.variable(autre, "x")

    def test_inspection(self, var, chart):
        e = 3 * var("f") ** 2 * var("g") + 1
        assert e.total_degree() == 3
        assert e.degree_in(chart.var("f")) == 2
        assert e.variables() == {chart.var("f"), chart.var("g")}
        assert not e.is_constant
        assert Expr.constant(chart, 7).constant_value() == 7

    def test_constant_value_non_constant(self, var):
        with pytest.raises(ValueError):
            var("f").constant_value()

    @pytest.mark.parametrize("scalaire", [0.5, True])
    def test_coefficient_non_rationnel(self, var, scalaire):
        with pytest.raises(TypeError):
            var("f").scale(scalaire)
