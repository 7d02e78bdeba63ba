"""Tests de la couche variationnelle: dérivée totale, Euler-Lagrange, EL = Lie."""

from fractions import Fraction

import pytest

from src.common.exceptions import JetOrderError
from src.lagrangian import (
    LieSystem,
    energy_momentum_residual,
    euler_lagrange,
    kinetic_energy,
    lie_equations_from_generators,
    on_shell,
    second_order_form,
    total_derivative,
    verify_el_equals_lie,
)
from src.symbolic_core.chart import JetChart
from src.symbolic_core.expr import Expr
from src.symbolic_core.sampling import random_expr


@pytest.fixture
def rotation(chart, var):
    """Générateurs de la rotation: ξ = (−g, f)."""
    return LieSystem.from_exprs(chart, [-var("g"), var("f")])


class TestDeriveeTotale:

    def test_produit(self, var):
        f, g = var("f"), var("g")
        assert total_derivative(f * g) == var("f'") * g + f * var("g'")

    def test_vitesse(self, var):
        assert total_derivative(var("f'") ** 2) == 2 * var("f'") * var("f''")

    def test_regle_de_leibniz(self, chart, rng):
        variables = chart.fields + chart.velocities
        for _ in range(20):
            a = random_expr(chart, rng, variables=variables)
            b = random_expr(chart, rng, variables=variables)
            assert total_derivative(a * b) == total_derivative(a) * b + a * total_derivative(b)

    def test_acceleration_refusee(self, var):
        with pytest.raises(JetOrderError):
            total_derivative(var("f''"))

    def test_moment_refuse(self, var):
        with pytest.raises(JetOrderError):
            total_derivative(var("p"))


class TestEulerLagrange:

    def test_so2(self, so2_definition):
        d = so2_definition
        el = euler_lagrange(d.lagrangian, d.chart)
        f, g = Expr.variable(d.chart, "f"), Expr.variable(d.chart, "g")
        fp, gp = Expr.variable(d.chart, "f'"), Expr.variable(d.chart, "g'")
        assert el.residuals == (gp - f, -fp - g)

    def test_lagrangien_invalide(self, chart, var):
        with pytest.raises(JetOrderError):
            euler_lagrange(var("p") * var("f'"), chart)

    def test_carte_sans_acceleration(self):
        c = JetChart(["x"], jet_order=1)
        with pytest.raises(JetOrderError):
            euler_lagrange(Expr.variable(c, "x'") ** 2, c)


class TestVerificationLie:

    @pytest.mark.parametrize("nom", ["so2", "regular"])
    def test_equivalence(self, load_system, nom):
        d = load_system(nom)
        gen = LieSystem.from_exprs(d.chart, d.generators)
        verdict = verify_el_equals_lie(euler_lagrange(d.lagrangian, d.chart), gen)
        assert verdict.equivalent
        assert verdict.residuals == ()

    def test_lagrangien_perturbe(self, load_system):
        """Le terme linéaire +f laisse un résidu constant 1 sur f."""
        d = load_system("broken")
        gen = LieSystem.from_exprs(d.chart, d.generators)
        verdict = verify_el_equals_lie(euler_lagrange(d.lagrangian, d.chart), gen)
        assert not verdict.equivalent
        assert len(verdict.residuals) == 1
        champ, residu = verdict.residuals[0]
        assert champ is d.chart.var("f")
        assert residu == 1

    @pytest.mark.parametrize("facteur", [2, -1, Fraction(1, 3)])
    @pytest.mark.parametrize("nom, equivalent", [("so2", True), ("broken", False)])
    def test_lagrangien_multiplie(self, load_system, nom, equivalent, facteur):
        """c·L a les mêmes équations que L: le verdict ne change pas."""
        d = load_system(nom)
        gen = LieSystem.from_exprs(d.chart, d.generators)
        verdict = verify_el_equals_lie(euler_lagrange(d.lagrangian.scale(facteur), d.chart), gen)
        assert verdict.equivalent is equivalent
        if not equivalent:
            assert [residu for _, residu in verdict.residuals] == [facteur]

    def test_equations_premier_ordre(self, rotation, var, chart):
        assert lie_equations_from_generators(rotation) == [
            (chart.var("f'"), -var("g")),
            (chart.var("g'"), var("f")),
        ]

    def test_second_ordre(self, rotation, var, chart):
        assert second_order_form(rotation) == [
            (chart.var("f''"), -var("f")),
            (chart.var("g''"), -var("g")),
        ]

    def test_generateur_non_champ(self, chart, var):
        with pytest.raises(ValueError):
            LieSystem.from_exprs(chart, [var("p"), var("f")])


class TestObservablesCinematiques:

    def test_residu_nul_sur_le_flot(self, rotation, chart):
        """2T − l s'annule sur la rotation."""
        assert on_shell(energy_momentum_residual(chart), rotation).is_zero

    def test_energie_cinetique(self, chart, var):
        assert kinetic_energy(chart).scale(2) == var("f'") ** 2 + var("g'") ** 2

    def test_hors_du_plan(self):
        assert energy_momentum_residual(JetChart(["x"])) is None
