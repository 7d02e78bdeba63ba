"""Tests des vérifications exactes sur les systèmes livrés."""

import pytest

from src.dirac_pipeline import (
    consistency_check,
    derive_constrained_system,
    hamilton_matches_lie,
    poisson_hamilton_form,
)
from src.lagrangian import LieSystem
from src.symbolic_core.expr import Expr


@pytest.fixture
def derive(load_system):
    """(définition, système dérivé, générateurs) d'un système livré."""
    def _derive(nom: str):
        d = load_system(nom)
        system = derive_constrained_system(d.lagrangian, d.chart)
        gen = LieSystem.from_exprs(d.chart, d.generators) if d.generators else None
        return d, system, gen
    return _derive


class TestCoherence:

    @pytest.mark.parametrize("nom", ["so2", "regular", "firstclass", "broken"])
    def test_conditions_satisfaites(self, derive, nom):
        _, system, _ = derive(nom)
        assert consistency_check(system).passed


class TestHamiltonLie:

    @pytest.mark.parametrize("nom", ["so2", "regular"])
    def test_accord(self, derive, nom):
        _, system, gen = derive(nom)
        assert hamilton_matches_lie(system, gen).equivalent
        assert poisson_hamilton_form(system, gen).passed

    def test_multiplicateurs_perturbes(self, derive):
        """λ_2 = f − 1 sur le système perturbé."""
        d, system, _ = derive("broken")
        f = Expr.variable(d.chart, "f")
        assert system.solution.values[d.chart.var("lambda_2")] == f - 1

    def test_desaccord(self, derive):
        """g' = f − 1 au lieu de f: écart constant −1 sur g."""
        d, system, gen = derive("broken")
        verdict = hamilton_matches_lie(system, gen)
        assert not verdict.equivalent
        assert verdict.residuals == ((d.chart.var("g"), Expr.constant(d.chart, -1)),)
        assert not poisson_hamilton_form(system, gen).passed
