"""Tests de l'intégrateur RK4, des champs compilés et de l'oracle de rotation."""

import math

import numpy as np
import pytest

from src.common.constants import TOLERANCE_FLOW_AGREEMENT, TOLERANCE_ORACLE
from src.common.exceptions import CompileError, IntegrationError
from src.dirac_pipeline import derive_constrained_system, hamilton_equations
from src.expr_parser import parse_expr
from src.lagrangian import LieSystem
from src.numeric_flow import (
    PhaseState,
    alpha_grid,
    compile_field,
    complete_initial_state,
    exact_rotation,
    integrate,
    integrate_batch,
    lie_flow,
    phase_flow,
)
from src.symbolic_core.operations import eval_numeric

PAS = 1e-3


@pytest.fixture
def rotation(so2_definition):
    d = so2_definition
    return LieSystem.from_exprs(d.chart, d.generators)


class TestOracle:

    @pytest.mark.parametrize("x, y, alpha, attendu", [
        (1.0, 0.0, 0.0, (1.0, 0.0)),
        (1.0, 0.0, math.pi / 2, (0.0, 1.0)),
        (0.0, 1.0, math.pi, (0.0, -1.0)),
        (1.0, 1.0, 2 * math.pi, (1.0, 1.0)),
    ])
    def test_valeurs(self, x, y, alpha, attendu):
        assert exact_rotation(x, y, alpha) == pytest.approx(attendu, abs=1e-12)


class TestGrille:

    def test_multiple_exact(self):
        grille = alpha_grid(1.0, 0.25)
        assert grille.tolist() == [0.0, 0.25, 0.5, 0.75, 1.0]

    def test_dernier_pas_raccourci(self):
        grille = alpha_grid(1.0, 0.3)
        assert len(grille) == 5
        assert grille[-1] == 1.0
        assert grille[-1] - grille[-2] == pytest.approx(0.1)

    def test_alpha_max_nul(self):
        assert alpha_grid(0.0, PAS).tolist() == [0.0]

    def test_arrondi_flottant(self):
        """2π/1e-3 n'est pas entier: pas de pas parasite minuscule."""
        grille = alpha_grid(2 * math.pi, PAS)
        assert grille[-1] == 2 * math.pi
        assert np.all(np.diff(grille) > 1e-12)

    @pytest.mark.parametrize("alpha_max, step", [(1.0, 0.0), (1.0, -1.0), (-1.0, 0.1), (math.inf, 0.1)])
    def test_parametres_invalides(self, alpha_max, step):
        with pytest.raises(IntegrationError):
            alpha_grid(alpha_max, step)


class TestChampCompile:

    def test_identique_a_eval_numeric(self, so2_system, rng):
        """Évaluation scalaire bit à bit identique aux Expr sources."""
        champ = phase_flow(so2_system)
        for _ in range(20):
            y = np.array([rng.uniform(-2, 2) for _ in range(4)])
            point = dict(zip(champ.variables, y.tolist()))
            attendu = [eval_numeric(rhs, point) for _, rhs in champ.equations]
            assert champ(y).tolist() == attendu

    def test_multiplicateur_refuse(self, so2_system):
        equations = hamilton_equations(so2_system.total_hamiltonian, so2_system.chart)
        with pytest.raises(CompileError):
            compile_field(equations, so2_system.chart)

    def test_variable_hors_etat(self, so2_definition):
        chart = so2_definition.chart
        with pytest.raises(CompileError):
            compile_field([(chart.var("f"), parse_expr("g", chart))], chart)

    def test_premiere_classe_non_integrable(self, load_system):
        d = load_system("firstclass")
        system = derive_constrained_system(d.lagrangian, d.chart)
        with pytest.raises(CompileError):
            phase_flow(system)


class TestEtatInitial:

    def test_completion_sur_la_surface(self, so2_system):
        assert complete_initial_state(so2_system, [1.0, 0.0]).tolist() == [1.0, 0.0, 0.0, 0.5]

    def test_etat_complet(self, so2_system):
        assert complete_initial_state(so2_system, [1, 0, 0, 0]).tolist() == [1.0, 0.0, 0.0, 0.0]

    def test_moment_non_determine(self, load_system):
        d = load_system("regular")
        system = derive_constrained_system(d.lagrangian, d.chart)
        with pytest.raises(IntegrationError):
            complete_initial_state(system, [1.0, 0.0])

    def test_longueur_invalide(self, so2_system):
        with pytest.raises(IntegrationError):
            complete_initial_state(so2_system, [1.0, 0.0, 0.0])

    def test_etat_non_fini(self):
        with pytest.raises(IntegrationError):
            PhaseState(0.0, np.array([1.0, math.nan]))


class TestIntegrationSO2:

    @pytest.mark.parametrize("alpha, attendu", [
        (math.pi / 2, [0.0, 1.0, -0.5, 0.0]),
        (2 * math.pi, [1.0, 0.0, 0.0, 0.5]),
    ])
    def test_etat_final(self, so2_system, alpha, attendu):
        champ = phase_flow(so2_system)
        init = PhaseState(0.0, complete_initial_state(so2_system, [1.0, 0.0]))
        traj = integrate(champ, init, alpha, PAS)
        assert traj.final.alpha == alpha
        assert traj.final.values.tolist() == pytest.approx(attendu, abs=TOLERANCE_ORACLE)

    def test_alpha_max_nul(self, so2_system):
        champ = phase_flow(so2_system)
        init = PhaseState(0.0, complete_initial_state(so2_system, [1.0, 0.0]))
        traj = integrate(champ, init, 0.0, PAS)
        assert len(traj) == 1
        assert traj.final.values.tolist() == init.values.tolist()

    def test_dimension_incompatible(self, so2_system):
        with pytest.raises(IntegrationError):
            integrate(phase_flow(so2_system), PhaseState(0.0, np.zeros(2)), 1.0, PAS)

    def test_accord_avec_lie(self, so2_system, rotation):
        """Les champs du flot complet suivent le flot de Lie réduit."""
        complet = integrate(
            phase_flow(so2_system),
            PhaseState(0.0, complete_initial_state(so2_system, [0.3, -0.7])),
            1.0, PAS,
        )
        reduit = integrate(lie_flow(rotation), PhaseState(0.0, np.array([0.3, -0.7])), 1.0, PAS)
        assert np.max(np.abs(complet.values[:, :2] - reduit.values)) <= TOLERANCE_FLOW_AGREEMENT


class TestLots:

    def test_contre_oracle(self, rotation, rng):
        """50 points aléatoires, une borne par point."""
        inits = np.array([[rng.uniform(-1, 1), rng.uniform(-1, 1)] for _ in range(50)])
        bornes = np.array([rng.uniform(0, 2 * math.pi) for _ in range(50)])
        finaux = integrate_batch(lie_flow(rotation), inits, bornes, PAS)
        for (x, y), alpha, final in zip(inits, bornes, finaux):
            assert final.tolist() == pytest.approx(exact_rotation(x, y, alpha), abs=TOLERANCE_ORACLE)

    def test_propriete_de_groupe(self, rotation):
        """Φ(α+β) = Φ(β)∘Φ(α)."""
        champ = lie_flow(rotation)
        x = np.array([[0.6, -0.2]])
        direct = integrate_batch(champ, x, 1.7, PAS)
        compose = integrate_batch(champ, integrate_batch(champ, x, 0.9, PAS), 0.8, PAS)
        assert np.max(np.abs(direct - compose)) <= 2 * TOLERANCE_ORACLE

    def test_forme_invalide(self, rotation):
        with pytest.raises(IntegrationError):
            integrate_batch(lie_flow(rotation), np.zeros((3, 4)), 1.0, PAS)
