"""Tests des crochets de Poisson et de Dirac, et de l'égalité faible."""

from fractions import Fraction

import pytest

from src.common.exceptions import DiracBracketError, JetOrderError
from src.dirac_pipeline import (
    canonical_pairs_check,
    constraint_matrix,
    derive_constrained_system,
    dirac_bracket,
    observable_eom,
    poisson_bracket,
    weak_reduce,
)
from src.expr_parser import parse_expr

NB_TRIPLETS = 100


@pytest.fixture
def so2(chart):
    L = parse_expr("1/2*(f*g' - f'*g) - 1/2*(f^2 + g^2)", chart)
    return derive_constrained_system(L, chart)


class TestPoisson:

    def test_paires_canoniques(self, chart):
        verdict = canonical_pairs_check(chart)
        assert verdict.passed
        assert verdict.residuals == ()

    def test_algebre_aleatoire(self, chart, random_phase_expr):
        """Antisymétrie, Leibniz et Jacobi sur des triplets aléatoires."""
        pb = lambda a, b: poisson_bracket(a, b, chart)
        for _ in range(NB_TRIPLETS):
            A, B, C = random_phase_expr(), random_phase_expr(), random_phase_expr()
            assert pb(A, B) == -pb(B, A)
            assert pb(A, B * C) == pb(A, B) * C + B * pb(A, C)
            jacobi = pb(A, pb(B, C)) + pb(B, pb(C, A)) + pb(C, pb(A, B))
            assert jacobi.is_zero

    def test_multiplicateurs_inertes(self, chart, var):
        assert poisson_bracket(var("lambda_1") * var("f"), var("p"), chart) == var("lambda_1")

    def test_vitesse_refusee(self, chart, var):
        with pytest.raises(JetOrderError):
            poisson_bracket(var("f'"), var("p"), chart)

    def test_equation_du_mouvement(self, so2, chart, var):
        """J = f·s − g·p est conservé par H_λ."""
        J = var("f") * var("s") - var("g") * var("p")
        assert observable_eom(J, so2.hamiltonian, chart).is_zero


class TestEgaliteFaible:

    def test_contraintes_nulles(self, so2):
        for c in so2.constraints:
            assert weak_reduce(c.expr, so2.constraints).is_zero

    def test_idempotence(self, so2, random_phase_expr):
        for _ in range(20):
            e = so2.weak(random_phase_expr())
            assert so2.weak(e) == e
            assert not ({c.solved_var for c in so2.constraints} & e.variables())

    def test_matrice_antisymetrique(self, so2, chart):
        C = constraint_matrix(so2.constraints, chart)
        n = len(C)
        for a in range(n):
            for b in range(n):
                assert C[a][b] == -C[b][a]


class TestDirac:

    def test_valeurs_so2(self, so2, chart, var):
        assert dirac_bracket(var("f"), var("g"), so2.constraints, chart) == -1
        assert dirac_bracket(var("f"), var("p"), so2.constraints, chart) == Fraction(1, 2)

    def test_contraintes_en_involution(self, so2, chart, random_phase_expr):
        """{φ_a, F}_D = 0 pour toute observable F."""
        for _ in range(10):
            F = random_phase_expr()
            for c in so2.constraints:
                assert so2.weak(dirac_bracket(c.expr, F, so2.constraints, chart)).is_zero

    def test_sans_contrainte(self, chart, var):
        assert dirac_bracket(var("f"), var("p"), (), chart) == 1

    def test_premiere_classe(self, chart, var):
        system = derive_constrained_system(parse_expr("1/2*(f' + g')^2", chart), chart)
        with pytest.raises(DiracBracketError, match="first-class constraints present"):
            dirac_bracket(var("f"), var("g"), system.constraints, chart)
