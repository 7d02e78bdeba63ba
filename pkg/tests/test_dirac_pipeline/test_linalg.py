"""Tests de l'algèbre linéaire exacte."""

from fractions import Fraction

import pytest

from src.common.exceptions import PipelineError
from src.dirac_pipeline import constant_matrix, invert, left_kernel, rank, rref
from src.symbolic_core.expr import Expr


class TestRref:

    def test_rang_un(self):
        reduction = rref([[1, 1], [1, 1]])
        assert reduction.pivots == [(0, 0)]
        assert reduction.free_columns(2) == [1]
        assert reduction.zero_rows() == [1]

    def test_ordre_des_colonnes(self):
        """Les pivots sont cherchés dans l'ordre demandé."""
        reduction = rref([[1, 1], [1, 1]], column_order=[1, 0])
        assert reduction.pivot_columns == [1]
        assert reduction.free_columns(2) == [0]

    def test_seconds_membres(self, chart, var):
        reduction = rref([[0, 1], [-1, 0]], rhs=[var("f"), var("g")])
        assert reduction.pivots == [(0, 0), (1, 1)]
        assert reduction.rhs == [-var("g"), var("f")]


class TestInverse:

    def test_antisymetrique(self):
        assert invert([[0, 1], [-1, 0]]) == [[0, -1], [1, 0]]

    def test_rationnels(self):
        inverse = invert([[2, 0], [0, 4]])
        assert inverse == [[Fraction(1, 2), 0], [0, Fraction(1, 4)]]

    def test_singuliere(self):
        with pytest.raises(PipelineError):
            invert([[1, 2], [2, 4]])


class TestMatriceConstante:

    def test_conversion(self, chart):
        M = constant_matrix([[Expr.constant(chart, 3), Expr.zero(chart)]], "M")
        assert M == [[3, 0]]

    def test_entree_non_constante(self, var):
        with pytest.raises(PipelineError, match="non-constant"):
            constant_matrix([[var("f")]], "C")


class TestNoyauAGauche:

    def test_rang_un(self):
        """Pivots depuis la dernière colonne: la première reste libre."""
        base = left_kernel([[1, 1], [1, 1]], column_order=[1, 0])
        assert base == [(0, [1, -1])]

    def test_regulier(self):
        assert left_kernel([[1, 0], [0, 1]]) == []

    def test_matrice_nulle(self):
        base = left_kernel([[0, 0], [0, 0]])
        assert base == [(0, [1, 0]), (1, [0, 1])]

    def test_combinaison_annulee(self):
        W = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
        for _, c in left_kernel(W):
            assert all(sum(c[i] * W[i][j] for i in range(3)) == 0 for j in range(3))


class TestRang:

    @pytest.mark.parametrize("matrice, attendu", [
        ([[0, 1], [-1, 0]], 2),
        ([[1, 2], [2, 4]], 1),
        ([[0]], 0),
        ([], 0),
    ])
    def test_rang(self, matrice, attendu):
        assert rank(matrice) == attendu
