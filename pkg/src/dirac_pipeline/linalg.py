"""
Algèbre linéaire exacte sur les rationnels pour les petites matrices de Dirac.

Les calculs passent par sympy.Matrix (entrées Rational); les résultats
reviennent en Fraction pour rester compatibles avec Expr.scale. Les
seconds membres peuvent être des Expr: ils sont transformés par la
matrice de passage de l'élimination, jamais placés dans sympy.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from src.common.exceptions import PipelineError
from src.symbolic_core.expr import Expr

Matrix = list[list[Fraction]]


def _vers_sympy(matrix: Sequence[Sequence[Fraction | int]]) -> sympy.Matrix:
    lignes = []
    for ligne in matrix:
        lignes.append([
            sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in ligne
        ])
    return sympy.Matrix(lignes)


def _vers_fraction(x) -> Fraction:
    q = sympy.Rational(x)
    return Fraction(int(q.p), int(q.q))


def _vers_lignes(M: sympy.Matrix) -> Matrix:
    return [[_vers_fraction(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


@dataclass
class Reduction:
    """
    Forme échelonnée réduite d'un système M·x = b.

    Attributes:
        rows: Matrice réduite (colonnes dans l'ordre d'origine).
        rhs: Seconds membres transformés (None si aucun).
        pivots: [(ligne, colonne)] des pivots.
    """
    rows: Matrix
    rhs: list[Expr] | None
    pivots: list[tuple[int, int]]

    @property
    def pivot_columns(self) -> list[int]:
        return [c for _, c in self.pivots]

    def free_columns(self, n_cols: int) -> list[int]:
        pivots = set(self.pivot_columns)
        return [c for c in range(n_cols) if c not in pivots]

    def zero_rows(self) -> list[int]:
        lignes_pivot = {r for r, _ in self.pivots}
        return [r for r in range(len(self.rows)) if r not in lignes_pivot]


def rref(
    matrix: Sequence[Sequence[Fraction]],
    rhs: Sequence[Expr] | None = None,
    column_order: Sequence[int] | None = None,
) -> Reduction:
    """
    Élimination de Gauss-Jordan exacte (sympy.Matrix.rref).

    La matrice est augmentée de l'identité: la partie droite de la forme
    réduite est la matrice de passage T, appliquée ensuite aux seconds
    membres Expr.

    Args:
        matrix: Lignes de rationnels.
        rhs: Seconds membres (Expr), transformés avec les lignes.
        column_order: Ordre de recherche des pivots (défaut: 0..n-1).

    Returns:
        Reduction.
    """
    n_rows = len(matrix)
    if n_rows == 0:
        return Reduction([], list(rhs) if rhs is not None else None, [])
    n_cols = len(matrix[0])
    ordre = list(column_order) if column_order is not None else list(range(n_cols))

    M = _vers_sympy(matrix)
    permutee = M.extract(list(range(n_rows)), ordre)
    reduite, pivots_sympy = permutee.row_join(sympy.eye(n_rows)).rref()

    pivots = [(r, ordre[c]) for r, c in enumerate(pivots_sympy) if c < n_cols]
    rows = [[Fraction(0)] * n_cols for _ in range(n_rows)]
    for r in range(n_rows):
        for k, c in enumerate(ordre):
            rows[r][c] = _vers_fraction(reduite[r, k])

    b = None
    if rhs is not None:
        T = _vers_lignes(reduite[:, n_cols:])
        b = []
        for ligne in T:
            terme = Expr.zero(rhs[0].chart)
            for t, e in zip(ligne, rhs):
                if t != 0:
                    terme = terme + e.scale(t)
            b.append(terme)
    return Reduction(rows, b, pivots)


def left_kernel(
    matrix: Sequence[Sequence[Fraction]],
    column_order: Sequence[int] | None = None,
) -> list[tuple[int, list[Fraction]]]:
    """
    Base du noyau à gauche {c : c·M = 0} (sympy nullspace de Mᵀ).

    Chaque vecteur vaut 1 sur une colonne libre k et 0 sur les autres
    colonnes libres; les pivots sont cherchés dans column_order.

    Returns:
        [(k, c)] triés par k.
    """
    n = len(matrix)
    if n == 0:
        return []
    ordre = list(column_order) if column_order is not None else list(range(n))
    transposee = _vers_sympy(matrix).T.extract(list(range(len(matrix[0]))), ordre)
    _, pivots = transposee.rref()
    libres = [k for k in range(n) if k not in pivots]

    base = []
    for k, v in zip(libres, transposee.nullspace()):
        c = [Fraction(0)] * n
        for j in range(n):
            c[ordre[j]] = _vers_fraction(v[j])
        base.append((ordre[k], c))
    return sorted(base, key=lambda kc: kc[0])


def invert(matrix: Sequence[Sequence[Fraction]]) -> Matrix:
    """
    Inverse exacte d'une matrice carrée.

    Raises:
        PipelineError: Matrice singulière.
    """
    M = _vers_sympy(matrix)
    if M.rank() < M.rows:
        raise PipelineError("Matrice singulière, inverse impossible")
    return _vers_lignes(M.inv())


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    if not matrix:
        return 0
    return _vers_sympy(matrix).rank()


def constant_matrix(entries: Sequence[Sequence[Expr]], label: str) -> Matrix:
    """
    Convertit une matrice d'Expr constantes en rationnels.

    Raises:
        PipelineError: Une entrée n'est pas constante.
    """
    resultat = []
    for i, ligne in enumerate(entries):
        constantes = []
        for j, e in enumerate(ligne):
            if not e.is_constant:
                raise PipelineError(
                    f"non-constant constraint matrix unsupported "
                    f"({label}[{i + 1}][{j + 1}] = {e!r})"
                )
            constantes.append(e.constant_value())
        resultat.append(constantes)
    return resultat
