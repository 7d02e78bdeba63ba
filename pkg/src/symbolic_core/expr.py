"""
Polynômes multivariés exacts à coefficients rationnels.

Représentation:
  Monomial = tuple trié de paires (index de variable, exposant > 0)
  Expr     = carte + termes {Monomial: Fraction non nulle}

La forme canonique est unique: deux Expr sont égales si et seulement si
leurs cartes et leurs tables de termes coïncident. Les termes sont rangés
par ordre lexicographique décroissant des exposants (ordre des VarId).
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterator, Mapping, Union

from src.common.exceptions import ChartMismatchError
from src.symbolic_core.chart import JetChart, VarId

Monomial = tuple[tuple[int, int], ...]
Scalar = Union[int, Fraction]

ONE: Monomial = ()


def _mul_monomials(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exposants = dict(a)
    for idx, e in b:
        exposants[idx] = exposants.get(idx, 0) + e
    return tuple(sorted(exposants.items()))


def _as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"Coefficient non rationnel : {c!r}")
    return Fraction(c)


class Expr:
    """
    Polynôme exact immuable sur les variables d'une carte.

    Les opérateurs +, -, *, ** (entier >= 0) et la négation produisent
    toujours une forme canonique. Les scalaires int/Fraction sont acceptés.
    """

    __slots__ = ("_chart", "_terms", "_hash")

    def __init__(self, chart: JetChart, terms: Mapping[Monomial, Scalar] | None = None):
        propres: dict[Monomial, Fraction] = {}
        for mono, coef in (terms or {}).items():
            c = _as_fraction(coef)
            if c != 0:
                m = tuple(sorted((idx, e) for idx, e in mono if e != 0))
                propres[m] = propres.get(m, Fraction(0)) + c
        n = len(chart)

        def cle(item):
            dense = [0] * n
            for idx, e in item[0]:
                dense[idx] = e
            return tuple(-e for e in dense)

        self._chart = chart
        self._terms = tuple(sorted(
            ((m, c) for m, c in propres.items() if c != 0), key=cle
        ))
        self._hash = None

    # ------------------------------------------------------------------
    # Constructeurs
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, chart: JetChart) -> Expr:
        return cls(chart)

    @classmethod
    def constant(cls, chart: JetChart, value: Scalar) -> Expr:
        return cls(chart, {ONE: value})

    @classmethod
    def variable(cls, chart: JetChart, v: VarId | str) -> Expr:
        if isinstance(v, str):
            v = chart.var(v)
        elif not chart.owns(v):
            raise ChartMismatchError(f"Variable {v.name} étrangère à la carte")
        return cls(chart, {((v.index, 1),): 1})

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def chart(self) -> JetChart:
        return self._chart

    def terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Termes en ordre canonique."""
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not m for m, _ in self._terms)

    def constant_value(self) -> Fraction:
        """Valeur d'une expression constante."""
        if not self.is_constant:
            raise ValueError(f"Expression non constante : {self!r}")
        return self._terms[0][1] if self._terms else Fraction(0)

    def variables(self) -> frozenset[VarId]:
        indices = {idx for m, _ in self._terms for idx, _ in m}
        return frozenset(self._chart.variables[i] for i in indices)

    def degree_in(self, v: VarId) -> int:
        return max((dict(m).get(v.index, 0) for m, _ in self._terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e for _, e in m) for m, _ in self._terms), default=0)

    # ------------------------------------------------------------------
    # Anneau
    # ------------------------------------------------------------------

    def _coerce(self, other) -> Expr:
        if isinstance(other, Expr):
            if other._chart != self._chart:
                raise ChartMismatchError(
                    f"Expressions de cartes différentes : {self._chart!r} / {other._chart!r}"
                )
            return other
        return Expr.constant(self._chart, _as_fraction(other))

    def __add__(self, other) -> Expr:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        somme = dict(self._terms)
        for m, c in other._terms:
            somme[m] = somme.get(m, Fraction(0)) + c
        return Expr(self._chart, somme)

    __radd__ = __add__

    def __neg__(self) -> Expr:
        return Expr(self._chart, {m: -c for m, c in self._terms})

    def __sub__(self, other) -> Expr:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Expr:
        return (-self) + other

    def __mul__(self, other) -> Expr:
        if not isinstance(other, Expr):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        other = self._coerce(other)
        produit: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms:
            for m2, c2 in other._terms:
                m = _mul_monomials(m1, m2)
                produit[m] = produit.get(m, Fraction(0)) + c1 * c2
        return Expr(self._chart, produit)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Expr:
        if isinstance(exponent, bool) or not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Exposant entier >= 0 requis, reçu {exponent!r}")
        resultat = Expr.constant(self._chart, 1)
        base = self
        # Exponentiation rapide
        while exponent:
            if exponent & 1:
                resultat = resultat * base
            exponent >>= 1
            if exponent:
                base = base * base
        return resultat

    def scale(self, c: Scalar) -> Expr:
        """Multiplication par un scalaire rationnel."""
        c = _as_fraction(c)
        return Expr(self._chart, {m: c * k for m, k in self._terms})

    # ------------------------------------------------------------------
    # Égalité
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Expr):
            return self._chart == other._chart and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Expr.constant(self._chart, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        # Une constante se hache comme sa valeur: x == 3 implique hash(x) == hash(3)
        if self._hash is None:
            if self.is_constant:
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self._chart, self._terms))
        return self._hash

    def __repr__(self) -> str:
        from src.expr_parser.renderer import render_expr
        return f"Expr({render_expr(self)!r})"
