"""
Conteneurs du pipeline: système contraint, solution des multiplicateurs.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from src.common.constants import ConstraintClass
from src.symbolic_core.chart import JetChart, VarId
from src.symbolic_core.expr import Expr
from src.symbolic_core.operations import substitute
from src.dirac_pipeline.constraints import Constraint, weak_reduce
from src.dirac_pipeline.hamiltonian import hamilton_equations, reduce_equations


@dataclass(frozen=True)
class ConsistencyRound:
    """Trace d'une ronde de cohérence {χ_A, H} ≈ 0."""
    number: int
    equations: int
    secondary: tuple[str, ...] = ()
    undetermined: tuple[str, ...] = ()


@dataclass(frozen=True)
class MultiplierSolution:
    """
    Résultat de la résolution des conditions de cohérence.

    Attributes:
        values: λ_a déterminés ↦ Expr (peuvent contenir des λ indéterminés).
        undetermined: λ_a laissés libres (signal de première classe).
        secondary: Contraintes secondaires émises.
        constraints: Toutes les contraintes, formes résolues à jour.
        rounds: Trace des rondes.
    """
    values: dict[VarId, Expr]
    undetermined: tuple[VarId, ...]
    secondary: tuple[Constraint, ...]
    constraints: tuple[Constraint, ...]
    rounds: tuple[ConsistencyRound, ...] = ()


@dataclass(frozen=True)
class ConstrainedSystem:
    """
    Sortie du pipeline de Dirac-Bergmann.

    Les champs optionnels sont remplis par solve_multipliers et
    classify_constraints (voir derive_constrained_system).
    """
    chart: JetChart
    lagrangian: Expr
    momenta: tuple[Expr, ...]
    primary: tuple[Constraint, ...]
    base_hamiltonian: Expr
    total_hamiltonian: Expr
    solution: MultiplierSolution | None = None
    constraint_matrix: tuple[tuple[Expr, ...], ...] = ()
    classification: dict[str, str] = field(default_factory=dict)

    @property
    def constraints(self) -> tuple[Constraint, ...]:
        if self.solution is None:
            return self.primary
        return self.solution.constraints

    @property
    def secondary(self) -> tuple[Constraint, ...]:
        return self.solution.secondary if self.solution else ()

    @property
    def multipliers(self) -> tuple[VarId, ...]:
        return self.chart.multipliers[:len(self.primary)]

    @property
    def is_regular(self) -> bool:
        return not self.primary

    @property
    def hamiltonian(self) -> Expr:
        """H_λ: H total avec les multiplicateurs déterminés substitués."""
        if self.solution is None:
            return self.total_hamiltonian
        return substitute(self.total_hamiltonian, self.solution.values)

    def first_class(self) -> list[Constraint]:
        return [c for c in self.constraints
                if self.classification.get(c.label) == ConstraintClass.FIRST_CLASS]

    def second_class(self) -> list[Constraint]:
        return [c for c in self.constraints
                if self.classification.get(c.label) == ConstraintClass.SECOND_CLASS]

    def weak(self, e: Expr) -> Expr:
        return weak_reduce(e, self.constraints)

    def equations(self, weak: bool = True) -> list[tuple[VarId, Expr]]:
        """Équations de Hamilton de H_λ, réduites faiblement après dérivation."""
        equations = hamilton_equations(self.hamiltonian, self.chart)
        if weak:
            return reduce_equations(equations, self.constraints)
        return equations
