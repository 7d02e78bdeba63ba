# Pipeline de Dirac-Bergmann: Legendre, contraintes, hamiltoniens, crochets, multiplicateurs
from src.dirac_pipeline.linalg import Reduction, rref, left_kernel, invert, rank, constant_matrix
from src.dirac_pipeline.constraints import (
    Constraint,
    legendre_momenta,
    detect_primary_constraints,
    weak_reduce,
)
from src.dirac_pipeline.hamiltonian import (
    base_hamiltonian,
    total_hamiltonian,
    hamilton_equations,
    reduce_equations,
)
from src.dirac_pipeline.brackets import (
    poisson_bracket,
    constraint_matrix,
    observable_eom,
    dirac_bracket,
)
from src.dirac_pipeline.system import ConsistencyRound, MultiplierSolution, ConstrainedSystem
from src.dirac_pipeline.multipliers import solve_multipliers, classify_constraints
from src.dirac_pipeline.pipeline import derive_constrained_system
from src.dirac_pipeline.observables import angular_momentum, EnergyReport, energy_report
from src.dirac_pipeline.checks import (
    CheckVerdict,
    consistency_check,
    canonical_pairs_check,
    poisson_hamilton_form,
    hamilton_matches_lie,
)
