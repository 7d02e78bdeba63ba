# Couche variationnelle: Euler-Lagrange, systèmes de Lie, vérification EL = Lie
from src.symbolic_core.chart import JetChart
from src.lagrangian.jets import total_derivative
from src.lagrangian.euler_lagrange import ELSystem, euler_lagrange, verifier_lagrangien
from src.lagrangian.lie_system import (
    LieSystem,
    lie_equations_from_generators,
    second_order_form,
    on_shell_bindings,
)
from src.lagrangian.verification import LieVerdict, verify_el_equals_lie
from src.lagrangian.observables import (
    kinetic_energy,
    kinetic_momentum,
    energy_momentum_residual,
    on_shell,
)
