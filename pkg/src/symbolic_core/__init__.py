# Noyau symbolique: polynômes exacts sur une carte de variables
from src.symbolic_core.chart import JetChart, VarId
from src.symbolic_core.expr import Expr, Monomial
from src.symbolic_core.operations import (
    partial_derivative,
    coefficient,
    substitute,
    eval_numeric,
    compile_terms,
    evaluate_terms,
)
from src.symbolic_core.sampling import random_expr, random_fraction
