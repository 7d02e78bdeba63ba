"""
Fixtures pytest communes pour les tests du pipeline Dirac-Bergmann.
"""

import random

import pytest
from pathlib import Path

from src.common.constants import VERIFY_SEED
from src.symbolic_core.chart import JetChart
from src.symbolic_core.expr import Expr
from src.symbolic_core.sampling import random_expr
from src.expr_parser.system_file import parse_system_file
from src.dirac_pipeline.pipeline import derive_constrained_system


@pytest.fixture
def project_root():
    """Retourne le chemin racine du projet."""
    return Path(__file__).parent.parent


@pytest.fixture
def data_dir(project_root):
    """Retourne le chemin du dossier data/."""
    return project_root / "data"


@pytest.fixture
def systems_dir(data_dir):
    """Dossier des systèmes livrés."""
    return data_dir / "systems"


@pytest.fixture
def load_system(systems_dir):
    """Charge un système livré par son nom (so2, regular, ...)."""
    def _charger(nom: str):
        texte = (systems_dir / f"{nom}.system").read_text(encoding="utf-8")
        return parse_system_file(texte)
    return _charger


@pytest.fixture
def so2_definition(load_system):
    """Définition du système SO(2) livré."""
    return load_system("so2")


@pytest.fixture
def so2_system(so2_definition):
    """Système contraint SO(2) entièrement dérivé."""
    return derive_constrained_system(so2_definition.lagrangian, so2_definition.chart)


@pytest.fixture
def chart():
    """Carte plane (f, g) avec les noms p, s pour les moments."""
    return JetChart(["f", "g"], aliases={"p_f": "p", "p_g": "s"})


@pytest.fixture
def var(chart):
    """Raccourci: var("f") -> Expr de la variable."""
    def _var(nom: str) -> Expr:
        return Expr.variable(chart, nom)
    return _var


@pytest.fixture
def rng():
    """Générateur initialisé, reproductible."""
    return random.Random(VERIFY_SEED)


@pytest.fixture
def random_phase_expr(chart, rng):
    """Polynôme aléatoire de l'espace des phases (degré <= 3)."""
    def _tirer(**kwargs) -> Expr:
        return random_expr(chart, rng, **kwargs)
    return _tirer
