"""
Constantes centralisées pour le pipeline Dirac-Bergmann.

Nomenclature des variables d'une carte de jets (JetChart):
  champ        q     (f, g)
  vitesse      q'    (ḟ, ġ)
  accélération q''   (f̈, g̈)
  moment       p_q   (p, s pour SO(2))
  multiplicateur lambda_k
"""
import math


class VarKind:
    """Rôles des variables enregistrées dans une carte."""
    FIELD = "field"
    VELOCITY = "velocity"
    ACCELERATION = "acceleration"
    MOMENTUM = "momentum"
    MULTIPLIER = "multiplier"


class ConstraintClass:
    """Taxonomie de Dirac."""
    FIRST_CLASS = "first-class"
    SECOND_CLASS = "second-class"


# ---------------------------------------------------------------------------
# Conventions de nommage
# ---------------------------------------------------------------------------

MOMENTUM_PREFIX = "p_"
MULTIPLIER_PREFIX = "lambda_"
JET_SUFFIX = "'"
MAX_JET_ORDER = 2
DEFAULT_PARAMETER = "alpha"

# Garde-fous du lecteur d'expressions (exposant écrit, parenthèses, chiffres
# d'un littéral entier)
MAX_EXPONENT = 64
MAX_NESTING = 200
MAX_LITERAL_DIGITS = 1000

# Table d'alias intégrée: nom canonique -> nom affiché, par nom de système.
# SO(2) reprend la notation p, s pour les moments de f, g.
BUILTIN_ALIASES = {
    "so2": {
        "p_f": "p",
        "p_g": "s",
    },
}

# ---------------------------------------------------------------------------
# Algorithme de Dirac
# ---------------------------------------------------------------------------

MAX_CONSISTENCY_ROUNDS = 10

# ---------------------------------------------------------------------------
# Intégration numérique
# ---------------------------------------------------------------------------

DEFAULT_STEP = 1e-3
DEFAULT_ALPHA_MAX = 2.0 * math.pi

# Tolérance relative pour reconnaître qu'alpha_max est un multiple du pas
STEP_SNAP_TOLERANCE = 1e-9

# 17 chiffres significatifs: aller-retour exact pour les doubles
CSV_FLOAT_FORMAT = ".17g"

# Au-delà, un avertissement signale un état probablement hors surface
CONSTRAINT_DRIFT_WARNING = 1e-3

# ---------------------------------------------------------------------------
# Vérification (commande verify)
# ---------------------------------------------------------------------------

VERIFY_SEED = 20240531
VERIFY_RANDOM_TRIPLES = 20
VERIFY_RANDOM_DEGREE = 3

TOLERANCE_ORACLE = 1e-6
TOLERANCE_CONSERVATION = 1e-8
TOLERANCE_EM_RESIDUAL = 1e-12
TOLERANCE_FLOW_AGREEMENT = 1e-6

# ---------------------------------------------------------------------------
# Codes de sortie CLI
# ---------------------------------------------------------------------------

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE_ERROR = 2


class Verdict:
    """Verdicts tri-états des rapports."""
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"


# ---------------------------------------------------------------------------
# Chemins par défaut
# ---------------------------------------------------------------------------

SYSTEMS_DIR = "data/systems"
SYSTEM_FILE_SUFFIX = ".system"
