"""
Sous-commandes: derive, bracket, integrate, verify.

Chaque commande renvoie (code de sortie, Report); les exceptions de la
bibliothèque remontent jusqu'à main() qui les traduit en code 2.
"""
from __future__ import annotations

import argparse
import logging
import math
import random

import numpy as np

from src.common.config import Settings
from src.common.constants import (
    CSV_FLOAT_FORMAT,
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    TOLERANCE_CONSERVATION,
    TOLERANCE_EM_RESIDUAL,
    TOLERANCE_FLOW_AGREEMENT,
    TOLERANCE_ORACLE,
    VERIFY_RANDOM_DEGREE,
    VERIFY_RANDOM_TRIPLES,
    VERIFY_SEED,
    ConstraintClass,
    Verdict,
)
from src.common.exceptions import CompileError, IntegrationError, ParseError
from src.common.file_utils import lire_texte_utf8, localiser_fichier_systeme
from src.symbolic_core.expr import Expr
from src.symbolic_core.sampling import random_expr
from src.expr_parser.parser import parse_expr
from src.expr_parser.system_file import SystemDefinition, parse_system_file
from src.lagrangian.euler_lagrange import euler_lagrange
from src.lagrangian.lie_system import LieSystem
from src.lagrangian.observables import energy_momentum_residual, on_shell
from src.lagrangian.verification import verify_el_equals_lie
from src.dirac_pipeline.brackets import dirac_bracket, poisson_bracket
from src.dirac_pipeline.checks import (
    canonical_pairs_check,
    consistency_check,
    hamilton_matches_lie,
    poisson_hamilton_form,
)
from src.dirac_pipeline.observables import energy_report
from src.dirac_pipeline.pipeline import derive_constrained_system
from src.dirac_pipeline.system import ConstrainedSystem
from src.numeric_flow.flows import complete_initial_state, lie_flow, phase_flow
from src.numeric_flow.integrator import PhaseState, integrate
from src.numeric_flow.monitors import build_monitors, monitor_report
from src.numeric_flow.export import write_trajectory_csv
from src.numeric_flow.rotation import exact_rotation
from src.cli.report import Report

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Chargement
# ---------------------------------------------------------------------------

def charger_systeme(chemin: str, settings: Settings) -> SystemDefinition:
    """
    Localise, lit et analyse un fichier système.

    Raises:
        FileNotFoundError: Fichier introuvable.
        LocatedParseError: Contenu invalide (fichier:ligne:colonne).
    """
    fichier = localiser_fichier_systeme(chemin, settings.systems_dir)
    texte = lire_texte_utf8(fichier)
    try:
        return parse_system_file(texte)
    except ParseError as e:
        raise e.located(texte, str(fichier)) from e


def _lire_argument(texte: str, chart, origine: str) -> Expr:
    try:
        return parse_expr(texte, chart)
    except ParseError as e:
        raise e.located(texte, origine) from e


def _lie(definition: SystemDefinition) -> LieSystem | None:
    if definition.generators is None:
        return None
    return LieSystem.from_exprs(definition.chart, definition.generators)


def _est_rotation(gen: LieSystem | None) -> bool:
    """ξ = (−g, f) sur un système plan."""
    if gen is None or len(gen.chart.fields) != 2:
        return False
    f, g = (Expr.variable(gen.chart, q) for q in gen.chart.fields)
    return gen.generators == (-g, f)


def _fmt(x: float) -> str:
    return format(float(x), CSV_FLOAT_FORMAT)


# ---------------------------------------------------------------------------
# derive
# ---------------------------------------------------------------------------

def _rapport_derivation(report: Report, system: ConstrainedSystem) -> None:
    chart = system.chart

    s = report.section("momenta")
    for p, m in zip(chart.momenta, system.momenta):
        s.add(chart.display(p), m)

    s = report.section("constraints")
    for c in system.constraints:
        s.add(c.label, c.expr)
    if not system.constraints:
        s.note("no constraints")
    elif system.secondary:
        s.note(f"{len(system.secondary)} secondary constraint(s)")

    s = report.section("solved forms")
    for c in system.constraints:
        s.add(chart.display(c.solved_var), c.solved_value)

    report.section("base hamiltonian").add("H'", system.base_hamiltonian)

    s = report.section("total hamiltonian")
    s.add("H", system.total_hamiltonian)
    s.add("H_lambda", system.hamiltonian)
    s.add("H_lambda (weak)", system.weak(system.hamiltonian))

    s = report.section("constraint matrix")
    for a, ligne in enumerate(system.constraint_matrix, start=1):
        for b, c_ab in enumerate(ligne, start=1):
            s.add(f"C[{a}][{b}]", c_ab)

    s = report.section("multipliers")
    if system.solution is not None:
        for lam, valeur in system.solution.values.items():
            s.add(chart.display(lam), valeur)
        for lam in system.solution.undetermined:
            s.add(chart.display(lam), "undetermined")
        for ronde in system.solution.rounds:
            s.note(
                f"round {ronde.number}: {ronde.equations} equation(s), "
                f"secondary: {', '.join(ronde.secondary) or 'none'}"
            )

    s = report.section("classification")
    for label, classe in system.classification.items():
        s.add(label, classe)

    s = report.section("hamilton equations")
    for v, rhs in system.equations(weak=True):
        s.add(f"{chart.display(v)}'", rhs)

    energie = energy_report(system)
    s = report.section("energy")
    s.add("momentum form", energie.momentum_form)
    s.add("momentum form (weak)", energie.momentum_form_weak)
    s.add("angular form", energie.angular_form)
    s.note("presentations reported side by side, not asserted equal")


def _verdicts_lie(report: Report, definition: SystemDefinition, system: ConstrainedSystem) -> None:
    gen = _lie(definition)
    chart = definition.chart

    if gen is None:
        report.verdict("EL-vs-Lie verdict", None).note("no generators")
    else:
        verdict = verify_el_equals_lie(euler_lagrange(definition.lagrangian, chart), gen)
        s = report.verdict("EL-vs-Lie verdict", verdict.equivalent)
        for q, r in verdict.residuals:
            s.add(chart.display(q), r)

    consistance = consistency_check(system)
    s = report.verdict("consistency verdict", consistance.passed)
    for label, r in consistance.residuals:
        s.add(label, r)
    if system.solution is not None:
        for lam in system.solution.undetermined:
            s.note(f"{chart.display(lam)} undetermined (first-class constraint)")


def cmd_derive(args: argparse.Namespace, settings: Settings) -> tuple[int, Report]:
    """Pipeline complet et rapport; code 0 dès que le pipeline aboutit."""
    definition = charger_systeme(args.system, settings)
    system = derive_constrained_system(
        definition.lagrangian, definition.chart, max_rounds=settings.max_rounds
    )
    report = Report("derive", definition.name)
    _rapport_derivation(report, system)
    _verdicts_lie(report, definition, system)
    return EXIT_OK, report


# ---------------------------------------------------------------------------
# bracket
# ---------------------------------------------------------------------------

def cmd_bracket(args: argparse.Namespace, settings: Settings) -> tuple[int, Report]:
    """{A, B} rendu; --weak ajoute la forme réduite, --dirac le crochet de Dirac."""
    definition = charger_systeme(args.system, settings)
    chart = definition.chart
    A = _lire_argument(args.a, chart, "<A>")
    B = _lire_argument(args.b, chart, "<B>")

    report = Report("bracket", definition.name)
    s = report.section("bracket", bare=True)
    crochet = poisson_bracket(A, B, chart)
    s.add("poisson", crochet)

    if args.weak or args.dirac:
        system = derive_constrained_system(
            definition.lagrangian, chart, max_rounds=settings.max_rounds
        )
        if args.weak:
            s.add("weak", system.weak(crochet))
        if args.dirac:
            s.add("dirac", dirac_bracket(A, B, system.constraints, chart))
    return EXIT_OK, report


# ---------------------------------------------------------------------------
# integrate
# ---------------------------------------------------------------------------

def _parametres_integration(args, definition: SystemDefinition, settings: Settings):
    """Option CLI > section [integrate] > environnement > constantes."""
    defauts = definition.integration
    alpha_max = args.alpha_max if args.alpha_max is not None else (
        defauts.alpha_max if defauts.alpha_max is not None else settings.alpha_max
    )
    step = args.step if args.step is not None else (
        defauts.step if defauts.step is not None else settings.step
    )
    if args.init is not None:
        init = [float(x) for x in args.init.split(",") if x.strip()]
    elif defauts.init is not None:
        init = list(defauts.init)
    else:
        init = [1.0] + [0.0] * (len(definition.chart.fields) - 1)
    return init, alpha_max, step


def cmd_integrate(args: argparse.Namespace, settings: Settings) -> tuple[int, Report]:
    """RK4 sur le flot complet (ou réduit), synthèse des moniteurs, CSV optionnel."""
    definition = charger_systeme(args.system, settings)
    chart = definition.chart
    init, alpha_max, step = _parametres_integration(args, definition, settings)
    if not (math.isfinite(step) and step > 0):
        raise IntegrationError(f"Pas invalide : {step} (doit être > 0)")

    system = derive_constrained_system(
        definition.lagrangian, chart, max_rounds=settings.max_rounds
    )
    if args.reduced:
        gen = _lie(definition)
        if gen is None:
            raise IntegrationError("--reduced requiert une section [generators]")
        champ = lie_flow(gen)
        n = len(chart.fields)
        if len(init) not in (n, 2 * n):
            raise IntegrationError(f"État initial : {n} valeurs attendues, reçu {len(init)}")
        init = init[:n]
        etat = np.array(init, dtype=float)
    else:
        champ = phase_flow(system)
        etat = complete_initial_state(system, init)

    traj = integrate(champ, PhaseState(0.0, etat), alpha_max, step,
                     monitors=build_monitors(system, champ))
    resume = monitor_report(traj)

    report = Report("integrate", definition.name)
    s = report.section("integration")
    s.add("mode", "reduced" if args.reduced else "full")
    s.add("alpha_max", _fmt(alpha_max))
    s.add("step", _fmt(step))
    s.add("states", str(len(traj)))

    s = report.section("initial state")
    for v, x in zip(traj.variables, traj.initial.values):
        s.add(chart.display(v), _fmt(x))
    s = report.section("final state")
    for v, x in zip(traj.variables, traj.final.values):
        s.add(chart.display(v), _fmt(x))

    s = report.section("monitors")
    s.add("max |dH|", resume.h_drift)
    s.add("max |d radius2|", resume.radius2_drift)
    for label, m in resume.constraint_max.items():
        s.add(f"max |{label}|", m)
    s.add("max |em_residual|", resume.em_residual_max)

    if args.out:
        chemin = write_trajectory_csv(traj, chart, args.out)
        report.section("output").add("csv", str(chemin))
    return EXIT_OK, report


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verifier_algebre(report: Report, system: ConstrainedSystem) -> None:
    chart = system.chart
    rng = random.Random(VERIFY_SEED)
    echecs = {"antisymmetry": 0, "leibniz": 0, "jacobi": 0}
    for _ in range(VERIFY_RANDOM_TRIPLES):
        F, G, H = (random_expr(chart, rng, max_degree=VERIFY_RANDOM_DEGREE) for _ in range(3))
        if poisson_bracket(F, G, chart) != -poisson_bracket(G, F, chart):
            echecs["antisymmetry"] += 1
        leibniz = poisson_bracket(F, G * H, chart)
        if leibniz != poisson_bracket(F, G, chart) * H + G * poisson_bracket(F, H, chart):
            echecs["leibniz"] += 1
        jacobi = (
            poisson_bracket(F, poisson_bracket(G, H, chart), chart)
            + poisson_bracket(G, poisson_bracket(H, F, chart), chart)
            + poisson_bracket(H, poisson_bracket(F, G, chart), chart)
        )
        if not jacobi.is_zero:
            echecs["jacobi"] += 1
    s = report.verdict("bracket algebra", not any(echecs.values()))
    for nom, n in echecs.items():
        s.add(nom, f"{n}/{VERIFY_RANDOM_TRIPLES} failures")

    paires = canonical_pairs_check(chart)
    s = report.verdict("canonical pairs", paires.passed)
    for nom, r in paires.residuals:
        s.add(nom, r)

    ok = all(system.weak(c.expr).is_zero for c in system.constraints)
    for _ in range(VERIFY_RANDOM_TRIPLES):
        e = random_expr(chart, rng, max_degree=VERIFY_RANDOM_DEGREE)
        ok = ok and system.weak(system.weak(e)) == system.weak(e)
    report.verdict("weak reduction", ok)


def _verifier_dirac(report: Report, system: ConstrainedSystem) -> None:
    chart = system.chart
    if not system.constraints:
        report.verdict("dirac bracket", None).note("no constraints")
        return
    if system.first_class():
        report.verdict("dirac bracket", None).note("first-class constraints present")
        return
    s = report.verdict("dirac bracket", True)
    for v in chart.phase_variables:
        for c in system.constraints:
            r = system.weak(dirac_bracket(Expr.variable(chart, v), c.expr, system.constraints, chart))
            if not r.is_zero:
                s.verdict = Verdict.FAIL
                s.add(f"{{{chart.display(v)}, {c.label}}}_D", r)


def _verifier_lie(report: Report, definition: SystemDefinition, system: ConstrainedSystem) -> None:
    gen = _lie(definition)
    chart = definition.chart
    if gen is None:
        for nom in ("hamilton = lie", "poisson-hamilton form", "on-shell identity"):
            report.verdict(nom, None).note("no generators")
        return

    verdict = hamilton_matches_lie(system, gen)
    s = report.verdict("hamilton = lie", verdict.equivalent)
    for q, r in verdict.residuals:
        s.add(chart.display(q), r)

    ph = poisson_hamilton_form(system, gen)
    s = report.verdict("poisson-hamilton form", ph.passed)
    for nom, r in ph.residuals:
        s.add(nom, r)

    residu = energy_momentum_residual(chart)
    if residu is None or not _est_rotation(gen):
        report.verdict("on-shell identity", None).note("plane rotation only")
    else:
        reste = on_shell(residu, gen)
        report.verdict("on-shell identity", reste.is_zero).add("2T - l", reste)


def _verifier_numerique(
    report: Report,
    definition: SystemDefinition,
    system: ConstrainedSystem,
    settings: Settings,
) -> None:
    gen = _lie(definition)
    chart = definition.chart
    noms = ("numeric conservation", "numeric flow agreement", "rotation oracle")
    if gen is None:
        for nom in noms:
            report.verdict(nom, None).note("no generators")
        return

    defauts = definition.integration
    init = list(defauts.init) if defauts.init else [1.0] + [0.0] * (len(chart.fields) - 1)
    alpha_max = defauts.alpha_max if defauts.alpha_max is not None else settings.alpha_max
    step = defauts.step if defauts.step is not None else settings.step

    try:
        champ = phase_flow(system)
        etat = complete_initial_state(system, init)
    except (CompileError, IntegrationError) as e:
        for nom in noms:
            report.verdict(nom, None).note(str(e))
        return

    traj = integrate(champ, PhaseState(0.0, etat), alpha_max, step,
                     monitors=build_monitors(system, champ))
    resume = monitor_report(traj)
    rotation = _est_rotation(gen)

    s = report.verdict("numeric conservation", True)
    mesures = [("max |dH|", resume.h_drift, TOLERANCE_CONSERVATION),
               ("max |phi|", resume.constraint_drift, TOLERANCE_CONSERVATION)]
    if rotation:
        mesures += [("max |d radius2|", resume.radius2_drift, TOLERANCE_CONSERVATION),
                    ("max |em_residual|", resume.em_residual_max, TOLERANCE_EM_RESIDUAL)]
    for nom, valeur, tol in mesures:
        s.add(nom, valeur)
        if valeur is not None and not valeur <= tol:
            s.verdict = Verdict.FAIL

    n = len(chart.fields)
    reduit = integrate(lie_flow(gen), PhaseState(0.0, etat[:n]), alpha_max, step)
    ecart = float(np.max(np.abs(traj.final.values[:n] - reduit.final.values)))
    report.verdict("numeric flow agreement", ecart <= TOLERANCE_FLOW_AGREEMENT).add(
        "max |full - reduced|", ecart
    )

    if rotation:
        x, y = etat[0], etat[1]
        attendu = np.array(exact_rotation(x, y, alpha_max))
        ecart = float(np.max(np.abs(traj.final.values[:2] - attendu)))
        report.verdict("rotation oracle", ecart <= TOLERANCE_ORACLE).add(
            "max |integrated - exact|", ecart
        )
    else:
        report.verdict("rotation oracle", None).note("plane rotation only")


def cmd_verify(args: argparse.Namespace, settings: Settings) -> tuple[int, Report]:
    """Suite d'invariants symboliques et numériques; code 1 au moindre échec."""
    definition = charger_systeme(args.system, settings)
    system = derive_constrained_system(
        definition.lagrangian, definition.chart, max_rounds=settings.max_rounds
    )
    report = Report("verify", definition.name)

    s = report.section("classification")
    for label, classe in system.classification.items():
        s.add(label, classe)
    if any(c == ConstraintClass.FIRST_CLASS for c in system.classification.values()):
        s.note("first-class constraints: gauge freedom detected, not fixed")

    _verdicts_lie(report, definition, system)
    _verifier_algebre(report, system)
    _verifier_dirac(report, system)
    _verifier_lie(report, definition, system)
    _verifier_numerique(report, definition, system, settings)

    if report.failed:
        logger.warning(f"Vérifications en échec : {', '.join(report.failed)}")
        return EXIT_VERIFICATION_FAILED, report
    logger.info("Toutes les vérifications passent")
    return EXIT_OK, report
