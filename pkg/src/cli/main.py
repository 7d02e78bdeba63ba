"""
Point d'entrée CLI du pipeline de Dirac-Bergmann.

Usage:
    python -m src.cli.main derive so2.system
    python -m src.cli.main bracket so2.system "p + 1/2*g" "s - 1/2*f" --weak
    python -m src.cli.main integrate so2.system --init 1,0 --out traj.csv
    python -m src.cli.main verify so2.system --json

Rapports sur stdout, journal sur stderr.
Codes de sortie: 0 succès, 1 vérification en échec, 2 usage/E-S/lecture/pipeline.
"""

import sys
import argparse
import logging

from src.common.config import load_settings
from src.common.constants import EXIT_USAGE_ERROR
from src.common.exceptions import DiracException, ParseError
from src.common.logging_setup import fix_utf8_windows, setup_logging
from src.cli.commands import cmd_bracket, cmd_derive, cmd_integrate, cmd_verify

fix_utf8_windows()
logger = logging.getLogger(__name__)


def _options_globales(parser: argparse.ArgumentParser, defaut) -> None:
    parser.add_argument('--json', action='store_true', default=defaut,
                        help='Rapport JSON (un seul document) sur stdout')
    parser.add_argument('--quiet', action='store_true', default=defaut,
                        help='Journal limité aux avertissements')
    parser.add_argument('--verbose', action='store_true', default=defaut,
                        help='Journal détaillé (DEBUG)')
    parser.add_argument('--env-file', default=defaut,
                        help='Fichier .env explicite')


def construire_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='dirac',
        description="Pipeline de Dirac-Bergmann sur lagrangiens polynomiaux",
    )
    _options_globales(parser, None)

    # Options aussi acceptées après la sous-commande
    commun = argparse.ArgumentParser(add_help=False)
    _options_globales(commun, argparse.SUPPRESS)

    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('derive', parents=[commun], help='Dériver le système contraint')
    p.add_argument('system', help='Fichier système ou preset (so2, regular, ...)')
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser('bracket', parents=[commun], help='Crochet de Poisson {A, B}')
    p.add_argument('system', help='Fichier système ou preset')
    p.add_argument('a', help='Expression A')
    p.add_argument('b', help='Expression B')
    p.add_argument('--weak', action='store_true', help='Ajouter la forme faiblement réduite')
    p.add_argument('--dirac', action='store_true', help='Ajouter le crochet de Dirac')
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser('integrate', parents=[commun], help='Intégrer le flot (RK4)')
    p.add_argument('system', help='Fichier système ou preset')
    p.add_argument('--init', help='Valeurs initiales séparées par des virgules (champs, puis moments)')
    p.add_argument('--alpha-max', type=float, help='Borne finale du paramètre')
    p.add_argument('--step', type=float, help='Pas RK4 (> 0)')
    p.add_argument('--out', help='Fichier CSV de la trajectoire')
    p.add_argument('--reduced', action='store_true', help='Flot de Lie réduit aux champs')
    p.set_defaults(func=cmd_integrate)

    p = sub.add_parser('verify', parents=[commun], help="Suite d'invariants")
    p.add_argument('system', help='Fichier système ou preset')
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    """Analyse les arguments, exécute la commande, traduit les erreurs en codes."""
    parser = construire_parser()
    args = parser.parse_args(argv)

    niveau = logging.INFO
    if args.quiet:
        niveau = logging.WARNING
    if args.verbose:
        niveau = logging.DEBUG

    try:
        settings = load_settings(args.env_file)
        setup_logging(niveau, log_dir=settings.log_dir, command_name=args.command)
        logger.debug(f"Commande {args.command} sur {args.system}")

        code, report = args.func(args, settings)
        print(report.render_json() if args.json else report.render_text())
        return code

    except FileNotFoundError as e:
        logger.error(str(e))
        return EXIT_USAGE_ERROR

    except ParseError as e:
        logger.error(f"Erreur de lecture : {e}")
        return EXIT_USAGE_ERROR

    except DiracException as e:
        logger.error(f"Erreur du pipeline : {e}")
        return EXIT_USAGE_ERROR

    except (OSError, UnicodeDecodeError, ValueError) as e:
        logger.error(f"Erreur d'entrée : {e}")
        return EXIT_USAGE_ERROR

    except KeyboardInterrupt:
        logger.info("Interrompu par l'utilisateur")
        return 130


if __name__ == "__main__":
    sys.exit(main())
