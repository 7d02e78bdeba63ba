"""Tests de bout en bout de la ligne de commande (codes de sortie, rapports)."""

import csv
import json
import logging

import pytest

from src.cli.main import main
from src.common.constants import EXIT_OK, EXIT_USAGE_ERROR, EXIT_VERIFICATION_FAILED

DEMI_PI = "1.5707963267948966"


@pytest.fixture(autouse=True)
def environnement_isole(monkeypatch, tmp_path):
    """Pas de .env ni de journal fichier; journal racine restauré après chaque test."""
    monkeypatch.chdir(tmp_path)
    for nom in ("DIRAC_LOG_DIR", "DIRAC_STEP", "DIRAC_ALPHA_MAX",
                "DIRAC_MAX_ROUNDS", "DIRAC_SYSTEMS_DIR"):
        monkeypatch.delenv(nom, raising=False)
    racine = logging.getLogger()
    handlers, niveau = racine.handlers[:], racine.level
    yield
    racine.handlers[:] = handlers
    racine.setLevel(niveau)


def lancer(capsys, *argv):
    """Exécute la CLI; retourne (code, stdout, stderr)."""
    code = main(list(argv))
    sortie = capsys.readouterr()
    return code, sortie.out, sortie.err


class TestDerive:

    def test_so2_texte(self, capsys):
        code, out, _ = lancer(capsys, "derive", "so2")
        assert code == EXIT_OK
        assert "== momenta ==" in out
        assert "f*s - g*p" in out
        assert "1/2*g + p" in out
        assert "== EL-vs-Lie verdict == [pass]" in out

    def test_so2_json(self, capsys):
        code, out, _ = lancer(capsys, "derive", "so2", "--json")
        assert code == EXIT_OK
        rapport = json.loads(out)
        assert rapport["command"] == "derive"
        assert rapport["system"] == "so2"
        assert rapport["failed"] == []
        sections = {s["name"]: s for s in rapport["sections"]}
        assert sections["multipliers"]["entries"] == {"lambda_1": "-g", "lambda_2": "f"}
        assert sections["classification"]["entries"] == {
            "phi_1": "second-class", "phi_2": "second-class",
        }

    def test_option_globale_avant_sous_commande(self, capsys):
        code, out, _ = lancer(capsys, "--json", "derive", "regular")
        assert code == EXIT_OK
        sections = {s["name"]: s for s in json.loads(out)["sections"]}
        assert sections["constraints"]["notes"] == ["no constraints"]

    def test_premiere_classe(self, capsys):
        code, out, _ = lancer(capsys, "derive", "firstclass", "--json")
        assert code == EXIT_OK
        sections = {s["name"]: s for s in json.loads(out)["sections"]}
        assert sections["multipliers"]["entries"] == {"lambda_1": "undetermined"}
        assert sections["EL-vs-Lie verdict"]["verdict"] == "not-applicable"

    def test_verdict_en_echec_sans_erreur(self, capsys):
        """derive rapporte l'échec EL-vs-Lie mais sort en 0."""
        code, out, _ = lancer(capsys, "derive", "broken", "--json")
        assert code == EXIT_OK
        assert json.loads(out)["failed"] == ["EL-vs-Lie verdict"]

    def test_fichier_absent(self, capsys):
        code, out, err = lancer(capsys, "derive", "inexistant.system")
        assert code == EXIT_USAGE_ERROR
        assert out == ""
        assert "introuvable" in err

    def test_fichier_invalide(self, capsys, tmp_path):
        chemin = tmp_path / "faux.system"
        chemin.write_text("[system]\nfields = f\n[lagrangian]\nL = f + h\n", encoding="utf-8")
        code, _, err = lancer(capsys, "derive", str(chemin))
        assert code == EXIT_USAGE_ERROR
        assert f"{chemin}:4:9: unknown identifier" in err

    def test_silencieux(self, capsys):
        code, _, err = lancer(capsys, "derive", "so2", "--quiet")
        assert code == EXIT_OK
        assert "[ÉTAPE 1]" not in err


class TestBracket:

    def test_poisson_et_dirac(self, capsys):
        code, out, _ = lancer(capsys, "bracket", "so2", "f", "g", "--dirac")
        assert code == EXIT_OK
        assert out.split() == ["0", "-1"]

    def test_faible(self, capsys):
        code, out, _ = lancer(capsys, "bracket", "so2", "p", "f*s - g*p", "--weak")
        assert code == EXIT_OK
        assert out.splitlines() == ["-s", "-1/2*f"]

    def test_json(self, capsys):
        code, out, _ = lancer(capsys, "bracket", "so2", "f", "p", "--dirac", "--json")
        assert code == EXIT_OK
        (section,) = json.loads(out)["sections"]
        assert section["entries"] == {"poisson": "1", "dirac": "1/2"}

    def test_expression_invalide(self, capsys):
        code, _, err = lancer(capsys, "bracket", "so2", "f +", "g")
        assert code == EXIT_USAGE_ERROR
        assert "<A>:1:4" in err

    def test_dirac_premiere_classe(self, capsys):
        code, _, err = lancer(capsys, "bracket", "firstclass", "f", "g", "--dirac")
        assert code == EXIT_USAGE_ERROR
        assert "first-class constraints present" in err


class TestIntegrate:

    def test_quart_de_tour(self, capsys, tmp_path):
        sortie = tmp_path / "traj.csv"
        code, out, _ = lancer(
            capsys, "integrate", "so2", "--alpha-max", DEMI_PI, "--out", str(sortie), "--json",
        )
        assert code == EXIT_OK
        sections = {s["name"]: s for s in json.loads(out)["sections"]}
        final = {k: float(v) for k, v in sections["final state"]["entries"].items()}
        assert final["f"] == pytest.approx(0.0, abs=1e-6)
        assert final["g"] == pytest.approx(1.0, abs=1e-6)
        assert final["p"] == pytest.approx(-0.5, abs=1e-6)
        with open(sortie, encoding="utf-8", newline="") as f:
            entete = next(csv.reader(f))
        assert entete[:5] == ["alpha", "f", "g", "p", "s"]

    def test_reduit(self, capsys):
        code, out, _ = lancer(capsys, "integrate", "so2", "--reduced", "--alpha-max", "1", "--json")
        assert code == EXIT_OK
        sections = {s["name"]: s for s in json.loads(out)["sections"]}
        assert list(sections["final state"]["entries"]) == ["f", "g"]
        assert sections["integration"]["entries"]["mode"] == "reduced"

    def test_etat_initial_explicite(self, capsys):
        code, out, _ = lancer(capsys, "integrate", "so2", "--init", "1,0,0,0",
                              "--alpha-max", "0.5", "--json")
        assert code == EXIT_OK
        sections = {s["name"]: s for s in json.loads(out)["sections"]}
        assert float(sections["monitors"]["entries"]["max |phi_2|"]) == pytest.approx(0.5)

    @pytest.mark.parametrize("options", [
        ["--step", "-1"],
        ["--step", "0"],
        ["--alpha-max", "-1"],
        ["--init", "1,2,3"],
    ])
    def test_parametres_invalides(self, capsys, options):
        code, _, _ = lancer(capsys, "integrate", "so2", *options)
        assert code == EXIT_USAGE_ERROR

    def test_premiere_classe(self, capsys):
        code, _, _ = lancer(capsys, "integrate", "firstclass", "--init", "1,0,0,0")
        assert code == EXIT_USAGE_ERROR


class TestVerify:

    @pytest.mark.parametrize("nom", ["so2", "regular", "firstclass"])
    def test_systemes_valides(self, capsys, nom):
        code, out, _ = lancer(capsys, "verify", nom, "--json")
        assert code == EXIT_OK
        assert json.loads(out)["failed"] == []

    def test_so2_tout_applicable(self, capsys):
        _, out, _ = lancer(capsys, "verify", "so2", "--json")
        verdicts = {s["name"]: s.get("verdict") for s in json.loads(out)["sections"]}
        assert verdicts["rotation oracle"] == "pass"
        assert verdicts["dirac bracket"] == "pass"
        assert verdicts["on-shell identity"] == "pass"

    def test_premiere_classe_non_applicable(self, capsys):
        _, out, _ = lancer(capsys, "verify", "firstclass", "--json")
        verdicts = {s["name"]: s.get("verdict") for s in json.loads(out)["sections"]}
        assert verdicts["dirac bracket"] == "not-applicable"
        assert verdicts["rotation oracle"] == "not-applicable"

    def test_systeme_perturbe(self, capsys):
        code, out, _ = lancer(capsys, "verify", "broken", "--json")
        assert code == EXIT_VERIFICATION_FAILED
        echecs = json.loads(out)["failed"]
        assert "EL-vs-Lie verdict" in echecs
        assert "hamilton = lie" in echecs

    def test_sortie_texte(self, capsys):
        code, out, _ = lancer(capsys, "verify", "broken")
        assert code == EXIT_VERIFICATION_FAILED
        assert "[fail]" in out
