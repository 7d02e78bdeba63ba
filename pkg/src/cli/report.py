"""
Rapport structuré des commandes: sections nommées, entrées rendues,
verdicts tri-états. Rendu texte (humain) ou JSON (scripts), un pour un.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from src.common.constants import Verdict
from src.symbolic_core.expr import Expr
from src.expr_parser.renderer import render_expr


@dataclass
class Section:
    """
    Attributes:
        name: Nom de la section (clé stable du JSON).
        entries: Clé ↦ valeur rendue (Expr via render_expr).
        verdict: pass / fail / not-applicable, ou None pour une section
            purement descriptive.
        notes: Remarques libres.
        bare: Rendu texte des seules valeurs, une par ligne.
    """
    name: str
    entries: dict[str, str] = field(default_factory=dict)
    verdict: str | None = None
    notes: list[str] = field(default_factory=list)
    bare: bool = False

    def add(self, key: str, value: Expr | str | float | int | None) -> Section:
        if isinstance(value, Expr):
            value = render_expr(value)
        elif value is None:
            value = "n/a"
        elif isinstance(value, float):
            value = format(value, ".3e")
        self.entries[key] = str(value)
        return self

    def note(self, texte: str) -> Section:
        self.notes.append(texte)
        return self

    def to_dict(self) -> dict:
        d = {"name": self.name, "entries": dict(self.entries)}
        if self.verdict is not None:
            d["verdict"] = self.verdict
        if self.notes:
            d["notes"] = list(self.notes)
        return d


@dataclass
class Report:
    command: str
    system: str
    sections: list[Section] = field(default_factory=list)

    def section(self, name: str, verdict: str | None = None, bare: bool = False) -> Section:
        s = Section(name, verdict=verdict, bare=bare)
        self.sections.append(s)
        return s

    def verdict(self, name: str, passed: bool | None) -> Section:
        """Ajoute une section de verdict (None = non applicable)."""
        if passed is None:
            v = Verdict.NOT_APPLICABLE
        else:
            v = Verdict.PASS if passed else Verdict.FAIL
        return self.section(name, verdict=v)

    @property
    def failed(self) -> list[str]:
        return [s.name for s in self.sections if s.verdict == Verdict.FAIL]

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "system": self.system,
            "sections": [s.to_dict() for s in self.sections],
            "failed": self.failed,
        }

    def render_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    def render_text(self) -> str:
        lignes: list[str] = []
        for s in self.sections:
            if s.bare:
                lignes.extend(s.entries.values())
                continue
            titre = f"== {s.name} =="
            if s.verdict is not None:
                titre += f" [{s.verdict}]"
            lignes.append(titre)
            largeur = max((len(k) for k in s.entries), default=0)
            for cle, valeur in s.entries.items():
                lignes.append(f"  {cle.ljust(largeur)} : {valeur}")
            for n in s.notes:
                lignes.append(f"  ({n})")
        return "\n".join(lignes)
