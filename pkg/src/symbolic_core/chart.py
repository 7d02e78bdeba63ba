"""
Registre de variables (carte de jets) partagé par toutes les expressions.

Une carte enregistre, dans cet ordre fixe:
  champs q_i, vitesses q_i', accélérations q_i'', moments p_q_i,
  multiplicateurs lambda_1..lambda_n (un par champ, le maximum possible
  de contraintes primaires).
L'ordre d'enregistrement définit l'ordre lexicographique des monômes.
"""
from __future__ import annotations

import re
import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

from src.common.constants import (
    VarKind,
    MOMENTUM_PREFIX,
    MULTIPLIER_PREFIX,
    JET_SUFFIX,
    MAX_JET_ORDER,
    DEFAULT_PARAMETER,
)
from src.common.exceptions import JetOrderError

logger = logging.getLogger(__name__)

IDENTIFIER_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


@dataclass(frozen=True, order=True)
class VarId:
    """
    Variable enregistrée dans une carte.

    Attributes:
        index: Rang d'enregistrement (ordre des monômes).
        name: Nom canonique (f, f', f'', p_f, lambda_1).
        kind: Rôle (constante VarKind).
        slot: Position du champ associé (ou numéro du multiplicateur - 1).
    """
    index: int
    name: str
    kind: str
    slot: int

    def __str__(self) -> str:
        return self.name


class JetChart:
    """
    Carte de jets: champs, jets, moments conjugués, multiplicateurs.

    Deux cartes construites avec les mêmes arguments sont égales et leurs
    expressions sont interchangeables.
    """

    def __init__(
        self,
        fields: Sequence[str],
        parameter: str = DEFAULT_PARAMETER,
        jet_order: int = MAX_JET_ORDER,
        aliases: Mapping[str, str] | None = None,
    ):
        fields = tuple(fields)
        if not 0 <= jet_order <= MAX_JET_ORDER:
            raise JetOrderError(
                f"Ordre de jet {jet_order} non supporté (maximum {MAX_JET_ORDER})"
            )
        if len(set(fields)) != len(fields):
            raise ValueError(f"Champs dupliqués : {list(fields)}")
        for nom in fields:
            if not IDENTIFIER_RE.match(nom):
                raise ValueError(f"Nom de champ invalide : {nom!r}")

        self._parameter = parameter
        self._jet_order = jet_order
        self._field_names = fields

        variables: list[VarId] = []

        def enregistrer(nom: str, kind: str, slot: int) -> VarId:
            v = VarId(len(variables), nom, kind, slot)
            variables.append(v)
            return v

        self._fields = tuple(enregistrer(q, VarKind.FIELD, i) for i, q in enumerate(fields))
        self._velocities = tuple(
            enregistrer(q + JET_SUFFIX, VarKind.VELOCITY, i)
            for i, q in enumerate(fields)
        ) if jet_order >= 1 else ()
        self._accelerations = tuple(
            enregistrer(q + 2 * JET_SUFFIX, VarKind.ACCELERATION, i)
            for i, q in enumerate(fields)
        ) if jet_order >= 2 else ()
        self._momenta = tuple(
            enregistrer(MOMENTUM_PREFIX + q, VarKind.MOMENTUM, i)
            for i, q in enumerate(fields)
        )
        self._multipliers = tuple(
            enregistrer(f"{MULTIPLIER_PREFIX}{k + 1}", VarKind.MULTIPLIER, k)
            for k in range(len(fields))
        )
        self._variables = tuple(variables)

        self._by_name: dict[str, VarId] = {}
        for v in self._variables:
            if v.name in self._by_name:
                raise ValueError(f"Nom de variable en collision : {v.name!r}")
            self._by_name[v.name] = v

        self._aliases: dict[str, str] = {}
        for canonique, affiche in sorted((aliases or {}).items()):
            if canonique not in self._by_name:
                logger.warning(f"Alias ignoré, variable inconnue : {canonique!r}")
                continue
            if not IDENTIFIER_RE.match(affiche) or affiche in self._by_name:
                raise ValueError(f"Alias invalide ou en collision : {affiche!r}")
            self._aliases[canonique] = affiche
            self._by_name[affiche] = self._by_name[canonique]

    # ------------------------------------------------------------------
    # Identité
    # ------------------------------------------------------------------

    def _key(self) -> tuple:
        return (
            self._field_names,
            self._parameter,
            self._jet_order,
            tuple(sorted(self._aliases.items())),
        )

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, JetChart):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return (
            f"JetChart(fields={list(self._field_names)}, "
            f"parameter={self._parameter!r}, jet_order={self._jet_order})"
        )

    # ------------------------------------------------------------------
    # Accès
    # ------------------------------------------------------------------

    @property
    def parameter(self) -> str:
        return self._parameter

    @property
    def jet_order(self) -> int:
        return self._jet_order

    @property
    def variables(self) -> tuple[VarId, ...]:
        return self._variables

    @property
    def fields(self) -> tuple[VarId, ...]:
        return self._fields

    @property
    def velocities(self) -> tuple[VarId, ...]:
        return self._velocities

    @property
    def accelerations(self) -> tuple[VarId, ...]:
        return self._accelerations

    @property
    def momenta(self) -> tuple[VarId, ...]:
        return self._momenta

    @property
    def multipliers(self) -> tuple[VarId, ...]:
        return self._multipliers

    @property
    def phase_variables(self) -> tuple[VarId, ...]:
        """Champs puis moments: l'ordre d'un PhaseState."""
        return self._fields + self._momenta

    @property
    def aliases(self) -> dict[str, str]:
        return dict(self._aliases)

    def __len__(self) -> int:
        return len(self._variables)

    def lookup(self, name: str) -> VarId | None:
        """Variable par nom canonique ou alias, None si inconnue."""
        return self._by_name.get(name)

    def var(self, name: str) -> VarId:
        """Variable par nom canonique ou alias."""
        v = self._by_name.get(name)
        if v is None:
            raise KeyError(f"Variable inconnue dans la carte : {name!r}")
        return v

    def display(self, v: VarId) -> str:
        """Nom affiché (alias s'il existe)."""
        return self._aliases.get(v.name, v.name)

    def owns(self, v: VarId) -> bool:
        return 0 <= v.index < len(self._variables) and self._variables[v.index] == v

    # ------------------------------------------------------------------
    # Jets et moments
    # ------------------------------------------------------------------

    def velocity_of(self, field: VarId) -> VarId:
        if not self._velocities:
            raise JetOrderError("Carte sans vitesses (ordre de jet 0)")
        return self._velocities[field.slot]

    def acceleration_of(self, field: VarId) -> VarId:
        if not self._accelerations:
            raise JetOrderError(
                f"Carte sans accélérations (ordre de jet {self._jet_order})"
            )
        return self._accelerations[field.slot]

    def momentum_of(self, field: VarId) -> VarId:
        return self._momenta[field.slot]

    def field_of(self, v: VarId) -> VarId:
        """Champ associé à une vitesse, accélération ou moment."""
        if v.kind == VarKind.MULTIPLIER:
            raise ValueError(f"{v.name} n'est associé à aucun champ")
        return self._fields[v.slot]
