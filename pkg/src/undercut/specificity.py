"""Specificity: a rule beats another whose antecedent it can argue for from its own.

``r1`` is more specific than ``r2`` when, taking the antecedent of ``r1`` as the
only premise (plus background knowledge), some argument reaches the
antecedent of ``r2``.  The search uses every rule without any defeat
filtering.  :func:`poole_more_specific` is the semantic comparison of rule sets
read as material implications, kept as a test oracle.
"""

from __future__ import annotations

import itertools
from typing import Optional

from .arguments import ArgumentStore
from .errors import CyclicPreference, SpecificityPreferenceCycle
from .logic import Atom, Not, implies
from .theory import DefeasibleTheory, Rule, build_theory


class SpecificityChecker:
    """Caches one argument store per antecedent used as the sole premise."""

    def __init__(self, theory: DefeasibleTheory):
        self.theory = theory
        self._stores: dict = {}

    def store_for(self, premise) -> ArgumentStore:
        store = self._stores.get(premise)
        if store is None:
            store = ArgumentStore(self.theory, premises=[premise], background=self.theory.background)
            self._stores[premise] = store
        return store

    def witnesses(self, r1: Rule, r2: Rule) -> list:
        """Arguments for the antecedent of ``r2`` from the antecedent of ``r1``."""
        return self.store_for(r1.antecedent).arguments_for(r2.antecedent)

    def more_specific(self, r1: Rule, r2: Rule) -> bool:
        return bool(self.witnesses(r1, r2))

    def strictly_more_specific(self, r1: Rule, r2: Rule) -> bool:
        return self.more_specific(r1, r2) and not self.more_specific(r2, r1)


def more_specific(r1: Rule, r2: Rule, theory: DefeasibleTheory) -> bool:
    return SpecificityChecker(theory).more_specific(r1, r2)


def specificity_preferences(theory: DefeasibleTheory) -> frozenset:
    """All pairs of distinct rules ordered by strict specificity."""
    checker = SpecificityChecker(theory)
    pairs = set()
    for r1, r2 in itertools.permutations(theory.rules, 2):
        if checker.strictly_more_specific(r1, r2):
            pairs.add((r1.name, r2.name))
    return frozenset(pairs)


def with_specificity(theory: DefeasibleTheory) -> DefeasibleTheory:
    """Merge the specificity pairs into the preference order."""
    pairs = specificity_preferences(theory)
    try:
        return build_theory(
            theory.premises,
            theory.rules,
            theory.declared_preferences,
            theory.background,
            theory.options,
            extra_closure=set(theory.preferences) | pairs,
            declared_atoms=theory.declared_atoms,
        )
    except SpecificityPreferenceCycle:
        raise
    except CyclicPreference as exc:
        raise SpecificityPreferenceCycle(
            f"specificity contradicts the declared preferences ({exc})"
        ) from None


def _literal_sets(atoms) -> list:
    """Every consistent set of literals over ``atoms`` (each atom absent, positive or negative)."""
    out = []
    for signs in itertools.product((None, True, False), repeat=len(atoms)):
        out.append(
            [Atom(a) if s else Not(Atom(a)) for a, s in zip(atoms, signs) if s is not None]
        )
    return out


def _d2_candidates(r1: Rule, r2: Rule, theory: DefeasibleTheory) -> list:
    witnesses = SpecificityChecker(theory).witnesses(r1, r2)
    candidates = [a.rules | {r2.name} for a in witnesses] or [frozenset([r2.name])]
    return list(dict.fromkeys(candidates))


def poole_counterexamples(r1: Rule, r2: Rule, theory: DefeasibleTheory, d2) -> list:
    """Literal sets F violating the comparison of ``{r1}`` against ``d2``.

    F is a violation when F with ``{r1}`` and the background entails the
    consequent of ``r1``, F with ``d2`` does not, and F with ``d2`` does not
    entail the consequent of ``r2`` either.  Rules count as material
    implications.
    """
    table = theory.table
    background = table.conjunction(theory.background)

    def implications(names) -> int:
        m = background
        for n in names:
            r = theory.rule(n)
            if not r.is_undercutter:
                m &= table.mask(implies(r.antecedent, r.consequent))
        return m

    psi, mu = table.mask(r1.consequent), table.mask(r2.consequent)
    m1 = implications([r1.name])
    m2 = implications(d2)
    out = []
    for facts in _literal_sets(table.atoms):
        f = table.conjunction(facts)
        if (f & m1) & ~psi == 0 and (f & m2) & ~psi != 0 and (f & m2) & ~mu != 0:
            out.append(facts)
    return out


def poole_more_specific(
    r1: Rule,
    r2: Rule,
    theory: DefeasibleTheory,
    d2: Optional[frozenset] = None,
) -> bool:
    """Semantic comparison of ``{r1}`` with ``d2`` over every consistent literal set.

    Without an explicit ``d2`` each witness argument's rules plus ``r2`` are
    tried (just ``{r2}`` when there is no witness); one success suffices.
    """
    if r1.is_undercutter or r2.is_undercutter:
        return False
    candidates = [frozenset(d2)] if d2 is not None else _d2_candidates(r1, r2, theory)
    return any(not poole_counterexamples(r1, r2, theory, names) for names in candidates)
