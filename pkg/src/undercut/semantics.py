"""Defeat fixed points, status assignments, extensions and belief sets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Union

from .arguments import ArgumentStore
from .errors import NoExtension
from .jtms import (
    DEFEATED,
    IN,
    UNDEFEATED,
    UNDETERMINED_STATUS,
    JtmsNetwork,
    compile_network,
    detect_odd_loops,
    enumerate_labelings,
    enumerate_partial_labelings,
    labeling_to_assignment,
)
from .logic import Atom, Formula, Not, render
from .theory import DefeasibleTheory, RuleNegation

SELF_DEFEAT_DETECTED = "SELF-DEFEAT-DETECTED"


def defeat_operator(gamma: Iterable[str], undercuts: dict) -> frozenset:
    """Rules with at least one undercut sharing no rule with ``gamma``."""
    gamma = set(gamma)
    return frozenset(
        target
        for target, args in undercuts.items()
        if any(not (u.rules & gamma) for u in args)
    )


def status_conditions_hold(assignment: dict, undercuts: dict) -> bool:
    """Check the two status conditions on the decided rules of ``assignment``.

    A defeated rule needs an undercut whose rules are all undefeated; an
    undefeated rule needs every undercut to use some defeated rule.
    """
    for r, status in assignment.items():
        args = undercuts.get(r, ())
        if status == DEFEATED:
            if not any(all(assignment.get(x) == UNDEFEATED for x in u.rules) for u in args):
                return False
        elif status == UNDEFEATED:
            if not all(any(assignment.get(x) == DEFEATED for x in u.rules) for u in args):
                return False
    return True


def brute_force_fixed_points(theory: DefeasibleTheory, undercuts: dict) -> list:
    """Every Omega over all subsets of the rules with Omega equal to Defeat(Omega)."""
    names = theory.rule_names
    found = []
    for bits in itertools.product((False, True), repeat=len(names)):
        omega = frozenset(n for n, b in zip(names, bits) if b)
        if defeat_operator(omega, undercuts) == omega:
            found.append(omega)
    return sorted(found, key=_omega_key)


def brute_force_assignments(theory: DefeasibleTheory, undercuts: dict, partial: bool = False) -> list:
    """Status assignments by exhaustive search over every rule labeling.

    With ``partial`` the undetermined status is allowed and the assignments
    with an inclusion-maximal decided part are kept (complete ones win).
    """
    names = theory.rule_names
    values = (DEFEATED, UNDEFEATED, UNDETERMINED_STATUS) if partial else (DEFEATED, UNDEFEATED)
    found = []
    for combo in itertools.product(values, repeat=len(names)):
        a = dict(zip(names, combo))
        decided = {r: s for r, s in a.items() if s != UNDETERMINED_STATUS}
        if status_conditions_hold(decided, undercuts):
            found.append(a)
    if not partial:
        return found
    complete = [a for a in found if UNDETERMINED_STATUS not in a.values()]
    if complete:
        return complete
    sets = [frozenset(r for r, s in a.items() if s != UNDETERMINED_STATUS) for a in found]
    return [a for a, s in zip(found, sets) if not any(s < t for t in sets)]


def _omega_key(omega) -> tuple:
    return (len(omega), sorted(omega))


@dataclass(frozen=True)
class Extension:
    """An extension given intensionally by its set of non-undefeated rules."""

    omega: frozenset
    assignment: tuple
    complete: bool
    store: ArgumentStore = field(compare=False, repr=False, hash=False)

    @cached_property
    def conclusions(self) -> tuple:
        return self.store.valid_conclusions(self.omega)

    @cached_property
    def mask(self) -> int:
        return self.store.table.conjunction(self.conclusions)

    @cached_property
    def defeated_tokens(self) -> frozenset:
        return self.store.valid_negations(self.omega)

    def warranted(self, phi: Union[Formula, RuleNegation]) -> bool:
        if isinstance(phi, RuleNegation):
            return phi.target in self.defeated_tokens
        return self.mask & ~self.store.table.mask(phi) == 0

    @property
    def status(self) -> dict:
        return dict(self.assignment)

    def literals(self) -> list:
        """Warranted literals over the theory atoms, rendered."""
        out = []
        for a in self.store.table.atoms:
            for lit in (Atom(a), Not(Atom(a))):
                if self.warranted(lit):
                    out.append(render(lit))
        return out

    def report(self) -> dict:
        return {
            "omega": sorted(self.omega),
            "complete": self.complete,
            "assignment": dict(sorted(self.assignment)),
            "warranted_literals": self.literals(),
            "warranted_negations": [str(RuleNegation(t)) for t in sorted(self.defeated_tokens)],
            "consistent": self.mask != 0,
        }


class Analysis:
    """The full pipeline for one theory: arguments, network, labelings, extensions."""

    def __init__(self, theory: DefeasibleTheory, store: Optional[ArgumentStore] = None):
        self.theory = theory
        self.store = store or ArgumentStore(theory)
        self.undercuts = self.store.undercuts

    @cached_property
    def network(self) -> JtmsNetwork:
        return compile_network(self.theory, self.store)

    @cached_property
    def odd_loop_nodes(self) -> frozenset:
        return detect_odd_loops(self.network)

    @property
    def odd_loop_rules(self) -> list:
        return sorted(self.network.names[i] for i in self.odd_loop_nodes)

    @cached_property
    def labelings(self) -> list:
        return enumerate_labelings(self.network)

    @cached_property
    def partial_labelings(self) -> list:
        return enumerate_partial_labelings(self.network)

    def _extension(self, labels, complete: bool) -> Extension:
        status = labeling_to_assignment(labels, self.network, self.theory.rule_names)
        omega = frozenset(r for r, s in status.items() if s != UNDEFEATED)
        return Extension(omega, tuple(sorted(status.items())), complete, self.store)

    @cached_property
    def fixed_points(self) -> list:
        out = []
        for labels in self.labelings:
            ext = self._extension(labels, True)
            if defeat_operator(ext.omega, self.undercuts) != ext.omega:
                raise AssertionError(f"labeling does not give a fixed point: {sorted(ext.omega)}")
            out.append(ext)
        return sorted(out, key=lambda e: _omega_key(e.omega))

    @cached_property
    def partial_assignments(self) -> list:
        out = [self._extension(labels, False) for labels in self.partial_labelings]
        out = [Extension(e.omega, e.assignment, UNDETERMINED_STATUS not in e.status.values(), e.store) for e in out]
        return sorted(out, key=lambda e: _omega_key(e.omega))

    @property
    def self_defeating(self) -> bool:
        return not self.fixed_points

    @property
    def extensions(self) -> list:
        """Complete extensions, or the partial ones when no complete one exists."""
        return self.fixed_points or self.partial_assignments

    def belief(self, phi, allow_partial: bool = True) -> bool:
        exts = self.fixed_points if not allow_partial else self.extensions
        if not exts:
            raise NoExtension("the theory has no extension")
        return all(e.warranted(phi) for e in exts)

    @cached_property
    def belief_mask(self) -> int:
        """Models of the belief set: the union of the extensions' models."""
        m = 0
        for e in self.extensions:
            m |= e.mask
        return m

    def believed_literals(self) -> list:
        return [
            lit for lit in (self.extensions[0].literals() if self.extensions else [])
            if all(lit in e.literals() for e in self.extensions)
        ]

    def believed_negations(self) -> list:
        sets = [e.defeated_tokens for e in self.extensions]
        common = frozenset.intersection(*sets) if sets else frozenset()
        return [str(RuleNegation(t)) for t in sorted(common)]

    def report(self) -> dict:
        return {
            "status": SELF_DEFEAT_DETECTED if self.self_defeating else "OK",
            "extensions": [e.report() for e in self.extensions],
            "odd_loops": self.odd_loop_rules,
        }


def fixed_points(theory: DefeasibleTheory) -> list:
    return Analysis(theory).fixed_points


def partial_status_assignments(theory: DefeasibleTheory) -> list:
    return [e.status for e in Analysis(theory).partial_assignments]


def belief_set(theory: DefeasibleTheory) -> Analysis:
    """Query interface: ``belief_set(t).belief(phi)``."""
    return Analysis(theory)
