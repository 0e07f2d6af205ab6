"""Defeasible theories: premises, named rules, a strict preference order, background knowledge."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Optional, Union

from .errors import (
    CyclicPreference,
    DanglingRuleName,
    DuplicateRuleName,
    InconsistentPremises,
)
from .logic import (
    DEFAULT_MAX_ATOMS,
    DEFAULT_SUBSET_CAP,
    Formula,
    TruthTable,
    atoms,
    render,
)

USER = "user"
HYPOTHESIS = "hypothesis"


@dataclass(frozen=True)
class RuleNegation:
    """The token ``not(r)``: rule ``r`` may no longer justify its consequent."""

    target: str

    def __str__(self):
        return f"not({self.target})"


Conclusion = Union[Formula, RuleNegation]


@dataclass(frozen=True)
class Rule:
    name: str
    antecedent: Formula
    consequent: Conclusion
    origin: str = USER

    @property
    def is_undercutter(self) -> bool:
        return isinstance(self.consequent, RuleNegation)

    def __str__(self):
        return f"{self.name}: {render(self.antecedent)} ~> {render_conclusion(self.consequent)}"


def render_conclusion(c: Conclusion) -> str:
    return str(c) if isinstance(c, RuleNegation) else render(c)


@dataclass(frozen=True)
class Options:
    max_atoms: int = DEFAULT_MAX_ATOMS
    subset_cap: int = DEFAULT_SUBSET_CAP
    arg_cap: int = 10_000
    specificity: bool = False
    cases: bool = False
    hyp_width: int = 2


def transitive_closure(pairs: Iterable[tuple]) -> frozenset:
    succ: dict = {}
    for a, b in pairs:
        succ.setdefault(a, set()).add(b)
    closure = set()
    for start in list(succ):
        stack = list(succ[start])
        seen = set()
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            closure.add((start, x))
            stack.extend(succ.get(x, ()))
    return frozenset(closure)


def check_strict_order(closure: frozenset, error=CyclicPreference) -> None:
    for a, b in closure:
        if a == b:
            raise error(f"preference cycle through rule {a!r}")


@dataclass(frozen=True)
class DefeasibleTheory:
    premises: tuple
    rules: tuple
    preferences: frozenset
    background: tuple = ()
    declared_preferences: tuple = ()
    options: Options = field(default_factory=Options)
    declared_atoms: tuple = ()

    @cached_property
    def rule_map(self) -> dict:
        return {r.name: r for r in self.rules}

    def rule(self, name: str) -> Rule:
        return self.rule_map[name]

    @cached_property
    def rule_names(self) -> tuple:
        return tuple(r.name for r in self.rules)

    def prefers(self, a: str, b: str) -> bool:
        return (a, b) in self.preferences

    def least_preferred(self, names: Iterable[str]) -> frozenset:
        """Rules of ``names`` that are not strictly preferred to any other member."""
        names = set(names)
        return frozenset(
            r for r in names if not any(self.prefers(r, o) for o in names if o != r)
        )

    @cached_property
    def atoms(self) -> frozenset:
        fs = list(self.premises) + list(self.background)
        for r in self.rules:
            fs.append(r.antecedent)
            if not r.is_undercutter:
                fs.append(r.consequent)
        return atoms(fs) | frozenset(self.declared_atoms)

    @cached_property
    def table(self) -> TruthTable:
        return TruthTable(self.atoms, self.options.max_atoms)

    def with_premises(self, premises: Iterable[Formula]) -> "DefeasibleTheory":
        """Same rules and order, new premise set (revalidated)."""
        return build_theory(
            premises,
            self.rules,
            self.declared_preferences,
            self.background,
            self.options,
            extra_closure=self.preferences,
            declared_atoms=self.declared_atoms,
        )

    def with_options(self, **changes) -> "DefeasibleTheory":
        return replace(self, options=replace(self.options, **changes))


def build_theory(
    premises: Iterable[Formula],
    rules: Iterable[Rule],
    declared_preferences: Iterable[tuple] = (),
    background: Iterable[Formula] = (),
    options: Optional[Options] = None,
    extra_closure: Iterable[tuple] = (),
    declared_atoms: Iterable[str] = (),
) -> DefeasibleTheory:
    """Validate and assemble a theory with the transitive closure of its preferences."""
    options = options or Options()
    premises = tuple(dict.fromkeys(premises))
    background = tuple(dict.fromkeys(background))
    rules = tuple(rules)
    names = set()
    for r in rules:
        if r.name in names:
            raise DuplicateRuleName(f"rule name {r.name!r} is used twice")
        names.add(r.name)
    for r in rules:
        if r.is_undercutter and r.consequent.target not in names:
            raise DanglingRuleName(
                f"rule {r.name!r} negates unknown rule {r.consequent.target!r}"
            )
    declared = tuple(dict.fromkeys(tuple(p) for p in declared_preferences))
    for a, b in declared:
        for n in (a, b):
            if n not in names:
                raise DanglingRuleName(f"preference mentions unknown rule {n!r}")
    closure = transitive_closure(list(declared) + list(extra_closure))
    check_strict_order(closure)
    theory = DefeasibleTheory(
        premises, rules, closure, background, declared, options, tuple(dict.fromkeys(declared_atoms))
    )
    if not theory.table.consistent(premises + background):
        raise InconsistentPremises("premises together with background knowledge are inconsistent")
    return theory
