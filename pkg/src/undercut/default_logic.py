"""Prioritized default logic over the same theories, used as an independent oracle.

A candidate extension is fixed by the set ``omega`` of rule-negation tokens it
contains, because the construction below only consults the candidate through
those tokens.  ``gamma(omega)`` grows the least set satisfying the four
closure conditions: premises, deductive closure, defeat of a rule by a set of
applicable rules whose consequents contradict it, and application of rules not
blocked in the candidate.  Deductive closure is kept intensionally as the
conjunction (a truth-table mask) of a finite base of formulas.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import NonNormalDefault, SizeCapExceeded
from .logic import Formula, conj, negate, render
from .semantics import Analysis
from .theory import DefeasibleTheory, Rule, RuleNegation


@dataclass(frozen=True)
class GammaState:
    """Result of one gamma evaluation: base formulas plus rule-negation tokens."""

    base: tuple
    tokens: frozenset
    mask: int

    def contains(self, table, phi) -> bool:
        if isinstance(phi, RuleNegation):
            return phi.target in self.tokens
        return self.mask & ~table.mask(phi) == 0


def gamma(
    omega: Iterable[str],
    theory: DefeasibleTheory,
    require_undefeated_delta: bool = True,
) -> GammaState:
    """Least set closed under the four conditions for the candidate with tokens ``omega``.

    ``require_undefeated_delta`` restricts defeating sets to rules not blocked
    in the candidate.  Without it the construction lets a blocked rule still
    take part in defeating another one, which yields spurious extensions.
    """
    omega = frozenset(omega)
    table = theory.table
    base = list(theory.premises)
    mask = table.conjunction(base)
    sigma_mask = mask
    tokens: set = set()
    applied: set = set()

    def holds(f: Formula) -> bool:
        return mask & ~table.mask(f) == 0

    formula_rules = [r for r in theory.rules if not r.is_undercutter]
    changed = True
    while changed:
        changed = False
        for r in theory.rules:
            if r.name in applied or r.name in omega or not holds(r.antecedent):
                continue
            applied.add(r.name)
            changed = True
            if r.is_undercutter:
                tokens.add(r.consequent.target)
            else:
                base.append(r.consequent)
                mask &= table.mask(r.consequent)
        active = [
            d for d in formula_rules
            if holds(d.antecedent) and holds(d.consequent)
            and not (require_undefeated_delta and d.name in omega)
        ]
        for r in formula_rules:
            if r.name in tokens or not holds(r.antecedent):
                continue
            delta = [d for d in active if not theory.prefers(r.name, d.name)]
            m = sigma_mask
            for d in delta:
                m &= table.mask(d.consequent)
            if m & table.mask(r.consequent) == 0:
                tokens.add(r.name)
                changed = True
    return GammaState(tuple(dict.fromkeys(base)), frozenset(tokens), mask)


def default_extensions(theory: DefeasibleTheory, require_undefeated_delta: bool = True) -> list:
    """Candidates ``omega`` over all subsets of rules that reproduce themselves."""
    names = theory.rule_names
    out = []
    for bits in itertools.product((False, True), repeat=len(names)):
        omega = frozenset(n for n, b in zip(names, bits) if b)
        state = gamma(omega, theory, require_undefeated_delta)
        if state.tokens == omega:
            out.append((omega, state))
    return sorted(out, key=lambda p: (len(p[0]), sorted(p[0])))


@dataclass(frozen=True)
class EquivalenceReport:
    equal: bool
    argument_extensions: tuple
    default_extensions: tuple
    counterexample: Optional[str] = None

    def to_json(self) -> dict:
        out = {
            "result": "EQUAL" if self.equal else "DIFFERENT",
            "argument_extensions": [sorted(o) for o in self.argument_extensions],
            "default_extensions": [sorted(o) for o in self.default_extensions],
        }
        if self.counterexample:
            out["counterexample"] = self.counterexample
        return out


def check_equivalence(theory: DefeasibleTheory, analysis: Optional[Analysis] = None) -> EquivalenceReport:
    """Compare the argument-system extensions with the default-logic ones.

    Two extensions agree when their defeated rules coincide and their
    formula parts have the same models, i.e. equal deductive closures.
    """
    analysis = analysis or Analysis(theory)
    ours = {e.omega: e.mask for e in analysis.fixed_points}
    theirs = {omega: st.mask for omega, st in default_extensions(theory)}
    a_keys = tuple(sorted(ours, key=lambda o: (len(o), sorted(o))))
    d_keys = tuple(sorted(theirs, key=lambda o: (len(o), sorted(o))))
    if set(ours) != set(theirs):
        diff = sorted(sorted(o) for o in set(ours) ^ set(theirs))
        return EquivalenceReport(False, a_keys, d_keys, f"defeated sets differ: {diff}")
    for omega, m in ours.items():
        if theirs[omega] != m:
            return EquivalenceReport(
                False, a_keys, d_keys, f"closures differ for defeated set {sorted(omega)}"
            )
    return EquivalenceReport(True, a_keys, d_keys)


# -- syntactic translations ----------------------------------------------------


@dataclass(frozen=True)
class NameLiteral:
    """The name token of a default, possibly negated."""

    name: str
    positive: bool = True

    def __str__(self):
        return self.name if self.positive else f"!{self.name}"


NORMAL = "normal"
SEMI_NORMAL = "semi-normal"
NON_NORMAL = "non-normal"


@dataclass(frozen=True)
class NamedDefault:
    name: str
    prerequisite: Formula
    justifications: tuple
    consequent: object
    kind: str

    def render(self) -> str:
        """Fraction notation: ``prerequisite : justifications / consequent``."""
        js = ", ".join(_render_part(j) for j in self.justifications)
        return f"{render(self.prerequisite)} : {js} / {_render_part(self.consequent)}"

    def __str__(self):
        return self.render()


def _render_part(x) -> str:
    return str(x) if isinstance(x, NameLiteral) else render(x)


def name_token(rule_name: str) -> str:
    return f"n_{rule_name}"


def _consequent_of(rule: Rule):
    if isinstance(rule.consequent, RuleNegation):
        return NameLiteral(name_token(rule.consequent.target), False)
    return rule.consequent


def base_defaults(theory: DefeasibleTheory) -> list:
    """Each rule ``a ~> b`` as the semi-normal default ``a : b, n / b``."""
    out = []
    for r in theory.rules:
        c = _consequent_of(r)
        out.append(NamedDefault(name_token(r.name), r.antecedent, (c, NameLiteral(name_token(r.name))), c, SEMI_NORMAL))
    return out


def to_default_rules(theory: DefeasibleTheory, max_subset: Optional[int] = None) -> list:
    """Every translation: the plain semi-normal layer, then the prioritized one.

    The prioritized layer has a non-normal default per rule plus, for every
    rule set whose consequents with the premises contradict a rule it does not
    lose to, a default concluding the negated name of that rule.
    """
    out = base_defaults(theory)
    for r in theory.rules:
        out.append(
            NamedDefault(name_token(r.name), r.antecedent, (NameLiteral(name_token(r.name)),), _consequent_of(r), NON_NORMAL)
        )
    formula_rules = [r for r in theory.rules if not r.is_undercutter]
    cap = theory.options.subset_cap if max_subset is None else max_subset
    if len(formula_rules) > cap:
        raise SizeCapExceeded(f"{len(formula_rules)} rules exceed the subset cap of {cap}")
    table = theory.table
    sigma = table.conjunction(theory.premises)
    count = 0
    for target in formula_rules:
        for k in range(1, len(formula_rules) + 1):
            for combo in itertools.combinations(formula_rules, k):
                if any(theory.prefers(target.name, d.name) for d in combo):
                    continue
                m = sigma
                for d in combo:
                    m &= table.mask(d.consequent)
                if m & table.mask(target.consequent):
                    continue
                neg = NameLiteral(name_token(target.name), False)
                out.append(
                    NamedDefault(
                        f"d{count}",
                        conj(*[d.antecedent for d in combo]),
                        tuple(NameLiteral(name_token(d.name)) for d in combo) + (neg,),
                        neg,
                        SEMI_NORMAL,
                    )
                )
                count += 1
    return out


def normal_default(name: str, prerequisite: Formula, consequent: Formula, extra: Iterable = ()) -> NamedDefault:
    extra = tuple(extra)
    kind = SEMI_NORMAL if extra else NORMAL
    return NamedDefault(name, prerequisite, extra + (consequent,), consequent, kind)


def _rule_name(token: str) -> str:
    return token[2:] if token.startswith("n_") else token


def from_default_rules(defaults: Iterable[NamedDefault]) -> list:
    """``a : b1..bk, c / c`` becomes ``a ~> c`` plus ``!bi ~> not(a ~> c)``.

    Name-token justifications carry no content and are dropped; a consequent
    that negates a name token becomes a rule-negation consequent.
    """
    out = []
    for d in defaults:
        if d.kind == NON_NORMAL or d.consequent not in d.justifications:
            raise NonNormalDefault(f"default {d.name} is not normal or semi-normal")
        name = _rule_name(d.name)
        if isinstance(d.consequent, NameLiteral):
            if d.consequent.positive:
                raise NonNormalDefault(f"default {d.name} asserts a name token")
            consequent = RuleNegation(_rule_name(d.consequent.name))
        else:
            consequent = d.consequent
        out.append(Rule(name, d.prerequisite, consequent))
        others = [b for b in d.justifications if b != d.consequent and not isinstance(b, NameLiteral)]
        for i, b in enumerate(others, start=1):
            out.append(Rule(f"{name}_j{i}", negate(b), RuleNegation(name)))
    return out
