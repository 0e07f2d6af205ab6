"""Argument construction, conflicts and undercutting arguments.

Arguments are nested sets of steps: a premise step ``<{}, p>`` or a rule step
``<A', r>`` whose support ``A'`` is itself an argument for the antecedent of
``r``.  Only canonical arguments are built: every support is a subset-minimal
set of conclusions entailing the antecedent, and no rule occurs below itself.
For each rule the store keeps one representative per inclusion-minimal rule
set (its *footprint*); an argument whose footprint strictly contains another
one's for the same rule is valid in strictly fewer situations and is dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Union

from .errors import PremiseLevelConflict, SizeCapExceeded
from .logic import Formula, atoms, minimal_covers, render
from .theory import DefeasibleTheory, HYPOTHESIS, Rule, RuleNegation, render_conclusion


@dataclass(frozen=True)
class Premise:
    formula: Formula
    background: bool = False

    @property
    def conclusion(self):
        return self.formula

    @property
    def support(self) -> "Argument":
        return EMPTY


@dataclass(frozen=True)
class RuleApp:
    rule: Rule
    support: "Argument"

    @property
    def conclusion(self):
        return self.rule.consequent


Step = Union[Premise, RuleApp]


@dataclass(frozen=True)
class Argument:
    steps: frozenset

    @cached_property
    def last_rules(self) -> frozenset:
        return frozenset(s.rule.name for s in self.steps if isinstance(s, RuleApp))

    @cached_property
    def conclusions(self) -> frozenset:
        return frozenset(s.conclusion for s in self.steps)

    @cached_property
    def rules(self) -> frozenset:
        out = set()
        for s in self.steps:
            if isinstance(s, RuleApp):
                out.add(s.rule.name)
                out |= s.support.rules
        return frozenset(out)

    @cached_property
    def premises(self) -> frozenset:
        out = set()
        for s in self.steps:
            if isinstance(s, Premise):
                out.add(s.formula)
            else:
                out |= s.support.premises
        return frozenset(out)

    @cached_property
    def formula_conclusions(self) -> tuple:
        return tuple(c for c in self.conclusions if not isinstance(c, RuleNegation))

    def union(self, other: "Argument") -> "Argument":
        return Argument(self.steps | other.steps)

    def render(self) -> str:
        parts = sorted(_render_step(s) for s in self.steps)
        return "{" + ", ".join(parts) + "}"

    def __str__(self):
        return self.render()


EMPTY = Argument(frozenset())


def _render_step(s: Step) -> str:
    if isinstance(s, Premise):
        return f"<{{}}, {render(s.formula)}>"
    return f"<{s.support.render()}, {s.rule.name}>"


def supports(theory: DefeasibleTheory, a: Argument, goal: Formula) -> bool:
    """Whether the top-level conclusions of ``a`` entail ``goal``."""
    return theory.table.entails(a.formula_conclusions, goal)


def is_subargument(a: Argument, b: Argument) -> bool:
    """Every step of ``a`` is a sub-structure of ``b``."""
    return all(_is_substructure(s, b) for s in a.steps)


def _step_label(s: Step):
    return ("p", s.formula) if isinstance(s, Premise) else ("r", s.rule.name)


def _is_substructure(step: Step, b: Argument) -> bool:
    for t in b.steps:
        if _step_label(t) == _step_label(step) and is_subargument(step.support, t.support):
            return True
        if isinstance(t, RuleApp) and _is_substructure(step, t.support):
            return True
    return False


@dataclass(frozen=True)
class InconsistencyArgument:
    """A subset-minimal argument whose top-level conclusions are jointly inconsistent."""

    argument: Argument
    members: tuple

    @property
    def last_rules(self) -> frozenset:
        return self.argument.last_rules

    def disagreeing(self) -> tuple:
        return tuple(Argument(frozenset([s])) for s in sorted(self.argument.steps, key=_render_step))


@dataclass(frozen=True)
class Undercut:
    """An argument for ``not(target)``; ``kind`` is ``direct`` or ``conflict``."""

    target: str
    argument: Argument
    kind: str

    @property
    def rules(self) -> frozenset:
        return self.argument.rules

    @property
    def self_defeating(self) -> bool:
        return self.target in self.argument.rules


def _add_minimal(pool: list, cand, key) -> bool:
    """Insert ``cand`` into an antichain under ``key``-set inclusion."""
    k = key(cand)
    for old in pool:
        if key(old) <= k:
            return False
    pool[:] = [old for old in pool if not k < key(old)]
    pool.append(cand)
    return True


def _footprint(a: Argument) -> frozenset:
    return a.rules


def _minimal_by_footprint(cands) -> list:
    """Keep one argument per inclusion-minimal footprint, first come first kept."""
    by_fp: dict = {}
    for a in cands:
        by_fp.setdefault(a.rules, a)
    kept: list = []
    for fp in sorted(by_fp, key=len):
        if not any(k <= fp for k in kept):
            kept.append(fp)
    return [by_fp[fp] for fp in kept]


def _undercut_rules(u: "Undercut") -> frozenset:
    return u.rules


class ArgumentStore:
    """All canonical arguments of a theory, its conflicts and its undercuts."""

    def __init__(
        self,
        theory: DefeasibleTheory,
        premises: Optional[Iterable[Formula]] = None,
        background: Iterable[Formula] = (),
    ):
        self.theory = theory
        self.table = theory.table
        self.premises = tuple(theory.premises if premises is None else dict.fromkeys(premises))
        background = tuple(f for f in dict.fromkeys(background) if f not in self.premises)
        self.premise_args = [Argument(frozenset([Premise(p)])) for p in self.premises]
        self.premise_args += [Argument(frozenset([Premise(k, True)])) for k in background]
        self.by_rule: dict = {r.name: [] for r in theory.rules}
        self._count = len(self.premise_args)
        self._saturate()

    # -- construction -----------------------------------------------------

    def _sources(self, exclude: Optional[str] = None) -> list:
        """Arguments with a single formula conclusion, optionally avoiding a rule."""
        out = list(self.premise_args)
        for r in self.theory.rules:
            if r.is_undercutter or r.name == exclude:
                continue
            out.extend(a for a in self.by_rule[r.name] if exclude not in a.rules)
        return out

    def _conclusion(self, a: Argument) -> Formula:
        (c,) = a.conclusions
        return c

    def supports_for(self, goal: Formula, sources: list, need_atoms: frozenset = frozenset()) -> list:
        """Minimal-footprint arguments for ``goal`` built from ``sources``.

        With ``need_atoms`` the combined conclusions must also mention every
        one of those atoms (the gate for hypothesis applications).
        """
        table = self.table
        bad = table.full & ~table.mask(goal)
        need = sorted(need_atoms)
        need_bits = {a: 1 << (table.size + i) for i, a in enumerate(need)}
        universe = bad
        for b in need_bits.values():
            universe |= b
        groups: dict = {}
        for a in sources:
            f = self._conclusion(a)
            m = table.mask(f)
            atom_bits = 0
            if need:
                for name in atoms(f):
                    atom_bits |= need_bits.get(name, 0)
            groups.setdefault((m, atom_bits), []).append(a)
        keys = list(groups)
        covers = [(table.full & ~m & bad) | ab for m, ab in keys]
        results: list = []
        for combo in minimal_covers(covers, universe):
            partial = [EMPTY]
            for idx in combo:
                partial = _minimal_by_footprint(
                    base.union(src) for base in partial for src in groups[keys[idx]]
                )
            results.extend(partial)
        return _minimal_by_footprint(results)

    def hypothesis_supports(self, goal: Formula, sources: list) -> list:
        """Single arguments whose conclusion entails ``goal`` using all of its atoms.

        A case split needs a disjunction that follows from one conclusion
        mentioning every atom of the disjunction; combining several arguments
        would let a known literal be weakened by an unrelated one.  The
        conclusion must come from a premise or an ordinary rule: a case is
        one side of its own disjunction, and splitting it again would only
        re-derive cases from one of their disjuncts.
        """
        need = atoms(goal)
        goal_mask = self.table.mask(goal)
        out = []
        for a in sources:
            (step,) = a.steps
            if isinstance(step, RuleApp) and step.rule.origin == HYPOTHESIS:
                continue
            c = self._conclusion(a)
            if need <= atoms(c) and self.table.mask(c) & ~goal_mask == 0:
                out.append(a)
        return _minimal_by_footprint(out)

    def _saturate(self) -> None:
        rules = sorted(self.theory.rules, key=lambda r: r.name)
        changed = True
        while changed:
            changed = False
            for r in rules:
                sources = self._sources(exclude=r.name)
                if r.origin == HYPOTHESIS:
                    found = self.hypothesis_supports(r.antecedent, sources)
                else:
                    found = self.supports_for(r.antecedent, sources)
                for sup in found:
                    cand = Argument(frozenset([RuleApp(r, sup)]))
                    if _add_minimal(self.by_rule[r.name], cand, _footprint):
                        changed = True
                        self._count += 1
                        if self._count > self.theory.options.arg_cap:
                            raise SizeCapExceeded(
                                f"more than {self.theory.options.arg_cap} arguments"
                            )

    # -- queries ------------------------------------------------------------

    @property
    def supported_rules(self) -> list:
        return [self.theory.rule(n) for n in self.theory.rule_names if self.by_rule[n]]

    def arguments(self) -> list:
        out = list(self.premise_args)
        for n in self.theory.rule_names:
            out.extend(self.by_rule[n])
        return out

    def arguments_for(self, goal: Formula) -> list:
        return self.supports_for(goal, self._sources())

    @cached_property
    def _conflict_space(self) -> tuple:
        """Candidate conclusions grouped by meaning, then by the step that yields them.

        Returns the group masks, per group a mapping from head (a premise or
        a rule name) to its arguments, and the minimal inconsistent group sets.
        """
        table = self.table
        groups: dict = {}
        for a in self._sources():
            (step,) = a.steps
            head = ("p", render(step.formula)) if isinstance(step, Premise) else ("r", step.rule.name)
            groups.setdefault(table.mask(self._conclusion(a)), {}).setdefault(head, []).append(a)
        keys = list(groups)
        combos = minimal_covers([table.full & ~m for m in keys], table.full)
        return keys, groups, combos

    def _head_choices(self):
        """Every minimal inconsistency, described by the head chosen in each group."""
        keys, groups, combos = self._conflict_space
        for combo in combos:
            options = [[(keys[i], h) for h in sorted(groups[keys[i]])] for i in combo]
            yield from itertools.product(*options)

    @cached_property
    def inconsistency_arguments(self) -> list:
        _, groups, _ = self._conflict_space
        out = []
        for heads in self._head_choices():
            for choice in itertools.product(*(groups[m][h] for m, h in heads)):
                steps = frozenset().union(*(c.steps for c in choice))
                out.append(InconsistencyArgument(Argument(steps), tuple(choice)))
                if len(out) > self.theory.options.arg_cap:
                    raise SizeCapExceeded(
                        f"more than {self.theory.options.arg_cap} inconsistency arguments"
                    )
        return out

    @cached_property
    def conflict_rule_sets(self) -> list:
        """Distinct last-rule sets of the minimal inconsistencies, in a stable order."""
        sets = {frozenset(h for kind, h in (x[1] for x in heads) if kind == "r") for heads in self._head_choices()}
        return sorted(sets, key=lambda s: (len(s), sorted(s)))

    def undercut_arguments(self, bottom: InconsistencyArgument) -> list:
        """Undercuts of each least-preferred last rule of a minimal inconsistency."""
        rule_steps = [s for s in bottom.argument.steps if isinstance(s, RuleApp)]
        if not rule_steps:
            raise PremiseLevelConflict("an inconsistency among premises alone cannot be resolved")
        weakest = self.theory.least_preferred(bottom.last_rules)
        out = []
        for s in sorted(rule_steps, key=_render_step):
            if s.rule.name in weakest:
                rest = bottom.argument.steps - {s}
                out.append(Undercut(s.rule.name, Argument(rest | s.support.steps), "conflict"))
        return out

    def direct_undercuts(self) -> list:
        out = []
        for r in self.theory.rules:
            if r.is_undercutter:
                out.extend(Undercut(r.consequent.target, a, "direct") for a in self.by_rule[r.name])
        return out

    @cached_property
    def undercuts(self) -> dict:
        """Target rule name to the inclusion-minimal undercuts (by rule set).

        Equivalent to applying :meth:`undercut_arguments` to every minimal
        inconsistency, but only rule footprints are combined, so alternative
        arguments with the same heads never multiply out.
        """
        store: dict = {}
        for u in self.direct_undercuts():
            _add_minimal(store.setdefault(u.target, []), u, _undercut_rules)
        _, groups, _ = self._conflict_space
        for heads in self._head_choices():
            last = {h for kind, h in (x[1] for x in heads) if kind == "r"}
            if not last:
                raise PremiseLevelConflict("an inconsistency among premises alone cannot be resolved")
            for r in sorted(self.theory.least_preferred(last)):
                partial = [EMPTY]
                for m, head in heads:
                    args = groups[m][head]
                    if head == ("r", r):
                        args = [next(iter(a.steps)).support for a in args]
                    partial = _minimal_by_footprint(base.union(a) for base in partial for a in args)
                for a in partial:
                    _add_minimal(store.setdefault(r, []), Undercut(r, a, "conflict"), _undercut_rules)
        return {k: store[k] for k in self.theory.rule_names if k in store}

    @cached_property
    def undercut_rule_sets(self) -> dict:
        return {k: [u.rules for u in v] for k, v in self.undercuts.items()}

    # -- validity -------------------------------------------------------------

    def valid_conclusions(self, omega: Iterable[str]) -> tuple:
        """Formulas concluded by premise or rule arguments disjoint from ``omega``."""
        omega = set(omega)
        out = list(self.premises)
        for r in self.theory.rules:
            if r.is_undercutter:
                continue
            if any(not (a.rules & omega) for a in self.by_rule[r.name]):
                out.append(r.consequent)
        return tuple(dict.fromkeys(out))

    def valid_negations(self, omega: Iterable[str]) -> frozenset:
        omega = set(omega)
        return frozenset(
            t for t, us in self.undercuts.items() if any(not (u.rules & omega) for u in us)
        )


def enumerate_supported_rules(theory: DefeasibleTheory) -> list:
    store = ArgumentStore(theory)
    return [(r, tuple(store.by_rule[r.name])) for r in store.supported_rules]


def minimal_inconsistency_arguments(theory: DefeasibleTheory) -> list:
    return ArgumentStore(theory).inconsistency_arguments


def conflict_rule_sets(store: ArgumentStore) -> list:
    return store.conflict_rule_sets


def to_dot(args: Iterable[Argument], title: str = "arguments") -> str:
    """Graphviz rendering: one node per step, edges from support steps to rule steps."""
    ids: dict = {}
    lines = [f'digraph "{title}" {{', "  rankdir=BT;"]

    def node(s: Step) -> str:
        if s in ids:
            return ids[s]
        ids[s] = f"n{len(ids)}"
        if isinstance(s, Premise):
            lines.append(f'  {ids[s]} [shape=box, label="{render(s.formula)}"];')
        else:
            label = f"{s.rule.name}: {render_conclusion(s.rule.consequent)}"
            lines.append(f'  {ids[s]} [shape=ellipse, label="{label}"];')
            for t in sorted(s.support.steps, key=_render_step):
                lines.append(f"  {node(t)} -> {ids[s]};")
        return ids[s]

    for a in args:
        for s in sorted(a.steps, key=_render_step):
            node(s)
    lines.append("}")
    return "\n".join(lines) + "\n"
