"""Reasoning by cases through hypothesis rules.

A derivable disjunction ``a | b`` of literals yields three hypotheses, one per
mutually exclusive case: ``a & !b``, ``a & b`` and ``!a & b``.  A hypothesis
may only be applied to a single argument whose conclusion entails the
disjunction and mentions every one of its atoms, which keeps out disjunctions
that merely weaken a known literal with an unrelated one.  Every ordinary rule
is preferred to every hypothesis, so a case is only considered when no rule
already settles the matter.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional

from .arguments import ArgumentStore
from .logic import And, Atom, Formula, Not, Or, atoms, conj, disj, negate, render
from .semantics import Analysis
from .theory import HYPOTHESIS, USER, DefeasibleTheory, Rule, build_theory


def candidate_disjunctions(alphabet: Iterable[str], width: int = 2) -> list:
    """Disjunctions of 2..``width`` distinct literals, one per set of disjuncts."""
    lits = []
    for a in sorted(alphabet):
        lits += [Atom(a), Not(Atom(a))]
    out = []
    for k in range(2, max(width, 2) + 1):
        for combo in itertools.combinations(lits, k):
            out.append(Or(combo))
    return out


def split_cases(phi: Or) -> list:
    """The three exclusive cases of a disjunction: first disjunct against the rest."""
    alpha = phi.children[0]
    beta = disj(*phi.children[1:])
    return [
        conj(alpha, negate(beta)),
        conj(alpha, beta),
        conj(negate(alpha), beta),
    ]


def hypothesis_rules(phi: Or) -> list:
    label = render(phi).replace(" ", "")
    return [
        Rule(f"hyp[{label}]#{i}", phi, case, HYPOTHESIS)
        for i, case in enumerate(split_cases(phi), start=1)
    ]


def _applicable(store: ArgumentStore, phi: Formula) -> bool:
    return bool(store.hypothesis_supports(phi, store._sources()))


def _with_hypotheses(theory: DefeasibleTheory, hyps: list) -> DefeasibleTheory:
    user = [r for r in theory.rules if r.origin == USER]
    prefs = set(theory.preferences)
    prefs |= {(d.name, h.name) for d in user for h in hyps}
    return build_theory(
        theory.premises,
        user + hyps,
        theory.declared_preferences,
        theory.background,
        theory.options,
        extra_closure=prefs,
        declared_atoms=theory.declared_atoms,
    )


def generate_hypotheses(theory: DefeasibleTheory) -> list:
    """Hypotheses for every candidate disjunction some argument can feed.

    Generation is repeated on the extended theory, so disjunctions that only
    become derivable inside a case also get their own cases.
    """
    user_theory = theory
    width = theory.options.hyp_width
    candidates = candidate_disjunctions(theory.atoms, width)
    chosen: dict = {}
    current = theory
    while True:
        store = ArgumentStore(current)
        fresh = [phi for phi in candidates if phi not in chosen and _applicable(store, phi)]
        if not fresh:
            break
        for phi in fresh:
            chosen[phi] = hypothesis_rules(phi)
        current = _with_hypotheses(user_theory, [h for hs in chosen.values() for h in hs])
    return [h for phi in candidates if phi in chosen for h in chosen[phi]]


def cases_theory(theory: DefeasibleTheory) -> DefeasibleTheory:
    """The theory extended with its hypotheses and the rule-over-hypothesis order."""
    return _with_hypotheses(theory, generate_hypotheses(theory))


def case_extensions(theory: DefeasibleTheory) -> Analysis:
    return Analysis(cases_theory(theory))


def case_beliefs(theory: DefeasibleTheory, extra_premises: Iterable[Formula] = ()) -> Analysis:
    base = theory.with_premises(list(theory.premises) + list(extra_premises))
    return case_extensions(base)


def exclusive_or(phi: Formula, psi: Formula) -> Formula:
    return And((Or((phi, psi)), Not(And((phi, psi)))))


def check_exclusive_or(
    theory: DefeasibleTheory,
    phi: Formula,
    psi: Formula,
    eta: Formula,
    analyses: Optional[dict] = None,
) -> bool:
    """If ``eta`` is believed in both exclusive cases it is believed under their exclusive or."""
    left = case_beliefs(theory, [conj(phi, negate(psi))])
    right = case_beliefs(theory, [conj(negate(phi), psi)])
    if not (left.belief(eta) and right.belief(eta)):
        return True
    both = case_beliefs(theory, [exclusive_or(phi, psi)])
    if analyses is not None:
        analyses.update(left=left, right=right, both=both)
    return both.belief(eta)
