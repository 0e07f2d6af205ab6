import itertools
import random

import pytest

from undercut.errors import SpecificityPreferenceCycle
from undercut.specificity import (
    SpecificityChecker,
    _d2_candidates,
    more_specific,
    poole_counterexamples,
    poole_more_specific,
    specificity_preferences,
    with_specificity,
)
from undercut.theory import Rule, build_theory, transitive_closure

from conftest import F
from generators import random_theory


@pytest.fixture
def shortcut():
    """phi ~> psi, phi ~> eta, eta ~> !psi."""
    rules = [
        Rule("r1", F("phi"), F("psi")),
        Rule("r2", F("phi"), F("eta")),
        Rule("r3", F("eta"), F("!psi")),
    ]
    return build_theory([F("phi")], rules)


class TestMoreSpecific:
    def test_shortcut(self, shortcut):
        assert more_specific(shortcut.rule("r1"), shortcut.rule("r3"), shortcut)
        assert not more_specific(shortcut.rule("r3"), shortcut.rule("r1"), shortcut)

    def test_reflexive(self, shortcut):
        for r in shortcut.rules:
            assert more_specific(r, r, shortcut)

    def test_penguin(self, penguin):
        assert more_specific(penguin.rule("p1"), penguin.rule("b1"), penguin)
        assert not more_specific(penguin.rule("b1"), penguin.rule("p1"), penguin)

    def test_background_knowledge_is_used(self):
        rules = [Rule("b1", F("bird"), F("fly")), Rule("p1", F("penguin"), F("!fly"))]
        t = build_theory([F("penguin")], rules, background=[F("penguin -> bird")])
        assert more_specific(t.rule("p1"), t.rule("b1"), t)
        assert specificity_preferences(t) == {("p1", "b1")}


class TestPreferences:
    def test_shortcut(self, shortcut):
        # r2 also reaches eta from phi, so it beats r3 as well
        assert specificity_preferences(shortcut) == {("r1", "r3"), ("r2", "r3")}

    def test_penguin(self, penguin):
        assert specificity_preferences(penguin) == {("p1", "b1"), ("p2", "b1")}

    def test_unrelated(self):
        t = build_theory([F("x")], [Rule("s1", F("x"), F("y")), Rule("s2", F("z"), F("w"))])
        assert specificity_preferences(t) == frozenset()

    def test_merge_resolves_penguin(self, penguin):
        from undercut.semantics import Analysis

        an = Analysis(with_specificity(penguin))
        assert an.belief(F("!fly"))
        assert not Analysis(penguin).belief(F("!fly"))

    def test_merge_cycle_is_an_error(self, penguin):
        t = build_theory(penguin.premises, penguin.rules, [("b1", "p1")])
        with pytest.raises(SpecificityPreferenceCycle):
            with_specificity(t)

    def test_merged_order_is_strict(self):
        rng = random.Random(51)
        for _ in range(100):
            t = random_theory(rng, chain_rate=0.5, max_prefs=0)
            prefs = with_specificity(t).preferences
            assert all(a != b for a, b in prefs)
            assert transitive_closure(prefs) == prefs
            assert not any((b, a) in prefs for a, b in prefs)

    def test_premises_do_not_matter(self):
        rng = random.Random(52)
        for _ in range(60):
            t = random_theory(rng, chain_rate=0.5)
            other = random_theory(rng)
            try:
                moved = t.with_premises(other.premises)
            except Exception:
                continue
            assert specificity_preferences(moved) == specificity_preferences(t)


class TestPooleComparison:
    def test_shortcut(self, shortcut):
        assert poole_more_specific(shortcut.rule("r1"), shortcut.rule("r3"), shortcut)

    def test_identical_rules(self, shortcut):
        r = shortcut.rule("r1")
        assert poole_more_specific(r, r, shortcut)

    def test_unrelated(self):
        t = build_theory([F("x")], [Rule("s1", F("x"), F("y")), Rule("s2", F("z"), F("w"))])
        assert not poole_more_specific(t.rule("s1"), t.rule("s2"), t)

    def test_counterexamples_never_establish_the_antecedent(self):
        # read as material implications, rules contrapose; any fact set that
        # breaks the comparison does so without entailing the antecedent
        rng = random.Random(53)
        pairs = 0
        for _ in range(300):
            t = random_theory(rng, n_atoms=5, undercut_rate=0, chain_rate=0.4)
            checker = SpecificityChecker(t)
            for r1, r2 in itertools.product(t.rules, repeat=2):
                if not checker.more_specific(r1, r2):
                    continue
                pairs += 1
                for d2 in _d2_candidates(r1, r2, t):
                    for facts in poole_counterexamples(r1, r2, t, d2):
                        assert not t.table.entails(facts, r1.antecedent)
        assert pairs > 300

    def test_contraposition_breaks_the_comparison(self):
        rules = [Rule("s", F("a"), F("!a & !c")), Rule("w", F("a"), F("d | e"))]
        t = build_theory([F("!c")], rules)
        s, w = t.rule("s"), t.rule("w")
        assert more_specific(s, w, t)
        assert not poole_more_specific(s, w, t)
        assert [F("!c")] in poole_counterexamples(s, w, t, frozenset({"w"}))
