import itertools
import random

import pytest

from undercut.jtms import DEFEATED, UNDEFEATED, UNDETERMINED_STATUS
from undercut.semantics import (
    SELF_DEFEAT_DETECTED,
    Analysis,
    belief_set,
    brute_force_assignments,
    brute_force_fixed_points,
    defeat_operator,
    fixed_points,
    partial_status_assignments,
)
from undercut.theory import Rule, RuleNegation, build_theory

from conftest import F
from generators import random_theory


def omegas(exts):
    return [set(e.omega) for e in exts]


class TestDefeatOperator:
    def test_prioritized_from_empty(self, prioritized):
        assert defeat_operator(set(), Analysis(prioritized).undercuts) == {"r_ad"}

    def test_empty_store(self):
        assert defeat_operator({"x", "y"}, {}) == frozenset()

    def test_two_chains_with_one_rule_removed(self, two_chains):
        assert defeat_operator({"r_ag"}, Analysis(two_chains).undercuts) == {"r_ag"}

    def test_antitone(self):
        rng = random.Random(21)
        for _ in range(120):
            t = random_theory(rng, clash_rate=0.5, chain_rate=0.4, undercut_rate=0.3)
            undercuts = Analysis(t).undercuts
            names = t.rule_names
            subsets = [frozenset(c) for k in range(len(names) + 1) for c in itertools.combinations(names, k)]
            for g1 in subsets:
                for g2 in subsets:
                    if g1 <= g2:
                        assert defeat_operator(g1, undercuts) >= defeat_operator(g2, undercuts)


class TestFixedPoints:
    def test_two_chains(self, two_chains):
        assert omegas(fixed_points(two_chains)) == [{"r_ag"}, {"r_bd"}]

    def test_prioritized(self, prioritized):
        assert omegas(fixed_points(prioritized)) == [{"r_ad"}]

    def test_self_defeat_has_none(self, kernel):
        assert fixed_points(kernel) == []

    def test_incomparable(self):
        rng = random.Random(22)
        multi = 0
        for _ in range(300):
            exts = fixed_points(random_theory(rng, clash_rate=0.5, chain_rate=0.4))
            multi += len(exts) > 1
            for a, b in itertools.permutations(exts, 2):
                assert not a.omega < b.omega
        assert multi > 5

    def test_matches_brute_force(self):
        rng = random.Random(23)
        for _ in range(200):
            t = random_theory(rng, max_rules=6, clash_rate=0.5, chain_rate=0.4, undercut_rate=0.3)
            an = Analysis(t)
            assert omegas(an.fixed_points) == [set(o) for o in brute_force_fixed_points(t, an.undercuts)]
            statuses = sorted(sorted(e.status.items()) for e in an.fixed_points)
            brute = sorted(sorted(a.items()) for a in brute_force_assignments(t, an.undercuts))
            assert statuses == brute


class TestPartialAssignments:
    def test_kernel(self, kernel):
        (a,) = partial_status_assignments(kernel)
        assert a == {"r1": UNDETERMINED_STATUS, "r2": UNDEFEATED}
        (e,) = Analysis(kernel).extensions
        assert e.omega == {"r1"} and not e.complete

    def test_complete_theories_keep_complete_assignments(self, two_chains):
        assert partial_status_assignments(two_chains) == [
            {"r_ag": DEFEATED, "r_bd": UNDEFEATED, "r_dg": UNDEFEATED, "r_gd": UNDEFEATED},
            {"r_ag": UNDEFEATED, "r_bd": DEFEATED, "r_dg": UNDEFEATED, "r_gd": UNDEFEATED},
        ]

    def test_matches_brute_force(self):
        rng = random.Random(24)
        partial = 0
        for _ in range(300):
            t = random_theory(rng, undercut_rate=0.4, chain_rate=0.4, clash_rate=0.3)
            an = Analysis(t)
            got = sorted(sorted(e.status.items()) for e in an.partial_assignments)
            brute = sorted(sorted(a.items()) for a in brute_force_assignments(t, an.undercuts, partial=True))
            assert got == brute
            partial += an.self_defeating
        assert partial > 10


class TestWarranted:
    def test_prioritized(self, prioritized):
        (e,) = Analysis(prioritized).extensions
        assert e.warranted(F("!delta"))
        assert not e.warranted(F("delta"))
        assert e.warranted(RuleNegation("r_ad"))
        assert not e.warranted(RuleNegation("r_bnd"))

    def test_premises_everywhere(self, two_chains):
        for e in Analysis(two_chains).extensions:
            assert e.warranted(F("alpha & beta"))

    def test_kernel_blocks_the_undetermined_rule(self, kernel):
        (e,) = Analysis(kernel).extensions
        assert not e.warranted(F("b"))
        assert e.warranted(F("a"))


class TestBeliefs:
    def test_unique_extension(self, prioritized):
        an = belief_set(prioritized)
        (e,) = an.extensions
        for phi in ["alpha", "beta", "!delta", "alpha & !delta", "delta"]:
            assert an.belief(F(phi)) == e.warranted(F(phi))

    def test_two_chains(self, two_chains):
        an = belief_set(two_chains)
        assert an.belief(F("alpha")) and an.belief(F("beta"))
        for phi in ["gamma", "delta", "!gamma", "!delta"]:
            assert not an.belief(F(phi))
        assert an.belief(F("!gamma | !delta"))

    def test_no_rules(self):
        an = belief_set(build_theory([F("a"), F("a -> b")], []))
        assert an.belief(F("b"))
        assert not an.belief(F("!b"))
        assert an.believed_literals() == ["a", "b"]

    def test_report(self, kernel, two_chains):
        assert Analysis(kernel).report()["status"] == SELF_DEFEAT_DETECTED
        assert Analysis(two_chains).report()["status"] == "OK"

    def test_strict_belief_needs_complete_extensions(self, kernel):
        from undercut.errors import NoExtension

        with pytest.raises(NoExtension):
            Analysis(kernel).belief(F("a"), allow_partial=False)
