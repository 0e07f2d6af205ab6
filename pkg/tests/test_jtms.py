import random

import pytest

from undercut.jtms import (
    IN,
    OUT,
    UNDETERMINED,
    DEFEATED,
    UNDEFEATED,
    UNDETERMINED_STATUS,
    JtmsNetwork,
    LabelState,
    brute_force_labelings,
    chain_network,
    compile_network,
    detect_odd_loops,
    enumerate_labelings,
    enumerate_partial_labelings,
    is_admissible,
    labeling_to_assignment,
    propagate,
)
from undercut.arguments import ArgumentStore
from undercut.semantics import Analysis, brute_force_assignments

from generators import random_theory


def even_cycle():
    return JtmsNetwork(["n1", "n2"], [("n1", ["n2"]), ("n2", ["n1"])])


def random_network(rng, max_nodes=6):
    n = rng.randint(1, max_nodes)
    justs = []
    for c in range(n):
        for _ in range(rng.randint(0, 3)):
            justs.append((c, tuple(rng.sample(range(n), rng.randint(0, min(2, n))))))
    return JtmsNetwork([f"x{i}" for i in range(n)], justs)


class TestCompile:
    def test_prioritized(self, prioritized):
        net = compile_network(prioritized, ArgumentStore(prioritized))
        assert net.names == ("r_ad",)
        assert [j.out_nodes for j in net.justifications] == [()]

    def test_no_undercuts(self, collapse):
        t = collapse.with_premises([collapse.premises[0]])
        assert len(compile_network(t, ArgumentStore(t))) == 0

    def test_kernel_self_reference(self, kernel):
        net = compile_network(kernel, ArgumentStore(kernel))
        assert net.names == ("r1",)
        assert [j.out_nodes for j in net.justifications] == [(0,)]

    def test_duplicate_justifications_merge(self):
        net = JtmsNetwork(["a", "b"], [("a", ["b"]), ("a", ["b"]), ("b", [])])
        assert len(net.justifications) == 2


class TestPropagate:
    def test_unconditional_node_is_in(self):
        net = JtmsNetwork(["a", "b"], [("a", []), ("b", ["a"])])
        assert propagate(net) == [IN, OUT]

    def test_empty_network(self):
        assert propagate(JtmsNetwork([], [])) == []

    def test_even_cycle_needs_a_choice(self):
        assert propagate(even_cycle()) == [None, None]
        assert propagate(even_cycle(), in_list=["n1"]) == [IN, OUT]

    def test_counters_stay_non_negative(self):
        rng = random.Random(31)
        for _ in range(300):
            net = random_network(rng)
            state = LabelState(net)
            ins, outs = state.initial_lists()
            state.propagate(ins, outs)
            assert min(state.node_count, default=0) >= 0
            assert min(state.just_count, default=0) >= 0


class TestOddLoops:
    def test_kernel(self, kernel):
        net = compile_network(kernel, ArgumentStore(kernel))
        assert detect_odd_loops(net) == {0}

    def test_even_cycle(self):
        assert detect_odd_loops(even_cycle()) == frozenset()

    def test_chain(self):
        assert detect_odd_loops(chain_network(50)) == frozenset()

    def test_three_cycle_and_dependents(self):
        net = JtmsNetwork(
            ["a", "b", "c", "d", "e"],
            [("a", ["c"]), ("b", ["a"]), ("c", ["b"]), ("d", ["a"]), ("e", ["d"]), ("e", [])],
        )
        assert detect_odd_loops(net) == {0, 1, 2, 3}


class TestEnumeration:
    def test_two_chains(self, two_chains):
        assert len(Analysis(two_chains).labelings) == 2

    def test_even_cycle(self):
        assert sorted(enumerate_labelings(even_cycle())) == [(IN, OUT), (OUT, IN)]

    def test_empty_network(self):
        assert enumerate_labelings(JtmsNetwork([], [])) == [()]

    def test_odd_cycle_has_only_partial_labelings(self, kernel):
        net = compile_network(kernel, ArgumentStore(kernel))
        assert enumerate_labelings(net) == []
        assert enumerate_partial_labelings(net) == [(UNDETERMINED,)]

    def test_matches_brute_force(self):
        rng = random.Random(32)
        for _ in range(1500):
            net = random_network(rng)
            assert sorted(enumerate_labelings(net)) == sorted(brute_force_labelings(net))
            assert sorted(enumerate_partial_labelings(net)) == sorted(brute_force_labelings(net, True))

    def test_every_labeling_is_admissible(self):
        rng = random.Random(33)
        for _ in range(300):
            net = random_network(rng)
            for lab in enumerate_partial_labelings(net):
                assert is_admissible(net, lab)

    def test_deterministic_order(self):
        rng = random.Random(34)
        nets = [random_network(rng, 8) for _ in range(50)]
        first = [enumerate_partial_labelings(n) for n in nets]
        again = [enumerate_partial_labelings(n) for n in nets]
        assert first == again


class TestAssignments:
    def test_prioritized(self, prioritized):
        an = Analysis(prioritized)
        (lab,) = an.labelings
        assert labeling_to_assignment(lab, an.network, prioritized.rule_names) == {
            "r_ad": DEFEATED,
            "r_bnd": UNDEFEATED,
        }

    def test_empty_network(self, collapse):
        net = JtmsNetwork([], [])
        assert set(labeling_to_assignment((), net, collapse.rule_names).values()) == {UNDEFEATED}

    def test_kernel(self, kernel):
        an = Analysis(kernel)
        (lab,) = an.partial_labelings
        assert labeling_to_assignment(lab, an.network, kernel.rule_names) == {
            "r1": UNDETERMINED_STATUS,
            "r2": UNDEFEATED,
        }

    def test_one_to_one_with_status_assignments(self):
        rng = random.Random(35)
        for _ in range(200):
            t = random_theory(rng, undercut_rate=0.4, clash_rate=0.4, chain_rate=0.4)
            an = Analysis(t)
            labs = [labeling_to_assignment(l, an.network, t.rule_names) for l in an.labelings]
            got = sorted(sorted(a.items()) for a in labs)
            assert got == sorted(sorted(a.items()) for a in brute_force_assignments(t, an.undercuts))


def test_dot_marks_odd_loops(kernel):
    an = Analysis(kernel)
    text = an.network.to_dot(an.odd_loop_nodes)
    assert "fillcolor=orange" in text and "not(r1)" in text


def test_chain_network_propagates_fully():
    labels = propagate(chain_network(1001))
    assert labels[0] == IN and labels[-1] == IN and labels[1] == OUT
    assert None not in labels
