"""Truth-maintenance encoding of the defeat fixed point.

Each attacked rule ``r`` gets a node standing for ``not(r)``.  Every undercut
argument for ``not(r)`` becomes a justification with no in-nodes whose
out-nodes are the nodes of the rules it uses: the node is believed when all of
those rules are believed undefeated.  Labelings are found with the classic
counter scheme (each node counts its live justifications, each justification
counts its out-nodes not yet labeled OUT) plus backtracking on the nodes that
propagation leaves open.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

IN = "IN"
OUT = "OUT"
UNDETERMINED = "UNDETERMINED"

DEFEATED = "defeated"
UNDEFEATED = "undefeated"
UNDETERMINED_STATUS = "undetermined"


@dataclass(frozen=True)
class Justification:
    consequent: int
    out_nodes: tuple


class Contradiction(Exception):
    """A forced label clashes with one already chosen."""


class JtmsNetwork:
    """Nodes (by name, in a fixed order) and out-list justifications."""

    def __init__(self, names: Sequence[str], justifications: Iterable[tuple]):
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(self.names)}
        seen = set()
        justs = []
        for consequent, outs in justifications:
            c = consequent if isinstance(consequent, int) else self.index[consequent]
            o = tuple(sorted({x if isinstance(x, int) else self.index[x] for x in outs}))
            if (c, o) not in seen:
                seen.add((c, o))
                justs.append(Justification(c, o))
        self.justifications = tuple(justs)
        self.supports = [[] for _ in self.names]
        self.watchers = [[] for _ in self.names]
        for j, just in enumerate(self.justifications):
            self.supports[just.consequent].append(j)
            for o in just.out_nodes:
                self.watchers[o].append(j)

    def __len__(self):
        return len(self.names)

    def dependencies(self) -> list:
        """``deps[u]`` holds every node occurring in an out-list of a justification of ``u``."""
        deps = [set() for _ in self.names]
        for just in self.justifications:
            deps[just.consequent].update(just.out_nodes)
        return [sorted(d) for d in deps]

    def to_dot(self, marked: Iterable[int] = ()) -> str:
        marked = set(marked)
        lines = ["digraph jtms {"]
        for i, n in enumerate(self.names):
            style = ", style=filled, fillcolor=orange" if i in marked else ""
            lines.append(f'  n{i} [label="not({n})"{style}];')
        for u, vs in enumerate(self.dependencies()):
            for v in vs:
                lines.append(f"  n{u} -> n{v} [arrowhead=odot];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def compile_network(theory, store) -> JtmsNetwork:
    """One node per rule with an undercut, one justification per undercut."""
    targets = [n for n in theory.rule_names if store.undercuts.get(n)]
    names = sorted(targets)
    nodes = set(names)
    justs = []
    for t in names:
        for u in store.undercuts[t]:
            justs.append((t, [r for r in sorted(u.rules) if r in nodes]))
    return JtmsNetwork(names, justs)


class LabelState:
    """Labels and the two counter arrays, copied on every branch."""

    __slots__ = ("net", "labels", "node_count", "just_count", "removed")

    def __init__(self, net: JtmsNetwork, _copy: Optional["LabelState"] = None):
        self.net = net
        if _copy is not None:
            self.labels = list(_copy.labels)
            self.node_count = list(_copy.node_count)
            self.just_count = list(_copy.just_count)
            self.removed = list(_copy.removed)
            return
        self.labels: list = [None] * len(net.names)
        self.node_count = [len(s) for s in net.supports]
        self.just_count = [len(j.out_nodes) for j in net.justifications]
        self.removed = [False] * len(net.justifications)

    def copy(self) -> "LabelState":
        return LabelState(self.net, self)

    def initial_lists(self):
        """Nodes decided before any choice: unsupported nodes OUT, unconditional ones IN."""
        ins, outs = deque(), deque()
        for i, c in enumerate(self.node_count):
            if c == 0:
                self.set(i, OUT, ins, outs)
        for j, c in enumerate(self.just_count):
            if c == 0:
                self.set(self.net.justifications[j].consequent, IN, ins, outs)
        return ins, outs

    def set(self, node: int, label: str, ins: deque, outs: deque) -> None:
        current = self.labels[node]
        if current == label:
            return
        if current is not None:
            raise Contradiction(node)
        self.labels[node] = label
        if label == IN:
            ins.append(node)
        elif label == OUT:
            outs.append(node)

    def propagate(self, ins: deque, outs: deque) -> None:
        """Run the counter updates until both lists are empty.

        An IN node removes every live justification that lists it as an
        out-node; a node left without justifications goes OUT.  An OUT node
        decrements the counters of the justifications listing it; a
        justification reaching zero makes its consequent IN.
        """
        net = self.net
        justs = net.justifications
        labels = self.labels
        while ins or outs:
            while ins:
                n = ins.popleft()
                for j in net.watchers[n]:
                    if self.removed[j]:
                        continue
                    self.removed[j] = True
                    c = justs[j].consequent
                    self.node_count[c] -= 1
                    if self.node_count[c] == 0:
                        if labels[c] is None:
                            labels[c] = OUT
                            outs.append(c)
                        elif labels[c] == IN:
                            raise Contradiction(c)
            while outs:
                n = outs.popleft()
                for j in net.watchers[n]:
                    if self.removed[j]:
                        continue
                    self.just_count[j] -= 1
                    if self.just_count[j] == 0:
                        c = justs[j].consequent
                        if labels[c] is None:
                            labels[c] = IN
                            ins.append(c)
                        elif labels[c] == OUT:
                            raise Contradiction(c)


def propagate(net: JtmsNetwork, in_list: Iterable = (), out_list: Iterable = ()) -> list:
    """Initialise the counters, label the given nodes and propagate to quiescence.

    Returns the label list (``None`` for nodes left unlabeled).
    """
    state = LabelState(net)
    ins, outs = state.initial_lists()
    for n in in_list:
        state.set(net.index.get(n, n), IN, ins, outs)
    for n in out_list:
        state.set(net.index.get(n, n), OUT, ins, outs)
    state.propagate(ins, outs)
    return state.labels


def is_admissible(net: JtmsNetwork, labels: Sequence) -> bool:
    """IN needs a justification whose out-nodes are all OUT; OUT needs every
    justification to list an IN node; UNDETERMINED is unconstrained."""
    for i, lab in enumerate(labels):
        if lab is None:
            return False
        if lab == UNDETERMINED:
            continue
        valid = [all(labels[o] == OUT for o in net.justifications[j].out_nodes) for j in net.supports[i]]
        blocked = [any(labels[o] == IN for o in net.justifications[j].out_nodes) for j in net.supports[i]]
        if lab == IN and not any(valid):
            return False
        if lab == OUT and not all(blocked):
            return False
    return True


def detect_odd_loops(net: JtmsNetwork) -> frozenset:
    """Nodes on an odd closed walk of the dependency graph, plus nodes whose
    every justification relies on one of them."""
    deps = net.dependencies()
    marked = set()
    for comp in _strong_components(deps):
        members = set(comp)
        internal = any(v in members for u in comp for v in deps[u])
        if not internal:
            continue
        if not _bipartite(comp, members, deps):
            marked |= members
    changed = True
    while changed:
        changed = False
        for i in range(len(net)):
            if i in marked or not net.supports[i]:
                continue
            if all(any(o in marked for o in net.justifications[j].out_nodes) for j in net.supports[i]):
                marked.add(i)
                changed = True
    return frozenset(marked)


def _bipartite(comp, members, deps) -> bool:
    colour = {comp[0]: 0}
    queue = deque([comp[0]])
    undirected = {u: set() for u in comp}
    for u in comp:
        for v in deps[u]:
            if v in members:
                undirected[u].add(v)
                undirected[v].add(u)
    while queue:
        u = queue.popleft()
        for v in undirected[u]:
            if v not in colour:
                colour[v] = 1 - colour[u]
                queue.append(v)
            elif colour[v] == colour[u]:
                return False
    return True


def _strong_components(deps) -> list:
    """Iterative Tarjan; components listed with sorted members."""
    index, low, on_stack = {}, {}, set()
    stack, out = [], []
    counter = 0
    for root in range(len(deps)):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            for k in range(i, len(deps[v])):
                w = deps[v][k]
                if w not in index:
                    work.append((v, k + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


def _search(net: JtmsNetwork, choices, marked=frozenset()) -> list:
    results = []
    state = LabelState(net)
    try:
        ins, outs = state.initial_lists()
        state.propagate(ins, outs)
    except Contradiction:
        return results

    def rec(st: LabelState):
        node = _branch_node(net, st.labels)
        if node is None:
            if is_admissible(net, st.labels):
                results.append(tuple(st.labels))
            return
        order = choices
        if node in marked and UNDETERMINED in choices:
            order = (UNDETERMINED,) + tuple(c for c in choices if c != UNDETERMINED)
        for label in order:
            child = st.copy()
            ins, outs = deque(), deque()
            try:
                child.set(node, label, ins, outs)
                child.propagate(ins, outs)
            except Contradiction:
                continue
            rec(child)

    rec(state)
    return results


def _branch_node(net: JtmsNetwork, labels: Sequence) -> Optional[int]:
    """Lowest unlabeled node of the first strong component, among unlabeled
    nodes, that depends on no other unlabeled component.

    Everything such a component waits on is settled, so a bad guess inside it
    is refuted by propagation before the search moves upstream.
    """
    open_nodes = [i for i, lab in enumerate(labels) if lab is None]
    if not open_nodes:
        return None
    residual = [[] for _ in labels]
    for u in open_nodes:
        waits = set()
        for j in net.supports[u]:
            outs = net.justifications[j].out_nodes
            if all(labels[o] != IN for o in outs):
                waits.update(o for o in outs if labels[o] is None)
        residual[u] = sorted(waits)
    for comp in _strong_components(residual):
        if labels[comp[0]] is None:
            return comp[0]
    return None


def enumerate_labelings(net: JtmsNetwork) -> list:
    """Every admissible two-valued labeling, IN branch before OUT."""
    return list(dict.fromkeys(_search(net, (IN, OUT))))


def enumerate_partial_labelings(net: JtmsNetwork) -> list:
    """Admissible labelings whose determined part is inclusion-maximal.

    When a two-valued labeling exists only those are returned.  Otherwise the
    search also branches on UNDETERMINED (tried first on odd-loop nodes) and
    keeps the labelings with a maximal set of decided nodes, so a marked node
    ends up IN or OUT exactly when the rest of the labeling forces it.
    """
    complete = enumerate_labelings(net)
    if complete:
        return complete
    found = list(dict.fromkeys(_search(net, (IN, OUT, UNDETERMINED), detect_odd_loops(net))))
    return _maximal(found)


def _maximal(labelings: list) -> list:
    decided = [frozenset(i for i, l in enumerate(lab) if l != UNDETERMINED) for lab in labelings]
    return [lab for lab, d in zip(labelings, decided) if not any(d < e for e in decided)]


def brute_force_labelings(net: JtmsNetwork, partial: bool = False) -> list:
    """Reference enumeration over every candidate labeling."""
    import itertools

    values = (IN, OUT, UNDETERMINED) if partial else (IN, OUT)
    found = [lab for lab in itertools.product(values, repeat=len(net)) if is_admissible(net, lab)]
    if not partial:
        return found
    complete = [lab for lab in found if UNDETERMINED not in lab]
    return complete or _maximal(found)


def labeling_to_assignment(labels: Sequence, net: JtmsNetwork, rule_names: Iterable[str]) -> dict:
    """Rule statuses: IN node means defeated, OUT or no node undefeated."""
    status = {}
    for r in rule_names:
        i = net.index.get(r)
        lab = None if i is None else labels[i]
        if lab == IN:
            status[r] = DEFEATED
        elif lab == UNDETERMINED:
            status[r] = UNDETERMINED_STATUS
        else:
            status[r] = UNDEFEATED
    return status


def chain_network(n: int) -> JtmsNetwork:
    """Loop-free chain: node 0 unconditional, node ``i`` blocked by node ``i-1``."""
    names = [f"c{i:07d}" for i in range(n)]
    justs = [(0, ())] + [(i, (i - 1,)) for i in range(1, n)]
    return JtmsNetwork(names, justs)
