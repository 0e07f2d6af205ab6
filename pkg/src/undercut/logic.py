"""Propositional formulas and truth-table reasoning.

Every formula is compiled to an integer bitmask over all valuations of a fixed
atom alphabet: bit ``v`` is set iff the formula is true under valuation ``v``
(atom ``i`` is true in ``v`` iff bit ``i`` of ``v`` is set).  Entailment,
consistency and minimal-inconsistency searches are then plain integer algebra.
A second, deliberately naive evaluator (:func:`evaluate`, :func:`entails_by_sweep`)
walks the formula tree once per valuation and exists as an independent check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union

from .errors import AtomLimitExceeded, SizeCapExceeded

DEFAULT_MAX_ATOMS = 24
DEFAULT_SUBSET_CAP = 16


def _sort_key(f: "Formula"):
    return f.sort_key


@dataclass(frozen=True)
class Atom:
    name: str

    @property
    def sort_key(self):
        return (0, self.name)

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Not:
    child: "Formula"

    @property
    def sort_key(self):
        return (1, self.child.sort_key)

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class And:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("And needs at least two children")
        object.__setattr__(self, "children", tuple(sorted(self.children, key=_sort_key)))

    @property
    def sort_key(self):
        return (2, tuple(c.sort_key for c in self.children))

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Or:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("Or needs at least two children")
        object.__setattr__(self, "children", tuple(sorted(self.children, key=_sort_key)))

    @property
    def sort_key(self):
        return (3, tuple(c.sort_key for c in self.children))

    def __str__(self):
        return render(self)


Formula = Union[Atom, Not, And, Or]


def conj(*parts: Formula) -> Formula:
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def disj(*parts: Formula) -> Formula:
    return parts[0] if len(parts) == 1 else Or(tuple(parts))


def implies(a: Formula, b: Formula) -> Formula:
    return Or((Not(a), b))


def negate(f: Formula) -> Formula:
    """Negation that strips a leading double negation."""
    return f.child if isinstance(f, Not) else Not(f)


def is_literal(f: Formula) -> bool:
    return isinstance(f, Atom) or (isinstance(f, Not) and isinstance(f.child, Atom))


def render(f: Formula) -> str:
    """Concrete syntax: ``!`` negation, ``&`` conjunction, ``|`` disjunction."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        inner = render(f.child)
        return f"!{inner}" if isinstance(f.child, (Atom, Not)) else f"!({inner})"
    sep = " & " if isinstance(f, And) else " | "
    parts = []
    for c in f.children:
        s = render(c)
        if isinstance(c, (And, Or)):
            s = f"({s})"
        parts.append(s)
    return sep.join(parts)


def atoms(f: Union[Formula, Iterable[Formula]]) -> frozenset:
    """Names of the atoms occurring in a formula or a collection of formulas."""
    if isinstance(f, (Atom, Not, And, Or)):
        stack = [f]
    else:
        stack = list(f)
    found = set()
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            found.add(g.name)
        elif isinstance(g, Not):
            stack.append(g.child)
        else:
            stack.extend(g.children)
    return frozenset(found)


class TruthTable:
    """Bitmask semantics over a fixed, sorted atom alphabet."""

    def __init__(self, alphabet: Iterable[str], max_atoms: int = DEFAULT_MAX_ATOMS):
        self.atoms = tuple(sorted(set(alphabet)))
        if len(self.atoms) > max_atoms:
            raise AtomLimitExceeded(
                f"{len(self.atoms)} atoms exceed the limit of {max_atoms}"
            )
        self.size = 1 << len(self.atoms)
        self.full = (1 << self.size) - 1
        self._index = {a: i for i, a in enumerate(self.atoms)}
        self._atom_masks = [self._atom_mask(i) for i in range(len(self.atoms))]
        self._cache: dict = {}

    def _atom_mask(self, i: int) -> int:
        block = 1 << i
        mask = ((1 << block) - 1) << block
        width = block << 1
        while width < self.size:
            mask |= mask << width
            width <<= 1
        return mask

    def mask(self, f: Formula) -> int:
        m = self._cache.get(f)
        if m is not None:
            return m
        if isinstance(f, Atom):
            try:
                m = self._atom_masks[self._index[f.name]]
            except KeyError:
                raise KeyError(f"atom {f.name!r} is not in the alphabet") from None
        elif isinstance(f, Not):
            m = self.full ^ self.mask(f.child)
        elif isinstance(f, And):
            m = self.full
            for c in f.children:
                m &= self.mask(c)
        else:
            m = 0
            for c in f.children:
                m |= self.mask(c)
        self._cache[f] = m
        return m

    def conjunction(self, fs: Iterable[Formula]) -> int:
        m = self.full
        for f in fs:
            m &= self.mask(f)
        return m

    def entails(self, premises: Iterable[Formula], goal: Formula) -> bool:
        return self.conjunction(premises) & ~self.mask(goal) == 0

    def consistent(self, fs: Iterable[Formula]) -> bool:
        return self.conjunction(fs) != 0


def _table_for(fs: Iterable[Formula], max_atoms: int) -> TruthTable:
    return TruthTable(atoms(fs), max_atoms)


def entails(premises: Iterable[Formula], goal: Formula, max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    premises = list(premises)
    return _table_for(premises + [goal], max_atoms).entails(premises, goal)


def is_consistent(fs: Iterable[Formula], max_atoms: int = DEFAULT_MAX_ATOMS) -> bool:
    fs = list(fs)
    return _table_for(fs, max_atoms).consistent(fs)


def evaluate(f: Formula, valuation: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        return valuation[f.name]
    if isinstance(f, Not):
        return not evaluate(f.child, valuation)
    if isinstance(f, And):
        return all(evaluate(c, valuation) for c in f.children)
    return any(evaluate(c, valuation) for c in f.children)


def valuations(alphabet: Iterable[str]):
    names = sorted(set(alphabet))
    for bits in itertools.product((False, True), repeat=len(names)):
        yield dict(zip(names, bits))


def entails_by_sweep(premises: Iterable[Formula], goal: Formula) -> bool:
    """Reference entailment: one recursive evaluation per valuation."""
    premises = list(premises)
    for v in valuations(atoms(premises + [goal])):
        if all(evaluate(p, v) for p in premises) and not evaluate(goal, v):
            return False
    return True


def minimal_covers(covers: Sequence[int], universe: int) -> list:
    """All inclusion-minimal index sets whose ``covers`` jointly contain ``universe``.

    Branches on the lowest uncovered item and prunes any partial set in which
    some member has lost every item it alone covers: such a member stays
    redundant in every superset, so no minimal cover extends the partial set.
    """
    covers = [c & universe for c in covers]
    found = set()

    def rec(chosen, covered):
        missing = universe & ~covered
        if not missing:
            found.add(tuple(sorted(chosen)))
            return
        low = missing & -missing
        for i, c in enumerate(covers):
            if not c & low or i in chosen:
                continue
            nxt = chosen + [i]
            if not _irredundant(nxt, covers):
                continue
            rec(nxt, covered | c)

    rec([], 0)
    return sorted(found, key=lambda t: (len(t), t))


def _irredundant(chosen, covers) -> bool:
    for j in chosen:
        others = 0
        for k in chosen:
            if k != j:
                others |= covers[k]
        if not covers[j] & ~others:
            return False
    return True


def minimal_inconsistent_subsets(
    fs: Iterable[Formula],
    max_atoms: int = DEFAULT_MAX_ATOMS,
    cap: int = DEFAULT_SUBSET_CAP,
) -> list:
    """Every subset-minimal inconsistent subset, smallest first."""
    items = list(dict.fromkeys(fs))
    if len(items) > cap:
        raise SizeCapExceeded(f"{len(items)} formulas exceed the subset cap of {cap}")
    table = _table_for(items, max_atoms)
    covers = [table.full & ~table.mask(f) for f in items]
    return [frozenset(items[i] for i in idx) for idx in minimal_covers(covers, table.full)]


def minimal_inconsistent_subsets_by_size(fs: Iterable[Formula]) -> list:
    """Brute-force reference: ascending subset sizes with superset pruning."""
    items = list(dict.fromkeys(fs))
    found: list = []
    for k in range(1, len(items) + 1):
        for combo in itertools.combinations(items, k):
            s = frozenset(combo)
            if any(m <= s for m in found):
                continue
            if not is_consistent(s):
                found.append(s)
    return found
