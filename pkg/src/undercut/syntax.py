"""Theory files: a small statement language and its printer.

    atoms a, b, c.                 # optional; when present every atom must be declared
    premise a & (b | !c).
    rule r1: a ~> b.
    rule r2: b -> c ~> not(r1).    # '->' is sugar for '!x | y'
    prefer r2 > r1.
    background !(b & c).

Statements end with ``.``; ``#`` starts a comment running to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import DanglingRuleName, TheorySyntaxError
from .logic import And, Atom, Formula, Not, Or, atoms, render
from .theory import USER, DefeasibleTheory, Options, Rule, RuleNegation, build_theory

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>~>|->|[!&|(),.:>])
    """,
    re.VERBOSE,
)

KEYWORDS = {"atoms", "premise", "rule", "prefer", "background"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    out = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise TheorySyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind in ("ident", "op"):
                out.append(Token(kind, value, line, col))
            col += len(value)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise TheorySyntaxError(message, tok.line, tok.column)

    def next(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            self.fail(f"expected {text!r} but found {found!r}")
        return self.next()

    def ident(self, what: str) -> Token:
        if self.tok.kind != "ident":
            found = self.tok.text or "end of input"
            self.fail(f"expected {what} but found {found!r}")
        return self.next()

    # formula := disjunction ('->' formula)?
    def formula(self) -> Formula:
        left = self.disjunction()
        if self.tok.text == "->":
            self.next()
            right = self.formula()
            return Or((Not(left), right))
        return left

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.tok.text == "|":
            self.next()
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.tok.text == "&":
            self.next()
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Formula:
        t = self.tok
        if t.text == "!":
            self.next()
            return Not(self.unary())
        if t.text == "(":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if t.kind == "ident":
            self.next()
            return Atom(t.text)
        self.fail(f"expected a formula but found {t.text or 'end of input'!r}")


@dataclass
class ParsedTheory:
    """Raw statements, before validation."""

    declared_atoms: Optional[tuple]
    premises: list
    rules: list
    preferences: list
    background: list
    positions: dict


def parse_statements(text: str) -> ParsedTheory:
    p = _Parser(text)
    declared = None
    premises, rules, prefs, background = [], [], [], []
    positions: dict = {}
    while p.tok.kind != "eof":
        kw = p.tok
        if kw.kind != "ident" or kw.text not in KEYWORDS:
            p.fail(f"expected a statement keyword but found {kw.text!r}")
        p.next()
        if kw.text == "atoms":
            names = [p.ident("an atom name").text]
            while p.tok.text == ",":
                p.next()
                names.append(p.ident("an atom name").text)
            declared = tuple(declared or ()) + tuple(names)
        elif kw.text == "premise":
            start = p.tok
            premises.append((p.formula(), start))
        elif kw.text == "background":
            start = p.tok
            background.append((p.formula(), start))
        elif kw.text == "rule":
            name = p.ident("a rule name")
            p.expect(":")
            start = p.tok
            ante = p.formula()
            p.expect("~>")
            if p.tok.text == "not" and p.tokens[p.i + 1].text == "(":
                p.next()
                p.next()
                target = p.ident("a rule name")
                p.expect(")")
                cons = RuleNegation(target.text)
                positions[("target", name.text)] = target
            else:
                cons = p.formula()
            if name.text in positions:
                p.fail(f"rule name {name.text!r} is used twice", name)
            positions[name.text] = name
            rules.append((Rule(name.text, ante, cons, USER), start))
        else:
            a = p.ident("a rule name")
            p.expect(">")
            b = p.ident("a rule name")
            prefs.append(((a.text, b.text), a))
        p.expect(".")
    return ParsedTheory(declared, premises, rules, prefs, background, positions)


def parse_theory(text: str, options: Optional[Options] = None) -> DefeasibleTheory:
    """Parse and validate a theory file."""
    parsed = parse_statements(text)
    names = {r.name for r, _ in parsed.rules}
    for r, _ in parsed.rules:
        if isinstance(r.consequent, RuleNegation) and r.consequent.target not in names:
            tok = parsed.positions[("target", r.name)]
            raise DanglingRuleName(
                f"rule {r.name!r} negates unknown rule {r.consequent.target!r} "
                f"at line {tok.line}, column {tok.column}"
            )
    if parsed.declared_atoms is not None:
        allowed = set(parsed.declared_atoms)
        items = [(f, t) for f, t in parsed.premises + parsed.background]
        for r, t in parsed.rules:
            items.append((r.antecedent, t))
            if not isinstance(r.consequent, RuleNegation):
                items.append((r.consequent, t))
        for f, t in items:
            extra = atoms(f) - allowed
            if extra:
                raise TheorySyntaxError(f"undeclared atom {sorted(extra)[0]!r}", t.line, t.column)
    return build_theory(
        [f for f, _ in parsed.premises],
        [r for r, _ in parsed.rules],
        [pair for pair, _ in parsed.preferences],
        [f for f, _ in parsed.background],
        options,
        declared_atoms=parsed.declared_atoms or (),
    )


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    if p.tok.kind != "eof":
        p.fail(f"unexpected {p.tok.text!r} after formula")
    return f


def render_theory(theory: DefeasibleTheory) -> str:
    """Print the user-written part of a theory in the input language."""
    lines = []
    if theory.declared_atoms:
        lines.append("atoms " + ", ".join(theory.declared_atoms) + ".")
    lines += [f"premise {render(p)}." for p in theory.premises]
    lines += [f"background {render(k)}." for k in theory.background]
    for r in theory.rules:
        if r.origin != USER:
            continue
        cons = f"not({r.consequent.target})" if isinstance(r.consequent, RuleNegation) else render(r.consequent)
        lines.append(f"rule {r.name}: {render(r.antecedent)} ~> {cons}.")
    lines += [f"prefer {a} > {b}." for a, b in theory.declared_preferences]
    return "\n".join(lines) + "\n"
