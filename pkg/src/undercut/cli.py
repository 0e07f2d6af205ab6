"""Command-line front end: ``undercut <command> <theory-file> [options]``.

Every command prints one JSON document with sorted keys.  Exit status is 0 on
success, 2 when the theory defeats itself and only partial results exist, and
1 on any error (reported as ``{"error": {...}}``).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .arguments import ArgumentStore, to_dot
from .cases import case_extensions, cases_theory
from .default_logic import check_equivalence
from .errors import TheorySyntaxError, UndercutError
from .jtms import IN, OUT, UNDETERMINED
from .logic import render
from .semantics import Analysis
from .specificity import specificity_preferences, with_specificity
from .syntax import parse_theory
from .theory import HYPOTHESIS, DefeasibleTheory, Options, render_conclusion

COMMANDS = (
    "extensions",
    "beliefs",
    "defeats",
    "arguments",
    "conflicts",
    "labelings",
    "specificity",
    "oracle-check",
    "cases",
)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="undercut", description="Defeasible reasoning with undercutting defeat.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("theory", help="theory file, or - for standard input")
    p.add_argument("--spec", action="store_true", help="add specificity preferences")
    p.add_argument("--cases", action="store_true", help="reason by cases (hypothesis rules)")
    p.add_argument("--hyp-width", type=int, default=2, help="literals per case disjunction")
    p.add_argument("--max-atoms", type=int, default=Options.max_atoms)
    p.add_argument("--subset-cap", type=int, default=Options.subset_cap)
    p.add_argument("--arg-cap", type=int, default=Options.arg_cap)
    p.add_argument("--dot", metavar="PATH", help="also write a Graphviz rendering")
    return p


def load(args) -> DefeasibleTheory:
    text = sys.stdin.read() if args.theory == "-" else open(args.theory, encoding="utf-8").read()
    options = Options(
        max_atoms=args.max_atoms,
        subset_cap=args.subset_cap,
        arg_cap=args.arg_cap,
        specificity=args.spec,
        cases=args.cases or args.command == "cases",
        hyp_width=args.hyp_width,
    )
    theory = parse_theory(text, options)
    if args.spec:
        theory = with_specificity(theory)
    return theory


def _analysis(theory: DefeasibleTheory) -> Analysis:
    if theory.options.cases:
        return case_extensions(theory)
    return Analysis(theory)


def _hide_hypotheses(names, theory) -> list:
    return sorted(n for n in names if n not in theory.rule_map or theory.rule(n).origin != HYPOTHESIS)


def _extensions_doc(an: Analysis) -> dict:
    doc = an.report()
    doc["hypotheses"] = sorted(r.name for r in an.theory.rules if r.origin == HYPOTHESIS)
    return doc


def run_command(command: str, theory: DefeasibleTheory, dot: Optional[str] = None) -> tuple:
    """Return ``(json_document, exit_code)`` for one command."""
    code = 0
    if command in ("extensions", "cases"):
        an = case_extensions(theory) if command == "cases" else _analysis(theory)
        doc = _extensions_doc(an)
        if command == "cases":
            believed = an.believed_literals()
            doc["belief_literals"] = believed
        code = 2 if an.self_defeating else 0
        _write(dot, an.network.to_dot(an.odd_loop_nodes))
    elif command == "beliefs":
        an = _analysis(theory)
        doc = {
            "status": an.report()["status"],
            "premises": [render(p) for p in theory.premises],
            "belief_literals": an.believed_literals(),
            "belief_negations": an.believed_negations(),
            "extension_count": len(an.extensions),
        }
        code = 2 if an.self_defeating else 0
    elif command == "defeats":
        an = _analysis(theory)
        doc = {
            "undercuts": {t: [sorted(u.rules) for u in us] for t, us in an.undercuts.items()},
            "defeated_sets": [sorted(e.omega) for e in an.extensions],
            "status": an.report()["status"],
        }
        code = 2 if an.self_defeating else 0
        _write(dot, an.network.to_dot(an.odd_loop_nodes))
    elif command == "arguments":
        store = _store(theory)
        doc = {"arguments": [_argument_doc(a) for a in store.arguments()]}
        _write(dot, to_dot(store.arguments()))
    elif command == "conflicts":
        store = _store(theory)
        sets = store.conflict_rule_sets
        doc = {"conflict_rule_sets": [sorted(s) for s in sets], "count": len(sets)}
        _write(dot, to_dot([b.argument for b in store.inconsistency_arguments], "conflicts"))
    elif command == "labelings":
        an = _analysis(theory)
        net = an.network
        labelings = an.labelings or an.partial_labelings
        doc = {
            "nodes": [f"not({n})" for n in net.names],
            "labelings": [dict(zip(net.names, lab)) for lab in labelings],
            "odd_loops": an.odd_loop_rules,
            "partial": not an.labelings,
        }
        code = 2 if an.self_defeating else 0
        _write(dot, net.to_dot(an.odd_loop_nodes))
    elif command == "specificity":
        doc = {"preferences": sorted(list(p) for p in specificity_preferences(theory))}
    elif command == "oracle-check":
        doc = check_equivalence(theory).to_json()
    else:
        raise ValueError(f"unknown command {command!r}")
    return doc, code


def _store(theory: DefeasibleTheory) -> ArgumentStore:
    return ArgumentStore(cases_theory(theory) if theory.options.cases else theory)


def _argument_doc(a) -> dict:
    (step,) = a.steps
    conclusion = step.conclusion
    return {
        "conclusion": render_conclusion(conclusion),
        "argument": a.render(),
        "rules": sorted(a.rules),
        "last_rules": sorted(a.last_rules),
    }


def _write(path: Optional[str], text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _error_doc(exc: Exception) -> dict:
    err = {"code": getattr(exc, "code", "error"), "message": str(exc)}
    if isinstance(exc, TheorySyntaxError) and exc.line is not None:
        err["line"] = exc.line
        err["column"] = exc.column
    return {"error": err}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        theory = load(args)
        doc, code = run_command(args.command, theory, args.dot)
    except (UndercutError, OSError) as exc:
        doc, code = _error_doc(exc), 1
    json.dump(doc, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
