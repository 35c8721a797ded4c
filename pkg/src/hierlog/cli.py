"""Command-line interface.

Exit codes: 0 success / provable / valid proof; 1 not provable / invalid
proof / corpus mismatch; 2 malformed input; 3 inconclusive (search budget
exhausted). The search budget comes from --budget, else the
HIERLOG_BUDGET environment variable, else one million nodes. With
``--json`` every command prints one machine-readable object on stdout.
"""

from __future__ import annotations

import json
import os
import sys

import click

from . import corpus as corpus_mod
from . import hilbert, natded, schemas, sequents
from .decide import GLH_NOTE, decide_prop, split_disjunction
from .formulas import IllTyped, from_json, render, to_json
from .parser import PARSERS, ParseError, parse_modal, parse_prop
from .search import DEFAULT_BUDGET, decide_modal, prove_sequent
from .translate import (
    MissingAtomName,
    ShapeMismatch,
    bhk_unfold,
    forgetful_f,
    godel_b,
    godel_b_untyped,
    witness_of,
    witness_to_json,
)

INPUT_ERRORS = (ParseError, IllTyped, ShapeMismatch, MissingAtomName,
                ValueError, KeyError, json.JSONDecodeError, OSError)


def _fail_input(e: Exception) -> None:
    click.echo(f"error: {e}", err=True)
    sys.exit(2)


def _budget(value) -> int:
    if value is not None:
        return value
    env = os.environ.get("HIERLOG_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            _fail_input(ValueError(f"HIERLOG_BUDGET must be an integer, got {env!r}"))
    return DEFAULT_BUDGET


def _emit(as_json: bool, payload: dict, text: str) -> None:
    if as_json:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    elif text:
        click.echo(text)


@click.group()
def main() -> None:
    """Indexed provability logics: parse, translate, prove, check."""


@main.command(name="parse")
@click.argument("formula")
@click.option("--lang", type=click.Choice(sorted(PARSERS)), default="prop",
              show_default=True)
@click.option("--json", "as_json", is_flag=True)
def parse_cmd(formula: str, lang: str, as_json: bool) -> None:
    """Parse FORMULA and print its normalized rendering."""
    try:
        ast = PARSERS[lang](formula)
    except INPUT_ERRORS as e:
        _fail_input(e)
    _emit(as_json, {"ok": True, "lang": lang, "text": render(ast),
                    "ast": to_json(ast)}, render(ast))


@main.command()
@click.argument("direction", type=click.Choice(["b", "f", "witness", "unfold"]))
@click.argument("formula")
@click.option("--lang", type=click.Choice(["prop", "modal"]), default="prop",
              show_default=True, help="input language for direction f")
@click.option("--map", "names", multiple=True, metavar="ATOM=NAME",
              help="atom naming for direction unfold")
@click.option("--json", "as_json", is_flag=True)
def translate(direction: str, formula: str, lang: str, names, as_json: bool) -> None:
    """Apply the box, forgetful, witness, or provability-reading translation."""
    try:
        if direction == "b":
            ast = parse_prop(formula)
            out = godel_b(ast)
            _emit(as_json, {"direction": "b", "input": render(ast),
                            "output": render(out), "ast": to_json(out)},
                  render(out))
        elif direction == "f":
            ast = parse_prop(formula) if lang == "prop" else parse_modal(formula)
            out = forgetful_f(ast)
            _emit(as_json, {"direction": "f", "input": render(ast),
                            "output": render(out), "ast": to_json(out)},
                  render(out))
        elif direction == "witness":
            ast = parse_prop(formula)
            shape, w = witness_of(ast)
            payload = {"direction": "witness", "input": render(ast),
                       "shape": render(shape), "witness": witness_to_json(w)}
            _emit(as_json, payload,
                  f"{render(shape)}\n{json.dumps(witness_to_json(w))}")
        else:
            ast = parse_prop(formula)
            mapping = {}
            for item in names:
                if "=" not in item:
                    raise ValueError(f"--map needs ATOM=NAME, got {item!r}")
                key, _, val = item.partition("=")
                mapping[key] = val
            out = bhk_unfold(ast, mapping)
            _emit(as_json, {"direction": "unfold", "input": render(ast),
                            "output": out}, out)
    except INPUT_ERRORS as e:
        _fail_input(e)


def _finish_decision(decision, as_json: bool, payload: dict, proof_file,
                     show_proof: bool) -> None:
    payload.update({
        "status": decision.status,
        "provable": decision.provable,
        "visited": decision.outcome.visited,
    })
    if decision.proof is not None:
        payload["proof_size"] = decision.proof.size()
        if proof_file:
            with open(proof_file, "w", encoding="utf-8") as fh:
                json.dump(sequents.proof_to_json(decision.proof), fh, indent=2)
    text = decision.status
    if show_proof and decision.proof is not None:
        text += "\n" + sequents.render_proof(decision.proof)
    _emit(as_json, payload, text)
    if decision.provable is True:
        sys.exit(0)
    sys.exit(3 if decision.provable is None else 1)


@main.command()
@click.argument("goal")
@click.option("--system", "system", default=None,
              help="BPCh, EBPCh, IPCh, K4h, KD4h, S4h (FPLh needs the flag)")
@click.option("--calc", "calc", default=None,
              type=click.Choice(sorted(sequents.CALCULI)),
              help="raw sequent mode: GOAL is 'A1, A2 => B1, B2'")
@click.option("--hyp", "hyps", multiple=True, help="hypothesis (repeatable)")
@click.option("--budget", type=int, default=None)
@click.option("--proof", "proof_file", type=click.Path(), default=None,
              help="write the derivation as JSON")
@click.option("--show-proof", is_flag=True)
@click.option("--experimental-glh", is_flag=True, help=GLH_NOTE)
@click.option("--json", "as_json", is_flag=True)
def prove(goal: str, system, calc, hyps, budget, proof_file, show_proof,
          experimental_glh, as_json) -> None:
    """Decide a judgment or search a raw sequent."""
    budget = _budget(budget)
    if (system is None) == (calc is None):
        _fail_input(ValueError("pass exactly one of --system or --calc"))
    try:
        if calc is not None:
            seq = sequents.parse_sequent(goal)
            out = prove_sequent(calc, seq, budget)
            payload = {"mode": "calculus", "calc": calc,
                       "sequent": sequents.render_sequent(seq),
                       "status": out.status, "visited": out.visited}
            if out.proof is not None:
                payload["proof_size"] = out.proof.size()
                if proof_file:
                    with open(proof_file, "w", encoding="utf-8") as fh:
                        json.dump(sequents.proof_to_json(out.proof), fh, indent=2)
            text = out.status
            if show_proof and out.proof is not None:
                text += "\n" + sequents.render_proof(out.proof)
            _emit(as_json, payload, text)
            sys.exit(0 if out.status == "provable"
                     else 3 if out.status == "budget-exceeded" else 1)
        if system in ("K4h", "KD4h", "S4h") or (
                system == "GLh" and experimental_glh):
            gamma = [parse_modal(h) for h in hyps]
            a = parse_modal(goal)
            decision = decide_modal(system, gamma, a, budget)
        else:
            gamma = [parse_prop(h) for h in hyps]
            a = parse_prop(goal)
            decision = decide_prop(system, gamma, a, budget,
                                   experimental_glh=experimental_glh)
    except INPUT_ERRORS as e:
        _fail_input(e)
    payload = {"mode": "system", "system": system, "goal": render(a),
               "hypotheses": [render(g) for g in gamma]}
    _finish_decision(decision, as_json, payload, proof_file, show_proof)


@main.command(name="check-proof")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--nd", "kind", flag_value="nd")
@click.option("--hilbert", "kind", flag_value="hilbert")
@click.option("--sequent", "kind", flag_value="sequent")
@click.option("--system", required=True,
              help="proof system (ND / Hilbert) or calculus (sequent)")
@click.option("--json", "as_json", is_flag=True)
def check_proof(path: str, kind, system: str, as_json: bool) -> None:
    """Validate a proof object stored as JSON."""
    if kind is None:
        _fail_input(ValueError("pass one of --nd, --hilbert, --sequent"))
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except INPUT_ERRORS as e:
        _fail_input(e)
    error = None
    try:
        if kind == "nd":
            if system not in natded.ALL_SYSTEMS:
                raise ValueError(f"unknown natural-deduction system {system!r}")
            parse = (parse_prop if system in natded.TYPED_SYSTEMS
                     else PARSERS["prop-untyped"])
            proof = natded.proof_from_json(data["proof"], parse)
            hypotheses = [parse(t) for t in data.get("hypotheses", [])]
            goal = parse(data["goal"])
        elif kind == "hilbert":
            if system not in hilbert.SYSTEMS:
                raise ValueError(f"unknown Hilbert system {system!r}")
            lines = [hilbert.line_from_json(d, parse_modal)
                     for d in data["lines"]]
            goal = parse_modal(data["goal"])
        else:
            if system not in sequents.CALCULI:
                raise ValueError(f"unknown calculus {system!r}")
            proof = sequents.proof_from_json(data)
    except INPUT_ERRORS as e:
        _fail_input(e)
    try:
        if kind == "nd":
            natded.check_nd(system, proof, hypotheses, goal)
        elif kind == "hilbert":
            hilbert.check_hilbert(system, lines, goal)
        else:
            sequents.check_sequent_proof(system, proof)
    except (natded.BadNode, hilbert.BadLine, sequents.BadSequentNode) as e:
        error = str(e)
    payload = {"kind": kind, "system": system, "valid": error is None}
    if error is not None:
        payload["error"] = error
    _emit(as_json, payload, "valid" if error is None else f"invalid: {error}")
    sys.exit(0 if error is None else 1)


@main.command()
@click.argument("left")
@click.argument("right")
@click.option("--system", required=True, help="BPCh, EBPCh, or IPCh")
@click.option("--budget", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def split(left: str, right: str, system: str, budget, as_json: bool) -> None:
    """Find which side of a provable disjunction is a theorem."""
    try:
        a, b = parse_prop(left), parse_prop(right)
        result = split_disjunction(system, a, b, _budget(budget))
    except INPUT_ERRORS as e:
        _fail_input(e)
    payload = {"system": system, "left": render(a), "right": render(b),
               "verdict": result.verdict}
    _emit(as_json, payload, result.verdict)
    if result.verdict in ("left", "right"):
        sys.exit(0)
    sys.exit(3 if result.verdict == "inconclusive" else 1)


@main.group()
def corpus() -> None:
    """Corpus evaluation."""


@corpus.command(name="run")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--report", "report_file", type=click.Path(), default=None)
@click.option("--csv", "csv_file", type=click.Path(), default=None)
@click.option("--figures", "figures_dir", type=click.Path(), default=None)
@click.option("--budget", type=int, default=None)
@click.option("--json", "as_json", is_flag=True)
def corpus_run(path, report_file, csv_file, figures_dir, budget, as_json) -> None:
    """Evaluate every entry of a JSONL corpus and write reports."""
    try:
        entries = corpus_mod.load_corpus(path)
    except INPUT_ERRORS as e:
        _fail_input(e)
    report = corpus_mod.run_corpus(entries, _budget(budget))
    payload = corpus_mod.report_to_json(report)
    if report_file:
        with open(report_file, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
    if csv_file:
        corpus_mod.write_csv(report, csv_file)
    if figures_dir:
        from .report import render_figures

        render_figures(report, figures_dir)
    summary = (f"{payload['total']} entries: {payload['matches']} match, "
               f"{payload['mismatches']} mismatch, "
               f"{payload['inconclusive']} inconclusive")
    _emit(as_json, payload, summary)
    sys.exit(0 if report.ok else 1)


@main.command(name="schemas")
@click.argument("name", required=False)
@click.argument("args", nargs=-1)
@click.option("--out", "out_file", type=click.Path(), default=None,
              help="write the proof object as JSON")
@click.option("--json", "as_json", is_flag=True)
def schemas_cmd(name, args, out_file, as_json) -> None:
    """Emit a generated proof tree and its kernel verdict."""
    if name is None:
        for key, (_fn, help_text) in sorted(schemas.SCHEMA_BUILDERS.items()):
            click.echo(f"{key}: {help_text}")
        sys.exit(0)
    if name not in schemas.SCHEMA_BUILDERS:
        _fail_input(ValueError(f"unknown schema {name!r}"))
    builder, _help = schemas.SCHEMA_BUILDERS[name]
    try:
        system, hypotheses, goal, proof = builder(list(args))
    except INPUT_ERRORS as e:
        _fail_input(e)
    natded.check_nd(system, proof, hypotheses, goal)
    doc = {
        "schema": name,
        "system": system,
        "hypotheses": [render(h) for h in hypotheses],
        "goal": render(goal),
        "proof": natded.proof_to_json(proof),
    }
    if out_file:
        with open(out_file, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
    doc_out = dict(doc)
    doc_out["valid"] = True
    _emit(as_json, doc_out,
          f"{name}: valid {system} proof of '{render(goal)}' from "
          f"[{', '.join(render(h) for h in hypotheses)}]")
    sys.exit(0)


if __name__ == "__main__":
    main()
