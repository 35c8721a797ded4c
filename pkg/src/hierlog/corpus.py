"""Batch evaluation of curated judgment corpora.

A corpus is JSON lines, one entry per line:

    {"system": "EBPCh", "hypotheses": [], "goal": "(T ->1 F) ->2 F",
     "expected": true, "note": "..."}

Systems may be propositional (BPCh, EBPCh, IPCh) or modal (K4h, KD4h,
S4h); formulas use the text syntax of the matching language. The report
lists mismatches first and the runner's exit status is nonzero exactly
when a conclusive verdict contradicts its expectation; budget blowups are
recorded but not fatal.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass
from typing import Optional

from .decide import COUNTERPART, decide_prop
from .parser import parse_modal, parse_prop
from .search import DEFAULT_BUDGET, decide_modal

MODAL_SYSTEMS = ("K4h", "KD4h", "S4h")


@dataclass(frozen=True)
class CorpusEntry:
    system: str
    hypotheses: tuple
    goal: object
    expected: bool
    note: str = ""


@dataclass(frozen=True)
class EntryResult:
    entry: CorpusEntry
    verdict: str  # "provable" | "not-provable" | "budget-exceeded"
    match: Optional[bool]  # None when inconclusive
    seconds: float
    proof_size: Optional[int]


@dataclass(frozen=True)
class CorpusReport:
    results: tuple

    @property
    def mismatches(self) -> list:
        return [r for r in self.results if r.match is False]

    @property
    def inconclusive(self) -> list:
        return [r for r in self.results if r.match is None]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def entry_from_json(d: dict) -> CorpusEntry:
    system = d.get("system")
    if system in COUNTERPART:
        parse = parse_prop
    elif system in MODAL_SYSTEMS:
        parse = parse_modal
    else:
        raise ValueError(f"corpus entry has unknown system {system!r}")
    return CorpusEntry(
        system=system,
        hypotheses=tuple(parse(t) for t in d.get("hypotheses", [])),
        goal=parse(d["goal"]),
        expected=bool(d["expected"]),
        note=d.get("note", ""),
    )


def load_corpus(path: str) -> list:
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                entries.append(entry_from_json(json.loads(line)))
            except (ValueError, KeyError) as e:
                raise ValueError(f"{path}:{lineno}: {e}")
    return entries


def run_entry(entry: CorpusEntry, budget: int = DEFAULT_BUDGET) -> EntryResult:
    start = time.perf_counter()
    if entry.system in COUNTERPART:
        decision = decide_prop(entry.system, list(entry.hypotheses), entry.goal,
                               budget)
    else:
        decision = decide_modal(entry.system, list(entry.hypotheses), entry.goal,
                                budget)
    seconds = time.perf_counter() - start
    if decision.provable is None:
        return EntryResult(entry, "budget-exceeded", None, seconds, None)
    verdict = "provable" if decision.provable else "not-provable"
    size = decision.proof.size() if decision.proof is not None else None
    return EntryResult(entry, verdict, decision.provable == entry.expected,
                       seconds, size)


def run_corpus(entries: list, budget: int = DEFAULT_BUDGET) -> CorpusReport:
    return CorpusReport(tuple(run_entry(e, budget) for e in entries))


def _result_row(index: int, r: EntryResult) -> dict:
    from .formulas import render

    return {
        "index": index,
        "system": r.entry.system,
        "hypotheses": [render(h) for h in r.entry.hypotheses],
        "goal": render(r.entry.goal),
        "expected": r.entry.expected,
        "verdict": r.verdict,
        "match": r.match,
        "seconds": round(r.seconds, 6),
        "proof_size": r.proof_size,
        "note": r.entry.note,
    }


def report_to_json(report: CorpusReport) -> dict:
    rows = [_result_row(i, r) for i, r in enumerate(report.results)]
    ordered = ([row for row in rows if row["match"] is False]
               + [row for row in rows if row["match"] is not False])
    return {
        "total": len(report.results),
        "matches": sum(1 for r in report.results if r.match),
        "mismatches": len(report.mismatches),
        "inconclusive": len(report.inconclusive),
        "ok": report.ok,
        "entries": ordered,
    }


def write_csv(report: CorpusReport, path: str) -> None:
    fields = ["index", "system", "hypotheses", "goal", "expected", "verdict",
              "match", "seconds", "proof_size", "note"]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        writer.writeheader()
        for i, r in enumerate(report.results):
            row = _result_row(i, r)
            row["hypotheses"] = "; ".join(row["hypotheses"])
            writer.writerow(row)
