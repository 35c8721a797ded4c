"""Figure rendering for corpus reports.

Each helper writes one PNG next to the delimited output; all figures use
the non-interactive backend so the CLI works headless.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .corpus import CorpusReport  # noqa: E402


def outcome_figure(report: CorpusReport, path: str) -> None:
    """Bar chart of match / mismatch / inconclusive counts."""
    counts = [
        sum(1 for r in report.results if r.match is True),
        len(report.mismatches),
        len(report.inconclusive),
    ]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    bars = ax.bar(["match", "mismatch", "inconclusive"], counts,
                  color=["#4c9f70", "#c0392b", "#f0ad4e"])
    ax.bar_label(bars)
    ax.set_ylabel("entries")
    ax.set_title(f"corpus outcomes ({len(report.results)} entries)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def timing_figure(report: CorpusReport, path: str) -> None:
    """Per-entry decision time on a log scale."""
    times = [max(r.seconds, 1e-6) for r in report.results]
    fig, ax = plt.subplots(figsize=(6, 3.2))
    ax.bar(range(len(times)), times, color="#4a6fa5")
    ax.set_yscale("log")
    ax.set_xlabel("entry")
    ax.set_ylabel("seconds")
    ax.set_title("decision time per entry")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def proof_size_figure(report: CorpusReport, path: str) -> None:
    """Histogram of derivation sizes over the provable entries."""
    sizes = [r.proof_size for r in report.results if r.proof_size]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    if sizes:
        ax.hist(sizes, bins=min(20, max(5, len(set(sizes)))), color="#4a6fa5")
    ax.set_xlabel("proof nodes")
    ax.set_ylabel("entries")
    ax.set_title("derivation sizes")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_figures(report: CorpusReport, directory: str) -> list:
    """Write all report figures into ``directory``; returns the paths."""
    os.makedirs(directory, exist_ok=True)
    paths = []
    for name, fn in (
        ("corpus_outcomes.png", outcome_figure),
        ("corpus_timing.png", timing_figure),
        ("corpus_proof_sizes.png", proof_size_figure),
    ):
        target = os.path.join(directory, name)
        fn(report, target)
        paths.append(target)
    return paths
