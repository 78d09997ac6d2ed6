"""Structured run records and figure rendering.

Commands emit either human-readable text or delimited records: one record
per line, tab-separated ``key=value`` fields after a record-type tag.
Records are byte-identical across runs for fixed inputs; wall-clock time
travels in a separate trailing ``timing`` record so diffs can ignore it.

When a figures directory is given, report-producing commands also render
matplotlib PNGs next to the delimited output.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field


@dataclass
class RunRecord:
    kind: str
    fields: list

    def line(self) -> str:
        return "\t".join([self.kind] + ["%s=%s" % (k, v) for k, v in self.fields])


@dataclass
class Recorder:
    fmt: str = "text"
    records: list = field(default_factory=list)
    started: float = field(default_factory=time.monotonic)
    failures: int = 0

    def record(self, kind: str, *fields):
        self.records.append(RunRecord(kind, list(fields)))

    def note_failure(self, count: int = 1):
        self.failures += count

    def emit(self, out) -> int:
        if self.fmt == "records":
            for rec in self.records:
                out.write(rec.line() + "\n")
            out.write("timing\twall_ms=%d\n" % int(1000 * (time.monotonic() - self.started)))
        else:
            for rec in self.records:
                body = "  ".join("%s=%s" % (k, v) for k, v in rec.fields)
                out.write("%-12s %s\n" % (rec.kind, body))
        return 0 if self.failures == 0 else 1


def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_sequence_figure(stages, values, path, title):
    plt = _plt()
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(stages, values, marker="o", markersize=3, linewidth=1)
    if max(values) > 0:
        ax.set_yscale("symlog")
    ax.set_xlabel("stage")
    ax.set_ylabel("value")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_suite_figure(names, passed, failed, path, title):
    plt = _plt()
    fig, ax = plt.subplots(figsize=(max(6, 0.6 * len(names)), 4))
    xs = range(len(names))
    ax.bar(xs, passed, color="#2a7", label="checks passed")
    ax.bar(xs, failed, bottom=passed, color="#c33", label="violations")
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("checks")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_rank_figure(src_ranks, img_ranks, path, title):
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot(src_ranks, img_ranks, linestyle="", marker=".")
    ax.set_xlabel("source rank")
    ax.set_ylabel("image rank")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def figure_path(figdir, name) -> str:
    os.makedirs(figdir, exist_ok=True)
    return os.path.join(figdir, name)
