"""Report cells, their CSV/JSON/Markdown serializations, and figure output.

Reports are lists of cells (id, reference value, computed value, delta,
tolerance, pass flag).  Serialization is deterministic: identical inputs
produce byte-identical CSV and JSON.  Figures are rendered with matplotlib
to SVG with fixed layout and no volatile metadata.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

matplotlib.rcParams["svg.hashsalt"] = "discrete-pursuit"

__all__ = ["Cell", "Report", "save_bar_figure", "save_lines_figure"]


@dataclass(frozen=True)
class Cell:
    """One checked (or informational) value in a report.

    Pass/fail is |computed - paper| <= tol when both are numeric, equality
    when tol is absent, and the explicit ``ok`` flag when a check does not
    reduce to a comparison against one reference number.
    """

    id: str
    computed: float | str
    paper: float | str | None = None
    tol: float | None = None
    note: str = ""
    ok: bool | None = None

    @property
    def delta(self) -> float | None:
        if isinstance(self.paper, (int, float)) and isinstance(
            self.computed, (int, float)
        ):
            return abs(self.computed - self.paper)
        return None

    @property
    def passed(self) -> bool | None:
        if self.ok is not None:
            return self.ok
        if self.paper is None:
            return None
        if self.tol is not None and self.delta is not None:
            return self.delta <= self.tol
        return self.computed == self.paper


@dataclass
class Report:
    subcommand: str
    config: dict
    cells: list[Cell] = field(default_factory=list)
    seeds: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def failures(self) -> list[Cell]:
        return [c for c in self.cells if c.passed is False]

    def undocumented_failures(self) -> list[Cell]:
        return [c for c in self.failures() if not c.note]

    def summary(self) -> str:
        checked = [c for c in self.cells if c.passed is not None]
        failed = self.failures()
        doc = [c for c in failed if c.note]
        line = (
            f"{self.subcommand}: {len(checked) - len(failed)}/{len(checked)} "
            f"checked cells pass"
        )
        if failed:
            line += f"; {len(failed)} fail ({len(doc)} documented)"
        return line

    def to_json(self) -> str:
        payload = {
            "subcommand": self.subcommand,
            "config": self.config,
            "cells": [
                {
                    "id": c.id,
                    "paper": c.paper,
                    "computed": c.computed,
                    "delta": c.delta,
                    "tol": c.tol,
                    "pass": c.passed,
                    "note": c.note,
                }
                for c in self.cells
            ],
            "seeds": self.seeds,
            "notes": self.notes,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("id,paper,computed,delta,tol,pass,note\n")

        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, float):
                return repr(v)
            text = str(v)
            if "," in text or '"' in text:
                text = '"' + text.replace('"', '""') + '"'
            return text

        for c in self.cells:
            row = [c.id, c.paper, c.computed, c.delta, c.tol, c.passed, c.note]
            out.write(",".join(fmt(v) for v in row) + "\n")
        return out.getvalue()

    def to_markdown(self) -> str:
        lines = [f"# {self.subcommand}", ""]
        if self.config:
            lines.append("config: " + json.dumps(self.config, sort_keys=True))
            lines.append("")
        for note in self.notes:
            lines.append(f"> {note}")
        if self.notes:
            lines.append("")
        lines.append("| id | paper | computed | delta | tol | pass | note |")
        lines.append("|---|---|---|---|---|---|---|")

        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, float):
                return f"{v:.6g}"
            return str(v)

        for c in self.cells:
            status = "" if c.passed is None else ("pass" if c.passed else "FAIL")
            lines.append(
                "| "
                + " | ".join(
                    [c.id, fmt(c.paper), fmt(c.computed), fmt(c.delta), fmt(c.tol),
                     status, c.note]
                )
                + " |"
            )
        lines.append("")
        lines.append(self.summary())
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "md":
            return self.to_markdown()
        raise ValueError(f"unknown report format {fmt!r}")


def _finish(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def save_bar_figure(labels, values, path, title: str = "", reference: float | None = None):
    """Bar chart of one value vector, with an optional flat reference line."""
    fig, ax = plt.subplots(figsize=(max(4.0, 0.42 * len(labels)), 3.2))
    ax.bar(range(len(labels)), values, color="#4878a8")
    if reference is not None:
        ax.axhline(reference, color="#c44e52", linewidth=1.0, linestyle="--")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_title(title, fontsize=9)
    fig.tight_layout()
    _finish(fig, path)


def save_lines_figure(xlabels, series: dict, path, title: str = ""):
    """One line per named series over a shared categorical x axis."""
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(xlabels)), 3.2))
    for name in sorted(series):
        ax.plot(range(len(xlabels)), series[name], marker="o", markersize=3,
                linewidth=1.0, label=name)
    ax.set_xticks(range(len(xlabels)))
    ax.set_xticklabels(xlabels, rotation=45, fontsize=7)
    ax.legend(fontsize=7)
    ax.set_title(title, fontsize=9)
    fig.tight_layout()
    _finish(fig, path)
