"""Deterministic report output: delimited CSV plus a rendered count-curve
figure saved alongside the delimited file."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Sequence


def csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def write_csv(path: str | Path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    Path(path).write_text(csv_text(header, rows), encoding="utf-8")


def figure_path_for(csv_path: str | Path) -> Path:
    return Path(csv_path).with_suffix(".png")


def render_count_figure(rows: Sequence[Sequence[int]], out_path: str | Path, *,
                        title: str, xlabel: str, ylabel: str) -> Path:
    """Step plot of (window, count) rows to a PNG next to the CSV.

    Metadata is stripped so identical inputs produce identical bytes.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    xs = [int(r[0]) for r in rows]
    ys = [int(r[1]) for r in rows]
    fig, ax = plt.subplots(figsize=(5.0, 3.2), dpi=120)
    ax.step(xs, ys, where="post", marker="o", markersize=3, color="#1f5fa8")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    if xs:
        ax.set_xticks(xs)
    fig.tight_layout()
    out = Path(out_path)
    fig.savefig(out, metadata={"Software": None})
    plt.close(fig)
    return out
