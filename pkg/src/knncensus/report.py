"""Report rendering: the census table plus summary figures on disk.

Figures are deliberately simple summaries of one atlas (class counts by
field kind, Galois orbit sizes, automorphism group orders); the dessins
themselves are never drawn.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .classify import CSV_COLUMNS, Atlas, atlas_csv_rows


def _bar_figure(path: Path, labels: list[str], values: list[int], title: str, ylabel: str) -> None:
    fig, ax = plt.subplots(figsize=(max(4.0, 0.9 * len(labels) + 2.0), 3.2))
    ax.bar(range(len(labels)), values, color="#4878b0")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(atlas: Atlas, outdir: str | Path) -> list[Path]:
    """Write census.csv and three PNG summaries; returns the written paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    csv_path = out / "census.csv"
    with csv_path.open("w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        writer.writerows(atlas_csv_rows(atlas))
    written.append(csv_path)

    tag = f"p={atlas.p} e={atlas.e} f={atlas.f} (n={atlas.n})"

    kinds: dict[str, int] = {}
    for entry in atlas.entries:
        kinds[entry.field.kind] = kinds.get(entry.field.kind, 0) + 1
    labels = sorted(kinds)
    path = out / "field_kinds.png"
    _bar_figure(path, labels, [kinds[k] for k in labels], f"Classes by field kind, {tag}", "classes")
    written.append(path)

    orbits = atlas.orbits()
    labels = [",".join(str(t) for t in rep) for rep in sorted(orbits)]
    sizes = [len(orbits[rep]) for rep in sorted(orbits)]
    path = out / "orbit_sizes.png"
    _bar_figure(path, labels, sizes, f"Galois orbit sizes, {tag}", "classes in orbit")
    written.append(path)

    orders: dict[int, int] = {}
    for entry in atlas.entries:
        orders[entry.aut_order] = orders.get(entry.aut_order, 0) + 1
    keys = sorted(orders)
    path = out / "aut_orders.png"
    _bar_figure(path, [str(k) for k in keys], [orders[k] for k in keys],
                f"Automorphism group orders, {tag}", "classes")
    written.append(path)

    return written
