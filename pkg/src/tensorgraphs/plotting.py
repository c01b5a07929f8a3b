"""Figures for count tables."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .enumeration import CountTable  # noqa: E402

SECTOR_NAMES = {0: "vacuum", 2: "2-point", 4: "4-point"}


def plot_count_table(table: CountTable, path, title: str | None = None):
    """Classes and labelled pairings per order, one line per sector, log scale."""
    fig, (ax_p, ax_c) = plt.subplots(1, 2, figsize=(9, 3.6))
    sectors = sorted({r.external for r in table.rows})
    for k in sectors:
        rows = [r for r in table.rows if r.external == k and r.total_pairings > 0]
        if not rows:
            continue
        label = SECTOR_NAMES.get(k, f"{k} legs")
        orders = [r.order for r in rows]
        ax_p.plot(orders, [r.total_pairings for r in rows], "o-", label=label)
        ax_c.plot(orders, [r.classes for r in rows], "o-", label=f"{label}, all")
        ax_c.plot(orders, [r.connected_classes for r in rows], "s--", label=f"{label}, connected")
    for ax, ylabel in ((ax_p, "labelled pairings"), (ax_c, "isomorphism classes")):
        ax.set_yscale("log")
        ax.set_xlabel("order")
        ax.set_ylabel(ylabel)
        ax.xaxis.get_major_locator().set_params(integer=True)
        if ax.get_legend_handles_labels()[0]:
            ax.legend(fontsize=8, frameon=False)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
