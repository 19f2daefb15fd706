"""Matplotlib figures emitted next to the CSV reports.

Two report paths produce figures: the census table (computed counts against
the published values, conflicts highlighted) and the normal-form sweeps
(phase portraits of each family across the parameter values).
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .normal_forms import SWEEP, UPPER_HALF_PLANE, catalog, family, poly_eval
from .reconcile import AGREE, ReconciliationReport


def census_figure(report: ReconciliationReport, path: str) -> None:
    """Computed vs published counts, one panel per surface row."""
    cases = []
    for r in report.rows:
        key = (r.surface, r.n_before)
        if key not in cases:
            cases.append(key)
    fig, axes = plt.subplots(len(cases), 1,
                             figsize=(8, 1.6 * len(cases)), sharex=False)
    for ax, key in zip(np.atleast_1d(axes), cases):
        rows = [r for r in report.rows
                if (r.surface, r.n_before) == key
                and (r.computed or r.table or r.theorem or r.itemized)]
        labels = [r.quantity for r in rows]
        x = np.arange(len(rows))
        ax.bar(x - 0.2, [r.computed for r in rows], width=0.4,
               label="computed", color="steelblue")
        ax.bar(x + 0.2, [r.table if r.table is not None else 0 for r in rows],
               width=0.4, label="published table", color="lightgray")
        for xi, r in zip(x, rows):
            if r.status != AGREE:
                ax.annotate("*", (xi, max(r.computed, r.table or 0)),
                            ha="center", color="crimson", fontsize=12)
        ax.set_xticks(x, labels, fontsize=7)
        ax.set_ylabel("%s %d" % (key[0].value, key[1]), fontsize=8)
        ax.tick_params(labelsize=7)
    np.atleast_1d(axes)[0].legend(fontsize=7, loc="upper right")
    fig.suptitle("census: computed vs published (* = flagged)", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def family_figure(fid: str, path: str) -> None:
    """Phase portraits of one family at a in {-1, 0, +1}, zeros marked."""
    fam = family(fid)
    fig, axes = plt.subplots(1, len(SWEEP), figsize=(9, 3))
    y_lo = 0.0 if fam.domain == UPPER_HALF_PLANE else -2.0
    xs = np.linspace(-2, 2, 40)
    ys = np.linspace(y_lo, 2, 40)
    gx, gy = np.meshgrid(xs, ys)
    for ax, a in zip(axes, SWEEP):
        u = np.zeros_like(gx)
        v = np.zeros_like(gy)
        for (i, j, k), c in fam.P.items():
            u += float(c) * gx ** i * gy ** j * a ** k
        for (i, j, k), c in fam.Q.items():
            v += float(c) * gx ** i * gy ** j * a ** k
        ax.streamplot(gx, gy, u, v, density=0.8, linewidth=0.6,
                      color="steelblue", arrowsize=0.7)
        for z in catalog(fam, a):
            marker = "s" if z.on_boundary else "o"
            ax.plot(z.x, z.y, marker, color="crimson", markersize=6)
            ax.annotate("%+d" % z.index, (z.x, z.y),
                        textcoords="offset points", xytext=(6, 6),
                        fontsize=8)
        if fam.domain == UPPER_HALF_PLANE:
            ax.axhline(0, color="black", linewidth=2)
        ax.set_title("a = %+d" % a, fontsize=9)
        ax.tick_params(labelsize=7)
    fig.suptitle(fid, fontsize=11)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
