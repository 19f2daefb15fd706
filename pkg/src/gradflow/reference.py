"""Published reference values for the census, frozen for reconciliation.

The published classification reports its counts in three places that do not
always agree with each other: a summary table indexed by the point count
before the bifurcation, theorem statements indexed by the point count at the
moment of bifurcation, and per-diagram itemizations next to the figures.
All three are transcribed here verbatim so the reconciliation report can
tabulate them against the computed census.

Saddle-node alignment: a family with ``n`` points before the bifurcation has
``n - 1`` points at the moment (the contracting pair counts once).  The
theorem totals are therefore compared against before-count = moment + 1.
Connection diagrams already live at the moment, so moment = before there.
"""

from __future__ import annotations

from .diagram import Surface

SN_KEYS = ("SN", "HN", "HS", "BSN", "BDS")
CONN_KEYS = ("SC", "HSC", "BSC")

#: Morse class counts as published (summary table plus the small figures).
MORSE = {
    (Surface.DISK, 2): 1,
    (Surface.DISK, 3): 2,
    (Surface.DISK, 4): 5,
    (Surface.DISK, 5): 7,
    (Surface.DISK, 6): 22,
    (Surface.ANNULUS, 4): 2,
    (Surface.ANNULUS, 5): 4,
    (Surface.ANNULUS, 6): 14,
    (Surface.PANTS, 6): 2,
}

#: Summary table rows keyed by (surface, points before bifurcation).
#: Column order follows the published table.
TABLE_COLUMNS = ("morse", "SN", "SC", "BSN", "BDS", "HN", "HS", "HSC", "BSC")
TABLE = {
    (Surface.DISK, 3): (2, 0, 0, 0, 0, 2, 0, 0, 0),
    (Surface.DISK, 4): (5, 2, 0, 2, 0, 0, 2, 4, 0),
    (Surface.DISK, 5): (7, 8, 0, 2, 0, 6, 8, 4, 0),
    (Surface.DISK, 6): (22, 30, 7, 22, 5, 12, 38, 6, 2),
    (Surface.ANNULUS, 4): (2, 0, 0, 0, 0, 0, 0, 0, 1),
    (Surface.ANNULUS, 5): (4, 0, 0, 0, 10, 0, 0, 2, 2),
    (Surface.ANNULUS, 6): (14, 4, 2, 14, 6, 4, 18, 10, 9),
    (Surface.PANTS, 6): (2, 0, 0, 0, 0, 0, 0, 0, 4),
}


def table_value(surface: Surface, n_before: int, quantity: str) -> int | None:
    row = TABLE.get((surface, n_before))
    if row is None:
        return None
    return row[TABLE_COLUMNS.index(quantity)]


#: Saddle-node totals from the theorem statements, keyed by
#: (surface, points at the moment of bifurcation).
THEOREM_SN = {
    (Surface.DISK, 2): {"HN": 2},
    (Surface.DISK, 3): {"HN": 2, "SN": 2, "HS": 4, "BSN": 2},
    (Surface.DISK, 4): {"SN": 8, "HN": 6, "BSN": 2, "HS": 8},
    (Surface.DISK, 5): {"SN": 30, "HN": 12, "HS": 38, "BSN": 22, "BDS": 5},
    (Surface.ANNULUS, 4): {"HN": 10},
    (Surface.ANNULUS, 5): {"SN": 4, "HN": 4, "HS": 18, "BSN": 14, "BDS": 6},
    (Surface.PANTS, 5): {},
}

#: Connection totals from the theorem statements, keyed by (surface, points).
THEOREM_CONN = {
    (Surface.DISK, 5): {"HSC": 4},
    (Surface.DISK, 6): {"SC": 7, "HSC": 6, "BSC": 2},
    (Surface.ANNULUS, 4): {"BSC": 1},
    (Surface.ANNULUS, 5): {"BSC": 2, "HSC": 2},
    (Surface.ANNULUS, 6): {"SC": 2, "HSC": 10, "BSC": 9},
    (Surface.PANTS, 6): {"BSC": 4},
}

#: Per-diagram site itemizations as published, keyed by
#: (surface, points before bifurcation).  ``doubled`` marks diagrams whose
#: flow reversal is a distinct class and was omitted from the figure, so
#: their counts enter the total twice.
ITEMIZED = {
    (Surface.DISK, 3): (
        {"profile": {"HN": 1}, "doubled": False},
        {"profile": {"HN": 1}, "doubled": False},
    ),
    (Surface.DISK, 4): (
        {"profile": {"HN": 2}, "doubled": False},
        {"profile": {"SN": 1, "HS": 2}, "doubled": False},
        {"profile": {"SN": 1, "HS": 2}, "doubled": False},
        {"profile": {"BSN": 1}, "doubled": False},
        {"profile": {"BSN": 1}, "doubled": False},
    ),
    (Surface.DISK, 5): (
        {"profile": {"SN": 2, "HN": 1, "HS": 1}, "doubled": True},
        {"profile": {"SN": 2, "HN": 1, "HS": 1}, "doubled": True},
        {"profile": {"BSN": 1, "HN": 1}, "doubled": True},
        {"profile": {"HS": 2}, "doubled": False},
    ),
    (Surface.DISK, 6): (
        {"profile": {"SN": 3, "HN": 2}, "doubled": True},
        {"profile": {"SN": 3, "HS": 3}, "doubled": True},
        {"profile": {"SN": 3, "HS": 3}, "doubled": True},
        {"profile": {"SN": 1, "HS": 3}, "doubled": True},
        {"profile": {"SN": 4, "HS": 4}, "doubled": False},
        {"profile": {"HN": 1, "BDS": 1}, "doubled": True},
        {"profile": {"HN": 2, "BDS": 1, "BSN": 1}, "doubled": True},
        {"profile": {"SN": 1, "BSN": 2, "HS": 2}, "doubled": True},
        {"profile": {"SN": 1, "HS": 3, "BSN": 2}, "doubled": True},
        {"profile": {"SN": 1, "HS": 3, "HN": 1, "BSN": 2}, "doubled": True},
        {"profile": {"BDS": 1, "BSN": 2}, "doubled": False},
        {"profile": {"BSN": 2}, "doubled": True},
    ),
    (Surface.ANNULUS, 5): (
        {"profile": {"HN": 2}, "doubled": False},
        {"profile": {"HN": 2}, "doubled": False},
        {"profile": {"HN": 3}, "doubled": False},
        {"profile": {"HN": 3}, "doubled": False},
    ),
    (Surface.ANNULUS, 6): (
        {"profile": {"SN": 1, "HS": 2, "HN": 1}, "doubled": True},
        {"profile": {"SN": 1, "HS": 2, "HN": 1}, "doubled": True},
        {"profile": {"HS": 4}, "doubled": False},
        {"profile": {"HS": 6}, "doubled": False},
        {"profile": {"BSN": 2, "BDS": 1}, "doubled": True},
        {"profile": {"BSN": 2}, "doubled": True},
        {"profile": {"BSN": 1, "BDS": 1}, "doubled": True},
        {"profile": {"BSN": 2, "BDS": 1}, "doubled": True},
    ),
}


def itemized_sum(surface: Surface, n_before: int) -> dict[str, int] | None:
    """Total of the published per-diagram lists, reversal doubling applied."""
    items = ITEMIZED.get((surface, n_before))
    if items is None:
        return None
    total = {k: 0 for k in SN_KEYS}
    for item in items:
        weight = 2 if item["doubled"] else 1
        for k, v in item["profile"].items():
            total[k] += weight * v
    return total
