"""End-to-end reproduction of the published Plato analyses.

Every recomputed cell is compared against the printed value with the
stated tolerance.  Printed cells that are provably inconsistent with the
printed corpus (see ``published.KNOWN_DISCREPANCIES``) still appear, fail,
and carry an explanatory note, so a report distinguishes "the pipeline
broke" from "the printed value cannot be reproduced from the printed data".
"""

from __future__ import annotations

import numpy as np

from . import published as pub
from .metrics import ground_adjacent_transposition
from .plato import Corpus
from .pursuit import (
    adjusted_second_order,
    affine_scan,
    first_order,
    l1_between_adjusted,
    rank_profiles,
)
from .radon import fourier_z2k
from .reports import Cell, Report
from .theory import chebyshev_fraction, design_moments
from .spaces import base_affine

__all__ = [
    "adjusted_for",
    "margin_cells",
    "adjusted_cells",
    "ranking_cells",
    "republic_moment_cells",
    "scan_cells",
    "pair_ground_metric",
    "plato_report",
    "reproduce_margin_tables",
    "reproduce_rankings",
    "uu_profiles",
]

_SIGNS = {"UU": (1, 1), "U-": (1, 0), "-U": (0, 1), "--": (0, 0)}


def _note(cell_id: str) -> str:
    return pub.KNOWN_DISCREPANCIES.get(cell_id, "")


def adjusted_for(corpus: Corpus, book: str):
    return adjusted_second_order(corpus.mass_function(book))


def uu_profiles(corpus: Corpus) -> dict[str, np.ndarray]:
    """Adjusted UU 10-vectors per book, the profiles used for ranking."""
    return {b: adjusted_for(corpus, b).uu_vector() for b in corpus.book_names}


def pair_ground_metric():
    """Adjacent-transposition ground metric on the ten position pairs.

    Each pair (i, j) is embedded as the binary 5-tuple with ones at
    positions i and j.
    """
    tuples = []
    for i, j in pub.PAIR_ROWS:
        bits = ["0"] * 5
        bits[i - 1] = "1"
        bits[j - 1] = "1"
        tuples.append("".join(bits))
    return ground_adjacent_transposition(tuples)


def margin_cells(corpus: Corpus) -> list[Cell]:
    cells = []
    for book in corpus.book_names:
        margins = first_order(corpus.mass_function(book))
        printed = pub.FIRST_ORDER.get(book)
        for pos in range(5):
            cid = f"margins/{book}/pos{pos + 1}"
            cells.append(
                Cell(
                    id=cid,
                    computed=float(margins[pos]),
                    paper=None if printed is None else printed[pos],
                    tol=pub.MARGIN_TOL,
                    note=_note(cid),
                )
            )
    return cells


def adjusted_cells(corpus: Corpus) -> list[Cell]:
    cells = []
    adjusted = {b: adjusted_for(corpus, b) for b in corpus.book_names}
    for book in corpus.book_names:
        adj = adjusted[book]
        for r, (i, j) in enumerate(adj.pairs):
            if book == "Rep" and (i, j) in pub.ADJUSTED_FULL_REP:
                printed_row = pub.ADJUSTED_FULL_REP[(i, j)]
                for col, (name, (a, b)) in enumerate(_SIGNS.items()):
                    cid = f"adjusted/{book}/({i},{j})/{name}"
                    cells.append(
                        Cell(
                            id=cid,
                            computed=float(adj.ratios[r, a, b]),
                            paper=printed_row[col],
                            tol=pub.RATIO_TOL,
                            note=_note(cid),
                        )
                    )
            else:
                printed = pub.ADJUSTED_UU.get(book)
                cid = f"adjusted/{book}/({i},{j})/UU"
                cells.append(
                    Cell(
                        id=cid,
                        computed=float(adj.ratios[r, 1, 1]),
                        paper=None if printed is None else printed[r],
                        tol=pub.RATIO_TOL,
                        note=_note(cid),
                    )
                )
    for (a, b), quoted in pub.L1_FIGURES.items():
        if a in adjusted and b in adjusted:
            cid = f"l1/{a}-{b}"
            cells.append(
                Cell(
                    id=cid,
                    computed=l1_between_adjusted(adjusted[a], adjusted[b]),
                    paper=quoted,
                    tol=pub.L1_TOL,
                    note=_note(cid),
                )
            )
    return cells


def ranking_cells(corpus: Corpus, only: tuple[str, str] | None = None) -> list[Cell]:
    cells = []
    profiles = uu_profiles(corpus)
    ground = pair_ground_metric()
    for (metric, ref), ranks in pub.RANKING_TABLE.items():
        if ref not in profiles or (only is not None and (metric, ref) != only):
            continue
        # rank only the books the printed column ranks (the Laws columns
        # omit Rep, and Criticus is not in the corpus)
        pool = {b: v for b, v in profiles.items() if b == ref or b in ranks}
        ranked = rank_profiles(pool, reference=ref, metric=metric, ground=ground)
        computed_order = tuple(r.name for r in ranked if r.rank > 0)
        printed_order = pub.order_without(ranks, drop="Crit")
        cid = f"ranking/{metric}/{ref}"
        cells.append(
            Cell(
                id=cid,
                computed=" < ".join(computed_order),
                paper=" < ".join(printed_order),
                note=_note(cid),
            )
        )
        for r in ranked:
            if r.rank > 0:
                cells.append(
                    Cell(
                        id=f"ranking/{metric}/{ref}/distance/{r.name}",
                        computed=r.distance,
                    )
                )
    return cells


def scan_cells(corpus: Corpus) -> list[Cell]:
    cells = []
    books = corpus.book_names
    if "Rep" in books and "Laws" in books:
        scan = affine_scan(
            corpus.mass_function("Rep"), corpus.mass_function("Laws")
        )
        computed_top = tuple(e.z for e in scan.top(3))
        cells.append(
            Cell(
                id="scan/top3",
                computed=",".join(sorted(computed_top)),
                paper=",".join(sorted(pub.SCAN_TOP3)),
                note=_note("scan/top3"),
            )
        )
        for e in scan.top(5):
            cells.append(Cell(id=f"scan/contrast/{e.z}", computed=e.statistic))
        for z in pub.SCAN_TOP3:
            rank = next(
                i for i, e in enumerate(scan.entries, start=1) if e.z == z
            )
            cells.append(Cell(id=f"scan/rank-of/{z}", computed=rank))
    for z, ranks in pub.SCAN_RANKS.items():
        dz = {}
        for book in books:
            f = corpus.mass_function(book)
            dz[book] = float(fourier_z2k(f)[int(z, 2)])
        order = tuple(sorted(dz, key=lambda b: -dz[b]))
        printed = pub.order_without(ranks, drop="Crit")
        # the two blocks of a partition are unordered: accept either direction
        match = order if (order == printed or order[::-1] == printed) else order
        cid = f"scan/order/{z}"
        cells.append(
            Cell(
                id=cid,
                computed=" > ".join(match),
                paper=" > ".join(printed),
                note=_note(cid),
            )
        )
        for book in sorted(dz):
            cells.append(Cell(id=f"scan/dz/{z}/{book}", computed=dz[book]))
    return cells


def republic_moment_cells(corpus: Corpus) -> list[Cell]:
    if "Rep" not in corpus.book_names:
        return []
    f = corpus.mass_function("Rep")
    n = f.space.n
    mu2 = float(((f.values - f.total / n) ** 2).sum())
    cells = [
        Cell(
            id="republic/mu2",
            computed=mu2,
            paper=pub.REPUBLIC_MU2,
            tol=pub.REPUBLIC_MU2_TOL,
            note=_note("republic/mu2"),
        )
    ]
    base = base_affine(5, 1)
    eps = pub.REPUBLIC_CONCENTRATION["eps"]
    bound, frac = chebyshev_fraction(f, base, eps)
    moments = design_moments(f, base)
    # the concentration claim is recorded as checked empirically, not asserted
    cells.append(
        Cell(
            id="republic/concentration/fraction-within",
            computed=1.0 - frac,
            note=f"quoted {pub.REPUBLIC_CONCENTRATION['claimed_fraction_within']:.2f} "
            f"within {eps}; recorded, not asserted",
        )
    )
    cells.append(Cell(id="republic/concentration/chebyshev-bound", computed=bound))
    cells.append(Cell(id="republic/transform-variance", computed=moments.exact_var))
    return cells


def reproduce_margin_tables(corpus: Corpus) -> Report:
    report = Report(subcommand="margins+adjust", config={"books": list(corpus.book_names)})
    report.cells = margin_cells(corpus) + adjusted_cells(corpus)
    _annotate(report)
    return report


def reproduce_rankings(corpus: Corpus) -> Report:
    report = Report(subcommand="rankings", config={"books": list(corpus.book_names)})
    report.cells = ranking_cells(corpus) + scan_cells(corpus)
    report.notes.append(
        "Criticus is not part of the embedded corpus; printed rank columns are "
        "compared with the Criticus row removed."
    )
    _annotate(report)
    return report


def plato_report(corpus: Corpus) -> Report:
    report = Report(subcommand="plato-report", config={"books": list(corpus.book_names)})
    report.cells = (
        margin_cells(corpus)
        + adjusted_cells(corpus)
        + ranking_cells(corpus)
        + scan_cells(corpus)
        + republic_moment_cells(corpus)
    )
    report.notes.append(
        "Criticus is not part of the embedded corpus; printed rank columns are "
        "compared with the Criticus row removed."
    )
    _annotate(report)
    return report


def _annotate(report: Report):
    failed = report.failures()
    documented = [c for c in failed if c.note]
    if documented:
        report.notes.append(
            f"{len(documented)} printed cells are inconsistent with the printed "
            "corpus itself and fail by construction; each carries a note."
        )
