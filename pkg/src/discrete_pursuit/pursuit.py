"""Projection extraction and the search for least-uniform directions.

A projection of a mass function in direction p is the vector of block sums
over the blocks of the partition p.  Its discrepancy is the L1 deviation
from the flat level c/n; the least-uniform partition maximizes a chosen
non-uniformity index over all partitions of a resolved base.  For binary
tuple data this module also computes first-order margins, second-order
margins adjusted by marginal products, and the all-hyperplane contrast scan
between two distributions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .metrics import GroundMetric, hellinger, profile_distance, tv, wasserstein
from .radon import MassFunction, transform
from .spaces import ProjectionBase, bits_of

__all__ = [
    "AdjustedMargins",
    "Projection",
    "RankedProfile",
    "ScanEntry",
    "ScanResult",
    "adjusted_second_order",
    "affine_scan",
    "discrepancy",
    "first_order",
    "l1_between_adjusted",
    "least_uniform",
    "pair_order",
    "projection_of",
    "rank_profiles",
]

MASS_WINDOW = 0.05  # as-given margins require totals this close to 1


@dataclass(frozen=True)
class Projection:
    """Block sums of a mass function over one partition."""

    partition_id: str
    block_ids: tuple
    values: np.ndarray
    reference: float  # flat level c/n
    total: float  # mu(f), for consistency checks

    def __post_init__(self):
        if abs(self.values.sum() - self.total) > 1e-9:
            raise ValueError("projection values do not sum to the total mass")


def projection_of(
    f: MassFunction, base: ProjectionBase, partition_id: str
) -> Projection:
    """The projection of f in the direction of one partition of the base."""
    if not base.is_resolved:
        raise ValueError("base is not resolved into partitions")
    if partition_id not in base.partitions:
        raise KeyError(f"unknown partition {partition_id!r}")
    fbar = transform(f, base)
    bids = tuple(base.partitions[partition_id])
    values = np.array([fbar[bid] for bid in bids])
    return Projection(
        partition_id=partition_id,
        block_ids=bids,
        values=values,
        reference=base.block_size / base.space.n,
        total=f.total,
    )


def discrepancy(proj: Projection) -> float:
    """L1 deviation of a projection from the flat level c/n."""
    return float(np.abs(proj.values - proj.reference).sum())


def _index_score(proj: Projection, index: str, ground: GroundMetric | None) -> float:
    if index == "discrepancy":
        return discrepancy(proj)
    total = proj.values.sum()
    if total <= 0:
        raise ValueError("projection has no mass to normalize")
    p = proj.values / total
    u = np.full(p.size, 1.0 / p.size)
    if index == "tv":
        return tv(p, u)
    if index == "hellinger":
        return hellinger(p, u)
    if index == "wasserstein":
        if ground is None:
            raise ValueError("wasserstein index needs a ground metric over block ids")
        pos = [ground.labels.index(bid) for bid in proj.block_ids]
        sub = GroundMetric(
            labels=tuple(proj.block_ids), dist=ground.dist[np.ix_(pos, pos)]
        )
        return wasserstein(p, u, sub)
    raise ValueError(f"unknown index {index!r}")


def least_uniform(
    f: MassFunction,
    base: ProjectionBase,
    index: str = "discrepancy",
    ground: GroundMetric | None = None,
) -> tuple[str, float, Projection]:
    """Exhaustive scan for the partition maximizing the chosen index.

    Ties break to the earliest partition in the base's partition order
    (for the hyperplane base that is ascending integer value of z).
    """
    if not base.is_resolved:
        raise ValueError("base is not resolved into partitions")
    best = None
    for pid in base.partition_ids():
        proj = projection_of(f, base, pid)
        score = _index_score(proj, index, ground)
        if best is None or score > best[1] + 1e-15:
            best = (pid, score, proj)
    return best


def _margin_masks(k: int) -> np.ndarray:
    # masks[i, x] = bit i+1 of x (position 1 = MSB)
    xs = np.arange(2**k)
    return np.array([(xs >> (k - 1 - i)) & 1 for i in range(k)], dtype=bool)


def _check_mass_window(f: MassFunction, mass_tol: float):
    if abs(f.total - 1.0) > mass_tol:
        raise ValueError(
            f"margins treat values as proportions; total mass {f.total:.4f} "
            f"is more than {mass_tol} away from 1 (renormalize first)"
        )


def first_order(f: MassFunction, mass_tol: float = MASS_WINDOW) -> np.ndarray:
    """Proportion with bit 1 in each position, values taken as given.

    Values are read as proportions without renormalizing, so printed
    percentage tables reproduce even when rounding makes the column total
    drift slightly from one; totals outside ``mass_tol`` of 1 are refused.
    """
    if not f.space.is_z2k:
        raise ValueError("first-order margins require a Z_2^k space")
    if f.total <= 0:
        raise ValueError("zero-mass function")
    _check_mass_window(f, mass_tol)
    masks = _margin_masks(f.space.k)
    return np.array([f.values[m].sum() for m in masks])


def pair_order(k: int) -> list[tuple[int, int]]:
    """Position pairs (1-based) in the row order used by the margin tables."""
    return [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]


@dataclass(frozen=True)
class AdjustedMargins:
    """Second-order margins divided by products of first-order margins.

    ``ratios[r, a, b]`` is the adjusted proportion of pattern (a, b) in the
    r-th position pair of :func:`pair_order`; exactly 1 under independence.
    ``pair_props`` holds the unadjusted pair proportions, ``margins`` the
    first-order margin vector, and ``defined`` flags cells whose marginal
    product is nonzero (degenerate margins make cells undefined).
    """

    k: int
    margins: np.ndarray
    pair_props: np.ndarray  # shape (num_pairs, 2, 2), index [r, a, b]
    ratios: np.ndarray
    defined: np.ndarray

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return pair_order(self.k)

    def uu_vector(self) -> np.ndarray:
        """Adjusted (1,1) ratios in pair order; the profile used for ranking."""
        if not self.defined[:, 1, 1].all():
            raise ValueError("undefined cells in the adjusted (1,1) column")
        return self.ratios[:, 1, 1].copy()

    def reconstruct(self, r: int, a: int, b: int) -> float:
        """Raw pair proportion recovered as ratio times marginal product."""
        i, j = self.pairs[r]
        mi = self.margins[i - 1] if a == 1 else 1.0 - self.margins[i - 1]
        mj = self.margins[j - 1] if b == 1 else 1.0 - self.margins[j - 1]
        return float(self.ratios[r, a, b] * mi * mj)


def adjusted_second_order(
    f: MassFunction, mass_tol: float = MASS_WINDOW
) -> AdjustedMargins:
    """Pair proportions divided by the products of first-order margins."""
    margins = first_order(f, mass_tol)
    k = f.space.k
    masks = _margin_masks(k)
    pairs = pair_order(k)
    num = len(pairs)
    props = np.zeros((num, 2, 2))
    ratios = np.full((num, 2, 2), np.nan)
    defined = np.zeros((num, 2, 2), dtype=bool)
    for r, (i, j) in enumerate(pairs):
        for a in (0, 1):
            for b in (0, 1):
                sel = (masks[i - 1] == bool(a)) & (masks[j - 1] == bool(b))
                props[r, a, b] = f.values[sel].sum()
                mi = margins[i - 1] if a == 1 else 1.0 - margins[i - 1]
                mj = margins[j - 1] if b == 1 else 1.0 - margins[j - 1]
                if mi * mj > 0:
                    ratios[r, a, b] = props[r, a, b] / (mi * mj)
                    defined[r, a, b] = True
    return AdjustedMargins(
        k=k, margins=margins, pair_props=props, ratios=ratios, defined=defined
    )


def l1_between_adjusted(a: AdjustedMargins, b: AdjustedMargins) -> float:
    """Sum of absolute differences of the adjusted (1,1) ratios over all pairs."""
    if a.k != b.k:
        raise ValueError("adjusted margins for different k")
    return float(np.abs(a.uu_vector() - b.uu_vector()).sum())


@dataclass(frozen=True)
class ScanEntry:
    z: str  # bitstring, position 1 = MSB
    statistic: float  # signed D_z(f) or D_z(f) - D_z(g)
    d_f: float
    d_g: float | None = None


@dataclass(frozen=True)
class ScanResult:
    """Hyperplane contrasts ranked by magnitude.

    Ranking is by |statistic| descending (the two blocks of a hyperplane
    partition are unordered, so the sign of D_z is a labelling artifact);
    ties break by ascending integer value of z.  The signed statistic is
    kept on each entry.
    """

    entries: list[ScanEntry] = field(default_factory=list)

    def top(self, m: int) -> list[ScanEntry]:
        return self.entries[:m]

    def argmax_set(self) -> set[str]:
        best = abs(self.entries[0].statistic)
        return {e.z for e in self.entries if abs(e.statistic) >= best - 1e-12}


def affine_scan(f: MassFunction, g: MassFunction | None = None) -> ScanResult:
    """Hyperplane projections D_z(h) = sum_{x.z=0} h - sum_{x.z=1} h, all z != 0.

    D_z(h) equals the Fourier coefficient of h at z.  With a second
    function the scan ranks the contrasts D_z(f) - D_z(g); alone it ranks
    D_z(f) itself.
    """
    if not f.space.is_z2k:
        raise ValueError("affine scan requires a Z_2^k space")
    if g is not None and g.space.labels != f.space.labels:
        raise ValueError("functions live on different spaces")
    from .radon import fourier_z2k

    df = fourier_z2k(f)
    dg = fourier_z2k(g) if g is not None else None
    k = f.space.k
    entries = []
    for z in range(1, 2**k):
        stat = df[z] - dg[z] if dg is not None else df[z]
        entries.append(
            ScanEntry(
                z=format(z, f"0{k}b"),
                statistic=float(stat),
                d_f=float(df[z]),
                d_g=float(dg[z]) if dg is not None else None,
            )
        )
    entries.sort(key=lambda e: (-abs(e.statistic), int(e.z, 2)))
    return ScanResult(entries=entries)


@dataclass(frozen=True)
class RankedProfile:
    name: str
    distance: float
    normalized_distance: float
    mass_penalty: float
    rank: int


def rank_profiles(
    profiles: dict[str, np.ndarray],
    reference: str,
    metric: str = "tv",
    penalty: str = "abs",
    ground: GroundMetric | None = None,
) -> list[RankedProfile]:
    """Rank profiles by their penalized distance to a reference profile.

    The reference itself gets rank 0 and distance 0; the others get ranks
    1..m by ascending total distance (ties by name).
    """
    if reference not in profiles:
        raise KeyError(f"reference {reference!r} not among the profiles")
    if len(profiles) < 2:
        raise ValueError("need at least two profiles to rank")
    ref = profiles[reference]
    scored = []
    for name, vec in profiles.items():
        if name == reference:
            continue
        res = profile_distance(ref, vec, metric=metric, penalty=penalty, ground=ground)
        scored.append((res.total, name, res))
    scored.sort(key=lambda t: (t[0], t[1]))
    out = [
        RankedProfile(
            name=reference, distance=0.0, normalized_distance=0.0, mass_penalty=0.0, rank=0
        )
    ]
    for pos, (total, name, res) in enumerate(scored, start=1):
        out.append(
            RankedProfile(
                name=name,
                distance=total,
                normalized_distance=res.normalized_distance,
                mass_penalty=res.mass_penalty,
                rank=pos,
            )
        )
    return out
