"""Distances between nonnegative profiles: total variation, Hellinger, Wasserstein.

The Hellinger form here is the squared variant sum (sqrt p_i - sqrt q_i)^2,
kept in that form because the published rankings use it verbatim; pass
``normalized=True`` for the conventional [0, 1] distance.  Wasserstein costs
are computed exactly by min-cost flow over a ground metric on the support.
Profiles with unequal mass are compared by normalizing and adding a
mass-difference penalty.
"""

from __future__ import annotations

import csv
import warnings
from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .flow import min_cost_transport

__all__ = [
    "GroundMetric",
    "ProfileDistanceResult",
    "ground_adjacent_transposition",
    "ground_from_csv",
    "ground_to_csv",
    "ground_zero_one",
    "hellinger",
    "profile_distance",
    "tv",
    "wasserstein",
]

MASS_TOL = 1e-9


@dataclass(frozen=True)
class GroundMetric:
    """A symmetric nonnegative distance matrix over labelled support points."""

    labels: tuple
    dist: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.dist, dtype=np.float64)
        m = len(self.labels)
        if d.shape != (m, m):
            raise ValueError("distance matrix shape does not match labels")
        if not np.allclose(d, d.T):
            raise ValueError("ground metric must be symmetric")
        if np.any(np.diag(d) != 0):
            raise ValueError("ground metric must have zero diagonal")
        if np.any(d < 0):
            raise ValueError("ground metric must be nonnegative")
        object.__setattr__(self, "dist", d)
        # triangle inequality is advisory: warn, don't refuse
        if np.any(d[:, None, :] > d[:, :, None] + d[None, :, :] + 1e-12):
            warnings.warn("ground metric violates the triangle inequality")

    @property
    def size(self) -> int:
        return len(self.labels)


def ground_zero_one(labels) -> GroundMetric:
    """Discrete 0/1 ground metric (distance 1 off the diagonal)."""
    m = len(labels)
    return GroundMetric(labels=tuple(labels), dist=np.ones((m, m)) - np.eye(m))


def _as_binary_tuple(t) -> tuple[int, ...]:
    if isinstance(t, str):
        vals = tuple(int(ch) for ch in t)
    else:
        vals = tuple(int(v) for v in t)
    if any(v not in (0, 1) for v in vals):
        raise ValueError(f"not a binary tuple: {t!r}")
    return vals


def ground_adjacent_transposition(tuples) -> GroundMetric:
    """Shortest-path distance in the adjacent-transposition graph.

    Vertices are all binary tuples with the same length and number of ones
    as the inputs; two tuples are adjacent when they differ by swapping one
    pair of neighbouring coordinates.  Distances are computed by BFS, so
    they are exact graph distances.
    """
    pts = [_as_binary_tuple(t) for t in tuples]
    if not pts:
        raise ValueError("no tuples given")
    L = len(pts[0])
    w = sum(pts[0])
    for t, p in zip(tuples, pts):
        if len(p) != L or sum(p) != w:
            raise ValueError(f"tuple {t!r} has different length or weight")

    def neighbours(p):
        for i in range(L - 1):
            if p[i] != p[i + 1]:
                q = list(p)
                q[i], q[i + 1] = q[i + 1], q[i]
                yield tuple(q)

    def bfs(start):
        seen = {start: 0}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in neighbours(u):
                if v not in seen:
                    seen[v] = seen[u] + 1
                    queue.append(v)
        return seen

    m = len(pts)
    d = np.zeros((m, m))
    for i, p in enumerate(pts):
        reach = bfs(p)
        for j, q in enumerate(pts):
            d[i, j] = reach[q]
    labels = tuple(
        t if isinstance(t, str) else "".join(map(str, p)) for t, p in zip(tuples, pts)
    )
    return GroundMetric(labels=labels, dist=d)


def tv(p, q) -> float:
    """Total variation distance: half the L1 distance."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError("vectors have different lengths")
    return float(0.5 * np.abs(p - q).sum())


def hellinger(p, q, normalized: bool = False) -> float:
    """Squared-form Hellinger sum (sqrt p_i - sqrt q_i)^2.

    With ``normalized=True`` returns sqrt(value / 2), the metric scaled
    into [0, 1] for probability vectors.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError("vectors have different lengths")
    if np.any(p < 0) or np.any(q < 0):
        raise ValueError("Hellinger needs nonnegative entries")
    val = float(((np.sqrt(p) - np.sqrt(q)) ** 2).sum())
    return float(np.sqrt(val / 2.0)) if normalized else val


def wasserstein(p, q, ground: GroundMetric, mass_tol: float = MASS_TOL) -> float:
    """Exact optimal-transport cost between two probability vectors.

    Masses are converted to exact fractions and both sides normalized to
    total exactly one, so the min-cost flow solves the transport LP
    exactly; callers with unnormalized profiles should go through
    :func:`profile_distance`.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape or p.shape != (ground.size,):
        raise ValueError("vectors must match the ground metric support")
    if np.any(p < 0) or np.any(q < 0):
        raise ValueError("negative mass")
    if abs(p.sum() - q.sum()) > mass_tol:
        raise ValueError(
            f"mass mismatch {p.sum()} vs {q.sum()} beyond tolerance {mass_tol}"
        )
    if p.sum() <= 0:
        raise ValueError("zero-total vector")
    pf = [Fraction(float(v)) for v in p]
    qf = [Fraction(float(v)) for v in q]
    ps, qs = sum(pf), sum(qf)
    pf = [v / ps for v in pf]
    qf = [v / qs for v in qf]
    return min_cost_transport(pf, qf, ground.dist.tolist())


@dataclass(frozen=True)
class ProfileDistanceResult:
    """Distance between normalized profiles plus a mass penalty."""

    normalized_distance: float
    mass_penalty: float
    metric: str
    penalty: str

    @property
    def total(self) -> float:
        return self.normalized_distance + self.mass_penalty


def profile_distance(
    p,
    q,
    metric: str = "tv",
    penalty: str = "abs",
    ground: GroundMetric | None = None,
) -> ProfileDistanceResult:
    """Compare nonnegative profiles that need not be probability vectors.

    Each profile is normalized by its total; the chosen metric is applied
    to the normalized vectors and a penalty for the mass difference is
    added: |pbar - qbar| for tv and wasserstein, and either that or
    (sqrt pbar - sqrt qbar)^2 (``penalty="sqrt"``) for hellinger.
    """
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise ValueError("profiles have different lengths")
    if np.any(p < 0) or np.any(q < 0):
        raise ValueError("profiles must be nonnegative")
    pbar, qbar = float(p.sum()), float(q.sum())
    if pbar <= 0 or qbar <= 0:
        raise ValueError("zero-total profile")
    if penalty not in ("abs", "sqrt"):
        raise ValueError(f"unknown penalty variant {penalty!r}")
    if penalty == "sqrt" and metric != "hellinger":
        raise ValueError("the sqrt penalty variant applies to hellinger only")
    pt, qt = p / pbar, q / qbar
    if metric == "tv":
        d = tv(pt, qt)
    elif metric == "hellinger":
        d = hellinger(pt, qt)
    elif metric == "wasserstein":
        if ground is None:
            raise ValueError("wasserstein needs a ground metric")
        d = wasserstein(pt, qt, ground)
    else:
        raise ValueError(f"unknown metric {metric!r}")
    if metric == "hellinger" and penalty == "sqrt":
        pen = (np.sqrt(pbar) - np.sqrt(qbar)) ** 2
    else:
        pen = abs(pbar - qbar)
    return ProfileDistanceResult(
        normalized_distance=float(d),
        mass_penalty=float(pen),
        metric=metric,
        penalty=penalty,
    )


def ground_to_csv(ground: GroundMetric, path):
    """Write a ground metric as a CSV matrix with label headers."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([""] + list(ground.labels))
        for lab, row in zip(ground.labels, ground.dist):
            writer.writerow([lab] + [repr(float(v)) for v in row])


def ground_from_csv(path) -> GroundMetric:
    """Read a ground metric written by :func:`ground_to_csv`."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError("empty ground metric file")
    labels = tuple(rows[0][1:])
    d = np.zeros((len(labels), len(labels)))
    if len(rows) != len(labels) + 1:
        raise ValueError("row count does not match header")
    for i, row in enumerate(rows[1:]):
        if row[0] != labels[i]:
            raise ValueError(f"row label {row[0]!r} does not match header order")
        d[i] = [float(v) for v in row[1:]]
    return GroundMetric(labels=labels, dist=d)
