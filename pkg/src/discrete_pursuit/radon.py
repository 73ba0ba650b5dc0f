"""Block-sum (finite Radon) transform, design inversion and the Z_2^k Fourier link.

The transform of a mass function f over a base is the vector of block sums
fbar(y) = sum_{x in y} f(x).  When the base is a 2-design with more than one
block the transform is injective; summing the transform over the blocks
containing a point x gives (k_rep - l_pair) f(x) + l_pair mu(f), which
inverts to

    f(x) = [ sum_{y : x in y} fbar(y) - l_pair * mu(f) ] / (k_rep - l_pair),

with mu(f) recovered as sum_y fbar(y) / k_rep.  On Z_2^k the hyperplane
transform carries the same information as the +-1 Fourier transform:
fhat(z) = 2 fbar(y_z^0) - mu(f).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spaces import DiscreteSpace, NotADesignError, ProjectionBase, design_params

__all__ = [
    "MassFunction",
    "TransformValues",
    "delta_mass",
    "fourier_z2k",
    "invert",
    "mass_function",
    "transform",
    "uniform_mass",
]

PROBABILITY_TOL = 1e-9


@dataclass(frozen=True)
class MassFunction:
    """Real weights on a discrete space; mu(f) is the total mass."""

    space: DiscreteSpace
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (self.space.n,):
            raise ValueError(f"expected {self.space.n} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("mass function values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def total(self) -> float:
        return float(self.values.sum())

    @property
    def is_probability(self) -> bool:
        return bool(
            np.all(self.values >= 0) and abs(self.total - 1.0) <= PROBABILITY_TOL
        )

    def __getitem__(self, label) -> float:
        return float(self.values[self.space.index(label)])


def mass_function(space: DiscreteSpace, values) -> MassFunction:
    return MassFunction(space=space, values=np.asarray(values, dtype=np.float64))


def delta_mass(space: DiscreteSpace, label) -> MassFunction:
    v = np.zeros(space.n)
    v[space.index(label)] = 1.0
    return MassFunction(space=space, values=v)


def uniform_mass(space: DiscreteSpace) -> MassFunction:
    return MassFunction(space=space, values=np.full(space.n, 1.0 / space.n))


@dataclass(frozen=True)
class TransformValues:
    """Per-block transform values, keyed by block id through the base."""

    base: ProjectionBase
    values: np.ndarray  # aligned with base.blocks

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.shape != (self.base.num_blocks,):
            raise ValueError("one value per block required")
        object.__setattr__(self, "values", v)

    def __getitem__(self, block_id: str) -> float:
        return float(self.values[self.base.block_position(block_id)])

    def as_dict(self) -> dict[str, float]:
        return {b.id: float(v) for b, v in zip(self.base.blocks, self.values)}


def _check_same_space(f: MassFunction, base: ProjectionBase):
    if f.space.labels == base.space.labels:
        return
    # Z_2^k spaces index elements canonically (integer order), so relabelled
    # copies of the same k are the same space
    if f.space.is_z2k and base.space.is_z2k and f.space.k == base.space.k:
        return
    raise ValueError("mass function and base live on different spaces")


def transform(f: MassFunction, base: ProjectionBase) -> TransformValues:
    """Block sums fbar(y) = sum_{x in y} f(x) for every block of the base."""
    _check_same_space(f, base)
    return TransformValues(base=base, values=base.incidence() @ f.values)


def invert(fbar: TransformValues, base: ProjectionBase | None = None) -> MassFunction:
    """Invert the transform of a 2-design base.

    Refuses bases that are not designs (no pseudo-inverse fallback) and
    single-block designs, where k_rep = l_pair kills the formula.
    """
    base = fbar.base if base is None else base
    if base is not fbar.base and [b.id for b in base.blocks] != [
        b.id for b in fbar.base.blocks
    ]:
        raise ValueError("transform values belong to a different base")
    params = design_params(base)  # raises NotADesignError if not a design
    if params.num_blocks <= 1:
        raise NotADesignError(
            "multiple-blocks", "inversion needs more than one block", witness=None
        )
    k, l = params.k_rep, params.l_pair
    total = float(fbar.values.sum()) / k  # mu(f): each point counted k times
    point_sums = base.incidence().T @ fbar.values
    values = (point_sums - l * total) / (k - l)
    return MassFunction(space=base.space, values=values)


def fourier_z2k(f: MassFunction) -> np.ndarray:
    """The +-1 Fourier transform fhat(z) = sum_x (-1)^(x.z) f(x) on Z_2^k.

    Returned indexed by the integer value of z (position 1 = MSB);
    computed with the fast Walsh-Hadamard butterfly in natural ordering.
    """
    if not f.space.is_z2k:
        raise ValueError("Fourier transform requires a Z_2^k space")
    out = f.values.copy()
    h = 1
    n = out.size
    while h < n:
        for start in range(0, n, 2 * h):
            a = out[start : start + h].copy()
            b = out[start + h : start + 2 * h].copy()
            out[start : start + h] = a + b
            out[start + h : start + 2 * h] = a - b
        h *= 2
    return out
