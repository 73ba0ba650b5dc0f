"""Finite ground spaces, block systems and projection bases.

A projection base is a family of equal-size blocks of a finite set that can
be resolved into partitions ("directions").  Each partition plays the role
of a family of parallel lines: every point lies on exactly one line of the
partition.  Block systems where every point lies in the same number of
blocks and every pair in the same number of blocks are 2-designs; those are
exactly the bases for which the block-sum transform is invertible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Block",
    "DesignParams",
    "DiscreteSpace",
    "NotADesignError",
    "ProjectionBase",
    "base_affine",
    "base_from_quotient",
    "base_marginal_z2k",
    "base_pairs_z2k",
    "base_subsets",
    "design_params",
    "make_space",
    "merge_bases",
    "space_z2k",
]

DEFAULT_BLOCK_BUDGET = 10**6


class NotADesignError(ValueError):
    """Raised when a base fails one of the 2-design conditions.

    Carries which condition failed and a witness point or pair.
    """

    def __init__(self, condition: str, message: str, witness=None):
        super().__init__(message)
        self.condition = condition
        self.witness = witness


@dataclass(frozen=True)
class DiscreteSpace:
    """An ordered finite set with stable label <-> index mapping.

    ``structure`` marks spaces with extra algebraic meaning, e.g.
    ``("z2k", k)`` for binary k-tuples indexed by integer value with the
    first tuple position as the most significant bit.
    """

    labels: tuple
    structure: tuple | None = None

    def __post_init__(self):
        if len(self.labels) == 0:
            raise ValueError("a discrete space needs at least one element")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate labels in discrete space")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        return self._index_map[label]

    @property
    def _index_map(self) -> dict:
        # cached on first use; object is frozen so bypass __setattr__
        m = self.__dict__.get("_index_cache")
        if m is None:
            m = {lab: i for i, lab in enumerate(self.labels)}
            self.__dict__["_index_cache"] = m
        return m

    @property
    def is_z2k(self) -> bool:
        return self.structure is not None and self.structure[0] == "z2k"

    @property
    def k(self) -> int:
        if not self.is_z2k:
            raise ValueError("space is not of the form Z_2^k")
        return self.structure[1]


@dataclass(frozen=True)
class Block:
    """A block: a set of element indices with an opaque id."""

    id: str
    members: frozenset

    def __post_init__(self):
        if not self.members:
            raise ValueError(f"block {self.id!r} is empty")

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class ProjectionBase:
    """A class of equal-size blocks, optionally resolved into partitions.

    ``partitions`` maps partition id -> list of block ids.  When present,
    the partitions split the block list and each partition's blocks are
    pairwise disjoint with union equal to the whole space.
    ``equal_class_sizes`` is False only for quotient partitions whose
    classes differ in size; such bases are valid partitions but are
    rejected by :func:`design_params`.
    """

    space: DiscreteSpace
    blocks: list[Block]
    partitions: dict[str, list[str]] | None = None
    equal_class_sizes: bool = True
    _block_index: dict[str, int] = field(default_factory=dict, repr=False)
    _incidence: np.ndarray | None = field(default=None, repr=False)
    _design_params: "DesignParams | None" = field(default=None, repr=False)

    def __post_init__(self):
        if not self.blocks:
            raise ValueError("a projection base needs at least one block")
        self._block_index = {b.id: i for i, b in enumerate(self.blocks)}
        if len(self._block_index) != len(self.blocks):
            raise ValueError("duplicate block ids")
        n = self.space.n
        for b in self.blocks:
            if not all(0 <= m < n for m in b.members):
                raise ValueError(f"block {b.id!r} has members outside the space")
        sizes = {b.size for b in self.blocks}
        if self.equal_class_sizes and len(sizes) != 1:
            raise ValueError(f"blocks have unequal sizes {sorted(sizes)}")
        if self.partitions is not None:
            self._check_resolution()

    def _check_resolution(self):
        seen: list[str] = []
        n = self.space.n
        for pid, bids in self.partitions.items():
            cover = set()
            total = 0
            for bid in bids:
                if bid not in self._block_index:
                    raise ValueError(f"partition {pid!r} names unknown block {bid!r}")
                members = self.blocks[self._block_index[bid]].members
                cover |= members
                total += len(members)
            if total != n or len(cover) != n:
                raise ValueError(f"partition {pid!r} does not partition the space")
            seen.extend(bids)
        if sorted(seen) != sorted(self._block_index):
            raise ValueError("partitions do not split the block list")

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def block_size(self) -> int:
        return self.blocks[0].size

    @property
    def is_resolved(self) -> bool:
        return self.partitions is not None

    def block(self, block_id: str) -> Block:
        return self.blocks[self._block_index[block_id]]

    def block_position(self, block_id: str) -> int:
        return self._block_index[block_id]

    def incidence(self) -> np.ndarray:
        """0/1 matrix of shape (num_blocks, n); row b marks the members of block b."""
        if self._incidence is None:
            A = np.zeros((len(self.blocks), self.space.n), dtype=np.float64)
            for i, b in enumerate(self.blocks):
                A[i, sorted(b.members)] = 1.0
            self._incidence = A
        return self._incidence

    def partition_ids(self) -> list[str]:
        if self.partitions is None:
            raise ValueError("base is not resolved into partitions")
        return list(self.partitions)


@dataclass(frozen=True)
class DesignParams:
    """Parameters (n, c, k_rep, l_pair) of a 2-design.

    Every point lies in k_rep blocks, every pair of distinct points in
    l_pair blocks, all blocks have size c.  The counting identities
    |Y| * c = n * k_rep and (n - 1) * l_pair = k_rep * (c - 1) hold.
    """

    n: int
    c: int
    k_rep: int
    l_pair: int
    num_blocks: int

    def __post_init__(self):
        if self.num_blocks * self.c != self.n * self.k_rep:
            raise ValueError("block count identity |Y|c = nk violated")
        if (self.n - 1) * self.l_pair != self.k_rep * (self.c - 1):
            raise ValueError("pair count identity (n-1)l = k(c-1) violated")
        if self.num_blocks > 1 and self.k_rep <= self.l_pair:
            raise ValueError("k_rep must exceed l_pair when |Y| > 1")


def make_space(labels) -> DiscreteSpace:
    """Build a space from an ordered list of distinct labels."""
    return DiscreteSpace(labels=tuple(labels))


def bits_of(x: int, k: int) -> tuple[int, ...]:
    """Bit tuple of x, position 1 = most significant bit."""
    return tuple((x >> (k - 1 - i)) & 1 for i in range(k))


def space_z2k(k: int, labels=None) -> DiscreteSpace:
    """The space of binary k-tuples in integer order (position 1 = MSB).

    ``labels`` may supply alternative labels for the 2^k elements, given in
    the same integer order; defaults to bitstrings like "010".
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if labels is None:
        labels = tuple(format(x, f"0{k}b") for x in range(2**k))
    else:
        labels = tuple(labels)
        if len(labels) != 2**k:
            raise ValueError(f"expected {2**k} labels, got {len(labels)}")
    return DiscreteSpace(labels=labels, structure=("z2k", k))


def base_marginal_z2k(k: int) -> ProjectionBase:
    """Coordinate-margin base of Z_2^k: blocks {x : x_i = a}.

    One two-block partition per coordinate; block size 2^(k-1).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    space = space_z2k(k)
    blocks = []
    partitions: dict[str, list[str]] = {}
    for i in range(1, k + 1):
        pid = f"x{i}"
        partitions[pid] = []
        for a in (0, 1):
            members = frozenset(x for x in range(2**k) if bits_of(x, k)[i - 1] == a)
            bid = f"x{i}={a}"
            blocks.append(Block(id=bid, members=members))
            partitions[pid].append(bid)
    return ProjectionBase(space=space, blocks=blocks, partitions=partitions)


def base_pairs_z2k(k: int) -> ProjectionBase:
    """Second-order margin base: blocks {x : x_i = a, x_j = b} for i < j.

    One four-block partition per coordinate pair; block size 2^(k-2).
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    space = space_z2k(k)
    blocks = []
    partitions: dict[str, list[str]] = {}
    for i, j in itertools.combinations(range(1, k + 1), 2):
        pid = f"x{i}x{j}"
        partitions[pid] = []
        for a in (0, 1):
            for b in (0, 1):
                members = frozenset(
                    x
                    for x in range(2**k)
                    if bits_of(x, k)[i - 1] == a and bits_of(x, k)[j - 1] == b
                )
                bid = f"x{i}={a},x{j}={b}"
                blocks.append(Block(id=bid, members=members))
                partitions[pid].append(bid)
    return ProjectionBase(space=space, blocks=blocks, partitions=partitions)


def _dot2(x: int, z: int) -> int:
    return bin(x & z).count("1") & 1


def _span_nonzero(vectors: tuple[int, ...]) -> frozenset:
    """Nonzero elements of the GF(2) span of the given integer bit-vectors."""
    span = {0}
    for v in vectors:
        span |= {s ^ v for s in span}
    return frozenset(span - {0})


def base_affine(k: int, j: int = 1, budget: int = DEFAULT_BLOCK_BUDGET) -> ProjectionBase:
    """Affine planes of codimension j in Z_2^k as a projection base.

    j = 1 gives the affine hyperplanes {x : x.z = a (mod 2)} for nonzero z:
    2(2^k - 1) blocks of size 2^(k-1), one two-block partition per z.  For
    general j, each j-dimensional subspace Z of the dual space yields one
    partition of the space into the 2^j level sets of x -> (x.z)_{z in Z};
    blocks have size 2^(k-j).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 1 <= j <= k - 1 and not (k == 1 and j == 1):
        raise ValueError(f"codimension j={j} out of range for k={k}")
    space = space_z2k(k)
    blocks = []
    partitions: dict[str, list[str]] = {}
    if j == 1:
        if 2 * (2**k - 1) > budget:
            raise ValueError("hyperplane enumeration exceeds block budget")
        for z in range(1, 2**k):
            zid = format(z, f"0{k}b")
            pid = f"z={zid}"
            partitions[pid] = []
            for a in (0, 1):
                members = frozenset(x for x in range(2**k) if _dot2(x, z) == a)
                bid = f"z={zid}:a={a}"
                blocks.append(Block(id=bid, members=members))
                partitions[pid].append(bid)
        return ProjectionBase(space=space, blocks=blocks, partitions=partitions)

    # general codimension: enumerate j-dimensional subspaces of the dual by
    # canonicalising the span of every independent j-tuple
    seen: set[frozenset] = set()
    subspaces: list[tuple[frozenset, tuple[int, ...]]] = []
    for combo in itertools.combinations(range(1, 2**k), j):
        span = _span_nonzero(combo)
        if len(span) != 2**j - 1 or span in seen:
            continue
        seen.add(span)
        basis = tuple(sorted(combo))
        subspaces.append((span, basis))
        if len(subspaces) * 2**j > budget:
            raise ValueError("affine plane enumeration exceeds block budget")
    subspaces.sort(key=lambda item: tuple(sorted(item[0])))
    for span, basis in subspaces:
        zkey = ".".join(format(z, f"0{k}b") for z in basis)
        pid = f"Z={zkey}"
        partitions[pid] = []
        cells: dict[tuple[int, ...], list[int]] = {}
        for x in range(2**k):
            sig = tuple(_dot2(x, z) for z in basis)
            cells.setdefault(sig, []).append(x)
        for sig in sorted(cells):
            bid = f"Z={zkey}:a={''.join(map(str, sig))}"
            blocks.append(Block(id=bid, members=frozenset(cells[sig])))
            partitions[pid].append(bid)
    return ProjectionBase(space=space, blocks=blocks, partitions=partitions)


def affine_plane_count(k: int, j: int) -> int:
    """Number of codimension-j affine planes in Z_2^k (Gaussian binomial times 2^j)."""
    num = 1
    den = 1
    for i in range(j):
        num *= 2**k - 2**i
        den *= 2**j - 2**i
    return 2**j * (num // den)


def base_subsets(
    n: int,
    c: int,
    budget: int = DEFAULT_BLOCK_BUDGET,
    space: DiscreteSpace | None = None,
) -> ProjectionBase:
    """All c-subsets of an n-set, as an unresolved block system.

    The resolution into partitions exists when c divides n but constructing
    one is out of scope; the returned base has ``partitions=None``.  When
    ``space`` is given its elements are used (its size must be n).
    """
    if not 1 <= c <= n:
        raise ValueError("need 1 <= c <= n")
    count = math.comb(n, c)
    if count > budget:
        raise ValueError(f"{count} blocks exceed enumeration budget {budget}")
    if space is None:
        space = make_space(list(range(n)))
    elif space.n != n:
        raise ValueError("space size does not match n")
    blocks = [
        Block(id="s" + ".".join(map(str, combo)), members=frozenset(combo))
        for combo in itertools.combinations(range(n), c)
    ]
    return ProjectionBase(space=space, blocks=blocks, partitions=None)


def base_from_quotient(space: DiscreteSpace, label_fn) -> ProjectionBase:
    """Partition a space into the level sets of a class-label function.

    Returns a base with a single partition.  Unequal class sizes are
    allowed (``equal_class_sizes`` is set to False); such bases are valid
    projections but fail the design conditions.
    """
    classes: dict = {}
    for i, lab in enumerate(space.labels):
        classes.setdefault(label_fn(lab), []).append(i)
    keys = sorted(classes, key=lambda c: min(classes[c]))
    blocks = [
        Block(id=f"q{pos}={key!r}", members=frozenset(classes[key]))
        for pos, key in enumerate(keys)
    ]
    sizes = {len(b.members) for b in blocks}
    return ProjectionBase(
        space=space,
        blocks=blocks,
        partitions={"q": [b.id for b in blocks]},
        equal_class_sizes=len(sizes) == 1,
    )


def merge_bases(bases: list[ProjectionBase]) -> ProjectionBase:
    """Combine single-partition (or resolved) bases over the same space.

    The partitions of the inputs become the partitions of the result; all
    blocks must share one size for the result to be a projection base.
    """
    if not bases:
        raise ValueError("no bases to merge")
    space = bases[0].space
    blocks = []
    partitions: dict[str, list[str]] = {}
    for pos, base in enumerate(bases):
        if base.space.labels != space.labels:
            raise ValueError("bases live on different spaces")
        if base.partitions is None:
            raise ValueError("can only merge resolved bases")
        for pid, bids in base.partitions.items():
            new_pid = f"p{pos}.{pid}"
            partitions[new_pid] = []
            for bid in bids:
                blk = base.block(bid)
                new_bid = f"p{pos}.{bid}"
                blocks.append(Block(id=new_bid, members=blk.members))
                partitions[new_pid].append(new_bid)
    return ProjectionBase(space=space, blocks=blocks, partitions=partitions)


def design_params(base: ProjectionBase) -> DesignParams:
    """Verify the 2-design conditions exactly and return the parameters.

    Raises :class:`NotADesignError` with the failed condition and a witness
    point or pair when the base is not a design.  The verified parameters
    are cached on the base.
    """
    if base._design_params is not None:
        return base._design_params
    if not base.equal_class_sizes:
        sizes = sorted({b.size for b in base.blocks})
        raise NotADesignError(
            "constant-block-size", f"blocks have unequal sizes {sizes}", witness=sizes
        )
    A = base.incidence()
    n = base.space.n
    c = base.block_size
    point_counts = A.sum(axis=0).astype(np.int64)
    k_rep = int(point_counts[0])
    if not np.all(point_counts == k_rep):
        x = int(np.argmax(point_counts != k_rep))
        raise NotADesignError(
            "constant-point-replication",
            f"point {base.space.labels[x]!r} lies in {int(point_counts[x])} blocks, "
            f"point {base.space.labels[0]!r} in {k_rep}",
            witness=base.space.labels[x],
        )
    pair_counts = (A.T @ A).astype(np.int64)
    off = pair_counts[np.triu_indices(n, k=1)]
    if n > 1:
        l_pair = int(off[0])
        if not np.all(off == l_pair):
            iu = np.triu_indices(n, k=1)
            bad = int(np.argmax(off != l_pair))
            x, y = int(iu[0][bad]), int(iu[1][bad])
            raise NotADesignError(
                "constant-pair-count",
                f"pair ({base.space.labels[x]!r}, {base.space.labels[y]!r}) lies in "
                f"{int(off[bad])} blocks, pair ({base.space.labels[0]!r}, "
                f"{base.space.labels[1]!r}) in {l_pair}",
                witness=(base.space.labels[x], base.space.labels[y]),
            )
    else:
        l_pair = 0
    params = DesignParams(
        n=n, c=c, k_rep=k_rep, l_pair=l_pair, num_blocks=base.num_blocks
    )
    base._design_params = params
    return params
