"""Element subsets (bitmaps) and ideal embeddings."""
from __future__ import annotations

import functools
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from rickart_tb.domain.errors import InvariantBreachError, RingMismatchError, WithinNotIdealError
from rickart_tb.domain.ring import FiniteRing, RingElement

RIGHT_IDEAL = "right ideal"
LEFT_IDEAL = "left ideal"
TWO_SIDED_IDEAL = "two-sided ideal"
IDEAL_TAGS = frozenset({RIGHT_IDEAL, LEFT_IDEAL, TWO_SIDED_IDEAL})


@dataclass(frozen=True, eq=False)
class ElementSubset:
    """Membership bitmap over the canonical element order of one ring."""

    ring_id: str
    bitmap: np.ndarray
    tag: Optional[str] = None

    @functools.cached_property
    def cardinality(self) -> int:
        return int(np.count_nonzero(self.bitmap))

    @functools.cached_property
    def key(self) -> bytes:
        return np.packbits(self.bitmap).tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementSubset):
            return NotImplemented
        return self.ring_id == other.ring_id and np.array_equal(self.bitmap, other.bitmap)

    def __hash__(self) -> int:
        return hash((self.ring_id, self.key))

    def __contains__(self, index: int) -> bool:
        return bool(self.bitmap[index])

    def __len__(self) -> int:
        return self.cardinality

    def indices(self) -> np.ndarray:
        return np.flatnonzero(self.bitmap)

    def is_zero(self) -> bool:
        return self.cardinality == 1 and bool(self.bitmap[0])

    def is_whole(self) -> bool:
        return bool(self.bitmap.all())

    def issubset(self, other: "ElementSubset") -> bool:
        self._same_ring(other)
        return not np.any(self.bitmap & ~other.bitmap)

    def intersection(self, other: "ElementSubset") -> "ElementSubset":
        self._same_ring(other)
        tag = self.tag if self.tag == other.tag else None
        return make_subset(self.ring_id, self.bitmap & other.bitmap, tag)

    def _same_ring(self, other: "ElementSubset") -> None:
        if other.ring_id != self.ring_id:
            raise RingMismatchError("subsets belong to different rings")


def make_subset(ring_id: str, bitmap: np.ndarray, tag: Optional[str] = None) -> ElementSubset:
    frozen = np.array(bitmap, dtype=bool, copy=True)
    frozen.setflags(write=False)
    return ElementSubset(ring_id, frozen, tag)


def subset_from_indices(ring: FiniteRing, indices: np.ndarray, tag: Optional[str] = None) -> ElementSubset:
    bitmap = np.zeros(ring.cardinality, dtype=bool)
    bitmap[np.asarray(indices, dtype=np.int64)] = True
    return make_subset(ring.ring_id, bitmap, tag)


def whole_ring(ring: FiniteRing, tag: Optional[str] = TWO_SIDED_IDEAL) -> ElementSubset:
    return make_subset(ring.ring_id, np.ones(ring.cardinality, dtype=bool), tag)


def zero_ideal(ring: FiniteRing) -> ElementSubset:
    return subset_from_indices(ring, np.asarray([0]), TWO_SIDED_IDEAL)


def check_ideal_closure(
    ring: FiniteRing,
    subset: ElementSubset,
    *,
    side: str = "right",
    pair_cap: int = 2**22,
) -> None:
    """Assert the closure invariant behind a right/left ideal tag.

    Negation and multiplication by basis elements are always checked; pairwise
    addition only when |subset|^2 fits ``pair_cap``.
    """
    if subset.ring_id != ring.ring_id:
        raise RingMismatchError("subset does not belong to ring")
    if not subset.bitmap[0]:
        raise InvariantBreachError(f"{subset.tag} does not contain 0")
    members = ring.elements()[subset.bitmap]

    negated = ring.group.encode(ring.reduce(-members))
    if not subset.bitmap[negated].all():
        raise InvariantBreachError(f"{subset.tag} is not closed under negation")

    basis = np.eye(ring.rank, dtype=np.int64)
    for vector in basis:
        if side == "right":
            products = ring.mul_arrays(members, vector[None, :])
        else:
            products = ring.mul_arrays(vector[None, :], members)
        if not subset.bitmap[ring.group.encode(products)].all():
            raise InvariantBreachError(f"{subset.tag} is not closed under {side} multiplication")

    if len(members) ** 2 <= pair_cap:
        sums = ring.reduce(members[:, None, :] + members[None, :, :]).reshape(len(members) ** 2, ring.rank)
        if not subset.bitmap[ring.group.encode(sums)].all():
            raise InvariantBreachError(f"{subset.tag} is not closed under addition")


@dataclass(frozen=True)
class IdealEmbedding:
    """A ring ``sub`` sitting inside ``ambient`` as a two-sided ideal.

    Sub basis element i maps to ambient basis element ``positions[i]``; the ideal is
    the set of ambient vectors vanishing outside those positions.
    """

    ambient: FiniteRing
    sub: FiniteRing
    positions: tuple[int, ...]

    @functools.cached_property
    def _position_array(self) -> np.ndarray:
        return np.asarray(self.positions, dtype=np.int64).reshape(len(self.positions))

    @functools.cached_property
    def _outside(self) -> np.ndarray:
        mask = np.ones(self.ambient.rank, dtype=bool)
        mask[self._position_array] = False
        return mask

    def lift_arrays(self, coords: np.ndarray) -> np.ndarray:
        coords = np.atleast_2d(np.asarray(coords, dtype=np.int64))
        lifted = np.zeros((len(coords), self.ambient.rank), dtype=np.int64)
        lifted[:, self._position_array] = coords
        return lifted

    def lift(self, x: RingElement) -> RingElement:
        self.sub.check(x)
        return self.ambient.element(self.lift_arrays(np.asarray(x.coords))[0])

    def contains(self, x: RingElement) -> bool:
        self.ambient.check(x)
        return not any(c for c, out in zip(x.coords, self._outside) if out)

    def retract(self, x: RingElement) -> RingElement:
        if not self.contains(x):
            raise WithinNotIdealError(f"{x} does not lie in the embedded ideal")
        return self.sub.element(x.coords[p] for p in self.positions)

    def as_subset(self) -> ElementSubset:
        lifted = self.lift_arrays(self.sub.elements())
        return subset_from_indices(self.ambient, self.ambient.group.encode(lifted), TWO_SIDED_IDEAL)


def make_embedding(ambient: FiniteRing, sub: FiniteRing, positions: Sequence[int]) -> IdealEmbedding:
    """Validate that ``positions`` identify ``sub`` with a two-sided ideal of ``ambient``.

    Bilinearity makes the basis check complete: orders agree, sub products agree with
    ambient products, and ambient-basis x sub-basis products stay inside the image.
    """
    embedding = IdealEmbedding(ambient, sub, tuple(int(p) for p in positions))
    if len(set(embedding.positions)) != sub.rank:
        raise WithinNotIdealError("positions must be distinct")
    if any(ambient.orders[p] != d for p, d in zip(embedding.positions, sub.orders)):
        raise WithinNotIdealError("sub basis orders differ from ambient orders")

    pos = embedding._position_array
    lifted_sub_table = embedding.lift_arrays(sub.table.reshape(sub.rank * sub.rank, sub.rank))
    if not np.array_equal(lifted_sub_table, ambient.table[np.ix_(pos, pos)].reshape(sub.rank * sub.rank, ambient.rank)):
        raise WithinNotIdealError("sub multiplication differs from ambient multiplication")

    outside = embedding._outside
    left = ambient.table[:, pos, :]
    right = ambient.table[pos, :, :]
    if np.any(left[..., outside]) or np.any(right[..., outside]):
        raise WithinNotIdealError(f"{sub.provenance} is not a two-sided ideal of {ambient.provenance}")
    return embedding
