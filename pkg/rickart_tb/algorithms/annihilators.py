"""Annihilators, idempotents, projections and principal ideals by exhaustive scan."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from rickart_tb.algorithms.parallel import rows_per_chunk
from rickart_tb.config import Settings
from rickart_tb.domain.errors import (
    InvariantBreachError,
    NotIdempotentError,
    RingMismatchError,
    WithinNotIdealError,
)
from rickart_tb.domain.involution import Involution
from rickart_tb.domain.ring import FiniteRing, RingElement
from rickart_tb.domain.subsets import (
    IDEAL_TAGS,
    LEFT_IDEAL,
    RIGHT_IDEAL,
    ElementSubset,
    IdealEmbedding,
    check_ideal_closure,
    make_subset,
)

LOGGER = logging.getLogger(__name__)

Within = Union[None, ElementSubset, IdealEmbedding]


@dataclass(frozen=True)
class _Scope:
    """Where annihilator candidates come from and which ring owns the result."""

    owner: FiniteRing
    targets: np.ndarray
    members: Optional[np.ndarray] = None

    def expand(self, bitmap: np.ndarray) -> np.ndarray:
        if self.members is None:
            return bitmap
        full = np.zeros(self.owner.cardinality, dtype=bool)
        full[self.members] = bitmap
        return full


def _resolve_scope(ring: FiniteRing, within: Within, cap: int) -> _Scope:
    if within is None:
        return _Scope(ring, ring.elements(cap))
    if isinstance(within, IdealEmbedding):
        if within.ambient.ring_id != ring.ring_id:
            raise RingMismatchError("embedding ambient ring differs from the element's ring")
        return _Scope(within.sub, within.lift_arrays(within.sub.elements(cap)))
    if within.ring_id != ring.ring_id:
        raise RingMismatchError("within-subset belongs to another ring")
    if within.tag not in IDEAL_TAGS:
        raise WithinNotIdealError(f"within-subset is tagged {within.tag!r}, not an ideal")
    members = within.indices()
    return _Scope(ring, ring.elements(cap)[members], members)


class AnnihilatorScanner:
    """Annihilator bitmaps of ring elements against one fixed scope.

    Bitmaps are cached by element index; one scanner belongs to one thread.
    """

    def __init__(
        self,
        ring: FiniteRing,
        within: Within = None,
        *,
        side: str = "right",
        cap: int = 2**20,
    ) -> None:
        if side not in ("right", "left"):
            raise ValueError(f"side must be 'right' or 'left', got {side!r}")
        self.ring = ring
        self.side = side
        self.scope = _resolve_scope(ring, within, cap)
        self._cache: dict[int, np.ndarray] = {}
        self._max_chain = int(math.log2(max(2, self.scope.owner.cardinality))) + 2

    @property
    def owner(self) -> FiniteRing:
        return self.scope.owner

    def bitmaps(self, xs: np.ndarray) -> np.ndarray:
        """(B, |scope|) membership of the annihilator of each row of ``xs``."""
        xs = np.atleast_2d(np.asarray(xs, dtype=np.int64))
        if self.side == "right":
            mats = self.ring.left_mult_matrices(xs)
        else:
            mats = self.ring.right_mult_matrices(xs)
        targets = self.scope.targets
        batch = rows_per_chunk(len(targets) * max(1, self.ring.rank))
        out = np.empty((len(xs), len(targets)), dtype=bool)
        for start in range(0, len(xs), batch):
            products = self.ring.reduce(np.matmul(targets[None, :, :], mats[start : start + batch]))
            out[start : start + batch] = ~np.any(products, axis=2)
        return out

    def bitmap(self, coords: np.ndarray) -> np.ndarray:
        index = int(self.ring.group.encode(coords)[0])
        cached = self._cache.get(index)
        if cached is None:
            cached = self.bitmaps(coords)[0]
            self._cache[index] = cached
        return cached

    def chain_bitmaps(self, coords: np.ndarray, first: Optional[np.ndarray] = None) -> list[np.ndarray]:
        """r(x), r(x^2), ... up to the first n with r(x^n) = r(x^(n+1))."""
        x = np.atleast_2d(np.asarray(coords, dtype=np.int64))
        if first is None:
            current = self.bitmap(x)
        else:
            current = first
            self._cache.setdefault(int(self.ring.group.encode(x)[0]), first)
        chain = [current]
        power = x
        for _ in range(self._max_chain):
            power = self.ring.mul_arrays(power, x)
            following = self.bitmap(power)
            if np.array_equal(following, current):
                return chain
            if np.any(current & ~following):
                raise InvariantBreachError("annihilator chain is not monotone")
            chain.append(following)
            current = following
        raise InvariantBreachError("annihilator chain did not stabilize within the subgroup-length bound")

    def subset(self, bitmap: np.ndarray) -> ElementSubset:
        tag = RIGHT_IDEAL if self.side == "right" else LEFT_IDEAL
        return make_subset(self.owner.ring_id, self.scope.expand(bitmap), tag)


def right_annihilator(
    ring: FiniteRing,
    x: RingElement,
    within: Within = None,
    *,
    side: str = "right",
    check: bool = True,
    settings: Optional[Settings] = None,
) -> ElementSubset:
    """r(x) = {s : xs = 0} (``side='left'`` gives l(x) = {s : sx = 0}), optionally inside an ideal."""
    settings = settings or Settings()
    ring.check(x)
    scanner = AnnihilatorScanner(ring, within, side=side, cap=settings.exhaustive_cap)
    result = scanner.subset(scanner.bitmap(np.asarray(x.coords)))
    if check:
        check_ideal_closure(scanner.owner, result, side=side, pair_cap=settings.closure_check_cap)
    return result


def left_annihilator(
    ring: FiniteRing,
    x: RingElement,
    within: Within = None,
    *,
    check: bool = True,
    settings: Optional[Settings] = None,
) -> ElementSubset:
    return right_annihilator(ring, x, within, side="left", check=check, settings=settings)


def annihilator_chain(
    ring: FiniteRing,
    x: RingElement,
    within: Within = None,
    *,
    side: str = "right",
    settings: Optional[Settings] = None,
) -> list[ElementSubset]:
    """Annihilators of x, x^2, ... truncated at the first n with r(x^n) = r(x^(n+1))."""
    settings = settings or Settings()
    ring.check(x)
    scanner = AnnihilatorScanner(ring, within, side=side, cap=settings.exhaustive_cap)
    chain = [scanner.subset(b) for b in scanner.chain_bitmaps(np.asarray(x.coords))]
    LOGGER.debug("Chain of %s: sizes %s", ring.format_element(x), [c.cardinality for c in chain])
    return chain


# -- idempotents and projections ---------------------------------------------


def idempotent_indices(ring: FiniteRing, *, settings: Optional[Settings] = None) -> np.ndarray:
    settings = settings or Settings()
    elements = ring.elements(settings.exhaustive_cap)
    hits = []
    batch = rows_per_chunk(max(1, ring.rank) ** 2)
    for start in range(0, len(elements), batch):
        block = elements[start : start + batch]
        squares = ring.mul_arrays(block, block)
        hits.append(start + np.flatnonzero(np.all(squares == block, axis=1)))
    return np.concatenate(hits) if hits else np.zeros(0, dtype=np.int64)


def enumerate_idempotents(ring: FiniteRing, *, settings: Optional[Settings] = None) -> list[RingElement]:
    """All x with x^2 = x in canonical order."""
    return [ring.element_at(int(i)) for i in idempotent_indices(ring, settings=settings)]


def projection_indices(
    ring: FiniteRing,
    involution: Involution,
    *,
    settings: Optional[Settings] = None,
) -> np.ndarray:
    involution.check_ring(ring)
    indices = idempotent_indices(ring, settings=settings)
    if not len(indices):
        return indices
    candidates = ring.group.decode(indices)
    fixed = np.all(involution.apply_arrays(candidates) == candidates, axis=1)
    return indices[fixed]


def enumerate_projections(
    ring: FiniteRing,
    involution: Involution,
    *,
    settings: Optional[Settings] = None,
) -> list[RingElement]:
    """Idempotents fixed by the involution, canonical order."""
    return [ring.element_at(int(i)) for i in projection_indices(ring, involution, settings=settings)]


# -- principal and generated ideals ------------------------------------------


def principal_ideal_bitmap(ring: FiniteRing, coords: np.ndarray, *, side: str = "right", cap: int = 2**20) -> np.ndarray:
    """Bitmap of eR (``side='right'``) or Re (``side='left'``)."""
    e = np.atleast_2d(np.asarray(coords, dtype=np.int64))
    elements = ring.elements(cap)
    products = ring.mul_arrays(e, elements) if side == "right" else ring.mul_arrays(elements, e)
    bitmap = np.zeros(ring.cardinality, dtype=bool)
    bitmap[ring.group.encode(products)] = True
    return bitmap


def principal_right_ideal(
    ring: FiniteRing,
    e: RingElement,
    *,
    side: str = "right",
    settings: Optional[Settings] = None,
) -> ElementSubset:
    """eR for an idempotent e (``side='left'`` gives Re)."""
    settings = settings or Settings()
    ring.check(e)
    if ring.mul(e, e) != e:
        raise NotIdempotentError(f"{ring.format_element(e)} is not idempotent")
    bitmap = principal_ideal_bitmap(ring, np.asarray(e.coords), side=side, cap=settings.exhaustive_cap)
    return make_subset(ring.ring_id, bitmap, RIGHT_IDEAL if side == "right" else LEFT_IDEAL)


def principal_left_ideal(ring: FiniteRing, e: RingElement, *, settings: Optional[Settings] = None) -> ElementSubset:
    return principal_right_ideal(ring, e, side="left", settings=settings)


def generated_ideal_bitmap(ring: FiniteRing, coords: np.ndarray, *, side: str = "right", cap: int = 2**20) -> np.ndarray:
    """Bitmap of Zx + xR (or Zx + Rx for 'left')."""
    image = ring.elements(cap)[principal_ideal_bitmap(ring, coords, side=side, cap=cap)]
    x_row = np.asarray(coords, dtype=np.int64).reshape(ring.rank)
    order = ring.group.element_order(tuple(int(c) for c in x_row))
    bitmap = np.zeros(ring.cardinality, dtype=bool)
    for m in range(order):
        bitmap[ring.group.encode(ring.reduce(image + m * x_row))] = True
    return bitmap


def generated_right_ideal(ring: FiniteRing, x: RingElement, *, settings: Optional[Settings] = None) -> ElementSubset:
    """Smallest right ideal containing x: Zx + xR."""
    settings = settings or Settings()
    ring.check(x)
    bitmap = generated_ideal_bitmap(ring, np.asarray(x.coords), cap=settings.exhaustive_cap)
    return make_subset(ring.ring_id, bitmap, RIGHT_IDEAL)


# -- ring predicates ----------------------------------------------------------


def commutativity_witness(ring: FiniteRing) -> Optional[tuple[int, int]]:
    """First basis pair (i, j) with e_i e_j != e_j e_i, if any."""
    bad = np.argwhere(np.any(ring.table != ring.table.transpose(1, 0, 2), axis=2))
    return None if not len(bad) else (int(bad[0][0]), int(bad[0][1]))


def is_commutative(ring: FiniteRing) -> bool:
    return commutativity_witness(ring) is None


def find_unity(ring: FiniteRing, *, settings: Optional[Settings] = None) -> Optional[RingElement]:
    """Two-sided identity by scanning every element (first hit in canonical order)."""
    if ring.unity is not None:
        return ring.unity_element()
    settings = settings or Settings()
    elements = ring.elements(settings.exhaustive_cap)
    identity = np.eye(ring.rank, dtype=np.int64)
    batch = rows_per_chunk(max(1, ring.rank) ** 2)
    for start in range(0, len(elements), batch):
        block = elements[start : start + batch]
        left_ok = np.all(ring.left_mult_matrices(block) == identity, axis=(1, 2))
        right_ok = np.all(ring.right_mult_matrices(block) == identity, axis=(1, 2))
        hits = np.flatnonzero(left_ok & right_ok)
        if len(hits):
            return ring.element(block[hits[0]])
    return None


def is_unital(ring: FiniteRing, *, settings: Optional[Settings] = None) -> bool:
    return find_unity(ring, settings=settings) is not None


def additive_exponent(ring: FiniteRing) -> int:
    return ring.exponent


def nilpotency_index(ring: FiniteRing) -> Optional[int]:
    """Smallest k with R^k = 0, or None when R is not nilpotent."""
    if ring.rank == 0:
        return 1
    basis = np.eye(ring.rank, dtype=np.int64)
    generators = basis
    bound = int(math.log2(ring.cardinality)) + 2
    for level in range(1, bound + 1):
        if not np.any(generators):
            return level
        products = ring.mul_arrays(
            np.repeat(generators, ring.rank, axis=0),
            np.tile(basis, (len(generators), 1)),
        )
        products = products[np.any(products, axis=1)]
        generators = np.unique(products, axis=0) if len(products) else products
    return None


def square_zero_count(ring: FiniteRing, *, settings: Optional[Settings] = None) -> int:
    settings = settings or Settings()
    elements = ring.elements(settings.exhaustive_cap)
    return int(np.count_nonzero(~np.any(ring.mul_arrays(elements, elements), axis=1)))


def ring_fingerprint(ring: FiniteRing, *, settings: Optional[Settings] = None) -> dict[str, object]:
    """Isomorphism invariants used to tell catalog rings apart."""
    return {
        "cardinality": ring.cardinality,
        "additive_orders": sorted(ring.orders),
        "nilpotency_index": nilpotency_index(ring),
        "square_zero": square_zero_count(ring, settings=settings),
        "commutative": is_commutative(ring),
    }
