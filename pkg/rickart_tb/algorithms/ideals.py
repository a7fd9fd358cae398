"""Right and left ideal lattices of tiny rings."""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from rickart_tb.algorithms.annihilators import generated_ideal_bitmap
from rickart_tb.config import Settings
from rickart_tb.domain.errors import CapExceededError
from rickart_tb.domain.models import PropertyVerdict
from rickart_tb.domain.ring import FiniteRing
from rickart_tb.domain.subsets import LEFT_IDEAL, RIGHT_IDEAL, ElementSubset, make_subset

LOGGER = logging.getLogger(__name__)


def _sum_bitmap(ring: FiniteRing, elements: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    left = elements[a]
    right = elements[b]
    sums = ring.reduce(left[:, None, :] + right[None, :, :]).reshape(-1, ring.rank)
    bitmap = np.zeros(ring.cardinality, dtype=bool)
    bitmap[ring.group.encode(sums)] = True
    return bitmap


def enumerate_right_ideals(
    ring: FiniteRing,
    *,
    side: str = "right",
    settings: Optional[Settings] = None,
) -> list[ElementSubset]:
    """Every right (or left) ideal, ordered by size and then by member indices.

    Each ideal is a sum of the ideals generated by its elements, so closing the
    set of singly generated ideals under pairwise sums reaches the whole lattice.
    """
    settings = settings or Settings()
    if ring.cardinality > settings.ideal_cap:
        raise CapExceededError(f"ideal lattice of {ring.provenance}", ring.cardinality, settings.ideal_cap)
    elements = ring.elements(settings.ideal_cap)

    lattice: dict[bytes, np.ndarray] = {}
    for row in elements:
        bitmap = generated_ideal_bitmap(ring, row, side=side, cap=settings.ideal_cap)
        lattice.setdefault(np.packbits(bitmap).tobytes(), bitmap)

    frontier = list(lattice.values())
    while frontier:
        fresh = []
        known = list(lattice.values())
        for a in frontier:
            for b in known:
                if np.all(a <= b) or np.all(b <= a):
                    continue
                total = _sum_bitmap(ring, elements, a, b)
                key = np.packbits(total).tobytes()
                if key not in lattice:
                    lattice[key] = total
                    fresh.append(total)
        frontier = fresh

    tag = RIGHT_IDEAL if side == "right" else LEFT_IDEAL
    ordered = sorted(lattice.values(), key=lambda b: (int(b.sum()), tuple(np.flatnonzero(b))))
    LOGGER.debug("%s %s ideals in %s", len(ordered), side, ring.provenance)
    return [make_subset(ring.ring_id, bitmap, tag) for bitmap in ordered]


def longest_chain(ideals: list[ElementSubset]) -> int:
    """Length (number of strict inclusions) of the longest chain in the lattice."""
    depth: list[int] = []
    for i, ideal in enumerate(ideals):
        below = [depth[j] + 1 for j in range(i) if ideals[j].cardinality < ideal.cardinality and ideals[j].issubset(ideal)]
        depth.append(max(below, default=0))
    return max(depth, default=0)


def artinian_certificate(ring: FiniteRing, *, settings: Optional[Settings] = None) -> PropertyVerdict:
    """A finite lattice satisfies both chain conditions; record its size and length."""
    settings = settings or Settings()
    if ring.cardinality > settings.artinian_cap:
        raise CapExceededError(f"artinian certificate of {ring.provenance}", ring.cardinality, settings.artinian_cap)
    limits = settings.replace(ideal_cap=max(settings.ideal_cap, settings.artinian_cap))
    right = enumerate_right_ideals(ring, side="right", settings=limits)
    left = enumerate_right_ideals(ring, side="left", settings=limits)
    return PropertyVerdict(
        property="artinian",
        holds=True,
        ring=ring.provenance,
        mode="lattice",
        scanned_elements=ring.cardinality,
        details={
            "right_ideals": len(right),
            "left_ideals": len(left),
            "right_length": longest_chain(right),
            "left_length": longest_chain(left),
        },
    )
