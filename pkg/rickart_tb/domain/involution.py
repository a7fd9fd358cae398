"""Involutions: additive, anti-multiplicative, self-inverse maps."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np

from rickart_tb.domain.errors import (
    InvolutionMismatchError,
    MalformedTableError,
    NotAntiMultiplicativeError,
    NotInvolutiveError,
)
from rickart_tb.domain.ring import FiniteRing, RingElement

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Involution:
    """Additive map given by basis images: row i of ``matrix`` is (e_i)*."""

    ring: FiniteRing
    matrix: np.ndarray
    name: str = ""

    @property
    def ring_id(self) -> str:
        return self.ring.ring_id

    def check_ring(self, ring: FiniteRing) -> None:
        if ring.ring_id != self.ring.ring_id:
            raise InvolutionMismatchError(
                f"involution {self.name!r} was built for {self.ring.provenance}, not {ring.provenance}"
            )

    def apply_arrays(self, coords: np.ndarray) -> np.ndarray:
        coords = np.atleast_2d(np.asarray(coords, dtype=np.int64))
        return self.ring.reduce(coords @ self.matrix)

    def apply(self, x: RingElement) -> RingElement:
        self.ring.check(x)
        return self.ring.element(self.apply_arrays(np.asarray(x.coords))[0])


def make_involution(
    ring: FiniteRing,
    basis_map: Any,
    *,
    name: str = "",
    exhaustive_cap: int = 2**20,
    pair_cap: int = 2**10,
    random_pairs: int = 100_000,
    seed: int = 0,
) -> Involution:
    """Validate the involution axioms and return the map.

    Basis pairs settle the axioms by linearity and are always checked. Rings with at
    most ``pair_cap`` elements are additionally checked on every pair; larger rings on
    ``random_pairs`` seeded random pairs. Involutivity is checked on every element up to
    ``exhaustive_cap``.
    """
    k = ring.rank
    matrix = np.asarray(basis_map, dtype=np.int64)
    if k == 0:
        matrix = matrix.reshape(0, 0)
    if matrix.shape != (k, k):
        raise MalformedTableError(f"involution map shape {matrix.shape} does not match rank {k}")
    matrix = ring.reduce(matrix)
    if k and np.any(ring.reduce(ring.group.order_array[:, None] * matrix)):
        bad = int(np.argwhere(np.any(ring.reduce(ring.group.order_array[:, None] * matrix), axis=1))[0][0])
        raise MalformedTableError(f"image of basis element {ring.labels[bad]} is not killed by its order")
    matrix.setflags(write=False)
    involution = Involution(ring, matrix, name)

    basis = np.eye(k, dtype=np.int64)
    _check_involutive(involution, basis)
    _check_anti_multiplicative_grid(involution, basis, basis)

    if ring.cardinality <= exhaustive_cap:
        _check_involutive(involution, ring.elements(exhaustive_cap))
    if ring.cardinality <= pair_cap:
        elements = ring.elements(exhaustive_cap)
        _check_anti_multiplicative_grid(involution, elements, elements)
    elif random_pairs > 0 and k:
        rng = np.random.default_rng(seed)
        xs = rng.integers(0, ring.group.order_array, size=(random_pairs, k))
        ys = rng.integers(0, ring.group.order_array, size=(random_pairs, k))
        _check_anti_multiplicative_pairs(involution, xs, ys)

    LOGGER.debug("Validated involution %s on %s", name, ring.provenance)
    return involution


def identity_involution(ring: FiniteRing, **limits: Any) -> Involution:
    """The identity map; valid exactly when the ring is commutative."""
    return make_involution(ring, np.eye(ring.rank, dtype=np.int64), name="identity", **limits)


def _check_involutive(involution: Involution, xs: np.ndarray) -> None:
    twice = involution.apply_arrays(involution.apply_arrays(xs))
    bad = np.flatnonzero(np.any(twice != xs, axis=1))
    if len(bad):
        raise NotInvolutiveError(involution.ring.element(xs[bad[0]]))


def _check_anti_multiplicative_pairs(involution: Involution, xs: np.ndarray, ys: np.ndarray) -> None:
    ring = involution.ring
    lhs = involution.apply_arrays(ring.mul_arrays(xs, ys))
    rhs = ring.mul_arrays(involution.apply_arrays(ys), involution.apply_arrays(xs))
    bad = np.flatnonzero(np.any(lhs != rhs, axis=1))
    if len(bad):
        raise NotAntiMultiplicativeError(ring.element(xs[bad[0]]), ring.element(ys[bad[0]]))


def _check_anti_multiplicative_grid(involution: Involution, xs: np.ndarray, ys: np.ndarray) -> None:
    chunk = max(1, 2**18 // max(1, len(ys)))
    for start in range(0, len(xs), chunk):
        block = xs[start : start + chunk]
        _check_anti_multiplicative_pairs(
            involution,
            np.repeat(block, len(ys), axis=0),
            np.tile(ys, (len(block), 1)),
        )
