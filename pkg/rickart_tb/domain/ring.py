"""Finite, possibly non-unital, associative rings given by structure constants."""
from __future__ import annotations

import functools
import hashlib
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Optional

import numpy as np

from rickart_tb.domain.errors import (
    BadUnityError,
    CapExceededError,
    IllDefinedError,
    MalformedTableError,
    NonAssociativeError,
    NonPositiveExponentError,
    RickartError,
    RingMismatchError,
)

if TYPE_CHECKING:
    from rickart_tb.domain.group import FiniteGroup
    from rickart_tb.domain.subsets import IdealEmbedding

LOGGER = logging.getLogger(__name__)

DEFAULT_CAP = 2**20


@dataclass(frozen=True)
class AdditiveGroup:
    """Product of cyclic groups Z_d1 x ... x Z_dk with mixed-radix element indices.

    Index order is lexicographic on coordinates, first coordinate most significant.
    """

    orders: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(int(d) < 2 for d in self.orders):
            raise MalformedTableError(f"cyclic orders must be >= 2, got {list(self.orders)}")

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def cardinality(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders)

    @functools.cached_property
    def order_array(self) -> np.ndarray:
        return np.asarray(self.orders, dtype=np.int64).reshape(len(self.orders))

    @functools.cached_property
    def strides(self) -> np.ndarray:
        strides = [1] * self.rank
        for pos in range(self.rank - 2, -1, -1):
            strides[pos] = strides[pos + 1] * self.orders[pos + 1]
        return np.asarray(strides, dtype=np.int64).reshape(self.rank)

    def reduce(self, coords: np.ndarray) -> np.ndarray:
        return np.mod(coords, self.order_array)

    def encode(self, coords: np.ndarray) -> np.ndarray:
        coords = np.atleast_2d(np.asarray(coords, dtype=np.int64))
        return coords @ self.strides

    def decode(self, indices: np.ndarray) -> np.ndarray:
        indices = np.asarray(indices, dtype=np.int64).reshape(-1)
        return (indices[:, None] // self.strides[None, :]) % self.order_array[None, :]

    def element_order(self, coords: Sequence[int]) -> int:
        return math.lcm(*(d // math.gcd(d, int(c)) for c, d in zip(coords, self.orders)))


@dataclass(frozen=True)
class RingElement:
    ring_id: str
    coords: tuple[int, ...]

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class Construction:
    """How a ring was built; lets involutions and element parsing see the structure."""

    kind: str
    base: Optional["FiniteRing"] = None
    group: Optional["FiniteGroup"] = None
    n: Optional[int] = None
    embedding: Optional["IdealEmbedding"] = None
    params: tuple[Any, ...] = ()


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """Ring on an AdditiveGroup whose multiplication is fixed by basis products.

    ``table[i, j]`` holds the coordinates of e_i * e_j. Instances are immutable and
    safe to share between threads; use :func:`make_ring` to build validated ones.
    """

    group: AdditiveGroup
    table: np.ndarray
    labels: tuple[str, ...]
    unity: Optional[tuple[int, ...]] = None
    provenance: str = ""
    construction: Optional[Construction] = None
    unit_aliases: frozenset[str] = field(default_factory=frozenset)

    @functools.cached_property
    def ring_id(self) -> str:
        digest = hashlib.sha256()
        digest.update(repr(self.group.orders).encode("utf-8"))
        digest.update(np.ascontiguousarray(self.table, dtype=np.int64).tobytes())
        digest.update("|".join(self.labels).encode("utf-8"))
        return digest.hexdigest()[:16]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteRing) and other.ring_id == self.ring_id

    def __hash__(self) -> int:
        return hash(self.ring_id)

    def __repr__(self) -> str:
        return f"FiniteRing({self.provenance or self.ring_id}, |R|={self.cardinality})"

    @property
    def rank(self) -> int:
        return self.group.rank

    @property
    def orders(self) -> tuple[int, ...]:
        return self.group.orders

    @property
    def cardinality(self) -> int:
        return self.group.cardinality

    @property
    def exponent(self) -> int:
        return self.group.exponent

    @functools.cached_property
    def _flat_table(self) -> np.ndarray:
        return self.table.reshape(self.rank * self.rank, self.rank)

    @functools.cached_property
    def label_index(self) -> dict[str, int]:
        return {label: pos for pos, label in enumerate(self.labels)}

    # -- elements ---------------------------------------------------------

    def element(self, coords: Iterable[int]) -> RingElement:
        values = tuple(int(c) for c in coords)
        if len(values) != self.rank:
            raise RingMismatchError(
                f"expected {self.rank} coordinates for {self.provenance or self.ring_id}, got {len(values)}"
            )
        return RingElement(self.ring_id, tuple(c % d for c, d in zip(values, self.orders)))

    def zero(self) -> RingElement:
        return RingElement(self.ring_id, (0,) * self.rank)

    def basis(self, pos: int) -> RingElement:
        coords = [0] * self.rank
        coords[pos] = 1
        return RingElement(self.ring_id, tuple(coords))

    def unity_element(self) -> Optional[RingElement]:
        return None if self.unity is None else RingElement(self.ring_id, self.unity)

    def element_at(self, index: int) -> RingElement:
        return self.element(self.group.decode(np.asarray([index]))[0])

    def index_of(self, x: RingElement) -> int:
        self.check(x)
        return int(self.group.encode(np.asarray(x.coords))[0])

    def is_zero(self, x: RingElement) -> bool:
        self.check(x)
        return not any(x.coords)

    def check(self, *items: RingElement) -> None:
        for item in items:
            if item.ring_id != self.ring_id:
                raise RingMismatchError(
                    f"element {item} belongs to ring {item.ring_id}, not {self.ring_id}"
                )

    def elements(self, cap: int = DEFAULT_CAP) -> np.ndarray:
        """All elements as an (N, k) coordinate array in canonical order."""
        if self.cardinality > cap:
            raise CapExceededError(f"element table of {self.provenance}", self.cardinality, cap)
        return self._element_table

    @functools.cached_property
    def _element_table(self) -> np.ndarray:
        table = self.group.decode(np.arange(self.cardinality, dtype=np.int64))
        table.setflags(write=False)
        return table

    def format_element(self, x: RingElement) -> str:
        self.check(x)
        terms = []
        for label, coeff in zip(self.labels, x.coords):
            if coeff == 0:
                continue
            terms.append(label if coeff == 1 else f"{coeff}*{label}")
        return " + ".join(terms) if terms else "0"

    # -- arithmetic -------------------------------------------------------

    def add(self, x: RingElement, y: RingElement) -> RingElement:
        self.check(x, y)
        return RingElement(self.ring_id, tuple((a + b) % d for a, b, d in zip(x.coords, y.coords, self.orders)))

    def neg(self, x: RingElement) -> RingElement:
        self.check(x)
        return RingElement(self.ring_id, tuple((-a) % d for a, d in zip(x.coords, self.orders)))

    def sub(self, x: RingElement, y: RingElement) -> RingElement:
        return self.add(x, self.neg(y))

    def int_scale(self, k: int, x: RingElement) -> RingElement:
        self.check(x)
        return RingElement(self.ring_id, tuple((k * a) % d for a, d in zip(x.coords, self.orders)))

    def mul(self, x: RingElement, y: RingElement) -> RingElement:
        self.check(x, y)
        product = self.mul_arrays(np.asarray([x.coords]), np.asarray([y.coords]))[0]
        return RingElement(self.ring_id, tuple(int(c) for c in product))

    def pow(self, x: RingElement, n: int) -> RingElement:
        if n < 1:
            raise NonPositiveExponentError(f"exponent must be >= 1, got {n}")
        self.check(x)
        result = x
        for _ in range(n - 1):
            result = self.mul(result, x)
        return result

    # -- vectorized kernels ----------------------------------------------

    def reduce(self, coords: np.ndarray) -> np.ndarray:
        return self.group.reduce(coords)

    def mul_arrays(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Row-wise products of two (B, k) coordinate arrays (broadcasting B=1)."""
        xs = _rows(xs)
        ys = _rows(ys)
        count = max(len(xs), len(ys))
        outer = (xs[:, :, None] * ys[:, None, :]).reshape(count, self.rank * self.rank)
        return self.reduce(outer @ self._flat_table)

    def left_mult_matrices(self, xs: np.ndarray) -> np.ndarray:
        """M[b, j] = coords of x_b * e_j, so x_b * y = y @ M[b]."""
        xs = _rows(xs)
        return self.reduce(np.einsum("bi,ijl->bjl", xs, self.table))

    def right_mult_matrices(self, xs: np.ndarray) -> np.ndarray:
        """M[b, i] = coords of e_i * x_b, so y * x_b = y @ M[b]."""
        xs = _rows(xs)
        return self.reduce(np.einsum("bj,ijl->bil", xs, self.table))


def make_ring(
    orders: Sequence[int],
    mul_table: Any,
    *,
    unity: Optional[Sequence[int]] = None,
    labels: Optional[Sequence[str]] = None,
    provenance: str = "",
    construction: Optional[Construction] = None,
    unit_aliases: Iterable[str] = (),
    spot_checks: int = 16,
) -> FiniteRing:
    """Validate structure constants and return an immutable ring."""
    group = AdditiveGroup(tuple(int(d) for d in orders))
    k = group.rank
    table = np.asarray(mul_table, dtype=np.int64)
    if k == 0:
        table = table.reshape(0, 0, 0)
    if table.shape != (k, k, k):
        raise MalformedTableError(f"table shape {table.shape} does not match rank {k}")
    if k and (np.any(table < 0) or np.any(table >= group.order_array)):
        raise MalformedTableError("table entries must be coordinates 0 <= c < d")

    names = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(k))
    if len(names) != k or len(set(names)) != k:
        raise MalformedTableError(f"labels must be {k} distinct names, got {list(names)}")

    _check_well_defined(group, table)
    _check_associative(group, table)

    table = table.copy()
    table.setflags(write=False)
    ring = FiniteRing(
        group=group,
        table=table,
        labels=names,
        unity=None if unity is None else tuple(int(c) % d for c, d in zip(unity, group.orders)),
        provenance=provenance,
        construction=construction,
        unit_aliases=frozenset(unit_aliases),
    )
    if unity is not None:
        if len(tuple(unity)) != k:
            raise BadUnityError(f"unity needs {k} coordinates")
        _check_unity(ring)
    _spot_check_distributivity(ring, spot_checks)
    LOGGER.debug("Built ring %s with %s elements", provenance or ring.ring_id, ring.cardinality)
    return ring


def _check_well_defined(group: AdditiveGroup, table: np.ndarray) -> None:
    if group.rank == 0:
        return
    d = group.order_array
    left = group.reduce(d[:, None, None] * table)
    right = group.reduce(d[None, :, None] * table)
    bad = np.argwhere(np.any(left != 0, axis=2) | np.any(right != 0, axis=2))
    if len(bad):
        i, j = (int(v) for v in bad[0])
        raise IllDefinedError(i, j)


def _check_associative(group: AdditiveGroup, table: np.ndarray) -> None:
    if group.rank == 0:
        return
    left = group.reduce(np.einsum("ijm,mlr->ijlr", table, table))
    right = group.reduce(np.einsum("jlm,imr->ijlr", table, table))
    bad = np.argwhere(np.any(left != right, axis=3))
    if len(bad):
        i, j, l = (int(v) for v in bad[0])
        raise NonAssociativeError(i, j, l)


def _check_unity(ring: FiniteRing) -> None:
    unit = np.asarray([ring.unity], dtype=np.int64)
    identity = np.eye(ring.rank, dtype=np.int64)
    if not (
        np.array_equal(ring.left_mult_matrices(unit)[0], identity)
        and np.array_equal(ring.right_mult_matrices(unit)[0], identity)
    ):
        raise BadUnityError(f"{list(ring.unity or ())} is not a two-sided unity of {ring.provenance}")


def _spot_check_distributivity(ring: FiniteRing, count: int) -> None:
    if ring.rank == 0 or count <= 0:
        return
    rng = np.random.default_rng(0)
    xs, ys, zs = (rng.integers(0, ring.group.order_array, size=(count, ring.rank)) for _ in range(3))
    lhs = ring.mul_arrays(xs, ring.reduce(ys + zs))
    rhs = ring.reduce(ring.mul_arrays(xs, ys) + ring.mul_arrays(xs, zs))
    if not np.array_equal(lhs, rhs):
        raise RickartError(f"distributivity spot check failed for {ring.provenance}")


def _rows(values: Any) -> np.ndarray:
    return np.atleast_2d(np.asarray(values, dtype=np.int64))
