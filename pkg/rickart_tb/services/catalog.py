"""Built-in rings of order p^2, integer test rings and small groups."""
from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable

import numpy as np

from rickart_tb.domain.errors import NonAssociativeError, NotPrimeError
from rickart_tb.domain.group import FiniteGroup, cyclic_group, group_from_cayley, klein_four_group
from rickart_tb.domain.models import CatalogDescriptor
from rickart_tb.domain.ring import Construction, FiniteRing, make_ring

LOGGER = logging.getLogger(__name__)

FINE_KINDS = ("A", "B", "C", "D", "Dalt")

PRESENTATIONS = {
    "A": "<a | p^2 a = 0, a^2 = pa>",
    "B": "<a | p^2 a = 0, a^2 = 0>",
    "C": "<a, b | pa = pb = 0, a^2 = b, ab = 0>",
    "D": "<a, b | pa = pb = 0, a^2 = b^2 = 0, ab = ba = 0>",
    "Dalt": "<a, b | pa = pb = 0, a^2 = b^2 = 0, ab = -ba> (associative completions only)",
}

__all__ = [
    "FINE_KINDS",
    "catalog_list",
    "cyclic_group",
    "d_completion_search",
    "fine_ring",
    "group_from_cayley",
    "integers_mod",
    "is_prime",
    "klein_four_group",
    "null_ring",
]


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")


def fine_ring(kind: str, p: int) -> FiniteRing:
    """One of the four non-unital rings of order p^2 (plus the D completion variant)."""
    _require_prime(p)
    construction = Construction("catalog", params=(kind, p))
    if kind == "A":
        return make_ring([p * p], [[[p]]], labels=["a"], provenance=f"A({p})", construction=construction)
    if kind == "B":
        return make_ring([p * p], [[[0]]], labels=["a"], provenance=f"B({p})", construction=construction)
    if kind == "C":
        table = np.zeros((2, 2, 2), dtype=np.int64)
        table[0, 0] = [0, 1]
        return make_ring([p, p], table, labels=["a", "b"], provenance=f"C({p})", construction=construction)
    if kind == "D":
        return make_ring(
            [p, p], np.zeros((2, 2, 2), dtype=np.int64), labels=["a", "b"], provenance=f"D({p})", construction=construction
        )
    if kind == "Dalt":
        completions = d_completion_search(p)
        alpha, beta = completions[0]
        return _d_completion(p, alpha, beta, provenance=f"Dalt({p})")
    raise KeyError(f"unknown catalog kind {kind!r}; expected one of {', '.join(FINE_KINDS)}")


def _d_completion(p: int, alpha: int, beta: int, *, provenance: str) -> FiniteRing:
    table = np.zeros((2, 2, 2), dtype=np.int64)
    table[0, 1] = [alpha % p, beta % p]
    table[1, 0] = [(-alpha) % p, (-beta) % p]
    return make_ring(
        [p, p],
        table,
        labels=["a", "b"],
        provenance=provenance,
        construction=Construction("catalog", params=("Dalt", p, alpha, beta)),
    )


def d_completion_search(p: int) -> list[tuple[int, int]]:
    """All (alpha, beta) with ab = alpha*a + beta*b = -ba that give an associative ring.

    Only the null completion survives for every prime; the list is returned in
    lexicographic order so callers can build the variant from its first entry.
    """
    _require_prime(p)
    survivors = []
    for alpha, beta in itertools.product(range(p), repeat=2):
        try:
            _d_completion(p, alpha, beta, provenance=f"Dalt({p};{alpha},{beta})")
        except NonAssociativeError:
            continue
        survivors.append((alpha, beta))
    LOGGER.debug("D completions for p=%s: %s", p, survivors)
    return survivors


def integers_mod(n: int) -> FiniteRing:
    """Z/nZ with its unity; n = 1 gives the zero ring {0}."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    construction = Construction("catalog", params=("Z", n))
    if n == 1:
        return make_ring([], np.zeros((0, 0, 0), dtype=np.int64), labels=[], provenance="Z(1)", construction=construction)
    return make_ring([n], [[[1]]], unity=[1], labels=["1"], provenance=f"Z({n})", construction=construction)


def null_ring(n: int) -> FiniteRing:
    """Z/nZ with every product zero."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return make_ring([n], [[[0]]], labels=["a"], provenance=f"N({n})", construction=Construction("catalog", params=("N", n)))


def catalog_list(primes: Iterable[int] = (2, 3, 5), moduli: Iterable[int] = (1, 2, 4, 6)) -> list[CatalogDescriptor]:
    descriptors = []
    for kind in FINE_KINDS:
        for p in primes:
            ring = fine_ring(kind, p)
            descriptors.append(
                CatalogDescriptor(ring.provenance, kind, p, ring.orders, ring.cardinality, PRESENTATIONS[kind])
            )
    for n in moduli:
        ring = integers_mod(n)
        descriptors.append(CatalogDescriptor(ring.provenance, "Z", n, ring.orders, ring.cardinality, f"Z/{n}Z"))
    for n in primes:
        ring = null_ring(n)
        descriptors.append(
            CatalogDescriptor(ring.provenance, "N", n, ring.orders, ring.cardinality, f"Z/{n}Z with zero product")
        )
    return descriptors


def catalog_group(name: str) -> FiniteGroup:
    """``C<n>`` or ``V4``."""
    if name == "V4":
        return klein_four_group()
    if name.startswith("C") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    raise KeyError(f"unknown group {name!r}")
