"""Finite groups given by Cayley tables."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from rickart_tb.domain.errors import NotAGroupError


@dataclass(frozen=True)
class FiniteGroup:
    """Group on indices 0..m-1; ``cayley[a][b]`` is the index of a*b."""

    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverses: tuple[int, ...]
    labels: tuple[str, ...]
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.cayley)

    def op(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    def label_of(self, a: int) -> str:
        return self.labels[a]


def group_from_cayley(
    table: Sequence[Sequence[int]],
    *,
    labels: Optional[Sequence[str]] = None,
    name: str = "",
) -> FiniteGroup:
    """Validate a Cayley table and return the group.

    Identity is relabelled ``e`` when no labels are given; other elements become h1, h2, ...
    """
    m = len(table)
    if m == 0 or any(len(row) != m for row in table):
        raise NotAGroupError("table must be a non-empty square")
    cayley = np.asarray(table, dtype=np.int64)
    if np.any(cayley < 0) or np.any(cayley >= m):
        bad = tuple(int(v) for v in np.argwhere((cayley < 0) | (cayley >= m))[0])
        raise NotAGroupError("entry out of range", bad)

    left = cayley[cayley, :]  # left[a, b, c] = (ab)c
    right = cayley[:, cayley]  # right[a, b, c] = a(bc)
    bad_triples = np.argwhere(left != right)
    if len(bad_triples):
        raise NotAGroupError("not associative", tuple(int(v) for v in bad_triples[0]))

    identity = None
    everything = np.arange(m)
    for candidate in range(m):
        if np.array_equal(cayley[candidate], everything) and np.array_equal(cayley[:, candidate], everything):
            identity = candidate
            break
    if identity is None:
        raise NotAGroupError("no two-sided identity")

    inverses = []
    for a in range(m):
        hits = np.flatnonzero((cayley[a] == identity) & (cayley[:, a] == identity))
        if not len(hits):
            raise NotAGroupError("element without inverse", (a,))
        inverses.append(int(hits[0]))

    if labels is None:
        names = ["e" if a == identity else f"h{a}" for a in range(m)]
    else:
        names = list(labels)
    if len(names) != m or len(set(names)) != m or any("*" in n for n in names):
        raise NotAGroupError("labels must be distinct names without '*'")

    return FiniteGroup(
        cayley=tuple(tuple(int(v) for v in row) for row in cayley),
        identity=identity,
        inverses=tuple(inverses),
        labels=tuple(names),
        name=name,
    )


def cyclic_group(n: int) -> FiniteGroup:
    """Z_n written multiplicatively: e, g, g^2, ..."""
    if n < 1:
        raise NotAGroupError(f"cyclic group order must be >= 1, got {n}")
    labels = ["e", "g"] + [f"g^{k}" for k in range(2, n)]
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return group_from_cayley(table, labels=labels[:n], name=f"C{n}")


def klein_four_group() -> FiniteGroup:
    table = [[a ^ b for b in range(4)] for a in range(4)]
    return group_from_cayley(table, labels=["e", "u", "v", "w"], name="V4")
