"""Annihilators as kernels of modular linear maps (independent of element scans).

y lies in r(x) iff sum_j y_j M[j, l] = 0 mod d_l for every l, where row j of M is
x * e_j. Lifting to the integers, (y, t) must solve y M + t diag(d) = 0; the integer
solutions come from the Smith decomposition of [M; diag(d)], and projecting them
to the y-coordinates generates the annihilator as an additive subgroup.
"""
from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from rickart_tb.domain.ring import AdditiveGroup, FiniteRing, RingElement
from rickart_tb.domain.subsets import RIGHT_IDEAL, LEFT_IDEAL, ElementSubset, make_subset


def integer_left_kernel(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of {v in Z^m : v A = 0} for the m x c integer matrix A given by ``rows``.

    With S A T = D in Smith form and S unimodular, v A = 0 iff (v S^-1) D = 0, so the
    rows of S facing a zero (or missing) diagonal entry of D are a basis.
    """
    m = len(rows)
    width = len(rows[0]) if m else 0
    if m == 0:
        return []
    if width == 0:
        return [[1 if t == i else 0 for t in range(m)] for i in range(m)]
    matrix = DomainMatrix([[ZZ(int(v)) for v in row] for row in rows], (m, width), ZZ)
    smith, left, _ = smith_normal_decomp(matrix)
    diagonal = smith.to_list()
    return [[int(v) for v in row] for i, row in enumerate(left.to_list()) if i >= width or diagonal[i][i] == 0]


def kernel_generators(
    matrix: np.ndarray,
    domain_orders: Sequence[int],
    codomain_orders: Sequence[int],
) -> list[tuple[int, ...]]:
    """Generators of {y : y @ matrix = 0 mod codomain_orders} inside the domain group."""
    k_in, k_out = len(domain_orders), len(codomain_orders)
    rows = [[int(v) for v in matrix[j]] for j in range(k_in)]
    rows += [[d if c == l else 0 for c in range(k_out)] for l, d in enumerate(codomain_orders)]
    generators = []
    for combo in integer_left_kernel(rows):
        y = tuple(c % d for c, d in zip(combo[:k_in], domain_orders))
        if any(y):
            generators.append(y)
    return generators


def subgroup_bitmap(group: AdditiveGroup, generators: Sequence[Sequence[int]]) -> np.ndarray:
    """Membership bitmap of the subgroup generated by ``generators``."""
    members = np.zeros((1, group.rank), dtype=np.int64)
    for generator in generators:
        g = np.asarray(generator, dtype=np.int64)
        order = group.element_order(generator)
        cosets = np.concatenate([group.reduce(members + m * g) for m in range(order)])
        members = np.unique(cosets, axis=0)
    bitmap = np.zeros(group.cardinality, dtype=bool)
    bitmap[group.encode(members)] = True
    return bitmap


def annihilator_by_kernel(ring: FiniteRing, x: RingElement, *, side: str = "right") -> ElementSubset:
    """r(x) (or l(x)) computed by solving the modular linear system."""
    ring.check(x)
    coords = np.asarray([x.coords], dtype=np.int64)
    if side == "right":
        matrix = ring.left_mult_matrices(coords)[0]
    else:
        matrix = ring.right_mult_matrices(coords)[0]
    generators = kernel_generators(matrix, ring.orders, ring.orders)
    return make_subset(
        ring.ring_id,
        subgroup_bitmap(ring.group, generators),
        RIGHT_IDEAL if side == "right" else LEFT_IDEAL,
    )
