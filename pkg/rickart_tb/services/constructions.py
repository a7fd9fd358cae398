"""Derived rings: group rings, unitizations, triangular and constant-diagonal rings.

Every builder fixes the basis order as base-basis major and position minor, so the
coordinates of a constructed ring are stable across runs and serializations.
"""
from __future__ import annotations

import dataclasses
import logging
import math
from collections.abc import Mapping, Sequence
from typing import Optional

import numpy as np

from rickart_tb.config import Settings
from rickart_tb.domain.errors import CapExceededError, InvolutionMismatchError, RickartError
from rickart_tb.domain.group import FiniteGroup
from rickart_tb.domain.involution import Involution, identity_involution, make_involution
from rickart_tb.domain.models import IsomorphismReport
from rickart_tb.domain.ring import Construction, FiniteRing, RingElement, make_ring
from rickart_tb.domain.subsets import IdealEmbedding, make_embedding

LOGGER = logging.getLogger(__name__)

# Element indices are int64 mixed-radix numbers.
INDEX_CAP = 2**62


class ConstructionError(RickartError):
    """Raised when a construction is applied to an unsuitable ring."""


def _check_size(provenance: str, orders: Sequence[int], cap: int) -> None:
    size = math.prod(orders)
    if size > cap:
        raise CapExceededError(f"construction {provenance}", size, cap)


def _product_label(base: str, position: str) -> str:
    return position if base == "1" else f"{base}*{position}"


# -- group rings --------------------------------------------------------------


def _group_ring_parts(base: FiniteRing, group: FiniteGroup) -> tuple[list[int], np.ndarray, list[str], Optional[list[int]]]:
    k, m = base.rank, group.order
    cayley = np.asarray(group.cayley, dtype=np.int64)
    orders = [d for d in base.orders for _ in range(m)]
    table = np.zeros((k * m, k * m, k * m), dtype=np.int64)
    for g in range(m):
        for h in range(m):
            gh = int(cayley[g, h])
            table[g::m, h::m, gh::m] = base.table
    labels = [_product_label(label, group.label_of(g)) for label in base.labels for g in range(m)]
    unity = None
    if base.unity is not None:
        unity = [0] * (k * m)
        for i, c in enumerate(base.unity):
            unity[i * m + group.identity] = c
    return orders, table, labels, unity


def group_ring(base: FiniteRing, group: FiniteGroup, *, cap: int = INDEX_CAP) -> FiniteRing:
    """RG with convolution product: (x y)_h = sum over g g' = h of x_g y_g'."""
    provenance = f"GR({base.provenance},{group.name})"
    orders, table, labels, unity = _group_ring_parts(base, group)
    _check_size(provenance, orders, cap)
    aliases = () if base.unity is not None else group.labels
    return make_ring(
        orders,
        table,
        unity=unity,
        labels=labels,
        provenance=provenance,
        construction=Construction("group_ring", base=base, group=group),
        unit_aliases=aliases,
    )


def _disjoint_labels(labels: Sequence[str], reserved: str) -> list[str]:
    return [f"{label}'" if label == reserved else label for label in labels]


def unitization(base: FiniteRing, *, cap: int = INDEX_CAP) -> tuple[FiniteRing, IdealEmbedding]:
    """U(R) = Z_N x R with (k, r)(l, s) = (kl, ks + lr + rs), N the additive exponent.

    Returns the ring and the embedding of R as the ideal {(0, r)}.
    """
    if base.rank == 0:
        raise ConstructionError("the zero ring has no unitization with a nontrivial scalar block")
    k = base.rank
    n = base.exponent
    provenance = f"U({base.provenance})"
    orders = [n, *base.orders]
    _check_size(provenance, orders, cap)
    table = np.zeros((k + 1, k + 1, k + 1), dtype=np.int64)
    table[0, 0, 0] = 1
    for i in range(k):
        table[0, i + 1, i + 1] = 1
        table[i + 1, 0, i + 1] = 1
    table[1:, 1:, 1:] = base.table
    ring = make_ring(
        orders,
        table,
        unity=[1] + [0] * k,
        labels=["1", *_disjoint_labels(base.labels, "1")],
        provenance=provenance,
        construction=Construction("unitization", base=base),
    )
    embedding = make_embedding(ring, base, range(1, k + 1))
    ring = dataclasses.replace(ring, construction=Construction("unitization", base=base, embedding=embedding))
    return ring, embedding


def extension_group_ring(
    base: FiniteRing,
    group: FiniteGroup,
    *,
    cap: int = INDEX_CAP,
) -> tuple[FiniteRing, IdealEmbedding]:
    """U(R)G together with the embedding of RG as a two-sided ideal.

    The group elements themselves (coefficient 1 of the scalar block) are ring
    elements here, which is what gives witnesses such as e + g a meaning.
    """
    unital, _ = unitization(base, cap=cap)
    provenance = f"XGR({base.provenance},{group.name})"
    orders, table, labels, unity = _group_ring_parts(unital, group)
    _check_size(provenance, orders, cap)
    inner = group_ring(base, group, cap=cap)
    m = group.order
    positions = [(i + 1) * m + g for i in range(base.rank) for g in range(m)]
    ring = make_ring(
        orders,
        table,
        unity=unity,
        labels=labels,
        provenance=provenance,
        construction=Construction("extension_group_ring", base=base, group=group, params=(unital,)),
    )
    embedding = make_embedding(ring, inner, positions)
    ring = dataclasses.replace(
        ring,
        construction=Construction("extension_group_ring", base=base, group=group, embedding=embedding, params=(unital,)),
    )
    LOGGER.info(
        "Built %s with %s elements around %s",
        provenance,
        ring.cardinality,
        inner.provenance,
        extra={"ctx": {"ring": provenance, "ideal": inner.provenance, "ideal_size": inner.cardinality}},
    )
    return ring, embedding


def group_elements(ring: FiniteRing) -> dict[str, RingElement]:
    """The elements 1*g of a unital group ring, keyed by group label."""
    construction = ring.construction
    if construction is None or construction.group is None or ring.unity is None:
        raise ConstructionError(f"{ring.provenance} is not a unital group ring")
    group = construction.group
    unit = _group_ring_base(ring).unity
    assert unit is not None
    m = group.order
    found = {}
    for g in range(m):
        coords = [0] * ring.rank
        for i, c in enumerate(unit):
            coords[i * m + g] = c
        found[group.label_of(g)] = ring.element(coords)
    return found


def _group_ring_base(ring: FiniteRing) -> FiniteRing:
    construction = ring.construction
    if construction is None or construction.kind not in ("group_ring", "extension_group_ring"):
        raise ConstructionError(f"{ring.provenance} is not a group ring")
    if construction.kind == "extension_group_ring":
        return construction.params[0]
    assert construction.base is not None
    return construction.base


def components(ring: FiniteRing, x: RingElement) -> dict[str, RingElement]:
    """Split x = sum a_g g into its coefficients a_g, keyed by group label."""
    ring.check(x)
    base = _group_ring_base(ring)
    group = ring.construction.group  # type: ignore[union-attr]
    m = group.order
    return {
        group.label_of(g): base.element(x.coords[i * m + g] for i in range(base.rank))
        for g in range(m)
    }


def compose_components(ring: FiniteRing, parts: Mapping[str, RingElement]) -> RingElement:
    """Inverse of :func:`components`; missing group labels count as zero."""
    base = _group_ring_base(ring)
    group = ring.construction.group  # type: ignore[union-attr]
    m = group.order
    coords = [0] * ring.rank
    index = {group.label_of(g): g for g in range(m)}
    for label, value in parts.items():
        base.check(value)
        if label not in index:
            raise KeyError(f"{label!r} is not an element of {group.name}")
        for i, c in enumerate(value.coords):
            coords[i * m + index[label]] = c
    return ring.element(coords)


# -- matrix and polynomial rings ------------------------------------------------


def _upper_positions(n: int) -> list[tuple[int, int]]:
    return [(p, q) for p in range(n) for q in range(p, n)]


def _cell_label(base: str, p: int, q: int) -> str:
    return f"{'E' if base == '1' else base}[{p + 1},{q + 1}]"


def triangular_ring(base: FiniteRing, n: int, *, cap: int = INDEX_CAP) -> FiniteRing:
    """T_n(R): upper triangular n x n matrices over R."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k = base.rank
    cells = _upper_positions(n)
    index = {cell: pos for pos, cell in enumerate(cells)}
    c = len(cells)
    provenance = f"T({base.provenance},{n})"
    orders = [d for d in base.orders for _ in cells]
    _check_size(provenance, orders, cap)
    table = np.zeros((k * c, k * c, k * c), dtype=np.int64)
    for (p, q), left in index.items():
        for (r, s), right in index.items():
            if q != r:
                continue
            table[left::c, right::c, index[(p, s)]::c] = base.table
    unity = None
    if base.unity is not None:
        unity = [0] * (k * c)
        for i, u in enumerate(base.unity):
            for p in range(n):
                unity[i * c + index[(p, p)]] = u
    return make_ring(
        orders,
        table,
        unity=unity,
        labels=[_cell_label(label, p, q) for label in base.labels for p, q in cells],
        provenance=provenance,
        construction=Construction("triangular", base=base, n=n),
    )


def const_diag_tri(base: FiniteRing, n: int, *, cap: int = INDEX_CAP) -> FiniteRing:
    """T(R, n): tuples with (a b)_t = a_1 b_t + a_2 b_(t-1) + ... + a_t b_1."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k = base.rank
    provenance = f"CT({base.provenance},{n})"
    orders = [d for d in base.orders for _ in range(n)]
    _check_size(provenance, orders, cap)
    table = np.zeros((k * n, k * n, k * n), dtype=np.int64)
    for s in range(n):
        for t in range(n - s):
            table[s::n, t::n, s + t :: n] = base.table
    unity = None
    if base.unity is not None:
        unity = [0] * (k * n)
        for i, u in enumerate(base.unity):
            unity[i * n] = u
    labels = [f"{'c' if label == '1' else label}_{s + 1}" for label in base.labels for s in range(n)]
    return make_ring(
        orders,
        table,
        unity=unity,
        labels=labels,
        provenance=provenance,
        construction=Construction("const_diag", base=base, n=n),
    )


def _monomial_label(base: str, degree: int) -> str:
    if degree == 0:
        return base
    power = "x" if degree == 1 else f"x^{degree}"
    return _product_label(base, power)


def poly_quotient(base: FiniteRing, n: int, *, cap: int = INDEX_CAP) -> FiniteRing:
    """R[x]/(x^n) with coefficients stored lowest degree first."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k = base.rank
    provenance = f"PQ({base.provenance},{n})"
    orders = [d for d in base.orders for _ in range(n)]
    _check_size(provenance, orders, cap)
    monomials = np.eye(n, dtype=np.int64)
    table = np.zeros((k * n, k * n, k * n), dtype=np.int64)
    for s in range(n):
        for t in range(n):
            truncated = np.convolve(monomials[s], monomials[t])[:n]
            for degree in np.flatnonzero(truncated):
                table[s::n, t::n, degree::n] = base.table * truncated[degree]
    table = np.mod(table, np.asarray(orders, dtype=np.int64)) if k else table
    unity = None
    if base.unity is not None:
        unity = [0] * (k * n)
        for i, u in enumerate(base.unity):
            unity[i * n] = u
    return make_ring(
        orders,
        table,
        unity=unity,
        labels=[_monomial_label(label, s) for label in base.labels for s in range(n)],
        provenance=provenance,
        construction=Construction("poly_quotient", base=base, n=n),
    )


def _check_map(
    name: str,
    source: FiniteRing,
    target: FiniteRing,
    matrix: np.ndarray,
    *,
    pair_cap: int,
    require_bijective: bool = True,
) -> IsomorphismReport:
    """Check that the additive map x -> x @ matrix is multiplicative (and bijective when square)."""
    bijective = (
        source.cardinality == target.cardinality
        and matrix.shape[0] == matrix.shape[1]
        and np.array_equal(np.sort(np.argmax(matrix, axis=1)), np.arange(matrix.shape[1]))
        and int(matrix.sum()) == matrix.shape[0]
    )

    def image(xs: np.ndarray) -> np.ndarray:
        return target.reduce(np.atleast_2d(xs) @ matrix)

    if source.cardinality * source.cardinality <= pair_cap:
        elements = source.elements(source.cardinality)
        mode = "exhaustive"
    else:
        elements = np.eye(source.rank, dtype=np.int64)
        mode = "basis"
    count = len(elements)
    xs = np.repeat(elements, count, axis=0)
    ys = np.tile(elements, (count, 1))
    lhs = image(source.mul_arrays(xs, ys))
    rhs = target.mul_arrays(image(xs), image(ys))
    bad = np.flatnonzero(np.any(lhs != rhs, axis=1))
    counterexample = None
    if len(bad):
        first = int(bad[0])
        counterexample = (tuple(int(c) for c in xs[first]), tuple(int(c) for c in ys[first]))
    return IsomorphismReport(
        name=name,
        holds=not len(bad) and (bijective or not require_bijective),
        mode=mode,
        checked_pairs=count * count,
        bijective=bool(bijective),
        counterexample=counterexample,
    )


def iso_polyquot_consttri(base: FiniteRing, n: int, *, settings: Optional[Settings] = None) -> IsomorphismReport:
    """phi(a_1 + a_2 x + ... + a_n x^(n-1)) = (a_1, ..., a_n)."""
    settings = settings or Settings()
    polys = poly_quotient(base, n)
    tuples = const_diag_tri(base, n)
    # both rings index coefficient (i, degree) at i*n + degree
    matrix = np.eye(polys.rank, dtype=np.int64)
    report = _check_map(f"phi:{polys.provenance}->{tuples.provenance}", polys, tuples, matrix, pair_cap=settings.closure_check_cap)
    LOGGER.info("%s: %s (%s)", report.name, "holds" if report.holds else "fails", report.mode)
    return report


def constant_diagonal_embedding(base: FiniteRing, n: int, *, settings: Optional[Settings] = None) -> IsomorphismReport:
    """T(R, n) -> T_n(R), (a_1, ..., a_n) to the matrix with a_(q-p+1) at (p, q)."""
    settings = settings or Settings()
    tuples = const_diag_tri(base, n)
    matrices = triangular_ring(base, n)
    cells = _upper_positions(n)
    c = len(cells)
    matrix = np.zeros((tuples.rank, matrices.rank), dtype=np.int64)
    for i in range(base.rank):
        for pos, (p, q) in enumerate(cells):
            matrix[i * n + (q - p), i * c + pos] = 1
    return _check_map(
        f"constant diagonal embedding:{tuples.provenance}->{matrices.provenance}",
        tuples,
        matrices,
        matrix,
        pair_cap=settings.closure_check_cap,
        require_bijective=False,
    )


# -- involutions -------------------------------------------------------------------


def involution_limits(settings: Settings) -> dict[str, int]:
    return {
        "exhaustive_cap": settings.exhaustive_cap,
        "pair_cap": settings.involution_pair_cap,
        "random_pairs": settings.random_pairs,
        "seed": settings.seed,
    }


def unitization_involution(
    base_involution: Involution,
    ring: FiniteRing,
    *,
    settings: Optional[Settings] = None,
) -> Involution:
    """(k, r)* = (k, r*) on U(R)."""
    settings = settings or Settings()
    construction = ring.construction
    if construction is None or construction.kind != "unitization" or construction.base != base_involution.ring:
        raise InvolutionMismatchError(f"{ring.provenance} is not the unitization of {base_involution.ring.provenance}")
    k = base_involution.ring.rank
    matrix = np.zeros((k + 1, k + 1), dtype=np.int64)
    matrix[0, 0] = 1
    matrix[1:, 1:] = base_involution.matrix
    return make_involution(ring, matrix, name=f"U({base_involution.name})", **involution_limits(settings))


def lift_involution_group_ring(
    base_involution: Involution,
    ring: FiniteRing,
    *,
    settings: Optional[Settings] = None,
) -> Involution:
    """(sum a_g g)* = sum a_g* g^-1 on RG, or on U(R)G with the scalar part fixed."""
    settings = settings or Settings()
    construction = ring.construction
    if construction is None or construction.kind not in ("group_ring", "extension_group_ring"):
        raise InvolutionMismatchError(f"{ring.provenance} is not a group ring")
    if construction.base != base_involution.ring:
        raise InvolutionMismatchError(
            f"involution lives on {base_involution.ring.provenance}, ring is built over {construction.base.provenance}"  # type: ignore[union-attr]
        )
    coefficient = base_involution.matrix
    if construction.kind == "extension_group_ring":
        unital = construction.params[0]
        k = base_involution.ring.rank
        coefficient = np.zeros((k + 1, k + 1), dtype=np.int64)
        coefficient[0, 0] = 1
        coefficient[1:, 1:] = base_involution.matrix
        assert unital.rank == k + 1
    group = construction.group
    assert group is not None
    m = group.order
    k = coefficient.shape[0]
    matrix = np.zeros((k * m, k * m), dtype=np.int64)
    for g in range(m):
        inverse = group.inverse(g)
        matrix[g::m, inverse::m] = coefficient
    return make_involution(ring, matrix, name=f"lift({base_involution.name or 'id'})", **involution_limits(settings))


def anti_transpose_involution(
    base_involution: Involution,
    ring: FiniteRing,
    *,
    settings: Optional[Settings] = None,
) -> Involution:
    """(a_ij)* = (a*_lk) with l = n-j+1, k = n-i+1 on T_n(R)."""
    settings = settings or Settings()
    construction = ring.construction
    if construction is None or construction.kind != "triangular" or construction.base != base_involution.ring:
        raise InvolutionMismatchError(f"{ring.provenance} is not T_n over {base_involution.ring.provenance}")
    n = construction.n
    assert n is not None
    cells = _upper_positions(n)
    index = {cell: pos for pos, cell in enumerate(cells)}
    c = len(cells)
    matrix = np.zeros((ring.rank, ring.rank), dtype=np.int64)
    for (p, q), pos in index.items():
        mirrored = index[(n - 1 - q, n - 1 - p)]
        matrix[pos::c, mirrored::c] = base_involution.matrix
    return make_involution(ring, matrix, name=f"antitranspose({base_involution.name or 'id'})", **involution_limits(settings))


def _entrywise_involution(base_involution: Involution, ring: FiniteRing, settings: Settings) -> Involution:
    n = ring.construction.n  # type: ignore[union-attr]
    assert n is not None
    matrix = np.zeros((ring.rank, ring.rank), dtype=np.int64)
    for s in range(n):
        matrix[s::n, s::n] = base_involution.matrix
    return make_involution(ring, matrix, name=f"entrywise({base_involution.name or 'id'})", **involution_limits(settings))


def canonical_involution(ring: FiniteRing, *, settings: Optional[Settings] = None) -> Involution:
    """The involution a construction carries naturally.

    Identity on commutative leaves, the group lift over group rings, anti-transpose
    over T_n, entrywise over T(R, n) and R[x]/(x^n), scalar-fixed over U(R).
    """
    settings = settings or Settings()
    construction = ring.construction
    kind = construction.kind if construction is not None else "catalog"
    if kind in ("group_ring", "extension_group_ring", "triangular", "const_diag", "poly_quotient", "unitization"):
        assert construction is not None and construction.base is not None
        inner = canonical_involution(construction.base, settings=settings)
        if kind in ("group_ring", "extension_group_ring"):
            return lift_involution_group_ring(inner, ring, settings=settings)
        if kind == "triangular":
            return anti_transpose_involution(inner, ring, settings=settings)
        if kind == "unitization":
            return unitization_involution(inner, ring, settings=settings)
        return _entrywise_involution(inner, ring, settings)
    if not _basis_commutative(ring):
        raise InvolutionMismatchError(f"{ring.provenance} is not commutative and carries no structural involution")
    return identity_involution(ring, **involution_limits(settings))


def _basis_commutative(ring: FiniteRing) -> bool:
    return bool(np.array_equal(ring.table, ring.table.transpose(1, 0, 2)))
