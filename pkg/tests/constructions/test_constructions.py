from __future__ import annotations

import pytest

from rickart_tb.config import Settings
from rickart_tb.domain.errors import InvolutionMismatchError, NotAntiMultiplicativeError
from rickart_tb.domain.involution import identity_involution
from rickart_tb.domain.ring import make_ring
from rickart_tb.services import catalog
from rickart_tb.services.constructions import (
    ConstructionError,
    anti_transpose_involution,
    canonical_involution,
    components,
    compose_components,
    const_diag_tri,
    constant_diagonal_embedding,
    extension_group_ring,
    group_elements,
    group_ring,
    iso_polyquot_consttri,
    lift_involution_group_ring,
    poly_quotient,
    triangular_ring,
    unitization,
    unitization_involution,
)

pytestmark = pytest.mark.constructions


def test_group_ring_over_non_unital_base(a3) -> None:
    s = group_ring(a3, catalog.cyclic_group(2))

    assert s.cardinality == 81
    assert s.provenance == "GR(A(3),C2)"
    assert s.labels == ("a*e", "a*g")
    assert s.unity is None
    assert s.unit_aliases == frozenset({"e", "g"})


def test_group_ring_over_unital_base_shortens_labels() -> None:
    ring = group_ring(catalog.integers_mod(2), catalog.cyclic_group(2))
    units = group_elements(ring)

    assert ring.labels == ("e", "g")
    assert ring.unity_element() == units["e"]
    assert ring.mul(units["g"], units["g"]) == units["e"]


def test_group_ring_convolution(a3) -> None:
    s = group_ring(a3, catalog.cyclic_group(3))
    ae, ag, ag2 = (s.basis(i) for i in range(3))

    assert s.mul(ag, ag2) == s.int_scale(3, ae)
    assert s.mul(ag2, ag2) == s.int_scale(3, ag)


def test_components_round_trip(a3) -> None:
    s = group_ring(a3, catalog.cyclic_group(2))
    x = s.element([4, 7])
    parts = components(s, x)

    assert parts == {"e": a3.element([4]), "g": a3.element([7])}
    assert compose_components(s, parts) == x
    assert compose_components(s, {"g": a3.element([2])}) == s.element([0, 2])


def test_unitization(a3) -> None:
    ring, embedding = unitization(a3)

    assert ring.orders == (9, 9)
    assert ring.labels == ("1", "a")
    assert ring.unity == (1, 0)
    assert embedding.positions == (1,)
    assert ring.construction is not None and ring.construction.embedding == embedding
    assert embedding.lift(a3.basis(0)) == ring.basis(1)


def test_unitization_renames_a_colliding_label() -> None:
    ring, _ = unitization(catalog.integers_mod(2))

    assert ring.labels == ("1", "1'")


def test_unitization_of_zero_ring_is_refused() -> None:
    with pytest.raises(ConstructionError):
        unitization(catalog.integers_mod(1))


def test_extension_group_ring_contains_group_elements(a3) -> None:
    ambient, ideal = extension_group_ring(a3, catalog.cyclic_group(2))
    units = group_elements(ambient)
    x = ambient.add(units["e"], units["g"])

    assert ambient.labels == ("e", "g", "a*e", "a*g")
    assert ambient.cardinality == 9**4
    assert ideal.sub == group_ring(a3, catalog.cyclic_group(2))
    assert ideal.positions == (2, 3)
    assert ambient.mul(x, x) == ambient.int_scale(2, x)


def test_group_elements_need_a_unital_group_ring(a3) -> None:
    with pytest.raises(ConstructionError):
        group_elements(group_ring(a3, catalog.cyclic_group(2)))


def test_triangular_ring_labels_and_unity() -> None:
    ring = triangular_ring(catalog.integers_mod(2), 2)
    over_a = triangular_ring(catalog.fine_ring("A", 3), 2)

    assert ring.labels == ("E[1,1]", "E[1,2]", "E[2,2]")
    assert ring.cardinality == 8
    assert ring.unity == (1, 0, 1)
    assert over_a.labels == ("a[1,1]", "a[1,2]", "a[2,2]")
    assert over_a.cardinality == 729


def test_matrix_product_in_triangular_ring() -> None:
    ring = triangular_ring(catalog.integers_mod(2), 2)
    e11, e12, e22 = (ring.basis(i) for i in range(3))

    assert ring.mul(e11, e12) == e12
    assert ring.mul(e12, e22) == e12
    assert ring.mul(e12, e11) == ring.zero()


def test_constant_diagonal_and_polynomial_labels(z4) -> None:
    tuples = const_diag_tri(z4, 3)
    polys = poly_quotient(z4, 3)

    assert tuples.labels == ("c_1", "c_2", "c_3")
    assert polys.labels == ("1", "x", "x^2")
    assert const_diag_tri(catalog.fine_ring("A", 3), 2).labels == ("a_1", "a_2")
    assert poly_quotient(catalog.fine_ring("A", 3), 3).labels == ("a", "a*x", "a*x^2")
    x = polys.basis(1)
    assert polys.pow(x, 3) == polys.zero()


@pytest.mark.parametrize(
    ("base", "n"),
    [
        (catalog.integers_mod(4), 2),
        (catalog.integers_mod(4), 3),
        (catalog.fine_ring("A", 3), 2),
        (catalog.fine_ring("B", 5), 2),
        (catalog.fine_ring("A", 3), 3),
        (catalog.fine_ring("C", 2), 3),
    ],
    ids=lambda value: value.provenance if hasattr(value, "provenance") else str(value),
)
def test_polynomial_quotient_is_constant_diagonal(base, n: int) -> None:
    report = iso_polyquot_consttri(base, n)

    assert report.holds
    assert report.bijective
    assert report.mode == "exhaustive"
    assert report.counterexample is None


def test_constant_diagonal_embedding_is_multiplicative(z4) -> None:
    report = constant_diagonal_embedding(z4, 2)

    assert report.holds
    assert report.mode == "exhaustive"
    assert not report.bijective


def test_group_lift_inverts_group_elements(a3) -> None:
    s = group_ring(a3, catalog.cyclic_group(3))
    involution = lift_involution_group_ring(identity_involution(a3), s)

    assert involution.apply(s.basis(0)) == s.basis(0)
    assert involution.apply(s.basis(1)) == s.basis(2)
    assert involution.apply(s.basis(2)) == s.basis(1)


def test_group_lift_on_extension_ring_fixes_scalars(a3) -> None:
    ambient, _ = extension_group_ring(a3, catalog.cyclic_group(3))
    involution = lift_involution_group_ring(identity_involution(a3), ambient)
    units = group_elements(ambient)

    assert involution.apply(units["g"]) == units["g^2"]
    assert involution.apply(units["e"]) == units["e"]


def test_anti_transpose() -> None:
    z2 = catalog.integers_mod(2)
    ring = triangular_ring(z2, 2)
    involution = anti_transpose_involution(identity_involution(z2), ring)
    e11, e12, e22 = (ring.basis(i) for i in range(3))

    assert involution.apply(e11) == e22
    assert involution.apply(e12) == e12
    assert canonical_involution(ring).apply(e22) == e11


def _assert_involution_axioms(involution, ring) -> None:
    basis = [ring.basis(i) for i in range(ring.rank)]
    for x in basis:
        assert involution.apply(involution.apply(x)) == x
        for y in basis:
            assert involution.apply(ring.add(x, y)) == ring.add(involution.apply(x), involution.apply(y))
            assert involution.apply(ring.mul(x, y)) == ring.mul(involution.apply(y), involution.apply(x))


@pytest.mark.parametrize("kind", ["A", "B", "C", "D"])
def test_group_lift_on_unitized_fine_rings(kind: str) -> None:
    limits = Settings(involution_pair_cap=10**4)
    base = catalog.fine_ring(kind, 3)
    ambient, _ = extension_group_ring(base, catalog.cyclic_group(3))

    lifted = lift_involution_group_ring(identity_involution(base), ambient, settings=limits)
    canonical = canonical_involution(ambient, settings=limits)

    assert canonical.matrix.tolist() == lifted.matrix.tolist()
    _assert_involution_axioms(lifted, ambient)


@pytest.mark.parametrize("kind", ["A", "B", "C", "D"])
def test_anti_transpose_on_triangular_fine_rings(kind: str) -> None:
    limits = Settings(involution_pair_cap=10**4)
    base = catalog.fine_ring(kind, 3)
    ring = triangular_ring(base, 2)

    involution = anti_transpose_involution(identity_involution(base), ring, settings=limits)

    assert ring.cardinality <= limits.involution_pair_cap
    _assert_involution_axioms(involution, ring)


def test_identity_is_not_an_involution_on_a_noncommutative_ring() -> None:
    ring = triangular_ring(catalog.integers_mod(2), 2)

    with pytest.raises(NotAntiMultiplicativeError):
        identity_involution(ring)


def test_canonical_involution_needs_structure_or_commutativity() -> None:
    template = triangular_ring(catalog.integers_mod(2), 2)
    bare = make_ring(template.orders, template.table)

    with pytest.raises(InvolutionMismatchError):
        canonical_involution(bare)


def test_unitization_involution_checks_its_ring(a3) -> None:
    ring, _ = unitization(a3)
    involution = unitization_involution(identity_involution(a3), ring)

    assert involution.apply(ring.basis(0)) == ring.basis(0)
    with pytest.raises(InvolutionMismatchError):
        unitization_involution(identity_involution(a3), group_ring(a3, catalog.cyclic_group(2)))
