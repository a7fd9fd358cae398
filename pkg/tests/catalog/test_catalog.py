from __future__ import annotations

import pytest

from rickart_tb.algorithms.annihilators import enumerate_idempotents, is_unital, ring_fingerprint
from rickart_tb.domain.errors import NotAGroupError, NotPrimeError
from rickart_tb.services import catalog

pytestmark = pytest.mark.catalog


@pytest.mark.parametrize("kind", ["A", "B", "C", "D"])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_fine_rings_have_order_p_squared_and_no_unity(kind: str, p: int) -> None:
    ring = catalog.fine_ring(kind, p)

    assert ring.cardinality == p * p
    assert ring.provenance == f"{kind}({p})"
    assert ring.unity is None
    assert not is_unital(ring)
    assert [e.coords for e in enumerate_idempotents(ring)] == [ring.zero().coords]


def test_fine_ring_presentations() -> None:
    a = catalog.fine_ring("A", 5)
    c = catalog.fine_ring("C", 5)

    assert a.orders == (25,)
    assert a.mul(a.basis(0), a.basis(0)) == a.element([5])
    assert c.mul(c.basis(0), c.basis(0)) == c.basis(1)
    assert c.mul(c.basis(0), c.basis(1)) == c.zero()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fine_rings_are_pairwise_distinguished(p: int) -> None:
    prints = [repr(ring_fingerprint(catalog.fine_ring(kind, p))) for kind in ("A", "B", "C", "D")]

    assert len(set(prints)) == 4


@pytest.mark.parametrize("p", [2, 3, 5])
def test_d_presentation_has_only_the_null_completion(p: int) -> None:
    assert catalog.d_completion_search(p) == [(0, 0)]
    assert catalog.fine_ring("Dalt", p) == catalog.fine_ring("D", p)


def test_composite_parameter_is_rejected() -> None:
    with pytest.raises(NotPrimeError):
        catalog.fine_ring("A", 4)
    with pytest.raises(KeyError):
        catalog.fine_ring("E", 3)


def test_integer_and_null_rings() -> None:
    z1 = catalog.integers_mod(1)
    z6 = catalog.integers_mod(6)
    n3 = catalog.null_ring(3)

    assert z1.cardinality == 1
    assert z1.rank == 0
    assert z6.unity == (1,)
    assert n3.mul(n3.basis(0), n3.basis(0)) == n3.zero()
    assert n3.provenance == "N(3)"


def test_catalog_list_covers_every_entry() -> None:
    keys = [entry.key for entry in catalog.catalog_list()]

    assert "A(3)" in keys
    assert "Dalt(5)" in keys
    assert "Z(1)" in keys
    assert "N(2)" in keys
    assert len(keys) == len(set(keys))


def test_groups() -> None:
    c3 = catalog.catalog_group("C3")
    v4 = catalog.catalog_group("V4")

    assert c3.labels == ("e", "g", "g^2")
    assert c3.inverse(1) == 2
    assert v4.order == 4
    assert all(v4.inverse(a) == a for a in range(4))
    with pytest.raises(KeyError):
        catalog.catalog_group("S3")


def test_group_from_cayley_rejects_non_groups() -> None:
    with pytest.raises(NotAGroupError):
        catalog.group_from_cayley([[0, 1], [1, 1]])
    with pytest.raises(NotAGroupError):
        catalog.group_from_cayley([[0, 1], [0]])
