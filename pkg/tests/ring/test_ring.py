from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from rickart_tb.algorithms.annihilators import (
    AnnihilatorScanner,
    annihilator_chain,
    find_unity,
    is_commutative,
    nilpotency_index,
    right_annihilator,
    ring_fingerprint,
    square_zero_count,
)
from rickart_tb.domain.errors import (
    BadUnityError,
    IllDefinedError,
    MalformedTableError,
    NonAssociativeError,
    NonPositiveExponentError,
    RingMismatchError,
)
from rickart_tb.domain.ring import make_ring
from rickart_tb.services import catalog
from rickart_tb.services.constructions import group_ring, triangular_ring
from rickart_tb.services.expressions import evaluate

pytestmark = pytest.mark.ring

S_A3 = group_ring(catalog.fine_ring("A", 3), catalog.cyclic_group(2))
T2_Z2 = triangular_ring(catalog.integers_mod(2), 2)


def test_integers_mod_four_arithmetic(z4) -> None:
    two = z4.element([2])
    three = z4.element([3])

    assert z4.cardinality == 4
    assert z4.mul(two, two) == z4.zero()
    assert z4.mul(three, three) == z4.element([1])
    assert z4.add(three, three) == two
    assert z4.sub(z4.zero(), three) == z4.element([1])
    assert z4.element([5]).coords == (1,)


def test_canonical_order_is_mixed_radix_first_coordinate_major() -> None:
    ring = catalog.fine_ring("C", 3)

    assert ring.element_at(1).coords == (0, 1)
    assert ring.element_at(3).coords == (1, 0)
    assert ring.index_of(ring.element([2, 2])) == 8


def test_non_associative_table_is_rejected_with_triple() -> None:
    table = np.zeros((2, 2, 2), dtype=np.int64)
    table[0, 0] = [0, 1]
    table[1, 0] = [0, 1]

    with pytest.raises(NonAssociativeError) as excinfo:
        make_ring([2, 2], table)
    assert excinfo.value.triple == (0, 0, 0)


def test_ill_defined_product_is_rejected() -> None:
    table = np.zeros((2, 2, 2), dtype=np.int64)
    table[0, 0] = [0, 1]

    with pytest.raises(IllDefinedError):
        make_ring([2, 4], table)


def test_bad_unity_and_malformed_tables() -> None:
    with pytest.raises(BadUnityError):
        make_ring([4], [[[1]]], unity=[2])
    with pytest.raises(MalformedTableError):
        make_ring([4], [[[7]]])
    with pytest.raises(MalformedTableError):
        make_ring([1], [[[0]]])


def test_ring_identity_is_structural(a3) -> None:
    again = catalog.fine_ring("A", 3)

    assert again == a3
    assert again.ring_id == a3.ring_id
    assert catalog.fine_ring("B", 3) != a3


def test_mixing_rings_and_bad_exponents_raise(a3, z4) -> None:
    with pytest.raises(RingMismatchError):
        a3.add(a3.basis(0), z4.basis(0))
    with pytest.raises(NonPositiveExponentError):
        a3.pow(a3.basis(0), 0)


def test_power_of_a_in_a3(a3) -> None:
    a = a3.basis(0)

    assert a3.pow(a, 2) == a3.element([3])
    assert a3.pow(a, 3) == a3.zero()


@hypothesis_settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=8), min_size=6, max_size=6))
def test_group_ring_axioms_on_random_triples(values: list[int]) -> None:
    x, y, z = (S_A3.element(values[i : i + 2]) for i in range(0, 6, 2))

    assert S_A3.mul(S_A3.mul(x, y), z) == S_A3.mul(x, S_A3.mul(y, z))
    assert S_A3.mul(x, S_A3.add(y, z)) == S_A3.add(S_A3.mul(x, y), S_A3.mul(x, z))
    assert S_A3.mul(S_A3.add(x, y), z) == S_A3.add(S_A3.mul(x, z), S_A3.mul(y, z))


def test_right_annihilator_of_a_in_a3(a3) -> None:
    annihilator = right_annihilator(a3, a3.basis(0))

    assert annihilator.cardinality == 3
    assert list(annihilator.indices()) == [0, 3, 6]


def test_annihilator_chain_stabilizes(a3) -> None:
    chain = annihilator_chain(a3, a3.basis(0))

    assert [member.cardinality for member in chain] == [3, 9]


CHAIN_CATALOG = [
    *(f"{kind}({p})" for kind in catalog.FINE_KINDS for p in (2, 3, 5)),
    "Z(2)", "Z(4)", "Z(6)", "Z(8)", "Z(12)", "N(3)",
    "GR(A(3),C2)", "GR(C(2),C3)", "U(A(3))", "T(Z(2),3)", "T(Z(4),2)", "T(A(3),2)", "CT(Z(4),3)", "PQ(A(3),3)",
]


def _power_bitmaps(ring, depth: int) -> list[np.ndarray]:
    """r(x^n) for every element x at once, n = 1..depth."""
    elements = ring.elements()
    scanner = AnnihilatorScanner(ring)
    powers = elements
    bitmaps = []
    for _ in range(depth):
        bitmaps.append(scanner.bitmaps(powers))
        powers = ring.mul_arrays(powers, elements)
    return bitmaps


@pytest.mark.parametrize("expression", CHAIN_CATALOG)
def test_annihilator_chains_are_monotone_and_stabilize_for_every_element(expression: str) -> None:
    ring = evaluate(expression)
    depth = ring.cardinality.bit_length() + 3
    bitmaps = _power_bitmaps(ring, depth)

    assert ring.cardinality <= 10**4
    for current, following in zip(bitmaps, bitmaps[1:]):
        assert not np.any(current & ~following)
    for current, following, after in zip(bitmaps, bitmaps[1:], bitmaps[2:]):
        settled = np.all(current == following, axis=1)
        assert np.all(following[settled] == after[settled])
    assert np.array_equal(bitmaps[-2], bitmaps[-1])


@pytest.mark.parametrize("expression", ["T(Z(6),3)", "XGR(C(3),C3)"])
def test_chain_stays_put_after_stabilizing_on_sampled_elements(expression: str) -> None:
    ring = evaluate(expression)
    scanner = AnnihilatorScanner(ring)
    picks = np.random.default_rng(0).choice(ring.cardinality, size=100, replace=False)

    assert ring.cardinality > 10**4
    for index in picks:
        x = ring.element_at(int(index))
        chain = scanner.chain_bitmaps(np.asarray(x.coords))
        n = len(chain)
        later = scanner.bitmaps(np.asarray([ring.pow(x, n + 2).coords, ring.pow(x, n + 3).coords]))
        assert np.array_equal(later[0], later[1])
        assert np.array_equal(later[0], chain[-1])


def test_invariants_tell_catalog_rings_apart(a3) -> None:
    b3 = catalog.fine_ring("B", 3)

    assert nilpotency_index(a3) == 3
    assert nilpotency_index(b3) == 2
    assert nilpotency_index(catalog.integers_mod(4)) is None
    assert square_zero_count(a3) == 3
    assert square_zero_count(b3) == 9
    assert ring_fingerprint(a3) != ring_fingerprint(b3)


def test_find_unity_scans_when_none_is_declared() -> None:
    undeclared = make_ring([4], [[[1]]])

    assert undeclared.unity is None
    assert find_unity(undeclared) == undeclared.element([1])
    assert find_unity(catalog.fine_ring("A", 3)) is None


def test_upper_triangular_matrices_do_not_commute() -> None:
    assert not is_commutative(T2_Z2)
    assert is_commutative(S_A3)
