from __future__ import annotations

import json

import pytest

from rickart_tb.config import Settings
from rickart_tb.domain.errors import (
    CapExceededError,
    HypothesisFailedError,
    NotPrimeError,
    PrimeConstraintViolatedError,
)
from rickart_tb.domain.models import STEP_CITED
from rickart_tb.reporting.certificates import emit_certificate
from rickart_tb.services import catalog
from rickart_tb.services.constructions import group_ring, triangular_ring
from rickart_tb.services.harness import (
    run_claim,
    replay_certificate,
    verify_derived_examples,
    verify_example_ex50,
    verify_prop_artinian,
    verify_prop_group_descent,
    verify_prop_tn_conditions,
    verify_prop_triangular,
    verify_theorem1,
    verify_theorem2,
)

pytestmark = pytest.mark.harness


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("kind", ["A", "B", "C", "D"])
def test_theorem1_is_confirmed_for_odd_primes(kind: str, p: int, settings: Settings) -> None:
    certificate = verify_theorem1(kind, p, settings=settings)

    assert certificate.verdict
    assert [step.name for step in certificate.steps] == [
        "condition_i",
        "quadratic",
        "power_identity",
        "nonzero_annihilator",
        "refutation",
        "symbolic_idempotents",
        "artinian",
    ]
    assert certificate.step("artinian").kind == STEP_CITED
    assert certificate.step("symbolic_idempotents").data["family_is_annihilator"]
    assert "build" in certificate.timings


def test_theorem1_records_the_annihilator_chain(a3, settings: Settings) -> None:
    certificate = verify_theorem1("A", 3, settings=settings)
    refutation = certificate.step("refutation").data

    assert refutation["chain_sizes"] == [9]
    assert refutation["witness_label"] == "e + g"
    assert certificate.step("power_identity").data["modulus"] == 9
    assert certificate.step("nonzero_annihilator").data["nonzero_members"] == 8


def test_theorem1_strict_mode_agrees_with_the_witness(settings: Settings) -> None:
    certificate = verify_theorem1("A", 3, strict=True, settings=settings)
    strict = certificate.step("strict")

    assert strict.passed
    assert strict.data["agrees_with_witness_mode"]
    assert strict.data["degenerate"]


def test_theorem1_rejects_p_equal_two() -> None:
    with pytest.raises(PrimeConstraintViolatedError):
        verify_theorem1("A", 2)
    with pytest.raises(NotPrimeError):
        verify_theorem1("A", 4)


def test_theorem2_uses_projections_and_the_group_involution(settings: Settings) -> None:
    certificate = verify_theorem2("A", 2, settings=settings)

    assert certificate.verdict
    assert certificate.step("involution").data["swap_check"]
    assert certificate.step("refutation").data["chain_sizes"] == [16]
    projections = certificate.step("symbolic_projections").data
    assert projections["projections_in_annihilator"] == ["0"]
    assert projections["scan_matches_algebra"]
    assert len(certificate.notes) == 2


@pytest.mark.parametrize("p", [2, 5])
@pytest.mark.parametrize("kind", ["A", "B", "C", "D"])
def test_theorem2_is_confirmed_for_each_fine_ring(kind: str, p: int, settings: Settings) -> None:
    certificate = verify_theorem2(kind, p, settings=settings)

    assert certificate.verdict
    assert certificate.step("involution").data["swap_check"]
    assert certificate.step("refutation").data["chain_sizes"]
    projections = certificate.step("symbolic_projections").data
    assert projections["projections_in_annihilator"] == ["0"]
    assert projections["scan_matches_algebra"]


def test_theorem2_rejects_p_equal_three() -> None:
    with pytest.raises(PrimeConstraintViolatedError):
        verify_theorem2("A", 3)


@pytest.mark.parametrize("m", [2, 3])
def test_triangular_conditions(m: int, settings: Settings) -> None:
    p = 5 if m == 3 else 3
    certificate = verify_prop_tn_conditions("A", p, 2, m, settings=settings)

    assert certificate.verdict
    superdiagonal = certificate.step("superdiagonal_induction").data
    assert superdiagonal["d_injective"]
    assert [level["level"] for level in superdiagonal["levels"]] == [0, 1]


@pytest.mark.parametrize("kind", ["A", "B", "C", "D"])
def test_three_by_three_triangular_conditions(kind: str, settings: Settings) -> None:
    certificate = verify_prop_tn_conditions(kind, 3, 3, 2, settings=settings)

    assert certificate.verdict
    assert certificate.step("condition_i").data["scanned_elements"] == 3**12
    assert certificate.step("quadratic").data["mode"] == "exhaustive"
    superdiagonal = certificate.step("superdiagonal_induction").data
    assert [level["level"] for level in superdiagonal["levels"]] == [0, 1, 2]


def test_triangular_conditions_need_a_supported_multiplier() -> None:
    with pytest.raises(ValueError):
        verify_prop_tn_conditions("A", 3, 2, 4)


def test_prop_triangular_on_a_unital_ring(z4, settings: Settings) -> None:
    certificate = verify_prop_triangular(z4, 2, settings=settings)

    assert certificate.verdict
    assert certificate.step("base_verdict").data["holds"]
    assert certificate.step("triangular_verdict").data["holds"]
    assert certificate.notes == []


def test_prop_triangular_lifts_the_base_witness(a3) -> None:
    limits = Settings(decider_cap=2**9, random_pairs=2000, sample_size=512)
    certificate = verify_prop_triangular(group_ring(a3, catalog.cyclic_group(2)), 2, settings=limits)

    assert certificate.verdict
    assert certificate.step("triangular_verdict").data["mode"] == "witness-only"
    assert certificate.step("equivalence").data == {
        "base_holds": False,
        "triangular_holds": False,
        "triangular_mode": "witness-only",
    }


def test_prop_triangular_needs_an_abelian_ring() -> None:
    with pytest.raises(HypothesisFailedError):
        verify_prop_triangular(triangular_ring(catalog.integers_mod(2), 2), 2)


def test_prop_triangular_cannot_lift_a_passing_verdict(z4) -> None:
    with pytest.raises(CapExceededError):
        verify_prop_triangular(z4, 3, settings=Settings(decider_cap=16))


def test_prop_artinian(z4) -> None:
    certificate = verify_prop_artinian(z4, 2)

    assert certificate.verdict
    assert certificate.step("base_lattice").data["right_ideals"] == 3
    assert certificate.step("triangular_lattice").data["cardinality"] == 16


def test_prop_artinian_respects_its_cap(a3) -> None:
    with pytest.raises(CapExceededError):
        verify_prop_artinian(group_ring(a3, catalog.cyclic_group(2)), 2)


def test_group_descent(z4) -> None:
    certificate = verify_prop_group_descent(z4, catalog.cyclic_group(2))

    assert certificate.verdict
    assert [step.name for step in certificate.steps] == ["right_descent", "left_descent"]


def test_derived_example_over_a_group_ring(settings: Settings) -> None:
    certificate = verify_derived_examples("A", 2, "C2", settings=settings)

    assert certificate.verdict
    assert certificate.step("group_descent").kind == STEP_CITED
    direct = certificate.step("direct")
    assert direct.data["agrees_with_implication"]
    assert not direct.data["holds"]


def test_derived_example_direct_scan_at_p_three(settings: Settings) -> None:
    certificate = verify_derived_examples("A", 3, "C2", settings=settings)
    direct = certificate.step("direct").data

    assert certificate.verdict
    assert direct["mode"] == "exhaustive"
    assert direct["scanned_elements"] == 6561
    assert direct["agrees_with_implication"]
    assert not direct["holds"]


def test_example_ex50_both_rings_fail(settings: Settings) -> None:
    certificate = verify_example_ex50("A", 2, 2, settings=settings)

    assert certificate.claim == "example_ex50"
    assert certificate.verdict
    assert certificate.step("both_fail").passed
    assert certificate.parameters == {"kind": "A", "p": 2, "n": 2}


def test_run_claim_dispatches_by_name(settings: Settings) -> None:
    certificate = run_claim("prop_artinian", {"ring": "Z(4)", "n": 2}, settings=settings)

    assert certificate.claim == "prop_artinian"
    with pytest.raises(KeyError):
        run_claim("theorem3", {}, settings=settings)


def test_certificate_bytes_are_reproducible(settings: Settings) -> None:
    first = emit_certificate(verify_theorem1("A", 3, settings=settings))
    second = emit_certificate(verify_theorem1("A", 3, settings=settings))

    assert first == second
    assert b"timings" not in first


def test_replay_of_an_unchanged_certificate(settings: Settings) -> None:
    document = emit_certificate(verify_theorem1("A", 3, settings=settings)).decode("utf-8")

    identical, fresh, differences = replay_certificate(document, settings=settings)

    assert identical
    assert differences == []
    assert fresh.verdict


def test_replay_reports_tampered_steps(settings: Settings) -> None:
    recorded = json.loads(emit_certificate(verify_theorem1("A", 3, settings=settings)))
    recorded["steps"][0]["data"]["holds"] = False
    recorded["notes"] = []

    identical, _, differences = replay_certificate(recorded, settings=settings)

    assert not identical
    assert "step condition_i differs" in differences
    assert "notes differ" in differences
