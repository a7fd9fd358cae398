"""Certificate-producing verifications of the counterexample constructions.

Each ``verify_*`` function runs a fixed list of steps and returns a
:class:`~rickart_tb.domain.models.Certificate`; its verdict is the conjunction of the
step verdicts. Step data never contains timings, so equal parameters give equal data.
"""
from __future__ import annotations

import json
import logging
import math
import time
from collections.abc import Callable
from typing import Any, Optional

import numpy as np

from rickart_tb.algorithms.annihilators import AnnihilatorScanner, projection_indices
from rickart_tb.algorithms.ideals import enumerate_right_ideals, longest_chain
from rickart_tb.algorithms.properties import (
    condition_i,
    is_abelian,
    is_generalized_left_pp,
    is_generalized_rickart_star,
    is_generalized_right_pp,
    refute_gen_pp_with_witness,
    trivial_quadratic,
)
from rickart_tb.config import Settings
from rickart_tb.domain.errors import (
    CapExceededError,
    HypothesisFailedError,
    NotPrimeError,
    PrimeConstraintViolatedError,
)
from rickart_tb.domain.group import FiniteGroup
from rickart_tb.domain.involution import Involution
from rickart_tb.domain.models import STEP_CITED, STEP_SKIPPED, Certificate, PropertyVerdict, StepRecord
from rickart_tb.domain.ring import FiniteRing, RingElement
from rickart_tb.domain.subsets import IdealEmbedding, make_embedding
from rickart_tb.reporting.certificates import jsonable
from rickart_tb.services import catalog
from rickart_tb.services.constructions import (
    canonical_involution,
    const_diag_tri,
    extension_group_ring,
    group_elements,
    group_ring,
    lift_involution_group_ring,
    triangular_ring,
)
from rickart_tb.services.expressions import evaluate, load_group

LOGGER = logging.getLogger(__name__)

CLAIMS = (
    "theorem1",
    "theorem2",
    "prop_tn",
    "prop_triangular",
    "prop_artinian",
    "prop_group_descent",
    "example_ex50",
    "example_SH",
)

FINITE_IS_ARTINIAN = (
    "a finite ring has finitely many right ideals, so every chain of right ideals is finite "
    "and both chain conditions hold"
)
WITNESS_OUTSIDE_NOTE = (
    "the witness {witness} is not an element of S = RG because R has no unity; the refutation "
    "takes annihilators of {witness} in U(R)G relative to the ideal S, while the strict step "
    "quantifies over the elements of S"
)
C3_MEMBER_NOTE = (
    "the annihilator statement written as (e-g) in r_S(e+g)^n is checked as "
    "a*e - a*g in r_S((e+g+g^2)^n) for every a in R"
)
TRIANGULAR_DISCREPANCY_NOTE = (
    "abelian ring with differing verdicts for R and T(R, n); recorded as a discrepancy in the "
    "claimed equivalence, pending manual review"
)


def _timed(certificate: Certificate, run: Callable[[], StepRecord]) -> StepRecord:
    started = time.perf_counter()
    step = run()
    return certificate.add_step(step, time.perf_counter() - started)


def _verdict_step(name: str, description: str, verdict: PropertyVerdict, *, expect: bool = True) -> StepRecord:
    return StepRecord(name, description, verdict.holds == expect, verdict.to_dict())


def _require_prime(p: int) -> None:
    if not catalog.is_prime(p):
        raise NotPrimeError(f"{p} is not prime")


def _base_ring(kind: str, p: int, n: Optional[int]) -> FiniteRing:
    ring = catalog.fine_ring(kind, p)
    return ring if n is None else triangular_ring(ring, n)


def _group_by_name(name: str) -> FiniteGroup:
    return load_group(name[1:]) if name.startswith("@") else catalog.catalog_group(name)


def _power_identity(ambient: FiniteRing, x: RingElement, factor: int, settings: Settings) -> StepRecord:
    """x^n = factor^(n-1) x for n = 1..power_range, exactly."""
    rows = []
    power = x
    for n in range(1, settings.power_range + 1):
        if n > 1:
            power = ambient.mul(power, x)
        expected = ambient.int_scale(factor ** (n - 1), x)
        rows.append(
            {
                "n": n,
                "coefficient": pow(factor, n - 1, ambient.exponent),
                "holds": power == expected,
            }
        )
    label = ambient.format_element(x)
    return StepRecord(
        "power_identity",
        f"({label})^n = {factor}^(n-1) ({label}) for n = 1..{settings.power_range}",
        all(row["holds"] for row in rows),
        {"modulus": ambient.exponent, "powers": rows},
    )


def _difference_family(base: FiniteRing, ideal: IdealEmbedding, settings: Settings) -> tuple[np.ndarray, np.ndarray]:
    """Base elements a and the ideal elements a*e - a*g (coordinates in the ideal)."""
    group = ideal.sub.construction.group  # type: ignore[union-attr]
    assert group is not None
    m = group.order
    if base.cardinality <= settings.exhaustive_cap:
        values = np.asarray(base.elements(settings.exhaustive_cap))
    else:
        values = np.eye(base.rank, dtype=np.int64)
    members = np.zeros((len(values), ideal.sub.rank), dtype=np.int64)
    members[:, group.identity :: m] = values
    members[:, 1::m] = -values
    return values, ideal.sub.reduce(members)


def _annihilator_family(
    ambient: FiniteRing,
    ideal: IdealEmbedding,
    base: FiniteRing,
    x: RingElement,
    settings: Settings,
) -> StepRecord:
    values, members = _difference_family(base, ideal, settings)
    lifted = ideal.lift_arrays(members)
    row = np.asarray([x.coords], dtype=np.int64)
    power = row
    failures = 0
    for n in range(1, settings.power_range + 1):
        if n > 1:
            power = ambient.mul_arrays(power, row)
        failures += int(np.count_nonzero(np.any(ambient.mul_arrays(power, lifted), axis=1)))
    nonzero = int(np.count_nonzero(np.any(members, axis=1)))
    example = ideal.sub.format_element(ideal.sub.element(members[min(1, len(members) - 1)]))
    return StepRecord(
        "nonzero_annihilator",
        f"a*e - a*g annihilates every power of {ambient.format_element(x)} and is nonzero for a != 0",
        failures == 0 and nonzero > 0,
        {
            "family_size": len(members),
            "nonzero_members": nonzero,
            "powers_checked": settings.power_range,
            "failing_products": failures,
            "example_member": example,
        },
    )


def _artinian_step(ring: FiniteRing, ambient: Optional[FiniteRing] = None) -> StepRecord:
    data: dict[str, Any] = {"cardinality": ring.cardinality}
    if ambient is not None:
        data["ambient_cardinality"] = ambient.cardinality
    return StepRecord("artinian", FINITE_IS_ARTINIAN, True, data, kind=STEP_CITED)


def _skipped(name: str, description: str, reason: str) -> StepRecord:
    return StepRecord(name, description, True, {"reason": reason}, kind=STEP_SKIPPED)


def _log_certificate(certificate: Certificate) -> None:
    LOGGER.info(
        "Certificate %s: %s",
        certificate.claim,
        "confirmed" if certificate.verdict else "not confirmed",
        extra={"ctx": {"claim": certificate.claim, "parameters": certificate.parameters, "steps": len(certificate.steps)}},
    )


# -- group ring counterexamples ------------------------------------------------------


def verify_theorem1(
    kind: str,
    p: int,
    *,
    n: Optional[int] = None,
    strict: bool = False,
    settings: Optional[Settings] = None,
) -> Certificate:
    """S = RG over G = C2 is finite (so artinian) but not generalized right p.p."""
    settings = settings or Settings()
    _require_prime(p)
    if p == 2:
        raise PrimeConstraintViolatedError(
            f"p = 2 violates the hypothesis: multiplication by 2 is not injective on {kind}({p}) "
            f"(gcd(2, {p * p if kind in ('A', 'B') else p}) != 1)"
        )
    base = _base_ring(kind, p, n)
    certificate = Certificate(
        "theorem1",
        {"kind": kind, "p": p, "n": n, "group": "C2", "strict": strict},
        notes=[WITNESS_OUTSIDE_NOTE.format(witness="e+g")],
    )

    _timed(certificate, lambda: _verdict_step(
        "condition_i", "2a = 0 implies a = 0 in R", condition_i(base, 2, settings=settings)
    ))
    _timed(certificate, lambda: _verdict_step(
        "quadratic", "2x^2 - x = 0 has only the trivial solution in R",
        trivial_quadratic(base, 2, -1, settings=settings, sample=True),
    ))

    started = time.perf_counter()
    ambient, ideal = extension_group_ring(base, catalog.cyclic_group(2))
    units = group_elements(ambient)
    x = ambient.add(units["e"], units["g"])
    certificate.timings["build"] = round(time.perf_counter() - started, 6)

    _timed(certificate, lambda: _power_identity(ambient, x, 2, settings))
    _timed(certificate, lambda: _annihilator_family(ambient, ideal, base, x, settings))
    refutation = refute_gen_pp_with_witness(ambient, ideal, x, settings=settings)
    _timed(certificate, lambda: _verdict_step(
        "refutation", "no r_S((e+g)^n) is generated by an idempotent of S", refutation, expect=False
    ))
    _timed(certificate, lambda: _symbolic_idempotents(base, ideal, refutation, settings))
    _timed(certificate, lambda: _artinian_step(ideal.sub, ambient))
    if strict:
        _timed(certificate, lambda: _strict_step(
            ideal.sub, refutation, lambda: is_generalized_right_pp(ideal.sub, settings=settings), settings
        ))
    _log_certificate(certificate)
    return certificate


def _symbolic_idempotents(
    base: FiniteRing,
    ideal: IdealEmbedding,
    refutation: PropertyVerdict,
    settings: Settings,
) -> StepRecord:
    """Idempotents f = a*e + b*g inside r_S(e+g) need b = -a and 2a^2 = a."""
    values, members = _difference_family(base, ideal, settings)
    sub = ideal.sub
    scanned = np.all(sub.mul_arrays(members, members) == members, axis=1)
    algebraic = ~np.any(base.reduce(2 * base.mul_arrays(values, values) - values), axis=1)
    first_size = refutation.chain_sizes[0] if refutation.chain_sizes else 0
    return StepRecord(
        "symbolic_idempotents",
        "idempotents a*e - a*g found by scan match the solutions of 2a^2 = a, and only 0 qualifies",
        bool(np.array_equal(scanned, algebraic)) and int(scanned.sum()) == 1 and bool(scanned[0]),
        {
            "scanned_idempotents": int(scanned.sum()),
            "algebraic_solutions": int(algebraic.sum()),
            "family_is_annihilator": first_size == len(members),
        },
    )


def _strict_step(
    sub: FiniteRing,
    refutation: PropertyVerdict,
    decide: Callable[[], PropertyVerdict],
    settings: Settings,
) -> StepRecord:
    description = f"exhaustive check over the elements of {sub.provenance}"
    if sub.cardinality > settings.decider_cap:
        return _skipped("strict", description, f"|S| = {sub.cardinality} exceeds decider cap {settings.decider_cap}")
    verdict = decide()
    data = verdict.to_dict()
    data["agrees_with_witness_mode"] = verdict.holds == refutation.holds
    return StepRecord("strict", description, not verdict.holds, data)


def verify_theorem2(
    kind: str,
    p: int,
    *,
    n: Optional[int] = None,
    strict: bool = False,
    settings: Optional[Settings] = None,
) -> Certificate:
    """S = RG over G = C3 with the lifted involution is finite but not generalized Rickart *."""
    settings = settings or Settings()
    _require_prime(p)
    if p == 3:
        raise PrimeConstraintViolatedError(
            f"p = 3 violates the hypothesis: multiplication by 3 is not injective on {kind}({p})"
        )
    base = _base_ring(kind, p, n)
    certificate = Certificate(
        "theorem2",
        {"kind": kind, "p": p, "n": n, "group": "C3", "strict": strict},
        notes=[WITNESS_OUTSIDE_NOTE.format(witness="e+g+g^2"), C3_MEMBER_NOTE],
    )

    _timed(certificate, lambda: _verdict_step(
        "condition_i", "3a = 0 implies a = 0 in R", condition_i(base, 3, settings=settings)
    ))
    _timed(certificate, lambda: _verdict_step(
        "quadratic", "3x^2 + x = 0 has only the trivial solution in R",
        trivial_quadratic(base, 3, 1, settings=settings, sample=True),
    ))

    started = time.perf_counter()
    group = catalog.cyclic_group(3)
    ambient, ideal = extension_group_ring(base, group)
    units = group_elements(ambient)
    x = ambient.add(ambient.add(units["e"], units["g"]), units["g^2"])
    certificate.timings["build"] = round(time.perf_counter() - started, 6)

    involutions: dict[str, Involution] = {}

    def involution_step() -> StepRecord:
        involutions["base"] = canonical_involution(base, settings=settings)
        involutions["ideal"] = lift_involution_group_ring(involutions["base"], ideal.sub, settings=settings)
        involutions["ambient"] = lift_involution_group_ring(involutions["base"], ambient, settings=settings)
        return StepRecord(
            "involution",
            "(sum a_g g)* = sum a_g* g^-1 satisfies the involution axioms on S and on U(R)G",
            True,
            {
                "base": involutions["base"].name,
                "ideal": involutions["ideal"].name,
                "ambient": involutions["ambient"].name,
                "ideal_pairs_exhaustive": ideal.sub.cardinality <= settings.involution_pair_cap,
                "swap_check": _swap_check(ideal.sub, involutions["ideal"]),
            },
        )

    _timed(certificate, involution_step)
    _timed(certificate, lambda: _power_identity(ambient, x, 3, settings))
    _timed(certificate, lambda: _annihilator_family(ambient, ideal, base, x, settings))
    refutation = refute_gen_pp_with_witness(
        ambient, ideal, x, use_projections=True, involution=involutions["ideal"], settings=settings
    )
    _timed(certificate, lambda: _verdict_step(
        "refutation", "no r_S((e+g+g^2)^n) is generated by a projection of S", refutation, expect=False
    ))
    _timed(certificate, lambda: _symbolic_projections(base, ambient, ideal, x, involutions["ideal"], settings))
    _timed(certificate, lambda: _artinian_step(ideal.sub, ambient))
    if strict:
        _timed(certificate, lambda: _strict_step(
            ideal.sub,
            refutation,
            lambda: is_generalized_rickart_star(ideal.sub, involutions["ideal"], settings=settings),
            settings,
        ))
    _log_certificate(certificate)
    return certificate


def _swap_check(sub: FiniteRing, involution: Involution) -> bool:
    """(a e + b g + c g^2)* = a e + c g + b g^2 on the basis of the coefficient ring."""
    m = 3
    images = involution.apply_arrays(np.eye(sub.rank, dtype=np.int64))
    expected = np.zeros_like(images)
    base_map = involution.matrix[::m, ::m]
    for shift, target in ((0, 0), (1, 2), (2, 1)):
        expected[shift::m, target::m] = base_map
    return bool(np.array_equal(images, sub.reduce(expected)))


def _symbolic_projections(
    base: FiniteRing,
    ambient: FiniteRing,
    ideal: IdealEmbedding,
    x: RingElement,
    involution: Involution,
    settings: Settings,
) -> StepRecord:
    """Projections a e + b g + c g^2 in r_S(x) satisfy b = c, a = -2b and 3b^2 + b = 0."""
    sub = ideal.sub
    scanner = AnnihilatorScanner(ambient, ideal, cap=settings.exhaustive_cap)
    annihilator = scanner.bitmap(np.asarray(x.coords))
    projections = projection_indices(sub, involution, settings=settings)
    inside = [int(i) for i in projections if annihilator[int(i)]]

    m, k = 3, base.rank
    rows = sub.group.decode(np.asarray(inside, dtype=np.int64)) if inside else np.zeros((0, sub.rank), dtype=np.int64)
    a, b, c = (rows[:, shift::m] for shift in range(m))
    constraints_hold = True
    if len(rows):
        constraints_hold = bool(
            np.array_equal(b, c)
            and not np.any(base.reduce(a + 2 * b))
            and not np.any(base.reduce(3 * base.mul_arrays(b, b) + b))
        )

    elements = base.elements(settings.exhaustive_cap) if base.cardinality <= settings.exhaustive_cap else np.eye(k, dtype=np.int64)
    solutions = elements[~np.any(base.reduce(3 * base.mul_arrays(elements, elements) + elements), axis=1)]
    predicted = np.zeros((len(solutions), sub.rank), dtype=np.int64)
    predicted[:, 0::m] = -2 * solutions
    predicted[:, 1::m] = solutions
    predicted[:, 2::m] = solutions
    predicted_indices = sorted(int(i) for i in sub.group.encode(sub.reduce(predicted))) if len(predicted) else []

    agree = predicted_indices == inside
    return StepRecord(
        "symbolic_projections",
        "projections in r_S(e+g+g^2) found by scan equal the solutions of b = c, a = -2b, 3b^2 + b = 0",
        agree and constraints_hold and inside == [0],
        {
            "projections_total": len(projections),
            "projections_in_annihilator": [sub.format_element(sub.element_at(i)) for i in inside],
            "algebraic_solutions": len(predicted_indices),
            "constraints_hold": constraints_hold,
            "scan_matches_algebra": agree,
        },
    )


# -- triangular rings ------------------------------------------------------------------


def _quadratic_for(m: int) -> tuple[int, int]:
    if m == 2:
        return 2, -1
    if m == 3:
        return 3, 1
    raise ValueError(f"m must be 2 or 3, got {m}")


def verify_prop_tn_conditions(
    kind: str,
    p: int,
    n: int,
    m: int,
    *,
    settings: Optional[Settings] = None,
) -> Certificate:
    """Condition (i) and the quadratic condition pass from R to T_n(R)."""
    settings = settings or Settings()
    c, d = _quadratic_for(m)
    base = catalog.fine_ring(kind, p)
    matrices = triangular_ring(base, n)
    certificate = Certificate("prop_tn", {"kind": kind, "p": p, "n": n, "m": m})
    equation = f"{c}x^2{d:+d}x = 0"

    _timed(certificate, lambda: _verdict_step("base_condition_i", f"{m}a = 0 implies a = 0 in R", condition_i(base, m, settings=settings)))
    _timed(certificate, lambda: _verdict_step(
        "base_quadratic", f"{equation} is trivial in R", trivial_quadratic(base, c, d, settings=settings)
    ))
    _timed(certificate, lambda: _verdict_step(
        "condition_i", f"{m}A = 0 implies A = 0 in {matrices.provenance}", condition_i(matrices, m, settings=settings)
    ))
    _timed(certificate, lambda: _verdict_step(
        "quadratic", f"{equation} is trivial in {matrices.provenance}",
        trivial_quadratic(matrices, c, d, settings=settings, sample=True),
    ))
    _timed(certificate, lambda: _superdiagonal_replay(base, matrices, n, c, d, settings))
    _log_certificate(certificate)
    return certificate


def _superdiagonal_replay(
    base: FiniteRing,
    matrices: FiniteRing,
    n: int,
    c: int,
    d: int,
    settings: Settings,
) -> StepRecord:
    """Replay the induction: diagonal entries of cX^2 + dX are c x^2 + d x, and once the
    lower superdiagonals of X vanish the next one contributes exactly d x."""
    cells = [(p, q) for p in range(n) for q in range(p, n)]
    width = len(cells)
    rng = np.random.default_rng(settings.seed)
    levels = []
    for level in range(n):
        samples = rng.integers(0, matrices.group.order_array, size=(settings.sample_size, matrices.rank))
        for pos, (p, q) in enumerate(cells):
            if q - p < level:
                samples[:, pos::width] = 0
        values = matrices.reduce(c * matrices.mul_arrays(samples, samples) + d * samples)
        holds = True
        for pos, (p, q) in enumerate(cells):
            if q - p != level:
                continue
            entry = samples[:, pos::width]
            if level == 0:
                expected = base.reduce(c * base.mul_arrays(entry, entry) + d * entry)
            else:
                expected = base.reduce(d * entry)
            holds = holds and bool(np.array_equal(values[:, pos::width], expected))
        levels.append({"level": level, "samples": settings.sample_size, "holds": holds})
    d_injective = math.gcd(abs(d), base.exponent) == 1
    return StepRecord(
        "superdiagonal_induction",
        "entries of cX^2 + dX vanish level by level: diagonal by the quadratic condition, "
        "each superdiagonal by injectivity of d once the lower ones vanish",
        all(level["holds"] for level in levels) and d_injective,
        {"levels": levels, "d_injective": d_injective},
    )


def verify_prop_triangular(
    ring: FiniteRing,
    n: int,
    *,
    settings: Optional[Settings] = None,
) -> Certificate:
    """For abelian R: R is generalized right p.p. iff T(R, n) is."""
    settings = settings or Settings()
    abelian = is_abelian(ring, settings=settings)
    if not abelian.holds:
        raise HypothesisFailedError(
            f"{ring.provenance} is not abelian: idempotent {abelian.witness_label} is not central"
        )
    tuples = const_diag_tri(ring, n)
    certificate = Certificate("prop_triangular", {"ring": ring.provenance, "n": n})
    _timed(certificate, lambda: _verdict_step("abelian", f"every idempotent of {ring.provenance} is central", abelian))

    base_verdict = is_generalized_right_pp(ring, settings=settings)
    _timed(certificate, lambda: StepRecord(
        "base_verdict", f"generalized right p.p. verdict on {ring.provenance}", True, base_verdict.to_dict()
    ))
    tuple_verdict = _tuple_verdict(ring, tuples, n, base_verdict, settings)
    _timed(certificate, lambda: StepRecord(
        "triangular_verdict", f"generalized right p.p. verdict on {tuples.provenance}", True, tuple_verdict.to_dict()
    ))
    same = base_verdict.holds == tuple_verdict.holds
    if not same:
        certificate.notes.append(TRIANGULAR_DISCREPANCY_NOTE)
    _timed(certificate, lambda: StepRecord(
        "equivalence",
        f"{ring.provenance} and {tuples.provenance} have the same verdict",
        same,
        {"base_holds": base_verdict.holds, "triangular_holds": tuple_verdict.holds, "triangular_mode": tuple_verdict.mode},
    ))
    _log_certificate(certificate)
    return certificate


def _tuple_verdict(
    ring: FiniteRing,
    tuples: FiniteRing,
    n: int,
    base_verdict: PropertyVerdict,
    settings: Settings,
) -> PropertyVerdict:
    if tuples.cardinality <= settings.decider_cap:
        return is_generalized_right_pp(tuples, settings=settings)
    if base_verdict.holds:
        raise CapExceededError(
            f"generalized right p.p. on {tuples.provenance} (no witness to lift)", tuples.cardinality, settings.decider_cap
        )
    witness = base_verdict.nonzero_witness or base_verdict.witness
    assert witness is not None
    return _lifted_refutation(tuples, [(i * n, c) for i, c in enumerate(witness)], settings)


def _lifted_refutation(ring: FiniteRing, entries: list[tuple[int, int]], settings: Settings) -> PropertyVerdict:
    """Witness-mode refutation at an element given by (coordinate, value) pairs."""
    coords = [0] * ring.rank
    for pos, value in entries:
        coords[pos] = value
    whole = make_embedding(ring, ring, range(ring.rank))
    return refute_gen_pp_with_witness(ring, whole, ring.element(coords), settings=settings)


def verify_prop_artinian(ring: FiniteRing, n: int, *, settings: Optional[Settings] = None) -> Certificate:
    """Finite instance only: R and T(R, n) both have finite ideal lattices."""
    settings = settings or Settings()
    if ring.cardinality > settings.artinian_cap:
        raise CapExceededError(f"artinian check on {ring.provenance}", ring.cardinality, settings.artinian_cap)
    tuples = const_diag_tri(ring, n)
    certificate = Certificate(
        "prop_artinian",
        {"ring": ring.provenance, "n": n},
        notes=["finite-ring instance: both lattices are finite, so both rings are right and left artinian"],
    )
    _timed(certificate, lambda: _lattice_step("base_lattice", ring, settings))
    _timed(certificate, lambda: _lattice_step("triangular_lattice", tuples, settings))
    _log_certificate(certificate)
    return certificate


def _lattice_step(name: str, ring: FiniteRing, settings: Settings) -> StepRecord:
    right = enumerate_right_ideals(ring, side="right", settings=settings)
    left = enumerate_right_ideals(ring, side="left", settings=settings)
    return StepRecord(
        name,
        f"right and left ideal lattices of {ring.provenance} are finite",
        True,
        {
            "cardinality": ring.cardinality,
            "right_ideals": len(right),
            "left_ideals": len(left),
            "right_length": longest_chain(right),
            "left_length": longest_chain(left),
        },
    )


# -- derived examples ---------------------------------------------------------------------


def verify_derived_examples(
    kind: str,
    p: int,
    group_name: str = "C2",
    *,
    settings: Optional[Settings] = None,
) -> Certificate:
    """SH over S = RG (G = C2) is finite but not generalized right p.p."""
    settings = settings or Settings()
    _require_prime(p)
    inner = group_ring(catalog.fine_ring(kind, p), catalog.cyclic_group(2))
    group = _group_by_name(group_name)
    outer = group_ring(inner, group)
    certificate = Certificate("example_SH", {"kind": kind, "p": p, "group": group_name})

    base_verdict = is_generalized_right_pp(inner, settings=settings)
    _timed(certificate, lambda: _verdict_step(
        "base", f"{inner.provenance} is not generalized right p.p.", base_verdict, expect=False
    ))
    _timed(certificate, lambda: StepRecord(
        "group_descent",
        "if RG is generalized right p.p. then so is R; S fails, hence SH fails",
        not base_verdict.holds,
        {"ring": inner.provenance, "group": group.name},
        kind=STEP_CITED,
    ))
    _timed(certificate, lambda: _direct_step(inner, outer, group, base_verdict, settings))
    _timed(certificate, lambda: _artinian_step(outer))
    _log_certificate(certificate)
    return certificate


def _direct_step(
    inner: FiniteRing,
    outer: FiniteRing,
    group: FiniteGroup,
    base_verdict: PropertyVerdict,
    settings: Settings,
) -> StepRecord:
    description = f"direct check on {outer.provenance}"
    try:
        if outer.cardinality <= settings.decider_cap:
            verdict = is_generalized_right_pp(outer, settings=settings)
        else:
            witness = base_verdict.nonzero_witness or base_verdict.witness
            assert witness is not None
            m = group.order
            verdict = _lifted_refutation(outer, [(i * m + group.identity, c) for i, c in enumerate(witness)], settings)
    except CapExceededError as exc:
        return _skipped("direct", description, str(exc))
    data = verdict.to_dict()
    data["agrees_with_implication"] = not verdict.holds
    return StepRecord("direct", description, not verdict.holds, data)


def verify_prop_group_descent(
    ring: FiniteRing,
    group: FiniteGroup,
    *,
    settings: Optional[Settings] = None,
) -> Certificate:
    """RG generalized p.p. (right, left) forces R generalized p.p. on the same side."""
    settings = settings or Settings()
    extended = group_ring(ring, group)
    certificate = Certificate("prop_group_descent", {"ring": ring.provenance, "group": group.name})
    for side, decide in (("right", is_generalized_right_pp), ("left", is_generalized_left_pp)):
        def run(side: str = side, decide: Callable[..., PropertyVerdict] = decide) -> StepRecord:
            upper = decide(extended, settings=settings)
            lower = decide(ring, settings=settings)
            return StepRecord(
                f"{side}_descent",
                f"{extended.provenance} generalized {side} p.p. implies {ring.provenance} is",
                (not upper.holds) or lower.holds,
                {"group_ring": upper.to_dict(), "base": lower.to_dict()},
            )

        _timed(certificate, run)
    _log_certificate(certificate)
    return certificate


def verify_example_ex50(
    kind: str,
    p: int,
    n: int,
    *,
    settings: Optional[Settings] = None,
) -> Certificate:
    """T(S, n) over S = RG (G = C2) is finite and, like S, not generalized right p.p."""
    settings = settings or Settings()
    _require_prime(p)
    inner = group_ring(catalog.fine_ring(kind, p), catalog.cyclic_group(2))
    certificate = verify_prop_triangular(inner, n, settings=settings)
    certificate.claim = "example_ex50"
    certificate.parameters = {"kind": kind, "p": p, "n": n}
    base_holds = certificate.step("base_verdict").data["holds"]
    tuple_holds = certificate.step("triangular_verdict").data["holds"]
    certificate.add_step(StepRecord(
        "both_fail",
        f"neither {inner.provenance} nor T({inner.provenance},{n}) is generalized right p.p.",
        not base_holds and not tuple_holds,
        {"base_holds": base_holds, "triangular_holds": tuple_holds},
    ))
    certificate.add_step(_artinian_step(const_diag_tri(inner, n)))
    return certificate


# -- dispatch and replay ---------------------------------------------------------------------


def run_claim(claim: str, parameters: dict[str, Any], *, settings: Optional[Settings] = None) -> Certificate:
    """Run a claim from a parameter mapping (the one a certificate records)."""
    settings = settings or Settings()
    if claim == "theorem1":
        return verify_theorem1(
            parameters["kind"], int(parameters["p"]), n=parameters.get("n"), strict=bool(parameters.get("strict")), settings=settings
        )
    if claim == "theorem2":
        return verify_theorem2(
            parameters["kind"], int(parameters["p"]), n=parameters.get("n"), strict=bool(parameters.get("strict")), settings=settings
        )
    if claim == "prop_tn":
        return verify_prop_tn_conditions(
            parameters["kind"], int(parameters["p"]), int(parameters["n"]), int(parameters["m"]), settings=settings
        )
    if claim == "prop_triangular":
        return verify_prop_triangular(evaluate(parameters["ring"]), int(parameters["n"]), settings=settings)
    if claim == "prop_artinian":
        return verify_prop_artinian(evaluate(parameters["ring"]), int(parameters["n"]), settings=settings)
    if claim == "prop_group_descent":
        return verify_prop_group_descent(
            evaluate(parameters["ring"]), _group_by_name(parameters["group"]), settings=settings
        )
    if claim == "example_ex50":
        return verify_example_ex50(parameters["kind"], int(parameters["p"]), int(parameters["n"]), settings=settings)
    if claim == "example_SH":
        return verify_derived_examples(parameters["kind"], int(parameters["p"]), parameters.get("group", "C2"), settings=settings)
    raise KeyError(f"unknown claim {claim!r}; expected one of {', '.join(CLAIMS)}")


def replay_certificate(
    document: str | dict[str, Any],
    *,
    settings: Optional[Settings] = None,
) -> tuple[bool, Certificate, list[str]]:
    """Re-run a recorded certificate and list every step whose content changed."""
    recorded = json.loads(document) if isinstance(document, str) else document
    fresh = run_claim(recorded["claim"], recorded["parameters"], settings=settings)
    current = json.loads(json.dumps(fresh.content(), default=jsonable))

    differences: list[str] = []
    old_steps = {step["name"]: step for step in recorded.get("steps", [])}
    new_steps = {step["name"]: step for step in current["steps"]}
    for name in sorted(set(old_steps) | set(new_steps)):
        if name not in new_steps:
            differences.append(f"step {name} missing from replay")
        elif name not in old_steps:
            differences.append(f"step {name} not in recorded certificate")
        elif old_steps[name] != new_steps[name]:
            differences.append(f"step {name} differs")
    if recorded.get("notes", []) != current["notes"]:
        differences.append("notes differ")
    if recorded.get("verdict") != current["verdict"]:
        differences.append("verdict differs")
    LOGGER.info("Replayed %s: %s differences", fresh.claim, len(differences))
    return not differences, fresh, differences
