"""Deciders for the Rickart family of annihilator conditions."""
from __future__ import annotations

import logging
import math
from typing import Optional

import numpy as np

from rickart_tb.algorithms.annihilators import (
    AnnihilatorScanner,
    idempotent_indices,
    nilpotency_index,
    principal_ideal_bitmap,
    projection_indices,
)
from rickart_tb.algorithms.parallel import rows_per_chunk, scan_partitioned
from rickart_tb.config import Settings
from rickart_tb.domain.errors import CapExceededError, InvariantBreachError, RingMismatchError
from rickart_tb.domain.involution import Involution
from rickart_tb.domain.models import PropertyVerdict
from rickart_tb.domain.ring import FiniteRing, RingElement
from rickart_tb.domain.subsets import IdealEmbedding

LOGGER = logging.getLogger(__name__)

_SCAN_CHUNK = 256
_BATCH = 64


def _require(ring: FiniteRing, cap: int, what: str) -> np.ndarray:
    if ring.cardinality > cap:
        raise CapExceededError(f"{what} on {ring.provenance}", ring.cardinality, cap)
    return ring.elements(cap)


def _witness_fields(ring: FiniteRing, failing: list[int]) -> dict[str, object]:
    if not failing:
        return {}
    first = ring.element_at(failing[0])
    nonzero = next((i for i in failing if i != 0), None)
    return {
        "witness": first.coords,
        "witness_label": ring.format_element(first),
        "degenerate": failing[0] == 0,
        "nonzero_witness": None if nonzero is None else ring.element_at(nonzero).coords,
    }


# -- hypothesis conditions ----------------------------------------------------


def condition_i(ring: FiniteRing, m: int, *, settings: Optional[Settings] = None) -> PropertyVerdict:
    """Is multiplication by m injective on (R, +)? Scan and gcd shortcut must agree."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    settings = settings or Settings()
    shortcut = math.gcd(m, ring.exponent) == 1
    details: dict[str, object] = {"m": m, "exponent": ring.exponent, "gcd_shortcut": shortcut}

    if ring.cardinality <= settings.exhaustive_cap:
        elements = ring.elements(settings.exhaustive_cap)
        killed = np.flatnonzero(~np.any(ring.reduce(m * elements), axis=1))
        failing = [int(i) for i in killed if i != 0][:1]
        scan = not failing
        details["scan"] = scan
        if scan != shortcut:
            raise InvariantBreachError(f"condition (i) scan={scan} but gcd shortcut={shortcut} on {ring.provenance}")
        return PropertyVerdict(
            property=f"condition_i(m={m})",
            holds=scan,
            ring=ring.provenance,
            scanned_elements=ring.cardinality,
            details=details,
            **_witness_fields(ring, failing),
        )

    witness = None
    if not shortcut:
        pos = next(i for i, d in enumerate(ring.orders) if math.gcd(m, d) > 1)
        coords = [0] * ring.rank
        coords[pos] = ring.orders[pos] // math.gcd(m, ring.orders[pos])
        witness = tuple(coords)
    return PropertyVerdict(
        property=f"condition_i(m={m})",
        holds=shortcut,
        ring=ring.provenance,
        mode="shortcut",
        witness=witness,
        nonzero_witness=witness,
        details=details,
    )


def trivial_quadratic(
    ring: FiniteRing,
    c: int,
    d: int,
    *,
    settings: Optional[Settings] = None,
    sample: bool = False,
) -> PropertyVerdict:
    """Does c*x^2 + d*x = 0 have only x = 0?

    With ``sample=True`` rings beyond the exhaustive cap are checked on
    ``settings.sample_size`` seeded random elements instead of raising.
    """
    settings = settings or Settings()
    name = f"trivial_quadratic({c}x^2{d:+d}x)"
    if ring.cardinality <= settings.exhaustive_cap:
        candidates = ring.elements(settings.exhaustive_cap)
        mode = "exhaustive"
    elif sample:
        rng = np.random.default_rng(settings.seed)
        candidates = rng.integers(0, ring.group.order_array, size=(settings.sample_size, ring.rank))
        candidates = np.unique(candidates, axis=0)
        mode = "sampled"
    else:
        raise CapExceededError(f"{name} on {ring.provenance}", ring.cardinality, settings.exhaustive_cap)

    solutions: list[int] = []
    batch = rows_per_chunk(max(1, ring.rank) ** 2)
    for start in range(0, len(candidates), batch):
        block = candidates[start : start + batch]
        values = ring.reduce(c * ring.mul_arrays(block, block) + d * block)
        hits = block[~np.any(values, axis=1)]
        if len(hits):
            solutions.extend(int(i) for i in ring.group.encode(hits))
    solutions.sort()
    failing = [i for i in solutions if i != 0]
    return PropertyVerdict(
        property=name,
        holds=not failing,
        ring=ring.provenance,
        mode=mode,
        scanned_elements=len(candidates),
        details={"c": c, "d": d, "solution_count": len(solutions), "solutions": solutions[:16]},
        **_witness_fields(ring, failing[:1]),
    )


# -- annihilator conditions ----------------------------------------------------


def _decide_generated_annihilators(
    ring: FiniteRing,
    name: str,
    generators: np.ndarray,
    *,
    side: str,
    single_power: bool,
    settings: Settings,
) -> PropertyVerdict:
    """Shared body of the Rickart / generalized p.p. / *-deciders.

    ``generators`` are element indices (idempotents or projections); an annihilator is
    accepted when it equals eR (or Re on the left) for one of them.
    """
    elements = _require(ring, settings.decider_cap, name)
    generated = {
        np.packbits(principal_ideal_bitmap(ring, elements[int(e)], side=side, cap=settings.exhaustive_cap)).tobytes()
        for e in generators
    }

    def accepted(bitmap: np.ndarray) -> bool:
        return np.packbits(bitmap).tobytes() in generated

    def worker(start: int, stop: int) -> list[int]:
        scanner = AnnihilatorScanner(ring, side=side, cap=settings.decider_cap)
        failing: list[int] = []
        for batch_start in range(start, stop, _BATCH):
            block = elements[batch_start : min(batch_start + _BATCH, stop)]
            firsts = scanner.bitmaps(block)
            for offset, first in enumerate(firsts):
                index = batch_start + offset
                if single_power:
                    chain = [first]
                else:
                    chain = scanner.chain_bitmaps(block[offset], first=first)
                if not any(accepted(member) for member in chain):
                    failing.append(index)
                    if len(failing) == 2 or failing[0] != 0:
                        return failing
        return failing

    results = scan_partitioned(worker, ring.cardinality, chunk=_SCAN_CHUNK, workers=settings.workers)
    failing = sorted(i for chunk in results for i in chunk)

    chain_sizes: tuple[int, ...] = ()
    if failing:
        scanner = AnnihilatorScanner(ring, side=side, cap=settings.decider_cap)
        witness_row = elements[failing[0]]
        chain = [scanner.bitmap(witness_row[None, :])] if single_power else scanner.chain_bitmaps(witness_row)
        chain_sizes = tuple(int(b.sum()) for b in chain)

    verdict = PropertyVerdict(
        property=name,
        holds=not failing,
        ring=ring.provenance,
        chain_sizes=chain_sizes,
        scanned_generators=len(generators),
        scanned_elements=ring.cardinality,
        details={"generated_ideals": len(generated), "side": side},
        **_witness_fields(ring, failing),
    )
    LOGGER.info(
        "%s on %s: %s",
        name,
        ring.provenance,
        "holds" if verdict.holds else f"fails at {verdict.witness_label}",
        extra={"ctx": {"property": name, "ring": ring.provenance, "cardinality": ring.cardinality}},
    )
    return verdict


def is_generalized_right_pp(ring: FiniteRing, *, settings: Optional[Settings] = None) -> PropertyVerdict:
    """For every x some r(x^n) equals eR with e idempotent."""
    settings = settings or Settings()
    return _decide_generated_annihilators(
        ring, "gen-right-pp", idempotent_indices(ring, settings=settings),
        side="right", single_power=False, settings=settings,
    )


def is_generalized_left_pp(ring: FiniteRing, *, settings: Optional[Settings] = None) -> PropertyVerdict:
    settings = settings or Settings()
    return _decide_generated_annihilators(
        ring, "gen-left-pp", idempotent_indices(ring, settings=settings),
        side="left", single_power=False, settings=settings,
    )


def is_right_rickart(ring: FiniteRing, *, settings: Optional[Settings] = None) -> PropertyVerdict:
    settings = settings or Settings()
    return _decide_generated_annihilators(
        ring, "right-rickart", idempotent_indices(ring, settings=settings),
        side="right", single_power=True, settings=settings,
    )


def is_left_rickart(ring: FiniteRing, *, settings: Optional[Settings] = None) -> PropertyVerdict:
    settings = settings or Settings()
    return _decide_generated_annihilators(
        ring, "left-rickart", idempotent_indices(ring, settings=settings),
        side="left", single_power=True, settings=settings,
    )


def is_generalized_rickart_star(
    ring: FiniteRing,
    involution: Involution,
    *,
    settings: Optional[Settings] = None,
) -> PropertyVerdict:
    """For every x some r(x^n) equals pR with p a projection."""
    settings = settings or Settings()
    return _decide_generated_annihilators(
        ring, "gen-rickart-star", projection_indices(ring, involution, settings=settings),
        side="right", single_power=False, settings=settings,
    )


def is_rickart_star(ring: FiniteRing, involution: Involution, *, settings: Optional[Settings] = None) -> PropertyVerdict:
    settings = settings or Settings()
    return _decide_generated_annihilators(
        ring, "rickart-star", projection_indices(ring, involution, settings=settings),
        side="right", single_power=True, settings=settings,
    )


def _decide_baer(ring: FiniteRing, name: str, generators: np.ndarray, settings: Settings) -> PropertyVerdict:
    elements = _require(ring, settings.baer_cap, name)
    generated = {
        np.packbits(principal_ideal_bitmap(ring, elements[int(e)], cap=settings.exhaustive_cap)).tobytes()
        for e in generators
    }
    scanner = AnnihilatorScanner(ring, cap=settings.baer_cap)
    singles = scanner.bitmaps(elements)

    failing = [i for i, bitmap in enumerate(singles) if np.packbits(bitmap).tobytes() not in generated]
    # key -> (r(X), X) with X the first element set found to cut it out
    family: dict[bytes, tuple[np.ndarray, tuple[int, ...]]] = {}
    for i, bitmap in enumerate(singles):
        family.setdefault(np.packbits(bitmap).tobytes(), (bitmap, (i,)))
    frontier = list(family.values())
    while frontier:
        fresh = []
        for a, a_set in frontier:
            for b, b_set in list(family.values()):
                meet = a & b
                key = np.packbits(meet).tobytes()
                if key not in family:
                    family[key] = (meet, tuple(sorted(set(a_set) | set(b_set))))
                    fresh.append(family[key])
        frontier = fresh

    bad_meets = [entry for key, entry in family.items() if key not in generated]
    details: dict[str, object] = {"annihilator_family": len(family), "generated_ideals": len(generated)}
    if not bad_meets or failing:
        return PropertyVerdict(
            property=name,
            holds=not bad_meets,
            ring=ring.provenance,
            scanned_generators=len(generators),
            scanned_elements=ring.cardinality,
            details=details,
            **_witness_fields(ring, failing),
        )

    # every single r(x) passed, so the witness is a set X with r(X) not generated
    smallest, witness_set = min(bad_meets, key=lambda entry: (int(entry[0].sum()), entry[1]))
    members = [ring.element_at(i) for i in witness_set]
    labels = [ring.format_element(member) for member in members]
    details["failing_intersection"] = [int(i) for i in np.flatnonzero(smallest)]
    details["witness_set"] = labels
    return PropertyVerdict(
        property=name,
        holds=False,
        ring=ring.provenance,
        mode="witness-set",
        witness=members[0].coords,
        witness_label="{" + ", ".join(labels) + "}",
        nonzero_witness=next((m.coords for m in members if any(m.coords)), None),
        scanned_generators=len(generators),
        scanned_elements=ring.cardinality,
        details=details,
    )


def is_baer(ring: FiniteRing, *, settings: Optional[Settings] = None) -> PropertyVerdict:
    """Every r(X), X nonempty, is idempotent-generated; r(X) is the meet of the r(x)."""
    settings = settings or Settings()
    return _decide_baer(ring, "baer", idempotent_indices(ring, settings=settings), settings)


def is_baer_star(ring: FiniteRing, involution: Involution, *, settings: Optional[Settings] = None) -> PropertyVerdict:
    settings = settings or Settings()
    return _decide_baer(ring, "baer-star", projection_indices(ring, involution, settings=settings), settings)


def is_abelian(ring: FiniteRing, *, settings: Optional[Settings] = None) -> PropertyVerdict:
    """Every idempotent is central (checked against the basis)."""
    settings = settings or Settings()
    indices = idempotent_indices(ring, settings=settings)
    basis = np.eye(ring.rank, dtype=np.int64)
    for index in indices:
        e = ring.group.decode(np.asarray([index]))
        left = ring.mul_arrays(e, basis)
        right = ring.mul_arrays(basis, e)
        bad = np.flatnonzero(np.any(left != right, axis=1))
        if len(bad):
            element = ring.element_at(int(index))
            return PropertyVerdict(
                property="abelian",
                holds=False,
                ring=ring.provenance,
                witness=element.coords,
                witness_label=ring.format_element(element),
                degenerate=False,
                nonzero_witness=element.coords,
                scanned_generators=len(indices),
                details={"noncommuting_element": ring.labels[int(bad[0])]},
            )
    return PropertyVerdict(property="abelian", holds=True, ring=ring.provenance, scanned_generators=len(indices))


def is_nilpotent(ring: FiniteRing) -> PropertyVerdict:
    index = nilpotency_index(ring)
    return PropertyVerdict(
        property="nilpotent",
        holds=index is not None,
        ring=ring.provenance,
        mode="generators",
        details={"nilpotency_index": index},
    )


# -- witness mode ---------------------------------------------------------------


def refute_gen_pp_with_witness(
    ambient: FiniteRing,
    ideal: IdealEmbedding,
    x: RingElement,
    *,
    use_projections: bool = False,
    involution: Optional[Involution] = None,
    settings: Optional[Settings] = None,
) -> PropertyVerdict:
    """Refute "some r_S(x^n) is generated by an idempotent (projection) of S" for one x.

    The chain is taken inside the embedded ideal S; refuted (holds=False) when no chain
    member equals eS for a scanned idempotent (projection) e of S.
    """
    settings = settings or Settings()
    ambient.check(x)
    if ideal.ambient.ring_id != ambient.ring_id:
        raise RingMismatchError("ideal embedding does not live in the ambient ring")
    sub = ideal.sub
    if use_projections:
        if involution is None:
            raise ValueError("projection scan needs an involution on the ideal")
        generators = projection_indices(sub, involution, settings=settings)
    else:
        generators = idempotent_indices(sub, settings=settings)
    generated = {
        np.packbits(principal_ideal_bitmap(sub, sub.group.decode(np.asarray([int(e)])), cap=settings.exhaustive_cap)).tobytes()
        for e in generators
    }

    scanner = AnnihilatorScanner(ambient, ideal, cap=settings.exhaustive_cap)
    chain = scanner.chain_bitmaps(np.asarray(x.coords))
    matches = [np.packbits(member).tobytes() in generated for member in chain]
    refuted = not any(matches)

    nonzero_members = np.flatnonzero(chain[0])
    nonzero_members = nonzero_members[nonzero_members != 0]
    member = sub.element_at(int(nonzero_members[0])) if len(nonzero_members) else None
    name = "gen-rickart-star@witness" if use_projections else "gen-right-pp@witness"
    return PropertyVerdict(
        property=name,
        holds=not refuted,
        ring=sub.provenance,
        mode="witness-only",
        witness=x.coords if refuted else None,
        witness_label=ambient.format_element(x) if refuted else None,
        degenerate=refuted and not any(x.coords),
        nonzero_witness=x.coords if refuted and any(x.coords) else None,
        chain_sizes=tuple(int(b.sum()) for b in chain),
        scanned_generators=len(generators),
        scanned_elements=sub.cardinality,
        details={
            "ambient": ambient.provenance,
            "stabilized_at": len(chain),
            "all_members_nonzero": all(int(b.sum()) > 1 for b in chain),
            "first_member": None if member is None else list(member.coords),
            "first_member_label": None if member is None else sub.format_element(member),
            "generators": [list(sub.element_at(int(e)).coords) for e in generators[:16]],
        },
    )
