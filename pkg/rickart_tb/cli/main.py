"""CLI entrypoint for the Rickart testbench."""
from __future__ import annotations

import argparse
import json
import logging
import pathlib
import sys
from typing import Any, Optional

import numpy as np

from rickart_tb.algorithms.annihilators import (
    AnnihilatorScanner,
    enumerate_idempotents,
    enumerate_projections,
    ring_fingerprint,
)
from rickart_tb.algorithms.ideals import artinian_certificate
from rickart_tb.algorithms.properties import (
    condition_i,
    is_abelian,
    is_baer,
    is_baer_star,
    is_generalized_left_pp,
    is_generalized_rickart_star,
    is_generalized_right_pp,
    is_left_rickart,
    is_nilpotent,
    is_rickart_star,
    is_right_rickart,
    refute_gen_pp_with_witness,
)
from rickart_tb.config import ConfigError, Settings, load_settings
from rickart_tb.domain.errors import (
    CapExceededError,
    HypothesisFailedError,
    InvariantBreachError,
    NotPrimeError,
    ParseError,
    PrimeConstraintViolatedError,
    RickartError,
)
from rickart_tb.domain.involution import Involution, identity_involution
from rickart_tb.domain.models import PropertyVerdict
from rickart_tb.domain.ring import FiniteRing
from rickart_tb.domain.subsets import IdealEmbedding, make_embedding
from rickart_tb.logging_setup import configure_logging
from rickart_tb.reporting.certificates import emit_certificate, jsonable
from rickart_tb.services import catalog, harness
from rickart_tb.services.constructions import (
    canonical_involution,
    constant_diagonal_embedding,
    involution_limits,
    iso_polyquot_consttri,
)
from rickart_tb.services.expressions import evaluate, parse_element
from rickart_tb.services.ring_spec import load_ring_file, serialize_ring_spec
from rickart_tb.storage.db import MIGRATIONS_DIR, MigrationError, get_connection, init_db
from rickart_tb.storage.repositories import CertificateRepository

LOGGER = logging.getLogger(__name__)

EXIT_CONFIRMED = 0
EXIT_NOT_CONFIRMED = 1
EXIT_USAGE = 2
EXIT_CAP = 3

PROPERTIES = (
    "gen-right-pp",
    "gen-left-pp",
    "right-rickart",
    "left-rickart",
    "gen-rickart-star",
    "rickart-star",
    "baer",
    "baer-star",
    "abelian",
    "nilpotent",
    "artinian",
    "condition-i",
)
STAR_PROPERTIES = ("gen-rickart-star", "rickart-star", "baer-star")
WITNESS_PROPERTIES = ("gen-right-pp", "gen-rickart-star")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rickart-testbench")
    parser.add_argument("--config", help="Path to TOML/JSON config.")
    parser.add_argument("--log-level", default="INFO", help="Logging level.")
    parser.add_argument(
        "--json-logs", action="store_true", help="Emit logs in JSON format."
    )
    parser.add_argument("--workers", type=int, help="Worker threads for exhaustive scans.")
    parser.add_argument("--cap", type=int, help="Element-count limit for exhaustive scans.")

    subparsers = parser.add_subparsers(dest="command", required=True)

    catalog_cmd = subparsers.add_parser("catalog", help="List the built-in rings")
    catalog_cmd.add_argument("--json", action="store_true", help="Emit JSON.")

    build = subparsers.add_parser("build", help="Build a ring and summarize or save it")
    _add_ring_options(build)
    build.add_argument("--involution", choices=("identity", "canonical", "document"), help="Involution to save.")
    build.add_argument("--out", help="Write the ring document here.")

    axioms = subparsers.add_parser("axioms", help="Validate a ring (and involution) and print invariants")
    _add_ring_options(axioms)
    axioms.add_argument("--involution", choices=("identity", "canonical", "document"), help="Involution to validate.")

    elements = subparsers.add_parser("elements", help="List elements in canonical order")
    _add_ring_options(elements)
    elements.add_argument("--limit", type=int, default=64, help="Maximum number of elements to print.")

    annihilator = subparsers.add_parser("annihilator", help="Annihilator chain of an element")
    _add_ring_options(annihilator)
    annihilator.add_argument("--element", required=True, help="Element expression, e.g. 'e+g'.")
    annihilator.add_argument("--side", choices=("right", "left"), default="right")
    annihilator.add_argument(
        "--within-ideal",
        action="store_true",
        help="Take annihilators inside the ideal embedded in a U(...) or XGR(...) ring.",
    )
    annihilator.add_argument("--limit", type=int, default=16, help="Members to print per chain step.")

    idempotents = subparsers.add_parser("idempotents", help="List idempotents")
    _add_ring_options(idempotents)

    projections = subparsers.add_parser("projections", help="List projections (idempotents fixed by *)")
    _add_ring_options(projections)
    projections.add_argument("--involution", choices=("identity", "canonical", "document"), default="canonical")

    check = subparsers.add_parser("check", help="Decide a property of a ring")
    _add_ring_options(check)
    check.add_argument("--property", required=True, choices=PROPERTIES)
    check.add_argument("--involution", choices=("identity", "canonical", "document"), help="Involution for *-properties.")
    check.add_argument("--expect", choices=("holds", "fails"), help="Assertion the exit code reports on.")
    check.add_argument("--m", type=int, default=2, help="Multiplier for condition-i.")
    mode = check.add_mutually_exclusive_group()
    mode.add_argument("--strict", action="store_true", help="Exhaustive decision (the default).")
    mode.add_argument("--witness", help="Refute at one element of the ambient ring only.")
    check.add_argument("--json", action="store_true", help="Emit the verdict as JSON.")

    verify = subparsers.add_parser("verify", help="Run a certificate-producing verification")
    verify.add_argument("--claim", choices=harness.CLAIMS, help="Claim to verify.")
    verify.add_argument("--kind", choices=catalog.FINE_KINDS, help="Catalog ring kind.")
    verify.add_argument("--p", type=int, help="Prime parameter.")
    verify.add_argument("--n", type=int, help="Matrix size or tuple length.")
    verify.add_argument("--m", type=int, choices=(2, 3), help="Multiplier for prop_tn.")
    verify.add_argument("--group", help="Group name (C<n>, V4 or @file).")
    verify.add_argument("--ring", help="Construction expression for ring-valued claims.")
    verify.add_argument("--strict", action="store_true", help="Add the exhaustive check over S.")
    verify.add_argument("--json", action="store_true", help="Emit the certificate as JSON.")
    verify.add_argument("--timings", action="store_true", help="Include step timings.")
    verify.add_argument("--out", help="Also write the certificate to this file.")
    verify.add_argument("--db", help="Archive the certificate in this SQLite file.")
    verify.add_argument("--replay", help="Re-run a recorded certificate file and compare.")

    iso = subparsers.add_parser("iso", help="Check R[x]/(x^n) ~ T(R, n) or the diagonal embedding")
    iso.add_argument("--ring", required=True, help="Construction expression for R.")
    iso.add_argument("--n", type=int, required=True)
    iso.add_argument("--embedding", action="store_true", help="Check T(R, n) -> T_n(R) instead.")
    iso.add_argument("--json", action="store_true", help="Emit the report as JSON.")

    db_init = subparsers.add_parser("db-init", help="Initialize/upgrade SQLite DB")
    db_init.add_argument("--db", required=True, help="Path to SQLite file.")
    db_init.add_argument(
        "--migrations-dir",
        default=str(MIGRATIONS_DIR),
        help="Path to migrations directory.",
    )

    history = subparsers.add_parser("history", help="List archived certificates")
    history.add_argument("--db", required=True, help="Path to SQLite file.")
    history.add_argument("--claim", help="Only this claim.")
    history.add_argument("--limit", type=int, default=20)
    history.add_argument("--show", type=int, help="Print the stored certificate with this id.")

    return parser


def _add_ring_options(subparser: argparse.ArgumentParser) -> None:
    source = subparser.add_mutually_exclusive_group(required=True)
    source.add_argument("--ring", help="Construction expression, e.g. 'GR(A(3),C2)'.")
    source.add_argument("--ring-file", help="Ring document (JSON) or table-text file.")


def _settings(args: argparse.Namespace) -> Settings:
    settings = load_settings(args.config)
    if args.workers is not None:
        settings = settings.replace(workers=args.workers)
    if args.cap is not None:
        settings = settings.replace(exhaustive_cap=args.cap)
    return settings


def _write(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _load_ring(args: argparse.Namespace, settings: Settings) -> tuple[FiniteRing, Optional[Involution]]:
    if args.ring_file:
        return load_ring_file(args.ring_file, settings=settings)
    return evaluate(args.ring), None


def _involution(
    ring: FiniteRing,
    choice: Optional[str],
    document: Optional[Involution],
    settings: Settings,
) -> Optional[Involution]:
    if choice is None:
        return None
    if choice == "identity":
        return identity_involution(ring, **involution_limits(settings))
    if choice == "canonical":
        return canonical_involution(ring, settings=settings)
    if document is None:
        raise ParseError("the ring document has no involution")
    return document


def _embedded_ideal(ring: FiniteRing) -> IdealEmbedding:
    if ring.construction is not None and ring.construction.embedding is not None:
        return ring.construction.embedding
    return make_embedding(ring, ring, range(ring.rank))


# -- commands -------------------------------------------------------------------------


def _cmd_catalog(args: argparse.Namespace) -> int:
    entries = catalog.catalog_list()
    if args.json:
        _write(json.dumps([vars(entry) for entry in entries], indent=2, default=jsonable))
        return EXIT_CONFIRMED
    for entry in entries:
        orders = "x".join(f"Z{d}" for d in entry.orders) or "0"
        _write(f"{entry.key:<10} |R|={entry.cardinality:<6} {orders:<10} {entry.provenance}")
    return EXIT_CONFIRMED


def _summary(ring: FiniteRing, settings: Settings) -> list[str]:
    lines = [
        f"ring: {ring.provenance}",
        f"orders: {list(ring.orders)}",
        f"cardinality: {ring.cardinality}",
        f"labels: {', '.join(ring.labels) or '(none)'}",
        f"unity: {'none' if ring.unity is None else ring.format_element(ring.unity_element())}",  # type: ignore[arg-type]
    ]
    if ring.cardinality <= settings.exhaustive_cap:
        for key, value in ring_fingerprint(ring, settings=settings).items():
            lines.append(f"{key}: {value}")
    return lines


def _cmd_build(args: argparse.Namespace, settings: Settings) -> int:
    ring, document = _load_ring(args, settings)
    involution = _involution(ring, args.involution, document, settings)
    if args.out:
        pathlib.Path(args.out).write_text(serialize_ring_spec(ring, involution), encoding="utf-8")
        LOGGER.info("Wrote ring document %s", args.out, extra={"ctx": {"ring": ring.provenance}})
    _write("\n".join(_summary(ring, settings)))
    return EXIT_CONFIRMED


def _cmd_axioms(args: argparse.Namespace, settings: Settings) -> int:
    ring, document = _load_ring(args, settings)
    lines = _summary(ring, settings)
    lines.append("axioms: well-defined, associative, distributive")
    involution = _involution(ring, args.involution, document, settings)
    if involution is not None:
        lines.append(f"involution: {involution.name or 'document'} satisfies (x*)* = x and (xy)* = y*x*")
    _write("\n".join(lines))
    return EXIT_CONFIRMED


def _cmd_elements(args: argparse.Namespace, settings: Settings) -> int:
    ring, _ = _load_ring(args, settings)
    rows = ring.elements(settings.exhaustive_cap)[: max(0, args.limit)]
    for index, coords in enumerate(rows):
        _write(f"{index}\t{ring.format_element(ring.element(coords))}")
    if ring.cardinality > len(rows):
        _write(f"... {ring.cardinality - len(rows)} more")
    return EXIT_CONFIRMED


def _cmd_annihilator(args: argparse.Namespace, settings: Settings) -> int:
    ring, _ = _load_ring(args, settings)
    x = parse_element(ring, args.element)
    within = ring.construction.embedding if args.within_ideal and ring.construction else None
    if args.within_ideal and within is None:
        raise ParseError(f"{ring.provenance} has no embedded ideal; use U(...) or XGR(...)")
    scanner = AnnihilatorScanner(ring, within, side=args.side, cap=settings.exhaustive_cap)
    owner = scanner.owner
    chain = scanner.chain_bitmaps(np.asarray(x.coords))
    prefix = "r" if args.side == "right" else "l"
    _write(f"element: {ring.format_element(x)} in {ring.provenance}, annihilators in {owner.provenance}")
    for power, bitmap in enumerate(chain, start=1):
        members = np.flatnonzero(bitmap)
        shown = ", ".join(owner.format_element(owner.element_at(int(i))) for i in members[: args.limit])
        more = f", ... ({len(members) - args.limit} more)" if len(members) > args.limit else ""
        _write(f"{prefix}(x^{power}): {len(members)} elements: {shown}{more}")
    _write(f"stabilized at n = {len(chain)}")
    return EXIT_CONFIRMED


def _cmd_idempotents(args: argparse.Namespace, settings: Settings) -> int:
    ring, _ = _load_ring(args, settings)
    for e in enumerate_idempotents(ring, settings=settings):
        _write(ring.format_element(e))
    return EXIT_CONFIRMED


def _cmd_projections(args: argparse.Namespace, settings: Settings) -> int:
    ring, document = _load_ring(args, settings)
    involution = _involution(ring, args.involution, document, settings)
    assert involution is not None
    for e in enumerate_projections(ring, involution, settings=settings):
        _write(ring.format_element(e))
    return EXIT_CONFIRMED


def _decide(
    ring: FiniteRing,
    prop: str,
    involution: Optional[Involution],
    args: argparse.Namespace,
    settings: Settings,
) -> PropertyVerdict:
    if prop == "condition-i":
        return condition_i(ring, args.m, settings=settings)
    if prop == "nilpotent":
        return is_nilpotent(ring)
    if prop == "artinian":
        return artinian_certificate(ring, settings=settings)
    plain = {
        "gen-right-pp": is_generalized_right_pp,
        "gen-left-pp": is_generalized_left_pp,
        "right-rickart": is_right_rickart,
        "left-rickart": is_left_rickart,
        "baer": is_baer,
        "abelian": is_abelian,
    }
    if prop in plain:
        return plain[prop](ring, settings=settings)
    starred = {
        "gen-rickart-star": is_generalized_rickart_star,
        "rickart-star": is_rickart_star,
        "baer-star": is_baer_star,
    }
    assert involution is not None
    return starred[prop](ring, involution, settings=settings)


def _cmd_check(args: argparse.Namespace, settings: Settings) -> int:
    ring, document = _load_ring(args, settings)
    star = args.property in STAR_PROPERTIES
    if args.witness:
        if args.property not in WITNESS_PROPERTIES:
            raise ParseError(f"--witness supports {', '.join(WITNESS_PROPERTIES)}, not {args.property}")
        ideal = _embedded_ideal(ring)
        involution = _involution(ideal.sub, args.involution or "canonical", document, settings) if star else None
        verdict = refute_gen_pp_with_witness(
            ring,
            ideal,
            parse_element(ring, args.witness),
            use_projections=star,
            involution=involution,
            settings=settings,
        )
    else:
        involution = _involution(ring, args.involution or "canonical", document, settings) if star else None
        verdict = _decide(ring, args.property, involution, args, settings)

    if args.json:
        _write(json.dumps(verdict.to_dict(), indent=2, default=jsonable))
    else:
        _write(_verdict_text(verdict))

    expected = args.expect != "fails"
    return EXIT_CONFIRMED if verdict.holds == expected else EXIT_NOT_CONFIRMED


def _verdict_text(verdict: PropertyVerdict) -> str:
    lines = [f"{verdict.property} on {verdict.ring}: {'HOLDS' if verdict.holds else 'FAILS'} ({verdict.mode})"]
    if verdict.witness_label is not None:
        lines.append(f"witness: {verdict.witness_label}{' (degenerate)' if verdict.degenerate else ''}")
    if verdict.chain_sizes:
        lines.append("chain sizes per power: " + " -> ".join(str(size) for size in verdict.chain_sizes))
    for key, value in verdict.details.items():
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def _claim_parameters(args: argparse.Namespace, parser: argparse.ArgumentParser) -> dict[str, Any]:
    required = {
        "theorem1": ("kind", "p"),
        "theorem2": ("kind", "p"),
        "prop_tn": ("kind", "p", "n", "m"),
        "prop_triangular": ("ring", "n"),
        "prop_artinian": ("ring", "n"),
        "prop_group_descent": ("ring", "group"),
        "example_ex50": ("kind", "p", "n"),
        "example_SH": ("kind", "p"),
    }[args.claim]
    missing = [f"--{name}" for name in required if getattr(args, name) is None]
    if missing:
        parser.error(f"--claim {args.claim} needs {', '.join(missing)}")
    params: dict[str, Any] = {name: getattr(args, name) for name in required}
    if args.claim in ("theorem1", "theorem2"):
        params.update(n=args.n, strict=args.strict)
    if args.claim == "example_SH":
        params["group"] = args.group or "C2"
    return params


def _cmd_verify(args: argparse.Namespace, settings: Settings, parser: argparse.ArgumentParser) -> int:
    if args.replay:
        try:
            recorded = json.loads(pathlib.Path(args.replay).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read certificate {args.replay}: {exc}") from exc
        identical, certificate, differences = harness.replay_certificate(recorded, settings=settings)
        for line in differences:
            _write(line)
        _write(f"replay of {certificate.claim}: {'identical' if identical else 'DIFFERS'}")
        return EXIT_CONFIRMED if identical else EXIT_NOT_CONFIRMED

    if args.claim is None:
        parser.error("verify needs --claim or --replay")
    certificate = harness.run_claim(args.claim, _claim_parameters(args, parser), settings=settings)
    payload = emit_certificate(certificate, "json" if args.json else "text", include_timings=args.timings)
    _write(payload.decode("utf-8"))
    if args.out:
        pathlib.Path(args.out).write_bytes(emit_certificate(certificate, "json", include_timings=args.timings))
    if args.db:
        init_db(args.db)
        with get_connection(args.db) as conn:
            certificate_id = CertificateRepository(conn).insert(certificate)
        LOGGER.info(
            "Archived certificate %s", certificate_id, extra={"ctx": {"claim": certificate.claim, "db": args.db}}
        )
    return EXIT_CONFIRMED if certificate.verdict else EXIT_NOT_CONFIRMED


def _cmd_iso(args: argparse.Namespace, settings: Settings) -> int:
    base = evaluate(args.ring)
    check = constant_diagonal_embedding if args.embedding else iso_polyquot_consttri
    report = check(base, args.n, settings=settings)
    if args.json:
        _write(json.dumps(report.to_dict(), indent=2, default=jsonable))
    else:
        status = "HOLDS" if report.holds else "FAILS"
        _write(f"{report.name}: {status} ({report.mode}, {report.checked_pairs} pairs, bijective={report.bijective})")
        if report.counterexample is not None:
            _write(f"counterexample: {list(report.counterexample[0])} * {list(report.counterexample[1])}")
    return EXIT_CONFIRMED if report.holds else EXIT_NOT_CONFIRMED


def _cmd_history(args: argparse.Namespace) -> int:
    with get_connection(args.db) as conn:
        repo = CertificateRepository(conn)
        if args.show is not None:
            content = repo.get_content(args.show)
            if content is None:
                raise ParseError(f"no certificate with id {args.show}")
            _write(json.dumps(content, indent=2))
            return EXIT_CONFIRMED
        for row in repo.list_recent(claim=args.claim, limit=args.limit):
            verdict = "confirmed" if row["verdict"] else "not confirmed"
            _write(
                f"{row['certificate_id']}\t{row['claim']}\t{verdict}\t{row['parameters_json']}\t"
                f"{row['content_sha256'][:12]}\t{row['created_at']}"
            )
    return EXIT_CONFIRMED


def _dispatch(args: argparse.Namespace, settings: Settings, parser: argparse.ArgumentParser) -> int:
    if args.command == "db-init":
        init_db(args.db, args.migrations_dir)
        return EXIT_CONFIRMED
    if args.command == "history":
        return _cmd_history(args)
    if args.command == "catalog":
        return _cmd_catalog(args)
    if args.command == "verify":
        return _cmd_verify(args, settings, parser)
    commands = {
        "build": _cmd_build,
        "axioms": _cmd_axioms,
        "elements": _cmd_elements,
        "annihilator": _cmd_annihilator,
        "idempotents": _cmd_idempotents,
        "projections": _cmd_projections,
        "check": _cmd_check,
        "iso": _cmd_iso,
    }
    return commands[args.command](args, settings)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    configure_logging(level=args.log_level, json_format=args.json_logs)

    try:
        settings = _settings(args)
        return _dispatch(args, settings, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except CapExceededError as exc:
        LOGGER.error("Cap exceeded: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (PrimeConstraintViolatedError, HypothesisFailedError, InvariantBreachError) as exc:
        print(f"not confirmed: {exc}", file=sys.stderr)
        return EXIT_NOT_CONFIRMED
    except (ConfigError, MigrationError, NotPrimeError, ParseError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RickartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
