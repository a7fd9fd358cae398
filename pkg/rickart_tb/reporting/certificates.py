"""Certificate rendering (JSON and plain text)."""
from __future__ import annotations

import json
from typing import Any, Iterator

from rickart_tb.domain.models import Certificate

FORMATS = ("json", "text")


def emit_certificate(certificate: Certificate, fmt: str = "json", *, include_timings: bool = False) -> bytes:
    """Render a certificate; without timings the bytes depend only on its parameters."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown certificate format {fmt!r}; expected one of {', '.join(FORMATS)}")
    if fmt == "json":
        payload: dict[str, Any] = dict(certificate.content())
        if include_timings:
            payload["timings"] = dict(sorted(certificate.timings.items()))
        return (json.dumps(payload, indent=2, default=jsonable) + "\n").encode("utf-8")
    return ("\n".join(_text_lines(certificate, include_timings)) + "\n").encode("utf-8")


def jsonable(value: Any) -> Any:
    if isinstance(value, (set, frozenset, tuple)):
        return list(value)
    if hasattr(value, "item"):
        return value.item()
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _text_lines(certificate: Certificate, include_timings: bool) -> Iterator[str]:
    yield f"claim: {certificate.claim}"
    yield f"verdict: {'CONFIRMED' if certificate.verdict else 'NOT CONFIRMED'}"
    yield "parameters: " + ", ".join(f"{k}={v}" for k, v in certificate.parameters.items())
    for step in certificate.steps:
        marker = "PASS" if step.passed else "FAIL"
        yield f"[{marker}] {step.name} ({step.kind}): {step.description}"
        for key, value in _chains(step.data):
            yield f"    {key}: chain sizes per power {' -> '.join(str(v) for v in value)}"
        for key in ("witness_label", "cardinality", "reason"):
            if key in step.data and step.data[key] is not None:
                yield f"    {key}: {step.data[key]}"
    for note in certificate.notes:
        yield f"note: {note}"
    if include_timings:
        for name, seconds in sorted(certificate.timings.items()):
            yield f"time {name}: {seconds:.3f}s"


def _chains(data: Any, prefix: str = "") -> Iterator[tuple[str, list[int]]]:
    if isinstance(data, dict):
        for key, value in data.items():
            path = f"{prefix}.{key}" if prefix else key
            if key == "chain_sizes" and value:
                yield path, list(value)
            else:
                yield from _chains(value, path)
