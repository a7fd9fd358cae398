"""Result models: verdicts, certificate steps and certificates."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Any, Optional

CERTIFICATE_SCHEMA = "rickart-tb/certificate/v1"

STEP_VERIFIED = "verified"
STEP_CITED = "cited"
STEP_SKIPPED = "skipped"


@dataclass(frozen=True)
class PropertyVerdict:
    property: str
    holds: bool
    ring: str
    mode: str = "exhaustive"
    witness: Optional[tuple[int, ...]] = None
    witness_label: Optional[str] = None
    degenerate: bool = False
    nonzero_witness: Optional[tuple[int, ...]] = None
    chain_sizes: tuple[int, ...] = ()
    scanned_generators: int = 0
    scanned_elements: int = 0
    details: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        payload = dataclasses.asdict(self)
        for key in ("witness", "nonzero_witness", "chain_sizes"):
            if payload[key] is not None:
                payload[key] = list(payload[key])
        return payload


@dataclass(frozen=True)
class StepRecord:
    name: str
    description: str
    passed: bool
    data: dict[str, Any] = field(default_factory=dict)
    kind: str = STEP_VERIFIED

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "description": self.description,
            "kind": self.kind,
            "passed": self.passed,
            "data": self.data,
        }


@dataclass
class Certificate:
    """Structured verification record; the verdict is the conjunction of its steps."""

    claim: str
    parameters: dict[str, Any]
    steps: list[StepRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    schema: str = CERTIFICATE_SCHEMA

    @property
    def verdict(self) -> bool:
        return all(step.passed for step in self.steps)

    def add_step(self, step: StepRecord, seconds: Optional[float] = None) -> StepRecord:
        self.steps.append(step)
        if seconds is not None:
            self.timings[step.name] = round(seconds, 6)
        return step

    def step(self, name: str) -> StepRecord:
        for step in self.steps:
            if step.name == name:
                return step
        raise KeyError(name)

    def content(self) -> dict[str, Any]:
        """Everything except timings, in a stable field order."""
        return {
            "schema": self.schema,
            "claim": self.claim,
            "parameters": self.parameters,
            "verdict": self.verdict,
            "steps": [step.to_dict() for step in self.steps],
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class CatalogDescriptor:
    key: str
    kind: str
    parameter: int
    orders: tuple[int, ...]
    cardinality: int
    provenance: str


@dataclass(frozen=True)
class IsomorphismReport:
    """Outcome of checking a fixed coordinate map between two rings."""

    name: str
    holds: bool
    mode: str
    checked_pairs: int
    bijective: bool
    counterexample: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None

    def to_dict(self) -> dict[str, Any]:
        payload = dataclasses.asdict(self)
        if self.counterexample is not None:
            payload["counterexample"] = [list(c) for c in self.counterexample]
        return payload
