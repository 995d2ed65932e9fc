"""Replayable certificates for simplicity, indecomposability and projectivity."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

SIMPLE_BY_NORTON = "SimpleByNorton"
SIMPLE_BY_EXHAUSTIVE_SPIN = "SimpleByExhaustiveSpin"
INDECOMPOSABLE_BY_LOCAL_END = "IndecomposableByLocalEnd"
INDECOMPOSABLE_BY_SIMPLE_TOP = "IndecomposableBySimpleTop"
PROJECTIVE_BY_SECTION = "ProjectiveBySection"
NOT_SIMPLE_WITNESS = "NotSimpleWitness"
DECOMPOSABLE_WITNESS = "DecomposableWitness"
NOT_PROJECTIVE_WITNESS = "NotProjectiveWitness"

POSITIVE_KINDS = {
    SIMPLE_BY_NORTON,
    SIMPLE_BY_EXHAUSTIVE_SPIN,
    INDECOMPOSABLE_BY_LOCAL_END,
    INDECOMPOSABLE_BY_SIMPLE_TOP,
    PROJECTIVE_BY_SECTION,
}


@dataclass
class Certificate:
    """Evidence for a claim about a module.

    ``payload`` maps names to ints, lists, numpy arrays or nested
    certificates; it is enough to re-check the claim without searching.
    """

    kind: str
    payload: dict = dc_field(default_factory=dict)

    @property
    def holds(self) -> bool:
        """True for positive certificates (simple / indecomposable / projective)."""
        return self.kind in POSITIVE_KINDS

    def __bool__(self):
        return self.holds

    def to_json(self, field) -> dict:
        return {"kind": self.kind, "payload": {k: _encode(field, v) for k, v in sorted(self.payload.items())}}

    @classmethod
    def from_json(cls, field, obj) -> Certificate:
        return cls(obj["kind"], {k: _decode(field, v) for k, v in obj["payload"].items()})


def _encode(field, v):
    if isinstance(v, Certificate):
        return {"certificate": v.to_json(field)}
    if isinstance(v, np.ndarray):
        return {"matrix": field.format_array(v), "shape": list(v.shape)}
    if isinstance(v, (list, tuple)):
        return [_encode(field, x) for x in v]
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


def _decode(field, v):
    if isinstance(v, dict) and "certificate" in v:
        return Certificate.from_json(field, v["certificate"])
    if isinstance(v, dict) and "matrix" in v:
        shape = tuple(v["shape"])
        if 0 in shape:
            return field.zeros(shape)
        return field.array(v["matrix"]).reshape(shape)
    if isinstance(v, list):
        return [_decode(field, x) for x in v]
    return v
