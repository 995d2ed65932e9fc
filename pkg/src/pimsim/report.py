"""JSON report builders shared by the CLI and the determinism tests."""

from __future__ import annotations

import hashlib
import json

from . import __version__
from .algebra import AlgebraData, dickson_radical, validate_algebra
from .decomp import CompSeries, DecompositionReport, radical_nilpotency_index
from .errors import UnsupportedCharacteristic


def content_hash(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def envelope(kind: str, algebra: AlgebraData, seed: int, input_bytes: bytes | None = None) -> dict:
    if input_bytes is None:
        input_bytes = algebra.dumps().encode()
    return {
        "report": kind,
        "tool": {"name": "pimsim", "version": __version__},
        "input_sha256": content_hash(input_bytes),
        "seed": seed,
        "field": algebra.field.to_json(),
        "algebra": algebra.to_json(),
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _module_json(m):
    f = m.field
    return {"dim": m.dim, "action": [f.format_array(x) for x in m.actions]}


def _space_json(field, space):
    return [[field.format_scalar(x) for x in row] for row in space.basis]


def validation_json(algebra: AlgebraData) -> dict:
    return validate_algebra(algebra).to_json()


def info_json(algebra: AlgebraData) -> dict:
    from .decomp import is_commutative

    report = validate_algebra(algebra)
    return {
        "dim": algebra.dim,
        "labels": list(algebra.labels),
        "valid": report.ok,
        "commutative": is_commutative(algebra),
        "structure_nonzeros": len(algebra.entries()),
    }


def radical_json(algebra: AlgebraData, seed: int) -> dict:
    f = algebra.field
    out = {}
    dickson = None
    if not f.is_prime_field or f.p > algebra.dim:
        try:
            dickson = dickson_radical(algebra)
        except UnsupportedCharacteristic:
            dickson = None
    if f.is_prime_field:
        from .decomp import algebra_radical

        rad, simples = algebra_radical(algebra, seed)
        out["radical"] = {
            "dim": rad.dim,
            "basis": _space_json(f, rad.space),
            "nilpotency_index": radical_nilpotency_index(algebra, rad),
            "simple_dims": [s.dim for s in simples],
        }
        if dickson is not None:
            out["dickson"] = {"dim": dickson.dim, "agrees": dickson.space == rad.space}
    else:
        out["dickson"] = {
            "dim": dickson.dim,
            "basis": _space_json(f, dickson.space),
            "nilpotency_index": radical_nilpotency_index(algebra, dickson),
        }
    return out


def comp_series_json(cs: CompSeries) -> dict:
    f = cs.module.field
    return {
        "length": cs.length,
        "chain_dims": [s.dim for s in cs.chain],
        "factors": [
            {
                "dim": fac.dim,
                "class_id": cid,
                "module": _module_json(fac),
                "certificate": cert.to_json(f),
            }
            for fac, cid, cert in zip(cs.factors, cs.factor_class_ids, cs.certificates)
        ],
        "class_multiset": {str(k): v for k, v in sorted(cs.class_multiset().items())},
    }


def decomposition_json(dec: DecompositionReport) -> dict:
    f = dec.module.field
    return {
        "summands": [
            {
                "dim": m.dim,
                "class_id": cid,
                "embedding": _space_json(f, space),
                "module": _module_json(m),
                "certificate": cert.to_json(f),
            }
            for (m, space), cid, cert in zip(dec.summands, dec.class_ids, dec.certificates)
        ],
        "class_multiset": {str(k): v for k, v in sorted(dec.class_multiset().items())},
    }


def simples_json(records) -> list:
    out = []
    for s in records:
        f = s.module.field
        out.append(
            {
                "class_id": s.class_id,
                "dim": s.dim,
                "end_degree": s.end_field_degree,
                "module": _module_json(s.module),
                "certificate": s.certificate.to_json(f),
            }
        )
    return out


def pims_json(records) -> list:
    from .correspondence import top

    out = []
    for p in records:
        f = p.module.field
        out.append(
            {
                "class_id": p.class_id,
                "dim": p.dim,
                "multiplicity": p.multiplicity_in_regular,
                "generator": [f.format_scalar(x) for x in p.generator],
                "top_class_id": p.top_class_id,
                "unique_maximal_dim": p.unique_maximal.dim,
                "module": _module_json(p.module),
                "top_module": _module_json(top(p)),
                "certificates": {k: c.to_json(f) for k, c in p.certificates.items()},
            }
        )
    return out


def bijection_json(table, checks: dict | None = None) -> dict:
    f = table.algebra.field
    pairs = []
    for i, (p, s) in enumerate(table.pairs):
        pairs.append(
            {
                "pim": {
                    "class_id": p.class_id,
                    "dim": p.dim,
                    "multiplicity": p.multiplicity_in_regular,
                    "generator": [f.format_scalar(x) for x in p.generator],
                },
                "simple": {"class_id": s.class_id, "dim": s.dim, "end_degree": s.end_field_degree},
                "hom_dim": table.hom_dims[i][table.matching[i]],
            }
        )
    out = {
        "pairs": pairs,
        "hom_dim_matrix": table.hom_dims,
        "radical_dim": table.radical.dim,
        "nilpotency_index": radical_nilpotency_index(table.algebra, table.radical),
        "pims": pims_json(table.pims),
        "simples": simples_json(table.simples),
    }
    if checks is not None:
        out["checks"] = {k: v.passed for k, v in checks.items()}
    return out


def checks_json(checks: dict) -> dict:
    return {k: {"passed": v.passed, "witness": v.witness} for k, v in checks.items()}
