"""The builder corpus used by the ``check`` battery and the acceptance suite."""

from __future__ import annotations

import random

from .algebra import build_example, direct_product
from .field import FieldDesc

PRIMES = (2, 3, 5, 7)
BASE_PARAMS = {
    "upper-triangular": (2, 3),
    "full-matrix": (2, 3),
    "cyclic-group": (2, 3, 4, 5, 6),
    "truncated-poly": (2, 3, 4, 5),
}
# factors drawn for direct products; kept small so products stay desk-sized
PRODUCT_POOL = (
    ("upper-triangular", 1),
    ("upper-triangular", 2),
    ("full-matrix", 2),
    ("cyclic-group", 2),
    ("cyclic-group", 3),
    ("cyclic-group", 4),
    ("truncated-poly", 2),
    ("truncated-poly", 3),
)
PRODUCT_COUNT = 20
PRODUCT_SEED = 20240601


def product_specs(count: int = PRODUCT_COUNT, seed: int = PRODUCT_SEED):
    """Seeded, duplicate-free list of factor pairs."""
    rng = random.Random(seed)
    specs = []
    while len(specs) < count:
        pair = (rng.choice(PRODUCT_POOL), rng.choice(PRODUCT_POOL))
        if pair not in specs:
            specs.append(pair)
    return specs


def spec_name(spec) -> str:
    if isinstance(spec[0], tuple):
        return "direct-product(" + ",".join(spec_name(s) for s in spec) + ")"
    return f"{spec[0]}:{spec[1]}"


def build_spec(spec, field: FieldDesc):
    if isinstance(spec[0], tuple):
        return direct_product(build_spec(spec[0], field), build_spec(spec[1], field))
    return build_example(spec[0], field, spec[1])


def corpus_specs():
    specs = [(kind, n) for kind, ns in BASE_PARAMS.items() for n in ns]
    return specs + product_specs()


def corpus(primes=PRIMES):
    """List of (name, AlgebraData) over every prime in ``primes``."""
    out = []
    for p in primes:
        field = FieldDesc.fp(p)
        for spec in corpus_specs():
            out.append((f"{spec_name(spec)}/F{p}", build_spec(spec, field)))
    return out
