import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pimsim.algebra import build_example  # noqa: E402
from pimsim.field import FieldDesc  # noqa: E402
from pimsim.linalg import Subspace  # noqa: E402
from pimsim.module import regular_module, submodule_restrict  # noqa: E402

F2, F3, F5, F7 = (FieldDesc.fp(p) for p in (2, 3, 5, 7))
Q = FieldDesc.q()


@pytest.fixture
def ut2():
    """Upper triangular 2x2 matrices over F_5, basis (e11, e12, e22)."""
    return build_example("upper-triangular", F5, 2)


@pytest.fixture
def ut2_parts(ut2):
    """(A, P1, P2, M, P2/M) for the 2x2 upper triangular example over F_5."""
    from pimsim.module import quotient_module

    reg = regular_module(ut2)
    p1 = submodule_restrict(reg, Subspace.span(F5, 3, [[1, 0, 0]]))[0]
    p2 = submodule_restrict(reg, Subspace.span(F5, 3, [[0, 1, 0], [0, 0, 1]]))[0]
    # inside P2 the basis is (e12, e22), so M = span{e12} is the first coordinate
    m = Subspace.span(F5, 2, [[1, 0]])
    top2 = quotient_module(p2, m)[0]
    return reg, p1, p2, m, top2
