"""Tolerances and resource limits shared across modules."""

from __future__ import annotations

import os
from dataclasses import dataclass

ENV_MAX_DIM = "SPINORLAB_MAX_DIM"

#: default comparison tolerance for computed identities
TOL = 1e-10
#: tolerance for identities that hold exactly in exact arithmetic (golden values)
GOLDEN_TOL = 1e-12
#: a singular value counts as nonzero when >= RANK_RTOL * largest
RANK_RTOL = 1e-8
#: projector / complex-structure comparison in orbit questions
TRIPLE_TOL = 1e-8
#: maximum number of complex coefficients in Delta_r (x) Delta_n
DEFAULT_MAX_DIM = 2**14


def max_dim_default() -> int:
    raw = os.environ.get(ENV_MAX_DIM)
    if raw is None or raw == "":
        return DEFAULT_MAX_DIM
    return int(raw)


@dataclass(frozen=True)
class Tolerances:
    tol: float = TOL
    golden: float = GOLDEN_TOL
    rank_rtol: float = RANK_RTOL
    triple: float = TRIPLE_TOL
