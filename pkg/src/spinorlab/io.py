"""JSON file formats for spinors and reports.

Spinor coefficients are written in the unitary basis u_I (x) u_J (twist slots
first, sign +1 as bit 0) as [re, im] pairs; the file object keeps the values it
read, so parse -> serialize is bit-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from spinorlab.errors import PreconditionError
from spinorlab.twisted import (
    SIGMA_FULL,
    SIGMA_POSITIVE,
    TwistedSpinor,
    coefficient_count,
    twisted_space,
)

SPINOR_SCHEMA = "spinorlab.spinor/1"
REPORT_SCHEMA = "spinorlab.report/1"


@dataclass(frozen=True)
class SpinorFile:
    n: int
    r: int
    sigma_parity: str
    coefficients: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if self.sigma_parity not in (SIGMA_FULL, SIGMA_POSITIVE):
            raise PreconditionError(f"unknown sigma_parity {self.sigma_parity!r}")
        if not (0 <= self.r < self.n) or (self.n - self.r) % 2:
            raise PreconditionError(f"invalid dimensions n={self.n}, r={self.r}")
        want = coefficient_count(self.n, self.r)
        if len(self.coefficients) != want:
            raise PreconditionError(f"expected {want} coefficients, got {len(self.coefficients)}")

    @classmethod
    def from_spinor(cls, phi: TwistedSpinor) -> "SpinorFile":
        u = phi.u_coefficients()
        # basis-change round-off below this level is written as an exact zero
        snap = 1e-15 * max(1.0, float(np.abs(u).max(initial=0.0)))
        u = np.where(np.abs(u.real) <= snap, 0.0, u.real) + 1j * np.where(np.abs(u.imag) <= snap, 0.0, u.imag)
        return cls(phi.n, phi.r, phi.space.sigma, tuple((float(z.real), float(z.imag)) for z in u))

    def to_spinor(self, max_dim: int | None = None) -> TwistedSpinor:
        space = twisted_space(self.n, self.r, self.sigma_parity, max_dim=max_dim)
        u = np.array([complex(a, b) for a, b in self.coefficients])
        return TwistedSpinor.from_u_coefficients(space, u)

    def to_dict(self) -> dict:
        return {
            "schema": SPINOR_SCHEMA,
            "n": self.n,
            "r": self.r,
            "sigma_parity": self.sigma_parity,
            "coefficients": [list(c) for c in self.coefficients],
        }

    @classmethod
    def from_dict(cls, d) -> "SpinorFile":
        if not isinstance(d, dict):
            raise PreconditionError("spinor file must hold a JSON object")
        if d.get("schema") != SPINOR_SCHEMA:
            raise PreconditionError(f"unsupported schema {d.get('schema')!r}")
        try:
            n, r = d["n"], d["r"]
            coeffs = d["coefficients"]
            sigma = d.get("sigma_parity", SIGMA_FULL)
        except KeyError as exc:
            raise PreconditionError(f"spinor file lacks field {exc}") from None
        if not (isinstance(n, int) and isinstance(r, int)) or isinstance(n, bool) or isinstance(r, bool):
            raise PreconditionError("n and r must be integers")
        pairs = []
        for c in coeffs if isinstance(coeffs, list) else [None]:
            if not (isinstance(c, list) and len(c) == 2 and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in c)):
                raise PreconditionError("coefficients must be [re, im] number pairs")
            if not all(math.isfinite(x) for x in c):
                raise PreconditionError("coefficients must be finite")
            pairs.append((float(c[0]), float(c[1])))
        return cls(n, r, sigma, tuple(pairs))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path: str | Path | None, obj) -> str:
    """Write ``obj`` to ``path`` (stdout when None or "-") and return the text."""
    text = dumps(obj)
    if path is None or str(path) == "-":
        print(text, end="")
    else:
        Path(path).write_text(text)
    return text


def read_json(path: str | Path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PreconditionError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from None


def save_spinor(path, phi: TwistedSpinor) -> SpinorFile:
    f = SpinorFile.from_spinor(phi)
    write_json(path, f.to_dict())
    return f


def load_spinor(path, max_dim: int | None = None) -> TwistedSpinor:
    return SpinorFile.from_dict(read_json(path)).to_spinor(max_dim)


def check(residual: float, tol: float) -> dict:
    return {"residual": float(residual), "pass": bool(residual <= tol)}


def report(command: str, parameters: dict, seed: int | None, tol: float, checks: dict,
           extra: dict | None = None, wall_time: float = 0.0) -> dict:
    out = {
        "schema": REPORT_SCHEMA,
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "tolerance": tol,
        "checks": checks,
        "passed": all(c.get("pass", True) for c in checks.values()),
        "wall_time": round(wall_time, 6),
    }
    if extra:
        out.update(extra)
    return out
