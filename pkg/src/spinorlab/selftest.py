"""Acceptance matrix over all cells (m, r) with m >= 1 and 2m + r <= max_n."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from spinorlab.clifford import build_rep
from spinorlab.config import GOLDEN_TOL, TOL, TRIPLE_TOL
from spinorlab.errors import SpinorLabError
from spinorlab.group import (
    act,
    branching_check,
    cover,
    group_dimension,
    moving_element,
    random_element,
    same_triple,
    stabilizer_algebra,
    transporter_spinc_r,
)
from spinorlab.pure import (
    extract_triple,
    is_partially_pure,
    kernel_check,
    parity_sign,
    so_r_structure,
    standard_spinor,
)
from spinorlab.twisted import check_cap, random_spinor, verify_vanishing_identities


@dataclass(frozen=True)
class SelftestConfig:
    max_n: int = 9
    seed: int = 0
    tol: float = TOL
    identity_spinors: int = 10
    identity_trials: int = 10
    group_trials: int = 10
    orbit_trials: int = 10
    branching_trials: int = 20


def cells(max_n: int) -> list[tuple[int, int]]:
    return [(m, r) for m in range(1, max_n // 2 + 1) for r in range(0, max_n - 2 * m + 1)]


def representation_residual(n: int) -> float:
    rep = build_rep(n)
    res = 0.0
    eye = rep.identity
    for i, j in itertools.product(range(n), repeat=2):
        a = rep.generators[i] @ rep.generators[j] + rep.generators[j] @ rep.generators[i]
        res = max(res, float(np.abs(a + 2 * (i == j) * eye).max()))
    for g in rep.generators:
        res = max(res, float(np.abs(g + g.conj().T).max()), float(np.abs(g.conj().T @ g - eye).max()))
    return res


def _entry(residual: float, tol: float) -> dict:
    return {"residual": float(residual), "pass": bool(residual <= tol)}


def cell_checks(m: int, r: int, cfg: SelftestConfig, max_dim: int | None = None) -> dict[str, dict]:
    """Every lemma check for one cell, keyed by name."""
    n = 2 * m + r
    rng = np.random.default_rng([cfg.seed, m, r])
    out: dict[str, dict] = {}
    out["representation"] = _entry(representation_residual(n), GOLDEN_TOL)
    phi = standard_spinor(m, r, max_dim=max_dim)
    rep = is_partially_pure(phi, cfg.tol)
    out["purity"] = {"residual": max(rep.residuals.values()), "dim_V": rep.dim_V, "pass": rep.is_pure}
    if r == 4:
        out["quadrivector"] = _entry(rep.residuals["quadrivector"], GOLDEN_TOL)

    worst = 0.0
    for _ in range(cfg.identity_spinors):
        psi = random_spinor(phi.space, rng)
        worst = max(worst, *verify_vanishing_identities(psi, cfg.identity_trials, int(rng.integers(2**31))).values())
    worst = max(worst, *verify_vanishing_identities(phi, cfg.identity_trials, int(rng.integers(2**31))).values())
    out["identities"] = _entry(worst, GOLDEN_TOL)

    if r >= 2:
        so = so_r_structure(phi)
        res = max(so["commute_residual"], so["bracket_residual"], so["norm_deviation"])
        out["so_r"] = {"residual": res, "span_rank": so["span_rank"],
                       "pass": bool(res <= cfg.tol and so["span_rank"] == so["expected_rank"])}
        out["kernel"] = _entry(kernel_check(phi), cfg.tol)

    st = stabilizer_algebra(phi)
    gdim = group_dimension(n, r)
    orbit = gdim - st.dimension
    moduli = n * (n - 1) // 2 - m * m - r * (r - 1) // 2
    out["stabilizer"] = {"dimension": st.dimension, "expected": st.expected,
                         "gap_orders": min(st.gap_orders, 300.0),
                         "pass": bool(st.dimension == st.expected and st.gap_orders >= 6)}
    out["dimensions"] = {"orbit": orbit, "moduli": moduli,
                         "pass": bool(orbit == gdim - st.expected and moduli == orbit - (r * (r - 1) // 2 + 1))}

    base = extract_triple(phi)
    worst = 0.0
    ok = True
    for _ in range(cfg.group_trials):
        g = random_element(n, r, rng)
        q = act(g, phi)
        rq = is_partially_pure(q, TRIPLE_TOL)
        Rn = cover(g)[0]
        dist = float(np.linalg.norm(Rn @ base.projector_V @ Rn.T - extract_triple(q).projector_V))
        ok &= rq.is_pure
        worst = max(worst, dist, max(rq.residuals.values()))
    out["equivariance"] = {"residual": worst, "pass": bool(ok and worst <= TRIPLE_TOL)}

    worst = 0.0
    ok = True
    for _ in range(cfg.orbit_trials):
        h = random_element(n, r, rng, twist_only=True)
        q = act(h, phi)
        ok &= same_triple(phi, q)
        t = transporter_spinc_r(phi, q)
        worst = max(worst, float(np.linalg.norm(act(t, phi).coeffs - q.coeffs)))
        if r:
            ok &= not same_triple(phi, act(moving_element(n, r, rng), phi))
    out["orbit"] = {"residual": worst, "pass": bool(ok and worst <= TRIPLE_TOL)}

    if r % 2 == 0:
        pos = parity_sign(phi)
        neg_phi = standard_spinor(m, r, negative=True, max_dim=max_dim)
        neg = parity_sign(neg_phi)
        out["parity"] = {"positive": pos, "triple_sign": base.sign, "negative": neg,
                         "pass": bool(pos == 1 and base.sign == 1 and neg == -1 and extract_triple(neg_phi).sign == -1)}
    br = branching_check(m, r, cfg.branching_trials, cfg.seed)
    out["branching"] = {"residual": br["residual"], "intertwiner": br["twist_vector_intertwiner"],
                        "pass": bool(br["residual"] <= cfg.tol)}
    return out


def run_selftest(cfg: SelftestConfig, max_dim: int | None = None) -> dict:
    """Returns {"cells": {"m=..,r=..": checks}, "failures": [...]}; raises DimensionCapError up front."""
    todo = cells(cfg.max_n)
    for m, r in todo:
        check_cap(2 * m + r, r, max_dim)
    results: dict[str, dict] = {}
    failures: list[str] = []
    for m, r in todo:
        key = f"m={m},r={r}"
        try:
            checks = cell_checks(m, r, cfg, max_dim)
        except SpinorLabError as exc:
            checks = {"error": {"message": str(exc), "pass": False}}
        results[key] = checks
        failures += [f"{name} ({key})" for name, c in checks.items() if not c["pass"]]
    return {"cells": results, "failures": failures}
