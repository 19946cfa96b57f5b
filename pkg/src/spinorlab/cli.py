"""Command-line front end.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad input or
configuration.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from spinorlab import io
from spinorlab.config import DEFAULT_MAX_DIM, ENV_MAX_DIM, TOL, TRIPLE_TOL, max_dim_default
from spinorlab.errors import InconsistencyError, PreconditionError, SpinorLabError
from spinorlab.group import act, group_dimension, same_triple, stabilizer_algebra, transporter_spinc_r
from spinorlab.pure import (
    extract_triple,
    is_partially_pure,
    kernel_check,
    parity_sign,
    so_r_structure,
    standard_spinor,
)
from spinorlab.selftest import SelftestConfig, run_selftest
from spinorlab.twisted import verify_vanishing_identities

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _emit(args, rep: dict, t0: float) -> int:
    rep["wall_time"] = round(time.perf_counter() - t0, 6)
    io.write_json(getattr(args, "output", None), rep)
    return EXIT_OK if rep["passed"] else EXIT_FAIL


def cmd_construct(args) -> int:
    phi = standard_spinor(args.m, args.r, args.sigma, negative=args.negative, max_dim=args.max_dim)
    io.save_spinor(args.output, phi)
    if args.output not in (None, "-"):
        print(f"wrote {args.output}: n={phi.n} r={phi.r} coefficients={phi.space.dim}", file=sys.stderr)
    return EXIT_OK


def _guard(fn):
    try:
        return fn()
    except (InconsistencyError, PreconditionError, ArithmeticError) as exc:
        return {"pass": False, "error": str(exc)}


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    phi = io.load_spinor(args.input, args.max_dim)
    tol = args.tol
    checks: dict[str, dict] = {}
    pr = is_partially_pure(phi, tol)
    checks["purity"] = {"pass": pr.is_pure, **pr.to_dict()}
    for name, value in pr.residuals.items():
        checks[f"purity.{name}"] = io.check(value, tol)
    checks["dim_V"] = {"pass": pr.dim_V == pr.expected_dim_V, "value": pr.dim_V, "expected": pr.expected_dim_V}
    ids = verify_vanishing_identities(phi, args.trials, args.seed)
    # the identities scale with |phi|^2
    scale = max(1.0, phi.norm() ** 2)
    for name, value in ids.items():
        checks[f"identity.{name}"] = io.check(value / scale, tol)
    if phi.r >= 2:
        def so():
            s = so_r_structure(phi)
            res = max(s["commute_residual"], s["bracket_residual"], s["norm_deviation"])
            return {**io.check(res, tol), "span_rank": s["span_rank"], "expected_rank": s["expected_rank"],
                    "pass": bool(res <= tol and s["span_rank"] == s["expected_rank"])}
        checks["so_r"] = _guard(so)
        checks["kernel"] = _guard(lambda: io.check(kernel_check(phi), tol))
    if phi.r % 2 == 0:
        checks["parity"] = _guard(lambda: {"sign": parity_sign(phi), "pass": True})
    params = {"input": str(args.input), "n": phi.n, "r": phi.r, "sigma_parity": phi.space.sigma, "trials": args.trials}
    return _emit(args, io.report("verify", params, args.seed, tol, checks), t0)


def _purity_failure(args, command: str, phi, t0: float) -> int:
    pr = is_partially_pure(phi, TRIPLE_TOL)
    checks = {"purity": {"pass": False, **pr.to_dict()}}
    return _emit(args, io.report(command, {"input": str(args.input)}, None, TRIPLE_TOL, checks), t0)


def cmd_extract(args) -> int:
    t0 = time.perf_counter()
    phi = io.load_spinor(args.input, args.max_dim)
    if not is_partially_pure(phi, TRIPLE_TOL).is_pure:
        return _purity_failure(args, "extract", phi, t0)
    tri = extract_triple(phi)
    checks = {"purity": {"pass": True}}
    extra = {"triple": tri.to_dict()}
    return _emit(args, io.report("extract", {"input": str(args.input)}, None, TRIPLE_TOL, checks, extra), t0)


def cmd_stabilizer(args) -> int:
    t0 = time.perf_counter()
    phi = io.load_spinor(args.input, args.max_dim)
    st = stabilizer_algebra(phi)
    pure = is_partially_pure(phi, TRIPLE_TOL).is_pure
    gdim = group_dimension(phi.n, phi.r)
    gap = st.gap_orders if np.isfinite(st.gap_orders) else None
    checks = {"dimension": {"value": st.dimension, "expected": st.expected if pure else None,
                            "pass": (st.dimension == st.expected) if pure else True,
                            "skipped": not pure}}
    extra = {
        "stabilizer": {
            "dimension": st.dimension,
            "gap_orders": gap,
            "group_dimension": gdim,
            "orbit_dimension": gdim - st.dimension,
            "basis": [{"A": b.A.tolist(), "B": b.B.tolist(), "t": b.t} for b in st.basis],
        }
    }
    return _emit(args, io.report("stabilizer", {"input": str(args.input)}, None, TRIPLE_TOL, checks, extra), t0)


def cmd_orbit(args) -> int:
    t0 = time.perf_counter()
    phi = io.load_spinor(args.a, args.max_dim)
    psi = io.load_spinor(args.b, args.max_dim)
    params = {"a": str(args.a), "b": str(args.b)}
    for label, s in (("a", phi), ("b", psi)):
        if not is_partially_pure(s, TRIPLE_TOL).is_pure:
            rep = io.report("orbit", params, None, TRIPLE_TOL, {f"purity_{label}": {"pass": False}})
            return _emit(args, rep, t0)
    verdict = same_triple(phi, psi)
    checks = {"same_triple": {"value": verdict, "pass": verdict}}
    extra = {"verdict": verdict, "transporter": None}
    if verdict:
        g = transporter_spinc_r(phi, psi)
        res = float(np.linalg.norm(act(g, phi).coeffs - psi.coeffs))
        checks["round_trip"] = io.check(res, TRIPLE_TOL)
        extra["transporter"] = g.to_dict()
    return _emit(args, io.report("orbit", params, None, TRIPLE_TOL, checks, extra), t0)


def cmd_selftest(args) -> int:
    t0 = time.perf_counter()
    cfg = SelftestConfig(max_n=args.max_n, seed=args.seed, tol=args.tol)
    out = run_selftest(cfg, args.max_dim)
    checks = {f"{cell}/{name}": c for cell, cc in out["cells"].items() for name, c in cc.items()}
    rep = io.report("selftest", {"max_n": args.max_n}, args.seed, args.tol, checks,
                    {"failures": out["failures"]})
    for f in out["failures"]:
        print(f"FAIL {f}", file=sys.stderr)
    return _emit(args, rep, t0)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spinorlab", description="Twisted partially pure spinors: construction and verification.")
    p.add_argument("--max-dim", type=int, default=None,
                   help=f"cap on spinor coefficients (default ${ENV_MAX_DIM} or {DEFAULT_MAX_DIM})")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="write the standard spinor")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--sigma", choices=["full", "positive-half"], default=None)
    c.add_argument("--negative", action="store_true", help="reverse the orientation of V")
    c.add_argument("-o", "--output", default=None)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="run all checks on a spinor file")
    v.add_argument("input")
    v.add_argument("--tol", type=float, default=TOL)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("-o", "--output", default=None)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("extract", help="oriented triple of a partially pure spinor")
    e.add_argument("input")
    e.add_argument("-o", "--output", default=None)
    e.set_defaults(func=cmd_extract)

    s = sub.add_parser("stabilizer", help="stabilizer Lie algebra")
    s.add_argument("input")
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(func=cmd_stabilizer)

    o = sub.add_parser("orbit", help="same-orbit test and transporter")
    o.add_argument("a")
    o.add_argument("b")
    o.add_argument("-o", "--output", default=None)
    o.set_defaults(func=cmd_orbit)

    t = sub.add_parser("selftest", help="acceptance matrix over all small cells")
    t.add_argument("--max-n", type=int, default=9)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--tol", type=float, default=TOL)
    t.add_argument("-o", "--output", default=None)
    t.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_INPUT
    if args.max_dim is None:
        try:
            args.max_dim = max_dim_default()
        except ValueError:
            print(f"spinorlab: error: ${ENV_MAX_DIM} must be an integer", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except InconsistencyError as exc:
        print(f"spinorlab: check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except SpinorLabError as exc:
        print(f"spinorlab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError, TypeError, KeyError) as exc:
        print(f"spinorlab: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # never show a traceback
        print(f"spinorlab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
