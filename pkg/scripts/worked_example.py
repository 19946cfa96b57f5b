"""Walk through the standard spinor for n = 7, r = 3 and print every invariant."""

import argparse

import numpy as np

from spinorlab import (
    extract_triple,
    eta_form,
    is_partially_pure,
    so_r_structure,
    stabilizer_algebra,
    standard_spinor,
)
from spinorlab.group import group_dimension


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--r", type=int, default=3)
    args = ap.parse_args()
    m, r = args.m, args.r
    n = 2 * m + r
    np.set_printoptions(precision=3, suppress=True, linewidth=120)

    phi = standard_spinor(m, r)
    u = phi.u_coefficients()
    print(f"n={n} r={r}: {u.size} coefficients in the u basis, nonzero:")
    for idx in np.flatnonzero(np.abs(u) > 1e-12):
        print(f"  index {idx:4d} ({idx:0{r // 2 + n // 2}b})  {u[idx]:.6f}")

    rep = is_partially_pure(phi)
    print("partially pure:", rep.is_pure, "dim V =", rep.dim_V)
    for name, v in sorted(rep.residuals.items()):
        print(f"  {name:20s} {v:.2e}")

    for k in range(1, r + 1):
        for l in range(k + 1, r + 1):
            eta = eta_form(phi, k, l).matrix
            nz = [(a + 1, b + 1, eta[a, b]) for a, b in zip(*np.nonzero(np.abs(np.triu(eta)) > 1e-12))]
            print(f"eta_{k}{l} nonzero upper entries: {nz}")
    if r >= 2:
        print("so(r) structure:", so_r_structure(phi))

    tri = extract_triple(phi)
    print("J =\n", tri.J)
    print("coframe (rows) =\n", tri.coframe_W.T)
    print("orientation sign:", tri.sign)

    st = stabilizer_algebra(phi)
    gd = group_dimension(n, r)
    print(f"stabilizer dimension {st.dimension} (expected {st.expected}), gap {st.gap_orders:.1f} orders")
    print(f"orbit dimension {gd - st.dimension}, moduli dimension {tri.moduli_dimension()}")


if __name__ == "__main__":
    main()
