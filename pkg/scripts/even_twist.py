"""Compare the two choices of twist factor for even r.

With the twist factor restricted to the positive half-spin space and the sum
over even-parity labels, the candidate spinor fails the defining conditions for
r = 2 and r = 4: on that half space f_1 f_2 (r = 2) and the twist volume form
(r = 4) act as scalars.  With the full twist factor every cell passes.
"""

import argparse

import numpy as np

from spinorlab import is_partially_pure, standard_spinor
from spinorlab.clifford import build_rep, chirality, volume


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=2)
    args = ap.parse_args()
    print(f"{'m':>2} {'r':>2} {'twist':>13} {'pure':>5} {'dim V':>5}  worst residual")
    for r in (2, 4, 6):
        for m in range(1, args.max_m + 1):
            for sigma in ("full", "positive-half"):
                rep = is_partially_pure(standard_spinor(m, r, sigma))
                name, worst = max(rep.residuals.items(), key=lambda kv: kv[1])
                print(f"{m:2d} {r:2d} {sigma:>13} {str(rep.is_pure):>5} {rep.dim_V:5d}  {name}={worst:.2e}")
    for r in (2, 4):
        rep = build_rep(r)
        w, Q = np.linalg.eigh((rep.identity + chirality(rep)) / 2)
        Q = Q[:, w > 0.5]
        op = rep[1] @ rep[2] if r == 2 else volume(rep)
        block = Q.conj().T @ op @ Q
        scalar = block[0, 0]
        assert np.allclose(block, scalar * np.eye(len(block)))
        print(f"r={r}: on the positive half, {'f1 f2' if r == 2 else 'vol'} = ({scalar:.3f}) Id")


if __name__ == "__main__":
    main()
