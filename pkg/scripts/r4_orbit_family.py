"""A one-parameter family of r = 4 spinors sharing one oriented triple.

psi_s = cos(s) phi + i sin(s) vol_4 . phi satisfies every defining condition
and has the same (V, J, W) as phi, yet for 0 < s < pi/2 no element of Spin^c(4)
maps phi to psi_s: with the full twist factor Delta_4 the triple does not
determine the orbit.
"""

import argparse

import numpy as np

from spinorlab import InconsistencyError, is_partially_pure, same_triple, standard_spinor, transporter_spinc_r
from spinorlab.clifford import volume


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--steps", type=int, default=7)
    args = ap.parse_args()
    phi = standard_spinor(args.m, 4)
    sp = phi.space
    vphi = sp.twist_op(volume(sp.rep_r), phi.coeffs)
    print(f"{'s':>6} {'pure':>5} {'same triple':>11}  transporter")
    for s in np.linspace(0, np.pi / 2, args.steps):
        psi = phi.with_coeffs(np.cos(s) * phi.coeffs + 1j * np.sin(s) * vphi)
        rep = is_partially_pure(psi)
        try:
            transporter_spinc_r(phi, psi)
            status = "found"
        except InconsistencyError as exc:
            status = str(exc)
        print(f"{s:6.3f} {str(rep.is_pure):>5} {str(same_triple(phi, psi)):>11}  {status}")


if __name__ == "__main__":
    main()
