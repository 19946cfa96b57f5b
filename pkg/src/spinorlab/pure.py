"""Partially pure spinors: construction, recognition and the oriented triple.

A unit spinor phi in Sigma_r (x) Delta_n (n = 2m + r) is partially pure when
the real subspace V = {X : X.phi = i Y.phi for some Y} has dimension 2m,
every (eta_kl + f_k f_l) annihilates phi, <f_k f_l phi, phi> = 0, and for
r = 4 also <f_1 f_2 f_3 f_4 phi, phi> = 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from spinorlab.clifford import basis_spinor, structure_gamma, volume
from spinorlab.config import RANK_RTOL, TOL, TRIPLE_TOL
from spinorlab.errors import InconsistencyError, PreconditionError, UnsupportedError
from spinorlab.twisted import (
    SIGMA_POSITIVE,
    TwistedSpace,
    TwistedSpinor,
    TwoForm,
    apply_form,
    eta_forms,
    herm,
    twist_pair_matrix,
    twisted_space,
    vector_images,
)


def standard_spinor(m: int, r: int, sigma: str | None = None, negative: bool = False,
                    max_dim: int | None = None) -> TwistedSpinor:
    """The standard partially pure spinor

        phi_0 = 2^{-h/2} sum_I v_I (x) gamma_r(u_I) (x) u_{1,...,1},   h = [r/2].

    With the full twist factor the sum runs over every I.  In positive-half
    mode only I with an even number of -1 entries contribute, which stays in
    Sigma_r but is not partially pure for r = 2, 4 (see scripts/even_twist.py).
    ``negative=True`` flips the sign label of the (e_1, e_2) slot, reversing
    the orientation of V.
    """
    if m < 1:
        raise PreconditionError(f"m must be positive, got {m}")
    if r < 0:
        raise PreconditionError(f"r must be non-negative, got {r}")
    n = 2 * m + r
    space = twisted_space(n, r, sigma, max_dim=max_dim)
    h = r // 2
    gamma = structure_gamma(r)
    tail = basis_spinor([1] * (m - 1) + [-1 if negative else 1])
    total = space.zeros()
    for I in itertools.product((1, -1), repeat=h):
        if space.sigma == SIGMA_POSITIVE and I.count(-1) % 2:
            continue
        uI = basis_spinor(I)
        total += np.kron(uI, np.kron(gamma(uI), tail))
    return TwistedSpinor(space, total / np.linalg.norm(total))


def _null_space(M: np.ndarray, rtol: float = RANK_RTOL) -> tuple[np.ndarray, float]:
    """Orthonormal kernel basis (columns) and the smallest retained singular value ratio."""
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        return np.eye(M.shape[1]), 0.0
    rank = int(np.sum(s >= rtol * smax))
    return vh[rank:].conj().T, (s[rank - 1] / smax if rank else 0.0)


def isotropic_subspace(phi: TwistedSpinor, rtol: float = RANK_RTOL) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal basis (columns) of V and the complex structure J (zero off V).

    X + iY lies in the complex annihilator of phi iff X.phi = -i(-Y).phi, so V
    is the real part of the annihilator and J X = Y where X.phi = i Y.phi,
    i.e. (J X).phi = -i X.phi.
    """
    if abs(phi.norm() - 1.0) > 1e-8:
        raise PreconditionError(f"isotropic subspace needs a unit spinor, |phi| = {phi.norm():.6g}")
    n = phi.n
    Mc = vector_images(phi.space, phi.coeffs).T  # column j = e_j . phi
    K = np.block([[Mc.real, Mc.imag], [Mc.imag, -Mc.real]])
    null, _ = _null_space(K, rtol)
    if null.shape[1] == 0:
        return np.zeros((n, 0)), np.zeros((n, n))
    A, B = null[:n], null[n:]
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    d = int(np.sum(s >= rtol * s[0]))
    basis = U[:, :d]
    J = B @ np.linalg.pinv(A, rcond=rtol)
    return basis, J


def adapted_frame(basis: np.ndarray, J: np.ndarray) -> np.ndarray:
    """Columns (v_1, J v_1, ..., v_m, J v_m) built greedily from ``basis``."""
    n, d = basis.shape
    out: list[np.ndarray] = []
    for j in range(d):
        v = basis[:, j].copy()
        for w in out:
            v -= (w @ v) * w
        nv = np.linalg.norm(v)
        if nv < 1e-6:
            continue
        v /= nv
        Jv = J @ v
        Jv /= np.linalg.norm(Jv)
        out.extend([v, Jv])
        if len(out) >= d:
            break
    return np.stack(out, axis=1) if out else np.zeros((n, 0))


@dataclass
class PurityReport:
    is_pure: bool
    dim_V: int
    expected_dim_V: int
    residuals: dict[str, float]
    tol: float

    def to_dict(self) -> dict:
        return {
            "is_pure": self.is_pure,
            "dim_V": self.dim_V,
            "expected_dim_V": self.expected_dim_V,
            "residuals": dict(sorted(self.residuals.items())),
            "tol": self.tol,
        }


def _twist_frame_product(space: TwistedSpace, idx, frame) -> np.ndarray:
    gens = np.asarray(space.rep_r.generators)
    out = space.rep_r.identity
    for j in idx:
        f = gens[j - 1] if frame is None else np.tensordot(np.asarray(frame)[:, j - 1], gens, axes=1)
        out = out @ f
    return out


def is_partially_pure(phi: TwistedSpinor, tol: float = TOL, frame=None) -> PurityReport:
    """Check every defining condition; ``frame`` optionally rotates the twist basis."""
    sp = phi.space
    expected = phi.n - phi.r
    res: dict[str, float] = {}
    nrm = phi.norm()
    res["norm_deviation"] = abs(nrm - 1.0)
    res["sigma"] = float(np.linalg.norm(phi.coeffs - sp.project(phi.coeffs)))
    if nrm == 0.0:
        return PurityReport(False, 0, expected, res, tol)
    unit = phi.scaled(1.0 / nrm)
    basis, J = isotropic_subspace(unit)
    dim_V = basis.shape[1]
    if dim_V:
        imgs = vector_images(sp, unit.coeffs).T
        res["subspace"] = float(np.max(np.linalg.norm(imgs @ (J @ basis) + 1j * (imgs @ basis), axis=0)))
    else:
        res["subspace"] = 0.0
    ann = orth = 0.0
    if phi.r >= 2:
        for (k, l), eta in eta_forms(phi, frame).items():
            fkl = sp.twist_op(twist_pair_matrix(sp, k, l, frame), phi.coeffs)
            ann = max(ann, float(np.linalg.norm(apply_form(eta, phi).coeffs + fkl)))
            orth = max(orth, abs(herm(fkl, phi.coeffs)))
    res["eta_annihilation"] = ann
    res["twist_orthogonality"] = orth
    if phi.r == 4:
        h = _twist_frame_product(sp, (1, 2, 3, 4), frame)
        res["quadrivector"] = abs(herm(sp.twist_op(h, phi.coeffs), phi.coeffs))
    ok = dim_V == expected and all(v <= tol for v in res.values())
    return PurityReport(ok, dim_V, expected, res, tol)


def _require_twist(phi: TwistedSpinor) -> None:
    if phi.r < 2:
        raise UnsupportedError(f"needs r >= 2, got r={phi.r}")


def _hat(etas: dict, i: int, j: int) -> np.ndarray:
    return etas[(i, j)].endomorphism if i < j else -etas[(j, i)].endomorphism


def so_r_structure(phi: TwistedSpinor) -> dict:
    """Commutation residuals, span rank and normalization of the eta endomorphisms."""
    _require_twist(phi)
    r = phi.r
    etas = eta_forms(phi)
    commute = bracket = 0.0
    idx = range(1, r + 1)
    for (k, l), (i, j) in itertools.combinations(etas, 2):
        if not {k, l} & {i, j}:
            a, b = etas[(k, l)].endomorphism, etas[(i, j)].endomorphism
            commute = max(commute, float(np.abs(a @ b - b @ a).max()))
    for i, j, k in itertools.permutations(idx, 3):
        a, b = _hat(etas, i, j), _hat(etas, j, k)
        bracket = max(bracket, float(np.abs(a @ b - b @ a + _hat(etas, i, k)).max()))
    stack = np.stack([e.matrix.ravel() for e in etas.values()])
    s = np.linalg.svd(stack, compute_uv=False)
    rank = int(np.sum(s >= RANK_RTOL * s[0])) if s[0] > 0 else 0
    normdev = max(abs(e.norm_squared() - 1.0) for e in etas.values())
    return {
        "commute_residual": commute,
        "bracket_residual": bracket,
        "span_rank": rank,
        "expected_rank": r * (r - 1) // 2,
        "norm_deviation": normdev,
    }


def kernel_check(phi: TwistedSpinor) -> float:
    """max |eta_hat_kl(v)| over an orthonormal basis of V."""
    _require_twist(phi)
    basis, _ = isotropic_subspace(phi)
    if basis.shape[1] == 0:
        return 0.0
    return max(float(np.abs(e.endomorphism @ basis).max()) for e in eta_forms(phi).values())


def _frame_det(vframe: np.ndarray, W: np.ndarray) -> float:
    return float(np.linalg.det(np.hstack([vframe, W])))


def recover_coframe(phi: TwistedSpinor, basis: np.ndarray | None = None, J: np.ndarray | None = None,
                    tol: float = TRIPLE_TOL) -> np.ndarray:
    """Orthonormal columns (w_1, ..., w_r) of the complement with eta_kl = w_k ^ w_l.

    For odd r the forms do not see a global sign flip of the coframe, so the
    sign is fixed by requiring det(v_1, J v_1, ..., w_1, ..., w_r) = +1.
    """
    n, r = phi.n, phi.r
    if basis is None or J is None:
        basis, J = isotropic_subspace(phi)
    if r == 0:
        return np.zeros((n, 0))
    P_V = basis @ basis.T
    if r == 1:
        w = _null_space(P_V)[0]
        if w.shape[1] != 1:
            raise InconsistencyError(f"complement of V has dimension {w.shape[1]}, expected 1")
        W = w.real
    else:
        etas = eta_forms(phi)
        if r == 2:
            hat = etas[(1, 2)].endomorphism
            U, s, _ = np.linalg.svd(hat)
            rng_basis = U[:, s >= RANK_RTOL * max(s[0], 1e-300)]
            proj = rng_basis @ rng_basis.T
            w1 = None
            for a in range(n):
                cand = proj[:, a]
                if np.linalg.norm(cand) > 1e-6:
                    w1 = cand / np.linalg.norm(cand)
                    break
            if w1 is None:
                raise InconsistencyError("eta_12 vanishes; spinor is not partially pure")
        else:
            rows = [_hat(etas, i, j) for i, j in itertools.combinations(range(2, r + 1), 2)]
            null, _ = _null_space(np.vstack(rows + [P_V]))
            if null.shape[1] != 1:
                raise InconsistencyError(f"common kernel has dimension {null.shape[1]}, expected 1")
            w1 = null[:, 0].real
            w1 = w1 / np.linalg.norm(w1)
            if w1[np.argmax(np.abs(w1))] < 0:
                w1 = -w1
        cols = [w1] + [_hat(etas, 1, l) @ w1 for l in range(2, r + 1)]
        W = np.stack(cols, axis=1)
        err = max(float(np.abs(etas[(k, l)].matrix - TwoForm.wedge(W[:, k - 1], W[:, l - 1]).matrix).max())
                  for k, l in etas)
        if err > tol:
            raise InconsistencyError(f"coframe does not reproduce the eta forms (residual {err:.2e})")
    if r % 2 and _frame_det(adapted_frame(basis, J), W) < 0:
        W = -W
    return W


def parity_sign(phi: TwistedSpinor, tol: float = TRIPLE_TOL) -> int:
    """Eigenvalue of F = (-i)^{n/2} i^{r/2} vol_n vol_r on phi."""
    if phi.r % 2:
        raise UnsupportedError(f"parity needs even r, got r={phi.r}")
    sp = phi.space
    vol_r = volume(sp.rep_r)
    coef = (-1j) ** (phi.n // 2) * (1j) ** (phi.r // 2)
    Fphi = coef * sp.pair_op(vol_r, volume(sp.rep_n), phi.coeffs)
    overlap = herm(Fphi, phi.coeffs).real
    s = 1 if overlap >= 0 else -1
    err = float(np.linalg.norm(Fphi - s * phi.coeffs))
    if err > tol * max(1.0, phi.norm()):
        raise InconsistencyError(f"spinor is not an eigenvector of F (residual {err:.2e})")
    return s


@dataclass
class OrientedTriple:
    n: int
    projector_V: np.ndarray
    J: np.ndarray
    coframe_W: np.ndarray  # columns w_1..w_r
    sign: int
    frame_V: np.ndarray = field(repr=False)

    @property
    def r(self) -> int:
        return self.coframe_W.shape[1]

    @property
    def dim_V(self) -> int:
        return self.frame_V.shape[1]

    def adapted_frame(self) -> np.ndarray:
        return self.frame_V

    def full_frame(self) -> np.ndarray:
        """(v_1, J v_1, ..., v_m, J v_m, w_1, ..., w_r)."""
        return np.hstack([self.frame_V, self.coframe_W])

    def moduli_dimension(self) -> int:
        m, r = self.dim_V // 2, self.r
        return self.n * (self.n - 1) // 2 - m * m - r * (r - 1) // 2

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "dim_V": self.dim_V,
            "projector_V": self.projector_V.tolist(),
            "J": self.J.tolist(),
            "coframe_W": self.coframe_W.T.tolist(),
            "sign": self.sign,
            "moduli_dimension": self.moduli_dimension(),
        }


def extract_triple(phi: TwistedSpinor, tol: float = TRIPLE_TOL) -> OrientedTriple:
    report = is_partially_pure(phi, tol)
    if not report.is_pure:
        raise PreconditionError(f"spinor is not partially pure: {report.to_dict()}")
    basis, J = isotropic_subspace(phi)
    J = (J - J.T) / 2
    frame = adapted_frame(basis, J)
    W = recover_coframe(phi, basis, J, tol)
    det = _frame_det(frame, W)
    sign = 1 if det > 0 else -1
    if phi.r % 2 == 0:
        par = parity_sign(phi, tol)
        if par != sign:
            raise InconsistencyError(f"frame orientation {sign} disagrees with parity {par}")
    return OrientedTriple(n=phi.n, projector_V=basis @ basis.T, J=J, coframe_W=W, sign=sign, frame_V=frame)


def projector(basis: np.ndarray) -> np.ndarray:
    return basis @ basis.T


def orthonormalize(M: np.ndarray) -> np.ndarray:
    """Closest orthogonal matrix in Frobenius norm."""
    return scipy.linalg.polar(M)[0]
