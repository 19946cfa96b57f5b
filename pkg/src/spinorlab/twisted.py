"""Twisted spinors in Sigma_r (x) Delta_n and their eta two-forms.

Coefficients are stored flat with the twist factor most significant, so a
spinor reshapes to an (N_r, N_n) array ``Phi``.  Operators act as

    kappa_r(h) (x) kappa_n(g):   Phi -> kappa_r(h) @ Phi @ kappa_n(g).T

which avoids forming the Kronecker product.  The Hermitian product is linear
in the first slot: <x, y> = sum x * conj(y).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from spinorlab.clifford import (
    CliffordRep,
    build_rep,
    chirality,
    u_basis_matrix,
)
from spinorlab.config import max_dim_default
from spinorlab.errors import DimensionCapError, PreconditionError, UnsupportedError

SIGMA_FULL = "full"
SIGMA_POSITIVE = "positive-half"


def herm(x: np.ndarray, y: np.ndarray) -> complex:
    """<x, y> = sum x conj(y)."""
    return complex(np.vdot(y, x))


def coefficient_count(n: int, r: int) -> int:
    return 2 ** (r // 2 + n // 2)


def check_cap(n: int, r: int, max_dim: int | None = None) -> None:
    cap = max_dim_default() if max_dim is None else max_dim
    size = coefficient_count(n, r)
    if size > cap:
        raise DimensionCapError(f"(n={n}, r={r}) needs {size} coefficients, cap is {cap}")


@dataclass(frozen=True, eq=False)
class TwistedSpace:
    n: int
    r: int
    sigma: str
    rep_n: CliffordRep
    rep_r: CliffordRep
    twist_projector: np.ndarray  # projector of Delta_r onto Sigma_r

    @property
    def dim_n(self) -> int:
        return self.rep_n.dim

    @property
    def dim_r(self) -> int:
        return self.rep_r.dim

    @property
    def dim(self) -> int:
        return self.dim_r * self.dim_n

    @property
    def m(self) -> int:
        return (self.n - self.r) // 2

    @property
    def sigma_projector(self) -> np.ndarray:
        """Dense projector onto Sigma_r (x) Delta_n (only sensible at small size)."""
        return np.kron(self.twist_projector, self.rep_n.identity)

    def project(self, coeffs: np.ndarray) -> np.ndarray:
        return (self.twist_projector @ coeffs.reshape(self.dim_r, self.dim_n)).ravel()

    def vector_op(self, g: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
        """(Id_r (x) g) coeffs."""
        return (coeffs.reshape(self.dim_r, self.dim_n) @ g.T).ravel()

    def twist_op(self, h: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
        """(h (x) Id_n) coeffs."""
        return (h @ coeffs.reshape(self.dim_r, self.dim_n)).ravel()

    def pair_op(self, h: np.ndarray, g: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
        return (h @ coeffs.reshape(self.dim_r, self.dim_n) @ g.T).ravel()

    def zeros(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=complex)

    def key(self) -> tuple[int, int, str]:
        return (self.n, self.r, self.sigma)


def twisted_space(n: int, r: int, sigma: str | None = None, max_dim: int | None = None) -> TwistedSpace:
    """Sigma_r (x) Delta_n.  ``sigma`` defaults to the full twist factor Delta_r.

    ``"positive-half"`` (r even, r >= 2) restricts the twist factor to the +1
    eigenspace of the r-dimensional chirality.
    """
    if r < 0 or n < 0:
        raise PreconditionError(f"n and r must be non-negative, got n={n}, r={r}")
    if not r < n:
        raise PreconditionError(f"twist rank r={r} must be smaller than n={n}")
    sigma = SIGMA_FULL if sigma is None else sigma
    if sigma not in (SIGMA_FULL, SIGMA_POSITIVE):
        raise PreconditionError(f"unknown twist factor {sigma!r}")
    if sigma == SIGMA_POSITIVE and (r % 2 or r < 2):
        raise PreconditionError("positive-half twist needs even r >= 2")
    check_cap(n, r, max_dim)
    rep_n, rep_r = build_rep(n), build_rep(r)
    if sigma == SIGMA_POSITIVE:
        proj = (rep_r.identity + chirality(rep_r)) / 2
    else:
        proj = rep_r.identity
    proj.setflags(write=False)
    return TwistedSpace(n=n, r=r, sigma=sigma, rep_n=rep_n, rep_r=rep_r, twist_projector=proj)


@dataclass(frozen=True, eq=False)
class TwistedSpinor:
    space: TwistedSpace
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.shape != (self.space.dim,):
            raise PreconditionError(f"expected {self.space.dim} coefficients, got {c.size}")
        if not np.all(np.isfinite(c)):
            raise PreconditionError("coefficients must be finite")
        if self.space.sigma != SIGMA_FULL:
            off = np.linalg.norm(c - self.space.project(c))
            if off > 1e-10 * max(1.0, np.linalg.norm(c)):
                raise PreconditionError(f"spinor leaves Sigma_r (x) Delta_n by {off:.2e}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def r(self) -> int:
        return self.space.r

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def with_coeffs(self, coeffs: np.ndarray) -> "TwistedSpinor":
        return TwistedSpinor(self.space, coeffs)

    def scaled(self, c: complex) -> "TwistedSpinor":
        return self.with_coeffs(c * self.coeffs)

    def u_coefficients(self) -> np.ndarray:
        """Coefficients in the unitary basis u_I (x) u_J, twist slots first."""
        U = np.kron(u_basis_matrix(self.r // 2), u_basis_matrix(self.n // 2))
        return U.conj().T @ self.coeffs

    @classmethod
    def from_u_coefficients(cls, space: TwistedSpace, ucoeffs) -> "TwistedSpinor":
        U = np.kron(u_basis_matrix(space.r // 2), u_basis_matrix(space.n // 2))
        return cls(space, U @ np.asarray(ucoeffs, dtype=complex))

    def matrix(self) -> np.ndarray:
        return self.coeffs.reshape(self.space.dim_r, self.space.dim_n)


@dataclass(frozen=True, eq=False)
class TwoForm:
    """Real 2-form with matrix[a, b] = eta(e_a, e_b)."""

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        a = np.array(self.matrix, dtype=float)
        if a.shape != (self.n, self.n):
            raise PreconditionError(f"two-form must be {self.n}x{self.n}, got {a.shape}")
        if not np.allclose(a, -a.T, atol=1e-12, rtol=0):
            raise PreconditionError("two-form matrix is not antisymmetric")
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @property
    def endomorphism(self) -> np.ndarray:
        """Matrix of X -> sum_b eta(X, e_b) e_b; column a is row a of the form."""
        return self.matrix.T

    @classmethod
    def wedge(cls, u, v) -> "TwoForm":
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return cls(u.size, np.outer(u, v) - np.outer(v, u))

    def norm_squared(self) -> float:
        """sum_{i<j} eta(e_i, e_j)^2."""
        return float(np.sum(np.triu(self.matrix, 1) ** 2))


def _check_vector(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise PreconditionError(f"expected a vector of length {n}, got shape {x.shape}")
    return x


def act_vector(X, phi: TwistedSpinor) -> TwistedSpinor:
    X = _check_vector(X, phi.n)
    g = np.tensordot(X, np.asarray(phi.space.rep_n.generators), axes=1)
    return phi.with_coeffs(phi.space.vector_op(g, phi.coeffs))


def _twist_index(j: int, r: int) -> None:
    if not 1 <= j <= r:
        raise PreconditionError(f"twist index {j} outside 1..{r}")


def twist_pair_matrix(space: TwistedSpace, k: int, l: int, frame: np.ndarray | None = None) -> np.ndarray:
    """kappa_r(f_k f_l) on Delta_r, optionally in the rotated basis f'_k = sum_j frame[j, k] f_j."""
    _twist_index(k, space.r)
    _twist_index(l, space.r)
    if k == l:
        raise PreconditionError("twist pair needs k != l")
    gens = space.rep_r.generators
    if frame is None:
        return gens[k - 1] @ gens[l - 1]
    frame = np.asarray(frame, dtype=float)
    fk = np.tensordot(frame[:, k - 1], np.asarray(gens), axes=1)
    fl = np.tensordot(frame[:, l - 1], np.asarray(gens), axes=1)
    return fk @ fl


def act_twist_pair(k: int, l: int, phi: TwistedSpinor, frame=None) -> TwistedSpinor:
    h = twist_pair_matrix(phi.space, k, l, frame)
    return phi.with_coeffs(phi.space.twist_op(h, phi.coeffs))


def vector_images(space: TwistedSpace, coeffs: np.ndarray) -> np.ndarray:
    """Rows e_j . coeffs for j = 1..n, shape (n, dim)."""
    P = coeffs.reshape(space.dim_r, space.dim_n)
    return np.stack([(P @ g.T).ravel() for g in space.rep_n.generators])


def _eta_matrix(space: TwistedSpace, phi: np.ndarray, psi: np.ndarray) -> np.ndarray:
    """Antisymmetric real matrix with [a, b] = Re<e_a e_b psi, phi> for a < b."""
    ephi = vector_images(space, phi)
    epsi = vector_images(space, psi)
    # <e_a e_b psi, phi> = -<e_b psi, e_a phi> = -vdot(e_a phi, e_b psi)
    G = -(ephi.conj() @ epsi.T).real
    upper = np.triu(G, 1)
    return upper - upper.T


def eta_form(phi: TwistedSpinor, k: int, l: int, frame=None) -> TwoForm:
    """eta_kl(X, Y) = Re<X ^ Y . f_k f_l . phi, phi>."""
    if phi.r < 2:
        raise UnsupportedError(f"eta forms need r >= 2, got r={phi.r}")
    h = twist_pair_matrix(phi.space, k, l, frame)
    psi = phi.space.twist_op(h, phi.coeffs)
    return TwoForm(phi.n, _eta_matrix(phi.space, phi.coeffs, psi))


def eta_forms(phi: TwistedSpinor, frame=None) -> dict[tuple[int, int], TwoForm]:
    """All eta_kl with k < l (1-based keys)."""
    return {(k, l): eta_form(phi, k, l, frame) for k, l in itertools.combinations(range(1, phi.r + 1), 2)}


def apply_form(form: TwoForm, phi: TwistedSpinor) -> TwistedSpinor:
    """sum_{a<b} eta_ab e_a e_b . phi."""
    sp = phi.space
    ephi = vector_images(sp, phi.coeffs)
    upper = np.triu(form.matrix, 1)
    inner = upper @ ephi  # row a: sum_{b>a} eta_ab e_b phi
    out = sp.zeros()
    for a, g in enumerate(sp.rep_n.generators):
        if np.any(upper[a]):
            out += sp.vector_op(g, inner[a])
    return phi.with_coeffs(out)


def wedge_action(space: TwistedSpace, X: np.ndarray, Y: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """X ^ Y . coeffs computed as X.Y + <X, Y>."""
    gens = np.asarray(space.rep_n.generators)
    gx = np.tensordot(X, gens, axes=1)
    gy = np.tensordot(Y, gens, axes=1)
    return space.vector_op(gx @ gy, coeffs) + float(X @ Y) * coeffs


def verify_vanishing_identities(phi: TwistedSpinor, trials: int = 100, seed: int = 0) -> dict[str, float]:
    """Maximum residuals of the four reality identities over random vectors.

    twist_real:  Re<f_k f_l phi, phi>
    wedge_real:  Re<X^Y phi, phi>
    mixed_imag:  Im<X^Y f_k f_l phi, phi>
    isometry:    Re<X phi, Y phi> - <X, Y>|phi|^2
    """
    if trials < 1:
        raise PreconditionError("trials must be positive")
    rng = np.random.default_rng(seed)
    sp = phi.space
    c = phi.coeffs
    pairs = list(itertools.combinations(range(1, phi.r + 1), 2))
    twisted = [sp.twist_op(twist_pair_matrix(sp, k, l), c) for k, l in pairs]
    out = {"twist_real": 0.0, "wedge_real": 0.0, "mixed_imag": 0.0, "isometry": 0.0}
    for psi in twisted:
        out["twist_real"] = max(out["twist_real"], abs(herm(psi, c).real))
    gens = np.asarray(sp.rep_n.generators)
    nrm2 = float(np.vdot(c, c).real)
    for _ in range(trials):
        X, Y = rng.standard_normal((2, phi.n))
        out["wedge_real"] = max(out["wedge_real"], abs(herm(wedge_action(sp, X, Y, c), c).real))
        for psi in twisted:
            out["mixed_imag"] = max(out["mixed_imag"], abs(herm(wedge_action(sp, X, Y, psi), c).imag))
        xp = sp.vector_op(np.tensordot(X, gens, axes=1), c)
        yp = sp.vector_op(np.tensordot(Y, gens, axes=1), c)
        out["isometry"] = max(out["isometry"], abs(herm(xp, yp).real - float(X @ Y) * nrm2))
    return out


def random_spinor(space: TwistedSpace, rng: np.random.Generator) -> TwistedSpinor:
    """Unit spinor with Gaussian coefficients, projected into Sigma_r (x) Delta_n."""
    c = rng.standard_normal(space.dim) + 1j * rng.standard_normal(space.dim)
    c = space.project(c)
    return TwistedSpinor(space, c / np.linalg.norm(c))
