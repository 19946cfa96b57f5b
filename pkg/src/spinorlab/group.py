"""The twisted spin group Spin(n) x Spin^c(r) / {+-(1,1)} acting on twisted spinors.

Elements are stored as words of unit vectors plus a central phase.  The
Lie-algebra convention: for i < j the coefficient of e_i e_j is A[j, i] / 2,
which makes the cover of exp(xi) equal to expm(A) with E_ab sending e_a to e_b.
A unit vector x acts on R^n by v -> x v x^{-1} = -(reflection in x-perp)(v).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from spinorlab.clifford import CliffordRep, build_rep, chirality
from spinorlab.config import RANK_RTOL, TRIPLE_TOL
from spinorlab.errors import InconsistencyError, PreconditionError
from spinorlab.pure import extract_triple, orthonormalize
from spinorlab.twisted import TwistedSpace, TwistedSpinor, herm, twist_pair_matrix, vector_images


def _as_word(word, dim: int, label: str) -> tuple[np.ndarray, ...]:
    out = []
    for x in word:
        x = np.asarray(x, dtype=float)
        if x.shape != (dim,):
            raise PreconditionError(f"{label} vectors must have length {dim}, got {x.shape}")
        if abs(np.linalg.norm(x) - 1.0) > 1e-10:
            raise PreconditionError(f"{label} vectors must be unit length")
        x = x.copy()
        x.setflags(write=False)
        out.append(x)
    if len(out) % 2:
        raise PreconditionError(f"{label} word must have even length, got {len(out)}")
    return tuple(out)


def word_matrix(rep: CliffordRep, word: Sequence[np.ndarray]) -> np.ndarray:
    gens = np.asarray(rep.generators) if rep.n else None
    out = rep.identity
    for x in word:
        out = out @ np.tensordot(x, gens, axes=1)
    return out


@dataclass(frozen=True, eq=False)
class SpinCRElement:
    n: int
    r: int
    word_n: tuple = ()
    word_r: tuple = ()
    phase: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "word_n", _as_word(self.word_n, self.n, "word_n"))
        object.__setattr__(self, "word_r", _as_word(self.word_r, self.r, "word_r"))
        z = complex(self.phase)
        if abs(abs(z) - 1.0) > 1e-10:
            raise PreconditionError(f"phase must have modulus 1, got {abs(z)}")
        object.__setattr__(self, "phase", z)

    @classmethod
    def identity(cls, n: int, r: int) -> "SpinCRElement":
        return cls(n, r)

    def matrix_n(self) -> np.ndarray:
        return word_matrix(build_rep(self.n), self.word_n)

    def matrix_r(self) -> np.ndarray:
        return word_matrix(build_rep(self.r), self.word_r)

    def compose(self, other: "SpinCRElement") -> "SpinCRElement":
        """self o other (apply ``other`` first)."""
        if (self.n, self.r) != (other.n, other.r):
            raise PreconditionError("cannot compose elements of different groups")
        return SpinCRElement(self.n, self.r, self.word_n + other.word_n,
                             self.word_r + other.word_r, self.phase * other.phase)

    def inverse(self) -> "SpinCRElement":
        # (x_1 ... x_2l)^{-1} = x_2l^{-1} ... x_1^{-1} and x^{-1} = -x for unit x
        return SpinCRElement(self.n, self.r, self.word_n[::-1], self.word_r[::-1], np.conj(self.phase))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "word_n": [x.tolist() for x in self.word_n],
            "word_r": [x.tolist() for x in self.word_r],
            "phase": [self.phase.real, self.phase.imag],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SpinCRElement":
        re, im = d["phase"]
        return cls(int(d["n"]), int(d["r"]), d["word_n"], d["word_r"], complex(re, im))


def _check_space(g: SpinCRElement, space: TwistedSpace) -> None:
    if (g.n, g.r) != (space.n, space.r):
        raise PreconditionError(f"element of Spin^(c,{g.r})({g.n}) cannot act on (n={space.n}, r={space.r})")


def act(g: SpinCRElement, phi: TwistedSpinor) -> TwistedSpinor:
    _check_space(g, phi.space)
    return phi.with_coeffs(g.phase * phi.space.pair_op(g.matrix_r(), g.matrix_n(), phi.coeffs))


def conjugation_matrix(rep: CliffordRep, U: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """R with U kappa(e_j) U^{-1} = sum_i R[i, j] kappa(e_i)."""
    n = rep.n
    R = np.zeros((n, n))
    Uinv = np.linalg.inv(U)
    for j in range(n):
        M = U @ rep.generators[j] @ Uinv
        for i in range(n):
            # generators are orthonormal for tr(A^H B) / dim
            R[i, j] = np.real(np.trace(rep.generators[i].conj().T @ M)) / rep.dim
        err = np.abs(M - np.tensordot(R[:, j], np.asarray(rep.generators), axes=1)).max()
        if err > tol:
            raise InconsistencyError(f"conjugate of e_{j + 1} leaves the generator span ({err:.2e})")
    return R


def cover(g: SpinCRElement) -> tuple[np.ndarray, np.ndarray, complex]:
    """(lambda_n(g), lambda_r(h), z^2)."""
    Rn = conjugation_matrix(build_rep(g.n), g.matrix_n())
    Rr = conjugation_matrix(build_rep(g.r), g.matrix_r())
    return Rn, Rr, g.phase**2


def reflection_cover(word: Sequence[np.ndarray], dim: int) -> np.ndarray:
    """Independent oracle: each unit vector acts as minus the reflection in its normal plane."""
    R = np.eye(dim)
    for x in word:
        R = R @ (2 * np.outer(x, x) - np.eye(dim))
    return R


@dataclass(frozen=True, eq=False)
class LieCRElement:
    A: np.ndarray
    B: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        for name in ("A", "B"):
            M = np.array(getattr(self, name), dtype=float)
            if M.ndim != 2 or M.shape[0] != M.shape[1]:
                raise PreconditionError(f"{name} must be square")
            if not np.allclose(M, -M.T, atol=1e-12, rtol=0):
                raise PreconditionError(f"{name} must be antisymmetric")
            M.setflags(write=False)
            object.__setattr__(self, name, M)
        object.__setattr__(self, "t", float(self.t))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def r(self) -> int:
        return self.B.shape[0]

    def bracket(self, other: "LieCRElement") -> "LieCRElement":
        return LieCRElement(self.A @ other.A - other.A @ self.A, self.B @ other.B - other.B @ self.B, 0.0)

    def vector(self) -> np.ndarray:
        """Coordinates (A[j,i] for i<j, B[l,k] for k<l, t)."""
        a = [self.A[j, i] for i, j in itertools.combinations(range(self.n), 2)]
        b = [self.B[l, k] for k, l in itertools.combinations(range(self.r), 2)]
        return np.array(a + b + [self.t])

    @classmethod
    def from_vector(cls, n: int, r: int, v) -> "LieCRElement":
        v = np.asarray(v, dtype=float)
        A, B = np.zeros((n, n)), np.zeros((r, r))
        pos = 0
        for i, j in itertools.combinations(range(n), 2):
            A[j, i], A[i, j] = v[pos], -v[pos]
            pos += 1
        for k, l in itertools.combinations(range(r), 2):
            B[l, k], B[k, l] = v[pos], -v[pos]
            pos += 1
        return cls(A, B, v[pos])


def spin_algebra_matrix(rep: CliffordRep, A: np.ndarray) -> np.ndarray:
    """kappa(sum_{i<j} (A[j,i]/2) e_i e_j)."""
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for i, j in itertools.combinations(range(rep.n), 2):
        if A[j, i] != 0.0:
            out += (A[j, i] / 2) * (rep.generators[i] @ rep.generators[j])
    return out


@dataclass(frozen=True, eq=False)
class LieExp:
    U_n: np.ndarray
    U_r: np.ndarray
    phase: complex
    R_n: np.ndarray
    R_r: np.ndarray
    u: complex

    @property
    def matrix(self) -> np.ndarray:
        return self.phase * np.kron(self.U_r, self.U_n)

    def apply(self, phi: TwistedSpinor) -> TwistedSpinor:
        return phi.with_coeffs(self.phase * phi.space.pair_op(self.U_r, self.U_n, phi.coeffs))


def exp_lie(xi: LieCRElement) -> LieExp:
    rep_n, rep_r = build_rep(xi.n), build_rep(xi.r)
    U_n = scipy.linalg.expm(spin_algebra_matrix(rep_n, xi.A))
    U_r = scipy.linalg.expm(spin_algebra_matrix(rep_r, xi.B))
    return LieExp(U_n, U_r, np.exp(1j * xi.t), scipy.linalg.expm(xi.A), scipy.linalg.expm(xi.B),
                  np.exp(2j * xi.t))


def _rotation_pair(dim: int, a: int, b: int, c: float, s: float) -> list[np.ndarray]:
    """Word (-e_a, c e_a - s e_b) whose product is c + s e_a e_b."""
    ea, eb = np.zeros(dim), np.zeros(dim)
    ea[a], eb[b] = 1.0, 1.0
    return [-ea, c * ea - s * eb]


def lift_rotation(R: np.ndarray, tol: float = 1e-8) -> list[np.ndarray]:
    """Word in Spin(dim) covering R in SO(dim), by Givens reduction."""
    R = np.asarray(R, dtype=float)
    dim = R.shape[0]
    if R.shape != (dim, dim) or np.abs(R.T @ R - np.eye(dim)).max() > tol:
        raise PreconditionError("lift_rotation needs an orthogonal matrix")
    if dim and np.linalg.det(R) < 0:
        raise PreconditionError("lift_rotation needs determinant +1")
    M = R.copy()
    word: list[np.ndarray] = []
    for j in range(dim - 1):
        for i in range(dim - 1, j, -1):
            x, y = M[j, j], M[i, j]
            rho = np.hypot(x, y)
            if rho == 0.0 or (y == 0.0 and x > 0.0):
                continue
            c, s = x / rho, y / rho
            rows = M[[j, i]]
            M[j], M[i] = c * rows[0] + s * rows[1], -s * rows[0] + c * rows[1]
            # G^T rotates e_j toward e_i by theta; it lifts to exp((theta/2) e_j e_i)
            theta = np.arctan2(s, c)
            word += _rotation_pair(dim, j, i, np.cos(theta / 2), np.sin(theta / 2))
    if dim and np.abs(M - np.eye(dim)).max() > tol:
        raise InconsistencyError("Givens reduction did not reach the identity")
    return word


def embed_product(g2m, gr, m: int, r: int) -> SpinCRElement:
    """Spin(2m) x Spin(r) -> Spin(2m + r) on complementary coordinate blocks."""
    n = 2 * m + r
    out = []
    for word, lo, size in ((g2m, 0, 2 * m), (gr, 2 * m, r)):
        for x in word:
            x = np.asarray(x, dtype=float)
            if x.shape == (size,):
                y = np.zeros(n)
                y[lo:lo + size] = x
            elif x.shape == (n,):
                y = x
                outside = np.delete(y, np.arange(lo, lo + size))
                if np.abs(outside).max(initial=0.0) > 1e-12:
                    raise PreconditionError("word vector is not confined to its block")
            else:
                raise PreconditionError(f"word vector has length {x.size}, expected {size} or {n}")
            out.append(y)
        if len(word) % 2:
            raise PreconditionError("block words must have even length")
    return SpinCRElement(n, r, out, (), 1.0)


def branching_check(m: int, r: int, trials: int = 20, seed: int = 0) -> dict:
    """Tensor structure of Delta_{2m+r} under Spin(2m) x Spin(r).

    Words in the first 2m coordinates act as Id (x) kappa_2m(word).  Words in
    the last r coordinates act as kappa_r(word) (x) D with D an intertwiner;
    even words give D = Id and single vectors D = +-F_2m.  The best match among
    {+Id, -Id, +F, -F} is reported with its residual.
    """
    n = 2 * m + r
    rng = np.random.default_rng(seed)
    rep_n, rep_2m, rep_r = build_rep(n), build_rep(2 * m), build_rep(r)
    ir = rep_r.identity
    F = chirality(rep_2m)
    I2m = rep_2m.identity
    candidates = {"+Id": I2m, "-Id": -I2m, "+F": F, "-F": -F}
    vec_res = 0.0
    twist_res = 0.0
    single = {name: 0.0 for name in candidates}
    for _ in range(trials):
        k = 2 * int(rng.integers(1, 3))
        word = [x / np.linalg.norm(x) for x in rng.standard_normal((k, 2 * m))]
        padded = [np.concatenate([x, np.zeros(r)]) for x in word]
        vec_res = max(vec_res, float(np.abs(word_matrix(rep_n, padded) - np.kron(ir, word_matrix(rep_2m, word))).max()))
        if r:
            word = [x / np.linalg.norm(x) for x in rng.standard_normal((k, r))]
            padded = [np.concatenate([np.zeros(2 * m), x]) for x in word]
            twist_res = max(twist_res, float(np.abs(word_matrix(rep_n, padded) - np.kron(word_matrix(rep_r, word), I2m)).max()))
            x = rng.standard_normal(r)
            x /= np.linalg.norm(x)
            lhs = np.tensordot(np.concatenate([np.zeros(2 * m), x]), np.asarray(rep_n.generators), axes=1)
            fx = np.tensordot(x, np.asarray(rep_r.generators), axes=1)
            for name, D in candidates.items():
                single[name] = max(single[name], float(np.abs(lhs - np.kron(fx, D)).max()))
    best = min(single, key=single.get) if r else "+Id"
    single_res = single[best] if r else 0.0
    return {
        "vector_block_residual": vec_res,
        "twist_block_residual": twist_res,
        "twist_vector_intertwiner": best,
        "twist_vector_residual": single_res,
        "residual": max(vec_res, twist_res, single_res),
    }


def lift_unitary(thetas: Sequence[float], frame: np.ndarray, r: int = 0, J: np.ndarray | None = None) -> SpinCRElement:
    """Element prod_j (cos(t_j/2) - sin(t_j/2) a_j b_j) with phase exp(i sum t_j / 2).

    ``frame`` has columns (a_1, b_1, ..., a_m, b_m) with b_j = J a_j.  The
    element covers a_j -> cos(t_j) a_j - sin(t_j) b_j together with
    u = exp(i sum t_j), and fixes spinors whose isotropic data is (span frame, J).
    """
    frame = np.asarray(frame, dtype=float)
    n, d = frame.shape
    thetas = [float(t) for t in thetas]
    if d != 2 * len(thetas):
        raise PreconditionError(f"frame has {d} columns, expected {2 * len(thetas)}")
    if np.abs(frame.T @ frame - np.eye(d)).max() > 1e-8:
        raise PreconditionError("frame must be orthonormal")
    if J is not None and np.abs(J @ frame[:, 0::2] - frame[:, 1::2]).max() > 1e-8:
        raise PreconditionError("frame is not J-adapted")
    word = []
    for j, t in enumerate(thetas):
        a, b = frame[:, 2 * j], frame[:, 2 * j + 1]
        word += [-a, np.cos(t / 2) * a + np.sin(t / 2) * b]
    return SpinCRElement(n, r, word, (), np.exp(0.5j * sum(thetas)))


@dataclass
class StabilizerResult:
    basis: list[LieCRElement]
    dimension: int
    expected: int
    gap_orders: float
    singular_values: np.ndarray = field(repr=False)


def stabilizer_algebra(phi: TwistedSpinor, rtol: float = RANK_RTOL) -> StabilizerResult:
    """Kernel of xi -> xi . phi over {e_i e_j / 2} + {f_k f_l / 2} + {i}."""
    if phi.norm() == 0.0:
        raise PreconditionError("stabilizer of the zero spinor")
    sp = phi.space
    n, r = phi.n, phi.r
    imgs = vector_images(sp, phi.coeffs)
    cols = []
    for i, j in itertools.combinations(range(n), 2):
        cols.append(sp.vector_op(sp.rep_n.generators[i], imgs[j]) / 2)
    for k, l in itertools.combinations(range(1, r + 1), 2):
        cols.append(sp.twist_op(twist_pair_matrix(sp, k, l), phi.coeffs) / 2)
    cols.append(1j * phi.coeffs)
    Mc = np.stack(cols, axis=1)
    K = np.vstack([Mc.real, Mc.imag])
    _, s, vh = np.linalg.svd(K, full_matrices=True)
    rank = int(np.sum(s >= rtol * s[0]))
    kernel = vh[rank:]
    if rank < s.size:
        gap = float(np.log10(s[rank - 1] / max(s[rank], 1e-300)))
    else:
        gap = float("inf")
    basis = [LieCRElement.from_vector(n, r, v) for v in kernel]
    m = (n - r) // 2
    expected = m * m + r * (r - 1) // 2
    return StabilizerResult(basis, len(basis), expected, gap, s)


def group_dimension(n: int, r: int) -> int:
    return n * (n - 1) // 2 + r * (r - 1) // 2 + 1


def same_triple(phi: TwistedSpinor, psi: TwistedSpinor, tol: float = TRIPLE_TOL) -> bool:
    if (phi.n, phi.r) != (psi.n, psi.r):
        return False
    a, b = extract_triple(phi), extract_triple(psi)
    if np.linalg.norm(a.projector_V - b.projector_V) > tol:
        return False
    if np.linalg.norm(a.J - b.J) > tol:
        return False
    if a.r == 0:
        return True
    return bool(np.linalg.det(a.coframe_W.T @ b.coframe_W) > 0)


def _phase_fit(target: np.ndarray, chi: np.ndarray) -> tuple[complex, float]:
    z = herm(target, chi)
    if abs(z) < 1e-14:
        return 1.0, float(np.linalg.norm(target - chi))
    z /= abs(z)
    return z, float(np.linalg.norm(target - z * chi))


def transporter_spinc_r(phi: TwistedSpinor, psi: TwistedSpinor, tol: float = TRIPLE_TOL) -> SpinCRElement | None:
    """g in Spin^c(r) with g(phi) = psi, or None when the triples differ."""
    if not same_triple(phi, psi, tol):
        return None
    sp = phi.space
    n, r = phi.n, phi.r
    candidates: list[list[np.ndarray]] = []
    if r <= 1:
        candidates.append([])
    elif r == 2:
        f12 = sp.twist_op(twist_pair_matrix(sp, 1, 2), phi.coeffs)
        x, y = herm(phi.coeffs, psi.coeffs), herm(f12, psi.coeffs)
        Q = np.real(np.array([[x * np.conj(x), x * np.conj(y)], [y * np.conj(x), y * np.conj(y)]]))
        c, s = np.linalg.eigh(Q)[1][:, -1]
        candidates.append(_rotation_pair(2, 0, 1, c, s))
    else:
        Wa, Wb = extract_triple(phi).coframe_W, extract_triple(psi).coframe_W
        C = orthonormalize(Wa.T @ Wb)
        mats = [C, C.T]
        if r % 2 == 0:
            mats += [-C, -C.T]
        for M in mats:
            if np.linalg.det(M) > 0:
                candidates.append(lift_rotation(M))
    best = None
    for word_r in candidates:
        h = SpinCRElement(n, r, (), word_r, 1.0)
        chi = act(h, phi).coeffs
        z, res = _phase_fit(psi.coeffs, chi)
        if best is None or res < best[0]:
            best = (res, SpinCRElement(n, r, (), word_r, z))
    res, g = best
    if res > tol:
        raise InconsistencyError(f"triples agree but no Spin^c(r) element transports (residual {res:.2e})")
    return g


def transporter(phi: TwistedSpinor, psi: TwistedSpinor, tol: float = TRIPLE_TOL) -> SpinCRElement | None:
    """Element of the full group mapping phi to psi, or None for opposite orientations."""
    a, b = extract_triple(phi), extract_triple(psi)
    R = b.full_frame() @ a.full_frame().T
    if np.linalg.det(R) < 0:
        return None
    g = SpinCRElement(phi.n, phi.r, lift_rotation(R), (), 1.0)
    h = transporter_spinc_r(act(g, phi), psi, tol)
    if h is None:
        raise InconsistencyError("rotated spinor does not share the target triple")
    return h.compose(g)


def random_element(n: int, r: int, rng: np.random.Generator, twist_only: bool = False,
                   max_pairs: int = 2) -> SpinCRElement:
    """Random element: words of 2 or 2*max_pairs unit vectors and a random phase."""
    def word(dim):
        if dim == 0:
            return []
        k = 2 * int(rng.integers(1, max_pairs + 1))
        return [x / np.linalg.norm(x) for x in rng.standard_normal((k, dim))]

    wn = [] if twist_only else word(n)
    return SpinCRElement(n, r, wn, word(r), np.exp(1j * rng.uniform(0, 2 * np.pi)))


def moving_element(n: int, r: int, rng: np.random.Generator) -> SpinCRElement:
    """Rotation of e_1 toward a complement direction by an angle away from 0 and pi."""
    m = (n - r) // 2
    if r == 0:
        raise PreconditionError("V is all of R^n; nothing moves it")
    theta = rng.uniform(0.3, np.pi - 0.3)
    b = 2 * m + int(rng.integers(0, r))
    word = _rotation_pair(n, 0, b, np.cos(theta / 2), np.sin(theta / 2))
    return SpinCRElement(n, r, word, (), np.exp(1j * rng.uniform(0, 2 * np.pi)))
