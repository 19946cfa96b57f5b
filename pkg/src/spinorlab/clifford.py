"""Explicit complex matrix representation of the Clifford algebra Cl_n.

Generators are Kronecker products of four 2x2 matrices (``ID``, ``G1``,
``G2``, ``T``).  With k = n // 2 tensor slots, slot 1 is the leftmost factor
and therefore the most significant digit of a flattened index:

    e_{2j-1} -> Id x ... x Id x G1 x T x ... x T     (j-1 trailing T's)
    e_{2j}   -> Id x ... x Id x G2 x T x ... x T
    e_{2k+1} -> i T x ... x T                        (n odd only)

so e_1, e_2 act on the rightmost slot.  Vectors are stored in the standard
components of C^2 x ... x C^2; :func:`u_basis_matrix` converts to the unitary
basis u_{+1} = (1, -i)/sqrt 2, u_{-1} = (1, i)/sqrt 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Mapping, Sequence

import numpy as np

from spinorlab.errors import PreconditionError, UnsupportedError

ID = np.eye(2, dtype=complex)
G1 = np.array([[1j, 0], [0, -1j]])
G2 = np.array([[0, 1j], [1j, 0]])
T = np.array([[0, -1j], [1j, 0]])

U_PLUS = np.array([1, -1j]) / np.sqrt(2)
U_MINUS = np.array([1, 1j]) / np.sqrt(2)

# antilinear maps z -> M conj(z) on C^2
ALPHA = np.array([[0, -1], [1, 0]], dtype=complex)  # quaternionic
BETA = np.eye(2, dtype=complex)  # real


def kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    """Kronecker product of ``factors``; the empty product is the 1x1 identity."""
    return reduce(np.kron, factors, np.ones((1, 1), dtype=complex))


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class CliffordRep:
    """Images kappa(e_1), ..., kappa(e_n) acting on Delta_n = C^(2^k)."""

    n: int
    generators: tuple[np.ndarray, ...]

    @property
    def k(self) -> int:
        return self.n // 2

    @property
    def dim(self) -> int:
        return 2**self.k

    @property
    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    def __getitem__(self, j: int) -> np.ndarray:
        """Generator kappa(e_j), 1-based."""
        if not 1 <= j <= self.n:
            raise IndexError(f"generator index {j} outside 1..{self.n}")
        return self.generators[j - 1]

    def product(self, indices: Sequence[int]) -> np.ndarray:
        """kappa(e_{i_1} e_{i_2} ... e_{i_p}) for 1-based indices."""
        out = self.identity
        for j in indices:
            out = out @ self[j]
        return out


@lru_cache(maxsize=None)
def build_rep(n: int) -> CliffordRep:
    if n < 0:
        raise PreconditionError(f"n must be non-negative, got {n}")
    k = n // 2
    gens = []
    for j in range(1, k + 1):
        tail = [T] * (j - 1)
        head = [ID] * (k - j)
        gens.append(kron_all(head + [G1] + tail))
        gens.append(kron_all(head + [G2] + tail))
    if n % 2:
        gens.append(1j * kron_all([T] * k))
    return CliffordRep(n=n, generators=tuple(_frozen(g) for g in gens))


def basis_spinor(epsilons: Sequence[int]) -> np.ndarray:
    """u_{eps_1} x ... x u_{eps_k}; the empty tensor product is the scalar 1."""
    factors = []
    for e in epsilons:
        if e == 1:
            factors.append(U_PLUS)
        elif e == -1:
            factors.append(U_MINUS)
        else:
            raise PreconditionError(f"signs must be +1 or -1, got {e}")
    return kron_all([f.reshape(2, 1) for f in factors]).ravel()


def sign_patterns(k: int) -> list[tuple[int, ...]]:
    """All sign tuples of length k in flattened-index order (+1 is bit 0)."""
    return list(itertools.product((1, -1), repeat=k))


@lru_cache(maxsize=None)
def u_basis_matrix(k: int) -> np.ndarray:
    """Unitary matrix whose column b is the basis spinor with sign pattern b."""
    one = np.stack([U_PLUS, U_MINUS], axis=1)
    return _frozen(kron_all([one] * k))


def clifford_vector(rep: CliffordRep, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (rep.n,):
        raise PreconditionError(f"expected a vector of length {rep.n}, got shape {x.shape}")
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    for xj, g in zip(x, rep.generators):
        if xj != 0.0:
            out += xj * g
    return out


def _is_antisymmetric(a: np.ndarray, atol: float = 1e-12) -> bool:
    p = a.ndim
    for perm in itertools.permutations(range(p)):
        sign = _perm_sign(perm)
        if not np.allclose(np.transpose(a, perm), sign * a, atol=atol, rtol=0):
            return False
    return True


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def clifford_form(rep: CliffordRep, omega) -> np.ndarray:
    """Clifford action of a p-form.

    ``omega`` is either a mapping from strictly increasing 1-based index
    tuples to coefficients, or a full antisymmetric array of shape (n,)*p.
    The result is sum over i_1 < ... < i_p of omega[i] kappa(e_{i_1})...kappa(e_{i_p}).
    """
    out = np.zeros((rep.dim, rep.dim), dtype=complex)
    if isinstance(omega, Mapping):
        for idx, c in omega.items():
            idx = tuple(int(i) for i in idx)
            if any(b <= a for a, b in zip(idx, idx[1:])) or not all(1 <= i <= rep.n for i in idx):
                raise PreconditionError(f"multi-index {idx} must be strictly increasing within 1..{rep.n}")
            out += c * rep.product(idx)
        return out
    a = np.asarray(omega)
    p = a.ndim
    if p == 0 or any(s != rep.n for s in a.shape):
        raise PreconditionError(f"form array must have shape (n,)*p with n={rep.n}, got {a.shape}")
    if p > rep.n:
        raise PreconditionError(f"degree {p} exceeds n={rep.n}")
    if p > 1 and not _is_antisymmetric(a):
        raise PreconditionError("form array is not antisymmetric")
    for idx in itertools.combinations(range(rep.n), p):
        c = a[idx]
        if c != 0:
            out += c * rep.product([i + 1 for i in idx])
    return out


def volume(rep: CliffordRep) -> np.ndarray:
    return rep.product(range(1, rep.n + 1))


def chirality(rep: CliffordRep) -> np.ndarray:
    """F_{2m} = (-i)^m e_1 ... e_{2m}; u_{1,...,1} is a +1 eigenvector."""
    if rep.n % 2:
        raise UnsupportedError(f"chirality needs even n, got n={rep.n}")
    return (-1j) ** (rep.n // 2) * volume(rep)


@dataclass(frozen=True, eq=False)
class AntilinearStructure:
    """gamma(v) = matrix @ conj(v)."""

    n: int
    kind: str  # "real" or "quaternionic"
    matrix: np.ndarray

    def __call__(self, v) -> np.ndarray:
        return self.matrix @ np.conj(np.asarray(v, dtype=complex))

    def square(self) -> np.ndarray:
        """Matrix of gamma o gamma, which is complex linear."""
        return self.matrix @ np.conj(self.matrix)


@lru_cache(maxsize=None)
def structure_gamma(n: int) -> AntilinearStructure:
    if n < 0:
        raise PreconditionError(f"n must be non-negative, got {n}")
    q, rem = divmod(n, 8)
    if rem in (0, 1):
        factors = [ALPHA, BETA] * (2 * q)
    elif rem in (2, 3):
        factors = [ALPHA] + [BETA, ALPHA] * (2 * q)
    elif rem in (4, 5):
        factors = [ALPHA, BETA] * (2 * q + 1)
    else:
        factors = [ALPHA] + [BETA, ALPHA] * (2 * q + 1)
    kind = "real" if rem in (0, 1, 6, 7) else "quaternionic"
    return AntilinearStructure(n=n, kind=kind, matrix=_frozen(kron_all(factors)))
