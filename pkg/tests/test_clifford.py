import itertools

import numpy as np
import pytest

from spinorlab.clifford import (
    G1,
    G2,
    T,
    basis_spinor,
    build_rep,
    chirality,
    clifford_form,
    clifford_vector,
    structure_gamma,
    u_basis_matrix,
)
from spinorlab.errors import PreconditionError, UnsupportedError


def test_n2_generators_are_g1_g2():
    rep = build_rep(2)
    assert np.array_equal(rep[1], G1)
    assert np.array_equal(rep[2], G2)


def test_n3_last_generator():
    assert np.allclose(build_rep(3)[3], 1j * T)


def test_n1_and_n0_degenerate():
    assert build_rep(0).generators == ()
    assert build_rep(0).dim == 1
    assert np.allclose(build_rep(1)[1], [[1j]])


def test_kronecker_layout_n6():
    rep = build_rep(6)
    I = np.eye(2)
    assert np.allclose(rep[1], np.kron(np.kron(I, I), G1))
    assert np.allclose(rep[4], np.kron(np.kron(I, G2), T))
    assert np.allclose(rep[6], np.kron(np.kron(G2, T), T))


@pytest.mark.parametrize("n", range(1, 11))
def test_clifford_relations(n):
    rep = build_rep(n)
    eye = rep.identity
    for i, j in itertools.product(range(1, n + 1), repeat=2):
        assert np.abs(rep[i] @ rep[j] + rep[j] @ rep[i] + 2 * (i == j) * eye).max() <= 1e-12
    for g in rep.generators:
        assert np.allclose(g.conj().T, -g)
        assert np.allclose(g.conj().T @ g, eye)


def test_n4_e1_e3_anticommute():
    rep = build_rep(4)
    assert np.abs(rep[1] @ rep[3] + rep[3] @ rep[1]).max() == 0


def test_generators_are_read_only():
    with pytest.raises(ValueError):
        build_rep(3)[1][0, 0] = 0


def test_basis_spinor_examples():
    assert np.allclose(basis_spinor([1]), np.array([1, -1j]) / np.sqrt(2))
    assert np.allclose(basis_spinor([]), [1.0])
    assert abs(np.vdot(basis_spinor([-1, 1]), basis_spinor([1, -1]))) < 1e-15
    with pytest.raises(PreconditionError):
        basis_spinor([0])


def test_u_basis_matrix_columns():
    U = u_basis_matrix(3)
    assert np.allclose(U.conj().T @ U, np.eye(8))
    for b, eps in enumerate(itertools.product((1, -1), repeat=3)):
        assert np.allclose(U[:, b], basis_spinor(eps))


def test_action_on_basis_spinors():
    up, um = basis_spinor([1]), basis_spinor([-1])
    assert np.allclose(G1 @ up, 1j * um)
    assert np.allclose(G2 @ up, um)
    assert np.allclose(T @ up, -up)
    assert np.allclose(T @ um, um)


def test_clifford_vector():
    rep = build_rep(2)
    assert np.allclose(clifford_vector(rep, [1, 0]), G1)
    assert np.allclose(clifford_vector(rep, [0, 0]), 0)
    rng = np.random.default_rng(0)
    rep5 = build_rep(5)
    x = rng.standard_normal(5)
    x /= np.linalg.norm(x)
    X = clifford_vector(rep5, x)
    assert np.abs(X @ X + rep5.identity).max() <= 1e-12
    with pytest.raises(PreconditionError):
        clifford_vector(rep5, [1, 0])


def test_clifford_form_two_forms():
    rep = build_rep(2)
    assert np.allclose(clifford_form(rep, {(1, 2): 1.0}), G1 @ G2)
    rep4 = build_rep(4)
    rng = np.random.default_rng(1)
    a = rng.standard_normal((4, 4))
    a = a - a.T
    termwise = sum(a[i, j] * rep4[i + 1] @ rep4[j + 1] for i, j in itertools.combinations(range(4), 2))
    assert np.allclose(clifford_form(rep4, a), termwise)
    assert np.allclose(clifford_form(rep4, {(i + 1, j + 1): a[i, j] for i, j in itertools.combinations(range(4), 2)}), termwise)


def test_clifford_form_three_form_array():
    rep = build_rep(4)
    a = np.zeros((4, 4, 4))
    for perm in itertools.permutations((0, 1, 3)):
        sign = np.linalg.det(np.eye(3)[list(np.argsort(perm))])
        a[perm] = 2.0 * sign
    assert np.allclose(clifford_form(rep, a), 2.0 * rep.product([1, 2, 4]))


def test_clifford_form_errors():
    rep = build_rep(3)
    with pytest.raises(PreconditionError):
        clifford_form(rep, np.ones((3, 3)))
    with pytest.raises(PreconditionError):
        clifford_form(rep, {(2, 1): 1.0})


def test_chirality_n2():
    F = chirality(build_rep(2))
    assert np.allclose(F, -1j * G1 @ G2)
    assert np.allclose(F @ basis_spinor([1]), basis_spinor([1]))
    assert np.allclose(F @ basis_spinor([-1]), -basis_spinor([-1]))


@pytest.mark.parametrize("m", range(1, 7))
def test_chirality_positive_convention(m):
    F = chirality(build_rep(2 * m))
    u = basis_spinor([1] * m)
    assert np.allclose(F @ u, u)
    assert np.allclose(F @ F, np.eye(2**m))


def test_chirality_odd_unsupported():
    with pytest.raises(UnsupportedError):
        chirality(build_rep(5))


def test_gamma3_on_basis():
    g = structure_gamma(3)
    for e in (1, -1):
        assert np.allclose(g(basis_spinor([e])), -1j * e * basis_spinor([-e]))
    assert g.kind == "quaternionic"


@pytest.mark.parametrize("n", range(0, 17))
def test_gamma_square_table(n):
    g = structure_gamma(n)
    sign = 1 if n % 8 in (0, 1, 6, 7) else -1
    assert g.kind == ("real" if sign == 1 else "quaternionic")
    k = n // 2
    for eps in itertools.product((1, -1), repeat=min(k, 3)):
        v = basis_spinor(list(eps) + [1] * (k - len(eps)))
        assert np.allclose(g(g(v)), sign * v)
    assert np.allclose(g.square(), sign * np.eye(2**k))
