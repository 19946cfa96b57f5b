import itertools

import numpy as np
import pytest
import scipy.linalg

from spinorlab import (
    InconsistencyError,
    PreconditionError,
    UnsupportedError,
    extract_triple,
    is_partially_pure,
    isotropic_subspace,
    kernel_check,
    parity_sign,
    recover_coframe,
    so_r_structure,
    standard_spinor,
    twisted_space,
)
from spinorlab.clifford import basis_spinor, structure_gamma
from spinorlab.twisted import TwistedSpinor, TwoForm, eta_form, vector_images


def brute_dim_V(phi) -> int:
    """Oracle: complex annihilator of phi in C^n; V is its real part of twice the dimension."""
    M = vector_images(phi.space, phi.coeffs).T
    return 2 * scipy.linalg.null_space(M, rcond=1e-8).shape[1]


def test_worked_example_formula():
    phi = standard_spinor(2, 3)
    g = structure_gamma(3)
    u11 = basis_spinor([1, 1])
    terms = [np.kron(basis_spinor([e]), np.kron(g(basis_spinor([e])), u11)) for e in (1, -1)]
    assert np.allclose(phi.coeffs, sum(terms) / np.sqrt(2))
    alt = 1j * (np.kron(basis_spinor([-1]), basis_spinor([1, 1, 1])) - np.kron(basis_spinor([1]), basis_spinor([-1, 1, 1])))
    assert np.allclose(phi.coeffs, alt / np.sqrt(2))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_r0_is_classical_pure_spinor(m):
    assert np.allclose(standard_spinor(m, 0).coeffs, basis_spinor([1] * m))


def test_positive_half_formula_m1_r2():
    phi = standard_spinor(1, 2, "positive-half")
    expected = -1j * np.kron(basis_spinor([1]), basis_spinor([-1, 1]))
    assert np.allclose(phi.coeffs, expected)


@pytest.mark.parametrize("m,r", [(1, 2), (2, 2), (1, 4)])
def test_positive_half_not_pure_for_small_even_r(m, r):
    # on Sigma_r = Delta_r^+ the twist volume is a scalar, so the conditions cannot all hold
    rep = is_partially_pure(standard_spinor(m, r, "positive-half"))
    assert not rep.is_pure


def test_positive_half_pure_for_r6():
    assert is_partially_pure(standard_spinor(1, 6, "positive-half")).is_pure


def test_isotropic_subspace_worked_example():
    basis, J = isotropic_subspace(standard_spinor(2, 3))
    P = basis @ basis.T
    assert np.allclose(P, np.diag([1, 1, 1, 1, 0, 0, 0]), atol=1e-12)
    e = np.eye(7)
    assert np.allclose(J @ e[0], e[1], atol=1e-12)
    assert np.allclose(J @ e[2], e[3], atol=1e-12)


def test_isotropic_subspace_classical_pure():
    basis, J = isotropic_subspace(standard_spinor(2, 0))
    assert basis.shape[1] == 4
    assert np.allclose(J @ J, -np.eye(4))


def test_mixed_chirality_has_no_V():
    sp = twisted_space(6, 0)
    c = basis_spinor([1, 1, 1]) + 0.5 * basis_spinor([-1, -1, -1])
    phi = TwistedSpinor(sp, c / np.linalg.norm(c))
    basis, _ = isotropic_subspace(phi)
    assert basis.shape[1] == 0 == brute_dim_V(phi)
    rep = is_partially_pure(phi)
    assert not rep.is_pure and rep.dim_V == 0


def test_isotropic_subspace_needs_unit():
    with pytest.raises(PreconditionError):
        isotropic_subspace(standard_spinor(2, 3).scaled(2))


@pytest.mark.parametrize("m,r", [(1, 1), (2, 2), (1, 4), (2, 3), (3, 1)])
def test_dim_V_matches_oracle(m, r):
    rng = np.random.default_rng([m, r])
    phi = standard_spinor(m, r)
    assert isotropic_subspace(phi)[0].shape[1] == brute_dim_V(phi) == 2 * m
    c = rng.standard_normal(phi.space.dim) + 1j * rng.standard_normal(phi.space.dim)
    psi = phi.with_coeffs(c / np.linalg.norm(c))
    assert isotropic_subspace(psi)[0].shape[1] == brute_dim_V(psi)


def test_purity_report():
    phi = standard_spinor(2, 3)
    rep = is_partially_pure(phi)
    assert rep.is_pure and rep.dim_V == 4
    bad = is_partially_pure(phi.scaled(2))
    assert not bad.is_pure and bad.residuals["norm_deviation"] == pytest.approx(1.0)


def test_so_r_examples():
    s = so_r_structure(standard_spinor(2, 3))
    assert s["bracket_residual"] <= 1e-10 and s["span_rank"] == 3
    s = so_r_structure(standard_spinor(2, 4))
    assert s["commute_residual"] <= 1e-10 and s["span_rank"] == 6
    assert s["norm_deviation"] <= 1e-10
    with pytest.raises(UnsupportedError):
        so_r_structure(standard_spinor(2, 1))


def test_bracket_sign_on_explicit_forms():
    e = np.eye(7)
    hat = {(k, l): TwoForm.wedge(e[3 + k], e[3 + l]).endomorphism for k, l in itertools.combinations(range(1, 4), 2)}
    a, b = hat[(1, 2)], hat[(2, 3)]
    assert np.allclose(a @ b - b @ a, -hat[(1, 3)])


def test_kernel_check():
    assert kernel_check(standard_spinor(2, 3)) <= 1e-12
    assert kernel_check(standard_spinor(2, 2)) <= 1e-12


def test_coframe_worked_example():
    W = recover_coframe(standard_spinor(2, 3))
    assert np.allclose(W, np.eye(7)[:, 4:], atol=1e-12)


def test_coframe_r2_reproduces_eta():
    phi = standard_spinor(1, 2)
    W = recover_coframe(phi)
    assert np.allclose(TwoForm.wedge(W[:, 0], W[:, 1]).matrix, eta_form(phi, 1, 2).matrix, atol=1e-12)


def test_coframe_rejects_non_pure():
    rng = np.random.default_rng(0)
    sp = twisted_space(7, 3)
    c = rng.standard_normal(sp.dim) + 1j * rng.standard_normal(sp.dim)
    with pytest.raises(InconsistencyError):
        recover_coframe(TwistedSpinor(sp, c / np.linalg.norm(c)))


def test_parity():
    assert parity_sign(standard_spinor(1, 2)) == 1
    assert parity_sign(standard_spinor(1, 2, negative=True)) == -1
    with pytest.raises(UnsupportedError):
        parity_sign(standard_spinor(2, 3))


def test_extract_triple_worked_example():
    tri = extract_triple(standard_spinor(2, 3))
    e = np.eye(7)
    assert np.allclose(tri.projector_V, np.diag([1, 1, 1, 1, 0, 0, 0]), atol=1e-12)
    assert np.allclose(tri.J @ e[0], e[1], atol=1e-12)
    assert np.allclose(tri.coframe_W, e[:, 4:], atol=1e-12)
    assert tri.sign == 1
    assert np.allclose(tri.J @ tri.J, -tri.projector_V, atol=1e-12)
    assert np.allclose(tri.J.T, -tri.J)
    assert tri.moduli_dimension() == 14


def test_extract_triple_idempotent():
    phi = standard_spinor(2, 2)
    a, b = extract_triple(phi), extract_triple(phi)
    assert np.array_equal(a.projector_V, b.projector_V) and a.sign == b.sign == parity_sign(phi)


def test_extract_triple_rejects_non_pure():
    with pytest.raises(PreconditionError):
        extract_triple(standard_spinor(2, 3).scaled(2))


def test_basis_independence_of_purity():
    rng = np.random.default_rng(9)
    A = np.linalg.qr(rng.standard_normal((4, 4)))[0]
    if np.linalg.det(A) < 0:
        A[:, 0] *= -1
    rep = is_partially_pure(standard_spinor(1, 4), frame=A)
    assert rep.is_pure
