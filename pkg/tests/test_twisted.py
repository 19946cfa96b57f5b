import itertools

import numpy as np
import pytest

from spinorlab import (
    PreconditionError,
    UnsupportedError,
    act_twist_pair,
    act_vector,
    eta_form,
    standard_spinor,
    twisted_space,
    verify_vanishing_identities,
)
from spinorlab.twisted import TwistedSpinor, TwoForm, apply_form, random_spinor


@pytest.fixture
def phi73():
    return standard_spinor(2, 3)


def test_space_dimensions():
    sp = twisted_space(7, 3)
    assert sp.dim == 16 and sp.dim_r == 2 and sp.dim_n == 8
    with pytest.raises(PreconditionError):
        twisted_space(3, 3)
    with pytest.raises(PreconditionError):
        twisted_space(6, 3, "positive-half")


@pytest.mark.parametrize("n,r", [(4, 2), (8, 4), (8, 2)])
def test_positive_half_projector(n, r):
    P = twisted_space(n, r, "positive-half").sigma_projector
    assert np.allclose(P, P.conj().T)
    assert np.allclose(P @ P, P)
    assert round(np.trace(P).real) == 2 ** (r // 2 - 1) * 2 ** (n // 2)


def test_spinor_outside_sigma_rejected():
    sp = twisted_space(4, 2, "positive-half")
    c = np.zeros(sp.dim, complex)
    c[-1] = 1
    with pytest.raises(PreconditionError):
        TwistedSpinor(sp, c)


def test_act_vector_worked_example(phi73):
    e = np.eye(7)
    assert np.allclose(act_vector(e[0], phi73).coeffs, 1j * act_vector(e[1], phi73).coeffs, atol=1e-12)
    assert np.allclose(act_vector(np.zeros(7), phi73).coeffs, 0)


def test_act_vector_isometry():
    rng = np.random.default_rng(2)
    phi = random_spinor(twisted_space(7, 3), rng)
    x = rng.standard_normal(7)
    assert np.isclose(act_vector(x, phi).norm(), np.linalg.norm(x) * phi.norm())
    with pytest.raises(PreconditionError):
        act_vector(np.ones(3), phi)


def test_twist_pair(phi73):
    a = act_twist_pair(1, 2, phi73).coeffs
    assert np.allclose(a, -act_twist_pair(2, 1, phi73).coeffs)
    twice = act_twist_pair(1, 2, act_twist_pair(1, 2, phi73)).coeffs
    assert np.allclose(twice, -phi73.coeffs)
    with pytest.raises(PreconditionError):
        act_twist_pair(2, 2, phi73)
    e = np.eye(7)
    assert np.allclose(a, -apply_form(TwoForm.wedge(e[4], e[5]), phi73).coeffs, atol=1e-12)


def test_eta_worked_example(phi73):
    eta = eta_form(phi73, 1, 2).matrix
    expected = np.zeros((7, 7))
    expected[4, 5], expected[5, 4] = 1, -1
    assert np.abs(eta - expected).max() <= 1e-12
    assert np.allclose(eta_form(phi73, 2, 1).matrix, -eta)


def test_eta_matches_definition():
    """Compare the fast form with a brute-force Re<e_a e_b f_k f_l phi, phi>."""
    rng = np.random.default_rng(3)
    phi = random_spinor(twisted_space(6, 2), rng)
    sp = phi.space
    n = 6
    E = [np.kron(sp.rep_r.identity, g) for g in sp.rep_n.generators]
    F = [np.kron(f, sp.rep_n.identity) for f in sp.rep_r.generators]
    brute = np.zeros((n, n))
    for a, b in itertools.product(range(n), repeat=2):
        if a != b:
            brute[a, b] = np.real(np.vdot(phi.coeffs, E[a] @ E[b] @ F[0] @ F[1] @ phi.coeffs))
    eta = eta_form(phi, 1, 2).matrix
    assert np.abs(eta - brute).max() < 1e-13
    assert np.array_equal(eta, -eta.T)


def test_eta_needs_twist():
    with pytest.raises(UnsupportedError):
        eta_form(standard_spinor(2, 1), 1, 2)


def test_endomorphism_convention():
    u, v = np.eye(4)[0], np.eye(4)[2]
    form = TwoForm.wedge(u, v)
    assert np.allclose(form.endomorphism @ u, v)
    assert np.allclose(form.endomorphism @ v, -u)


def test_vanishing_identities(phi73):
    assert max(verify_vanishing_identities(phi73, 100, 0).values()) <= 1e-12
    rng = np.random.default_rng(5)
    psi = random_spinor(phi73.space, rng)
    assert max(verify_vanishing_identities(psi, 100, 1).values()) <= 1e-12


def test_identities_r_below_two():
    res = verify_vanishing_identities(standard_spinor(2, 1), 10, 0)
    assert res["twist_real"] == 0 and res["mixed_imag"] == 0


def test_u_coefficient_roundtrip():
    rng = np.random.default_rng(6)
    phi = random_spinor(twisted_space(5, 1), rng)
    back = TwistedSpinor.from_u_coefficients(phi.space, phi.u_coefficients())
    assert np.allclose(back.coeffs, phi.coeffs)


def test_eta_basis_change():
    """eta in a rotated twist frame A equals sum_ij A_ik A_jl eta_ij."""
    rng = np.random.default_rng(7)
    phi = random_spinor(twisted_space(7, 3), rng)
    A = np.linalg.qr(rng.standard_normal((3, 3)))[0]
    etas = np.zeros((3, 3, 7, 7))
    for i, j in itertools.permutations(range(3), 2):
        etas[i, j] = eta_form(phi, i + 1, j + 1).matrix
    for k, l in itertools.combinations(range(3), 2):
        expected = np.einsum("i,j,ijab->ab", A[:, k], A[:, l], etas)
        assert np.allclose(eta_form(phi, k + 1, l + 1, frame=A).matrix, expected, atol=1e-12)
