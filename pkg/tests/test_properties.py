"""Hypothesis property tests for the algebraic invariants."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from spinorlab import act, cover, eta_form, extract_triple, is_partially_pure, standard_spinor
from spinorlab.clifford import build_rep, clifford_vector
from spinorlab.group import lift_rotation, random_element, reflection_cover
from spinorlab.twisted import act_vector, herm, random_spinor, twisted_space

seeds = st.integers(0, 2**32 - 1)
cells = st.sampled_from([(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (1, 4), (3, 1)])
FAST = settings(max_examples=30, deadline=None)


@FAST
@given(st.integers(1, 9), seeds)
def test_clifford_multiplication_is_skew(n, seed):
    rng = np.random.default_rng(seed)
    rep = build_rep(n)
    x = rng.standard_normal(n)
    a, b = rng.standard_normal((2, rep.dim)) + 1j * rng.standard_normal((2, rep.dim))
    X = clifford_vector(rep, x)
    assert abs(np.vdot(b, X @ a) + np.vdot(X @ b, a)) <= 1e-12 * (1 + np.linalg.norm(a) * np.linalg.norm(b) * np.linalg.norm(x))
    assert np.allclose(X @ X, -(x @ x) * rep.identity)


@FAST
@given(cells, seeds)
def test_isometry_identity(cell, seed):
    m, r = cell
    rng = np.random.default_rng(seed)
    n = 2 * m + r
    phi = random_spinor(twisted_space(n, r), rng)
    X, Y = rng.standard_normal((2, n))
    lhs = herm(act_vector(X, phi).coeffs, act_vector(Y, phi).coeffs).real
    assert abs(lhs - X @ Y * phi.norm() ** 2) <= 1e-12 * (1 + abs(X @ Y))


@FAST
@given(cells, seeds)
def test_eta_always_antisymmetric(cell, seed):
    m, r = cell
    if r < 2:
        return
    rng = np.random.default_rng(seed)
    phi = random_spinor(twisted_space(2 * m + r, r), rng)
    eta = eta_form(phi, 1, 2).matrix
    assert np.array_equal(eta, -eta.T)


@FAST
@given(cells, seeds)
def test_group_orbit_stays_pure_and_equivariant(cell, seed):
    m, r = cell
    n = 2 * m + r
    rng = np.random.default_rng(seed)
    phi = standard_spinor(m, r)
    g = random_element(n, r, rng)
    q = act(g, phi)
    assert abs(q.norm() - 1) <= 1e-12
    assert is_partially_pure(q, 1e-8).is_pure
    Rn = cover(g)[0]
    a, b = extract_triple(phi), extract_triple(q)
    assert np.linalg.norm(Rn @ a.projector_V @ Rn.T - b.projector_V) <= 1e-8
    assert np.linalg.norm(Rn @ a.J @ Rn.T - b.J) <= 1e-8


@FAST
@given(cells, seeds)
def test_eta_conjugation(cell, seed):
    """eta of g(phi) is R_n (sum_ij S_ik S_jl eta_ij) R_n^T, with (R_n, S) the cover of g."""
    m, r = cell
    if r < 2:
        return
    n = 2 * m + r
    rng = np.random.default_rng(seed)
    phi = standard_spinor(m, r)
    g = random_element(n, r, rng)
    Rn, S, _ = cover(g)
    q = act(g, phi)
    etas = np.zeros((r, r, n, n))
    for i in range(r):
        for j in range(r):
            if i != j:
                etas[i, j] = eta_form(phi, i + 1, j + 1).matrix
    for k in range(r):
        for l in range(k + 1, r):
            # the twist element acts by h f h^{-1} = S f, so f_k f_l on q pulls back to (S^T f)(S^T f)
            pulled = np.einsum("i,j,ijab->ab", S[k], S[l], etas)
            assert np.allclose(eta_form(q, k + 1, l + 1).matrix, Rn @ pulled @ Rn.T, atol=1e-10)


@FAST
@given(st.integers(2, 8), seeds)
def test_lift_rotation_covers(dim, seed):
    rng = np.random.default_rng(seed)
    R = np.linalg.qr(rng.standard_normal((dim, dim)))[0]
    if np.linalg.det(R) < 0:
        R[:, -1] *= -1
    assert np.allclose(reflection_cover(lift_rotation(R), dim), R, atol=1e-10)
