"""Phase-point basis, grid transforms, and the compact product kernels."""

import math

import numpy as np
import pytest

from spinphase.su2 import SpinSpace, build_generators, coherent_state
from spinphase.mapping import (build_kernels, coherent_weyl, coherent_wigner,
                               density_from_wigner, grid_overlap,
                               map_anticommutator, map_commutator, map_operator,
                               mean_value, schwinger_operator, weyl_from_wigner,
                               weyl_of_state, wigner_from_weyl, wigner_of_state)
from spinphase.dynamics import pure_density
from spinphase import oracles


def random_density(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


@pytest.fixture(scope="module")
def ks5():
    return build_kernels(SpinSpace(2.0))


def test_schwinger_pair_relation():
    sp = SpinSpace(2.0)
    n = 5
    ks = build_kernels(sp)
    omega = np.exp(2j * math.pi / n)
    for eta in range(n):
        for xi in range(n):
            lhs = np.linalg.matrix_power(ks.v, xi) @ np.linalg.matrix_power(ks.u, eta)
            rhs = omega ** (eta * xi) * np.linalg.matrix_power(ks.u, eta) @ np.linalg.matrix_power(ks.v, xi)
            assert np.abs(lhs - rhs).max() < 1e-12


def test_schwinger_operator_unitary_and_label_phase():
    sp = SpinSpace(1.0)
    n = 3
    for eta in (-1, 0, 2):
        for xi in (-1, 1, 3):
            s = schwinger_operator(sp, eta, xi)
            assert np.abs(n * s @ s.conj().T - np.eye(n)).max() < 1e-12
    # the U^eta V^xi content is mod(N) periodic; only the literal
    # half-integer prefactor distinguishes extended labels
    a = schwinger_operator(sp, 1, 2)
    b = schwinger_operator(sp, 1 + n, 2)
    ratio = np.exp(1j * math.pi * ((1 + n) * 2 - 1 * 2) / n)
    assert np.abs(a * ratio - b).max() < 1e-12


def test_phase_point_basis_properties(ks5):
    n = ks5.dim
    gs = ks5.g
    ident = np.zeros((n, n), dtype=complex)
    for mu in range(n):
        for nu in range(n):
            gm = gs[mu, nu]
            assert np.abs(gm - gm.conj().T).max() < 1e-12
            ident += gm
    # completeness: the basis resolves the identity up to its scale
    scale = ident[0, 0].real / n
    assert np.abs(ident - scale * n * np.eye(n)).max() < 1e-10


def test_density_round_trip(ks5):
    rho = random_density(5, 42)
    w = wigner_of_state(ks5, rho)
    assert abs(w.sum() / ks5.dim - 1.0) < 1e-12
    back = density_from_wigner(ks5, w)
    assert np.abs(back - rho).max() < 1e-12


def test_weyl_wigner_round_trip(ks5):
    rho = random_density(5, 43)
    w = wigner_of_state(ks5, rho)
    v = weyl_from_wigner(ks5, w)
    assert np.abs(v - weyl_of_state(ks5, rho)).max() < 1e-12
    back = wigner_from_weyl(ks5, v)
    assert np.abs(back - w).max() < 1e-12


def test_mean_value_and_overlap(ks5):
    g = build_generators(SpinSpace(2.0))
    rho_a = random_density(5, 44)
    rho_b = random_density(5, 45)
    wa = wigner_of_state(ks5, rho_a)
    wb = wigner_of_state(ks5, rho_b)
    val = mean_value(ks5, map_operator(ks5, g.jz), wa)
    assert abs(val - np.trace(rho_a @ g.jz)) < 1e-12
    assert abs(grid_overlap(ks5, wa, wb) - np.trace(rho_a @ rho_b).real) < 1e-12


def test_coherent_grids_match_state(ks5):
    sp = SpinSpace(2.0)
    theta, phi = 0.9, 2.1
    rho = pure_density(coherent_state(sp, theta, phi))
    assert np.abs(coherent_wigner(ks5, theta, phi) - wigner_of_state(ks5, rho)).max() < 1e-12
    assert np.abs(coherent_weyl(ks5, theta, phi) - weyl_of_state(ks5, rho)).max() < 1e-12


@pytest.mark.parametrize("top", [True, False])
def test_pole_states_single_row_support(ks5, top):
    sp = SpinSpace(2.0)
    vec = np.zeros(5, dtype=complex)
    idx = -1 if top else 0
    vec[idx] = 1.0
    w = wigner_of_state(ks5, pure_density(vec))
    row = np.where(ks5.labels == (2 if top else -2))[0][0]
    off = np.delete(w, row, axis=0)
    assert np.abs(off).max() < 1e-12
    assert np.abs(w[row] - 1.0).max() < 1e-12


def test_product_maps_match_operator_arithmetic(ks5):
    rng = np.random.default_rng(46)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    b = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    a, b = a + a.conj().T, b + b.conj().T
    assert np.abs(map_anticommutator(ks5, a, b) - map_operator(ks5, a @ b + b @ a)).max() < 1e-11
    assert np.abs(map_commutator(ks5, a, b) - map_operator(ks5, a @ b - b @ a)).max() < 1e-11


@pytest.mark.parametrize("kind", ["anti", "comm"])
def test_gamma_kernel_spot_checks_n5(ks5, kind):
    kern = oracles.gamma_kernel(ks5, kind)
    n2 = 25
    gs = ks5.g.reshape(n2, 5, 5)
    rng = np.random.default_rng(47)
    for _ in range(12):
        k1, k2 = rng.integers(0, n2, size=2)
        prod = gs[k1] @ gs[k2] + gs[k2] @ gs[k1] if kind == "anti" else gs[k1] @ gs[k2] - gs[k2] @ gs[k1]
        traces = np.einsum("pij,ji->p", gs, prod)
        assert np.abs(kern[:, k1, k2] - traces).max() < 1e-11


def test_product_via_gamma_reproduces_anticommutator(ks5):
    rng = np.random.default_rng(48)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    b = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    a, b = a + a.conj().T, b + b.conj().T
    kern = oracles.gamma_kernel(ks5, "anti")
    lhs = oracles.product_via_gamma(ks5, kern, map_operator(ks5, a), map_operator(ks5, b))
    assert np.abs(lhs - map_anticommutator(ks5, a, b)).max() < 1e-10


def test_g_matrix_element_closed_form(ks5):
    # the beta-sum form holds inside the ladder window |m - m'| <= ell
    sp = SpinSpace(2.0)
    ms = ks5.labels.astype(float)
    checked = 0
    for mu in (-2, 0, 1):
        for nu in (-1, 2):
            gm = ks5.g[np.where(ks5.labels == mu)[0][0], np.where(ks5.labels == nu)[0][0]]
            for a, m in enumerate(ms):
                for b, mp in enumerate(ms):
                    if abs(m - mp) > sp.ell:
                        continue
                    val = oracles.g_matrix_element(sp, m, mp, mu, nu)
                    assert abs(val - gm[a, b]) < 1e-11
                    checked += 1
    assert checked > 100
