"""Model Hamiltonians: symmetries, closed-form moments, twisting dynamics."""

import math

import numpy as np
import pytest

from spinphase.su2 import SpinSpace, build_generators, coherent_state
from spinphase.dynamics import evolve_exact, pure_density
from spinphase.measures import moments_from_density
from spinphase.models import (KuParams, LmgParams, coherent_moments,
                              ku_analytic_moments, ku_hamiltonian,
                              ku_numeric_vs_analytic, lmg_hamiltonian)
from scipy.linalg import expm


@pytest.mark.parametrize("gamma", [-1.0, -0.3, 0.0, 0.2, 1.0])
def test_lmg_parity_conservation(gamma):
    sp = SpinSpace(3.0)
    g = build_generators(sp)
    h = lmg_hamiltonian(LmgParams(n_spins=6, h=-0.4, gamma=gamma), sp)
    parity = expm(1j * math.pi * (g.jz + 3.0 * np.eye(7)))
    assert np.abs(h @ parity - parity @ h).max() < 1e-12


def test_lmg_isotropic_axial_symmetry():
    sp = SpinSpace(3.0)
    g = build_generators(sp)
    h = lmg_hamiltonian(LmgParams(n_spins=6, h=-0.4, gamma=1.0), sp)
    assert np.abs(h @ g.jz - g.jz @ h).max() < 1e-12


def test_lmg_gamma_minus_one_spectrum_symmetric():
    # at h=0, gamma=-1 the two-body part anticommutes with a pi rotation
    # about (x+y)/sqrt(2), so the spectrum is symmetric about 0
    sp = SpinSpace(3.0)
    g = build_generators(sp)
    h = lmg_hamiltonian(LmgParams(n_spins=6, h=0.0, gamma=-1.0), sp)
    r = expm(-1j * math.pi * (g.jx + g.jy) / math.sqrt(2.0))
    assert np.abs(h @ r + r @ h).max() < 1e-12
    ev = np.linalg.eigvalsh(h)
    assert np.abs(np.sort(ev) + np.sort(-ev)[::-1]).max() < 1e-12


def test_lmg_sparsity_pattern():
    # collective two-body terms only connect m to m, m +- 2
    sp = SpinSpace(5.0)
    h = lmg_hamiltonian(LmgParams(n_spins=10, h=-0.2, gamma=0.3), sp)
    n = 11
    for a in range(n):
        for b in range(n):
            if abs(a - b) not in (0, 2):
                assert abs(h[a, b]) == 0.0


def test_lmg_full_form_offset():
    sp = SpinSpace(2.0)
    p = LmgParams(n_spins=4, h=-0.1, gamma=0.2)
    base = lmg_hamiltonian(p, sp)
    full = lmg_hamiltonian(p, sp, full_form=True)
    shift = (1.0 + p.gamma) / 2.0
    assert np.abs(full - (2.0 * base + shift * np.eye(5))).max() < 1e-12


def test_lmg_hand_built_n2():
    # N = 2 (j = 1): -h J_z - (1/2)(J_x^2 + g J_y^2) in the ascending-m basis
    sp = SpinSpace(1.0)
    hh, gg = -0.7, 0.3
    h = lmg_hamiltonian(LmgParams(n_spins=2, h=hh, gamma=gg), sp)
    jx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]) / math.sqrt(2)
    jy = np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]]) / math.sqrt(2)
    jz = np.diag([-1.0, 0.0, 1.0])
    ref = -hh * jz - 0.5 * (jx @ jx + gg * (jy @ jy))
    assert np.abs(h - ref).max() < 1e-12


def test_lmg_rejects_bad_params():
    with pytest.raises(ValueError):
        LmgParams(n_spins=5, h=0.0, gamma=0.2)
    with pytest.raises(ValueError):
        LmgParams(n_spins=4, h=0.0, gamma=1.5)


@pytest.mark.parametrize("j", [0.5, 2.0, 10.0])
def test_coherent_moments_match_matrix(j):
    sp = SpinSpace(j)
    g = build_generators(sp)
    rng = np.random.default_rng(int(2 * j) + 5)
    for _ in range(8):
        theta = float(rng.uniform(0.05, math.pi - 0.05))
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        ana = coherent_moments(j, theta, phi)
        num = moments_from_density(pure_density(coherent_state(sp, theta, phi)), g)
        for ax in "xyz":
            assert abs(ana.mean[ax] - num.mean[ax]) < 1e-10
            assert abs(ana.second[ax] - num.second[ax]) < 1e-10
        for key, val in ana.cov.items():
            assert abs(val - num.cov[key]) < 1e-10


def test_ku_hamiltonian_is_twisting_term():
    sp = SpinSpace(2.0)
    g = build_generators(sp)
    h = ku_hamiltonian(KuParams(chi=0.7, j=2.0), sp)
    assert np.abs(h - 0.7 * g.jz @ g.jz).max() < 1e-12


def test_ku_analytic_matches_matrix_evolution():
    p = KuParams(chi=1.0, j=2.0)
    sp = SpinSpace(2.0)
    g = build_generators(sp)
    hmat = ku_hamiltonian(p, sp)
    theta = phi = math.pi / 4.0
    taus = np.linspace(0.0, 2.0 * math.pi, 41)
    traj = evolve_exact(hmat, pure_density(coherent_state(sp, theta, phi)), taus)
    for tau, rho in zip(taus, traj.frames):
        ana = ku_analytic_moments(p, theta, phi, float(tau))
        num = moments_from_density(rho, g)
        for ax in "xyz":
            assert abs(ana.mean[ax] - num.mean[ax]) < 1e-10
            assert abs(ana.second[ax] - num.second[ax]) < 1e-10
        # only the xy covariance has a closed form
        assert abs(ana.cov["xy"] - num.cov["xy"]) < 1e-10
        assert ana.cov["xz"] is None and ana.cov["yz"] is None


def test_ku_numeric_vs_analytic_helper():
    p = KuParams(chi=1.0, j=1.5)
    devs = ku_numeric_vs_analytic(p, 0.9, 0.4, np.linspace(0.0, 3.0, 31))
    assert devs["max_dev"] < 1e-10
    assert devs["n_points"] == 31
