"""Theta-kernel smoothing, Husimi positivity, and Wehrl-type entropies."""

import math

import numpy as np
import pytest

from spinphase.su2 import SpinSpace, coherent_state
from spinphase.mapping import build_kernels, coherent_wigner, wigner_of_state
from spinphase.dynamics import evolve_exact, pure_density
from spinphase.models import LmgParams, lmg_hamiltonian
from spinphase.husimi import (build_smoothing, check_entropy_report, entropies,
                              husimi_from_wigner, marginals, theta3, theta4)


def brute_theta(z, a, alternating, terms=80):
    total = 0.0
    for n in range(-terms, terms + 1):
        term = math.exp(-math.pi * a * n * n) * math.cos(2.0 * math.pi * n * z)
        if alternating and n % 2:
            term = -term
        total += term
    return total


@pytest.mark.parametrize("z,a", [(0.0, 0.5), (0.3, 0.2), (0.7, 1.3), (-1.2, 0.8)])
def test_theta_functions_match_brute_sum(z, a):
    assert abs(theta3(z, a) - brute_theta(z, a, False)) < 1e-12
    assert abs(theta4(z, a) - brute_theta(z, a, True)) < 1e-12


def test_theta_periodicity():
    assert abs(theta3(0.25, 0.7) - theta3(1.25, 0.7)) < 1e-12
    assert abs(theta4(0.25, 0.7) - theta4(1.25, 0.7)) < 1e-12


def test_husimi_bounds_and_mean_small_n():
    sp = SpinSpace(2.0)
    ks = build_kernels(sp)
    sk = build_smoothing(sp)
    hmat = lmg_hamiltonian(LmgParams(n_spins=4, h=-0.3, gamma=0.5), sp)
    rho0 = pure_density(coherent_state(sp, 1.2, 0.3))
    traj = evolve_exact(hmat, rho0, np.linspace(0.0, 6.0, 25))
    for rho in traj.frames:
        h = husimi_from_wigner(wigner_of_state(ks, rho), sk)
        assert h.min() >= 0.0
        assert h.max() <= 1.0 + 1e-9
        assert abs(h.sum() / ks.dim - 1.0) < 1e-9


def test_husimi_rejects_wrong_shape():
    sp = SpinSpace(2.0)
    sk = build_smoothing(sp)
    with pytest.raises(ValueError):
        husimi_from_wigner(np.ones((3, 3)), sk)


def test_marginals_sum_to_sqrt_n():
    sp = SpinSpace(2.0)
    ks = build_kernels(sp)
    sk = build_smoothing(sp)
    h = husimi_from_wigner(coherent_wigner(ks, 0.9, 0.1), sk)
    q, r = marginals(h)
    assert abs(q.sum() - math.sqrt(5)) < 1e-9
    assert abs(r.sum() - math.sqrt(5)) < 1e-9


def test_entropy_report_invariants_pure_state():
    sp = SpinSpace(2.0)
    ks = build_kernels(sp)
    sk = build_smoothing(sp)
    rho = pure_density(coherent_state(sp, 1.0, 0.2))
    rep = entropies(husimi_from_wigner(wigner_of_state(ks, rho), sk), rho=rho)
    check_entropy_report(rep)
    assert abs(rep.s_vn) < 1e-9
    assert rep.i_h >= -1e-9
    assert abs(rep.e_q - rep.e_r) <= rep.e_h + 1e-9
    assert rep.e_h <= rep.e_q + rep.e_r + 1e-9


def test_entropy_maximally_mixed_closed_forms():
    # the mixed-state grid is flat at 1/N; with the unit-sum reading
    # E_H = 2 ln N / N and each marginal entropy is ln N / sqrt N
    for n, j in ((5, 2.0), (21, 10.0)):
        sp = SpinSpace(j)
        ks = build_kernels(sp)
        sk = build_smoothing(sp)
        w = wigner_of_state(ks, np.eye(n) / n)
        h = husimi_from_wigner(w, sk)
        assert np.abs(h - 1.0 / n).max() < 1e-9
        rep = entropies(h)
        assert rep.s_vn is None
        assert abs(rep.e_h - 2.0 * math.log(n) / n) < 1e-9
        assert abs(rep.e_q - math.log(n) / math.sqrt(n)) < 1e-9
        assert abs(rep.e_r - math.log(n) / math.sqrt(n)) < 1e-9
        assert rep.i_h >= -1e-12
        # the S_vn <= E_H bound is a pure-flow pipeline assertion; a
        # maximally mixed state sits far outside it (ln N vs 2 ln N / N)
        with pytest.raises(RuntimeError):
            entropies(h, rho=np.eye(n) / n)


def test_published_entropy_values_n21(ks21, sk21):
    rep = entropies(husimi_from_wigner(coherent_wigner(ks21, math.pi / 2.0, 0.0), sk21))
    assert abs(rep.e_h - 0.1994) < 5e-3
    assert abs(rep.i_h - 0.7144) < 5e-3


def test_entropies_along_figure_run(figure_run, sk21, ks21):
    # spot frames of the long run keep every invariant and hit the
    # published t = 2.15 joint entropy
    times = figure_run["times"]
    idx215 = int(np.argmin(np.abs(times - 2.15)))
    for k in (0, idx215, len(times) - 1):
        w = figure_run["frames"][k]
        rep = entropies(husimi_from_wigner(w, sk21), rho=figure_run["rhos"][k],
                        t=float(times[k]))
        check_entropy_report(rep)
        assert abs(rep.s_vn) < 1e-9
    rep215 = entropies(husimi_from_wigner(figure_run["frames"][idx215], sk21))
    assert abs(rep215.e_h - 0.1958) < 5e-3
