"""Unitary conjugation vs phase-space propagation."""

import math

import numpy as np
import pytest

from spinphase.su2 import SpinSpace, build_generators, coherent_state
from spinphase.mapping import (build_kernels, coherent_wigner, density_from_wigner,
                               grid_overlap, weyl_from_wigner, wigner_from_weyl)
from spinphase.dynamics import (Trajectory, build_liouville_weyl, build_liouville_wigner,
                                evolve_exact, expectation, fidelity,
                                propagate_exponential, propagate_series, pure_density,
                                trajectory_phase_space, validate_density,
                                wigner_trajectory_from_exact)
from spinphase.models import LmgParams, lmg_hamiltonian


@pytest.fixture(scope="module")
def setup5():
    sp = SpinSpace(2.0)
    ks = build_kernels(sp)
    hmat = lmg_hamiltonian(LmgParams(n_spins=4, h=-0.3, gamma=0.4), sp)
    return sp, ks, hmat


def test_validate_density_rejects_bad_inputs():
    with pytest.raises(ValueError):
        validate_density(np.eye(3))            # trace 3
    with pytest.raises(ValueError):
        validate_density(np.diag([1.5, -0.5]))  # negative eigenvalue
    validate_density(np.diag([0.25, 0.75]))


def test_evolve_exact_conserves_invariants(setup5):
    sp, ks, hmat = setup5
    g = build_generators(sp)
    rho0 = pure_density(coherent_state(sp, 1.2, 0.4))
    times = np.linspace(0.0, 8.0, 33)
    traj = evolve_exact(hmat, rho0, times)
    for rho in traj.frames:
        assert abs(np.trace(rho) - 1.0) < 1e-12
        assert abs(np.trace(rho @ rho) - 1.0) < 1e-12
        assert abs(expectation(rho, hmat) - expectation(rho0, hmat)) < 1e-12
        assert abs(expectation(rho, g.j2) - 6.0) < 1e-12


def test_fidelity_basics(setup5):
    sp, _, hmat = setup5
    rho0 = pure_density(coherent_state(sp, 0.8, 0.0))
    traj = evolve_exact(hmat, rho0, np.array([0.0, 1.7]))
    assert abs(fidelity(rho0, traj.frames[0]) - 1.0) < 1e-12
    f = fidelity(rho0, traj.frames[1])
    assert 0.0 <= f <= 1.0 + 1e-12
    assert abs(f - fidelity(traj.frames[1], rho0)) < 1e-12


def test_series_matches_exponential(setup5):
    sp, ks, hmat = setup5
    kern = build_liouville_wigner(ks, hmat)
    w0 = coherent_wigner(ks, 1.0, 0.5)
    res = propagate_series(kern, w0, 0.3)
    assert res.converged
    ref = propagate_exponential(kern, w0, 0.3)
    assert np.abs(res.grid - ref).max() < 1e-10


def test_trajectory_uniform_and_irregular_agree(setup5):
    sp, ks, hmat = setup5
    kern = build_liouville_wigner(ks, hmat)
    w0 = coherent_wigner(ks, 1.0, 0.5)
    uni = trajectory_phase_space(kern, w0, np.array([0.0, 0.2, 0.4, 0.6]), "wigner")
    irr = trajectory_phase_space(kern, w0, np.array([0.0, 0.2, 0.4, 0.61]), "wigner")
    assert np.abs(uni.frames[2] - irr.frames[2]).max() < 1e-10
    assert uni.frames.dtype == np.float64


def test_three_routes_agree(setup5):
    sp, ks, hmat = setup5
    times = 0.05 * np.arange(41)
    w0 = coherent_wigner(ks, math.pi / 2, 0.0)
    exact = evolve_exact(hmat, density_from_wigner(ks, w0), times)
    ref = wigner_trajectory_from_exact(ks, exact).frames
    wig = trajectory_phase_space(build_liouville_wigner(ks, hmat), w0, times, "wigner").frames
    vf = trajectory_phase_space(build_liouville_weyl(ks, hmat),
                                weyl_from_wigner(ks, w0), times, "weyl").frames
    back = np.array([wigner_from_weyl(ks, f) for f in vf])
    assert np.abs(wig - ref).max() < 1e-10
    assert np.abs(back - ref).max() < 1e-10


def test_jz_flow_is_angle_shift():
    # under H = J_z a 2 pi k / N step rolls the Wigner grid along nu
    sp = SpinSpace(2.0)
    ks = build_kernels(sp)
    g = build_generators(sp)
    n = ks.dim
    w0 = coherent_wigner(ks, 1.1, 0.3)
    kern = build_liouville_wigner(ks, g.jz)
    for k in (1, 2):
        wt = propagate_exponential(kern, w0, 2.0 * math.pi * k / n)
        assert np.abs(wt.real - np.roll(w0, -k, axis=1)).max() < 1e-10


def test_frame_at_and_kind(setup5):
    sp, ks, hmat = setup5
    times = np.array([0.0, 0.5, 1.0])
    traj = trajectory_phase_space(build_liouville_wigner(ks, hmat),
                                  coherent_wigner(ks, 1.0, 0.0), times, "wigner")
    assert isinstance(traj, Trajectory)
    assert traj.kind == "wigner"
    assert np.abs(traj.frame_at(0.5) - traj.frames[1]).max() == 0.0


def test_single_point_grid(setup5):
    sp, ks, hmat = setup5
    w0 = coherent_wigner(ks, 0.7, 0.2)
    traj = trajectory_phase_space(build_liouville_weyl(ks, hmat),
                                  weyl_from_wigner(ks, w0), np.array([3.0]), "weyl")
    assert traj.frames.shape[0] == 1
    back = wigner_from_weyl(ks, traj.frames[0])
    assert abs(grid_overlap(ks, w0, back.real) - 1.0) < 1e-10
