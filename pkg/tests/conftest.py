"""Shared fixtures: the N=21 workspace and the long reference runs.

The heavy objects (kernel sets, smoothing tables, exact trajectories) are
session scoped so the acceptance tests can share them.  Acceptance tests
append one line per criterion to ACCEPTANCE_LINES; a terminal-summary hook
prints the collected report after the test run.
"""

import math

import numpy as np
import pytest

from spinphase.su2 import SpinSpace, build_generators, coherent_state
from spinphase.mapping import build_kernels
from spinphase.dynamics import evolve_exact, pure_density, wigner_trajectory_from_exact
from spinphase.models import LmgParams, lmg_hamiltonian
from spinphase.measures import build_mapped_operators, criteria_from_moments, moments_from_wigner
from spinphase.husimi import build_smoothing

ACCEPTANCE_LINES = []

THETA0 = math.pi / 2.0
PHI0 = 0.0


def report_line(num, passed, detail):
    line = "criterion %02d %s  %s" % (num, "PASS" if passed else "FAIL", detail)
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def space21():
    return SpinSpace(10.0)


@pytest.fixture(scope="session")
def ks21(space21):
    return build_kernels(space21)


@pytest.fixture(scope="session")
def gens21(space21):
    return build_generators(space21)


@pytest.fixture(scope="session")
def mops21(ks21):
    return build_mapped_operators(ks21)


@pytest.fixture(scope="session")
def sk21(space21):
    return build_smoothing(space21)


def _lmg_wigner_run(space, ks, h, gamma, t1, dt):
    params = LmgParams(n_spins=20, h=h, gamma=gamma)
    hmat = lmg_hamiltonian(params, space)
    times = dt * np.arange(int(round(t1 / dt)) + 1)
    rho0 = pure_density(coherent_state(space, THETA0, PHI0))
    traj = evolve_exact(hmat, rho0, times)
    frames = wigner_trajectory_from_exact(ks, traj).frames
    return {"params": params, "hmat": hmat, "times": times,
            "rhos": traj.frames, "frames": frames}


@pytest.fixture(scope="session")
def figure_run(space21, ks21):
    """Anchor-reproducing LMG run: field coefficient -0.2, t in [0, 50]."""
    return _lmg_wigner_run(space21, ks21, -0.2, 0.2, 50.0, 0.05)


@pytest.fixture(scope="session")
def printed_run(space21, ks21):
    """Same protocol at the quoted field h = -0.1."""
    return _lmg_wigner_run(space21, ks21, -0.1, 0.2, 50.0, 0.05)


@pytest.fixture(scope="session")
def h0_runs(space21, ks21):
    """Zero-field validity-domain runs at gamma = 0.5 and 0.948."""
    return {g: _lmg_wigner_run(space21, ks21, 0.0, g, 50.0, 0.05)
            for g in (0.5, 0.948)}


def criteria_series(run, mops, n_spins=20):
    out = []
    for t, w in zip(run["times"], run["frames"]):
        m = moments_from_wigner(w, mops, t=float(t))
        out.append(criteria_from_moments(m, n_spins))
    return out


@pytest.fixture(scope="session")
def figure_criteria(figure_run, mops21):
    return criteria_series(figure_run, mops21)


@pytest.fixture(scope="session")
def printed_criteria(printed_run, mops21):
    return criteria_series(printed_run, mops21)
