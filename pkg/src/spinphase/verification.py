"""Self-contained verification suites for the phase-space machinery.

Each check recomputes a quantity along two independent routes (closed form
vs matrix algebra, compact kernel vs operator trace, phase-space propagator
vs exact conjugation) and reports the worst deviation.  The fast suite runs
in a couple of seconds at small dimensions; the full suite adds the
N = 21 route-equivalence run and the published entropy reference values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from .su2 import SpinSpace, build_generators, coherent_state
from .mapping import (build_kernels, coherent_wigner, density_from_wigner,
                      map_anticommutator, map_commutator, map_operator,
                      weyl_from_wigner, wigner_from_weyl, wigner_of_state)
from .dynamics import (build_liouville_wigner, build_liouville_weyl, evolve_exact,
                       pure_density, trajectory_phase_space, wigner_trajectory_from_exact)
from .models import LmgParams, coherent_moments, lmg_hamiltonian
from .measures import moments_from_density
from .husimi import build_smoothing, husimi_from_wigner, entropies
from . import oracles


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_dev: float
    tol: float
    detail: str = ""


def _result(name: str, dev: float, tol: float, detail: str = "") -> CheckResult:
    return CheckResult(name=name, passed=bool(dev <= tol), max_dev=float(dev),
                       tol=tol, detail=detail)


def check_gamma_oracle_n3() -> CheckResult:
    """Gamma kernels against exhaustive operator traces at N = 3."""
    sp = SpinSpace(1.0)
    ks = build_kernels(sp)
    n2 = ks.dim * ks.dim
    gs = ks.g.reshape(n2, ks.dim, ks.dim)
    dev = 0.0
    for kind, combine in (("anti", lambda a, b: a @ b + b @ a),
                          ("comm", lambda a, b: a @ b - b @ a)):
        kern = oracles.gamma_kernel(ks, kind)
        for k1 in range(n2):
            for k2 in range(n2):
                prod = combine(gs[k1], gs[k2])
                traces = np.einsum("pij,ji->p", gs, prod)
                dev = max(dev, float(np.abs(kern[:, k1, k2] - traces).max()))
    return _result("gamma-oracle-n3", dev, 1e-10, "anti+comm, exhaustive")


def check_six_index_n3() -> CheckResult:
    """Six-index Fourier Liouville sum against the trace kernel at N = 3."""
    sp = SpinSpace(1.0)
    ks = build_kernels(sp)
    g = build_generators(sp)
    rng = np.random.default_rng(2024)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    h = 0.3 * g.jz + 0.4 * (g.jx @ g.jx) + 0.5 * (a + a.conj().T)
    lhs = oracles.liouville_six_index(ks, h)
    rhs = build_liouville_wigner(ks, h)
    dev = float(np.abs(lhs - rhs).max())
    return _result("six-index-oracle-n3", dev, 1e-10)


def check_table2_j2() -> CheckResult:
    """Closed-form coherent-state moments against matrix traces at j = 2."""
    sp = SpinSpace(2.0)
    g = build_generators(sp)
    rng = np.random.default_rng(11)
    dev = 0.0
    for _ in range(20):
        theta = float(rng.uniform(0.0, math.pi))
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        rho = pure_density(coherent_state(sp, theta, phi))
        ana = coherent_moments(2.0, theta, phi)
        num = moments_from_density(rho, g)
        for axis in "xyz":
            dev = max(dev, abs(ana.mean[axis] - num.mean[axis]))
            dev = max(dev, abs(ana.second[axis] - num.second[axis]))
        for key in ana.cov:
            dev = max(dev, abs(ana.cov[key] - num.cov[key]))
    return _result("table2-closed-forms-j2", dev, 1e-10, "20 random angles")


def check_route_equivalence(j: float, t1: float, dt: float, tol: float,
                            name: str, params: LmgParams) -> CheckResult:
    sp = SpinSpace(j)
    ks = build_kernels(sp)
    hmat = lmg_hamiltonian(params, sp)
    times = np.arange(0.0, t1 + 1e-12, dt)
    w0 = coherent_wigner(ks, math.pi / 2.0, 0.0)
    exact = evolve_exact(hmat, density_from_wigner(ks, w0), times)
    wig_exact = wigner_trajectory_from_exact(ks, exact).frames
    kern_w = build_liouville_wigner(ks, hmat)
    wig_prop = trajectory_phase_space(kern_w, w0, times, "wigner").frames
    kern_v = build_liouville_weyl(ks, hmat)
    v_traj = trajectory_phase_space(kern_v, weyl_from_wigner(ks, w0), times, "weyl").frames
    wig_v = np.array([wigner_from_weyl(ks, f) for f in v_traj])
    dev = max(float(np.abs(wig_prop - wig_exact).max()),
              float(np.abs(wig_v - wig_exact).max()))
    return _result(name, dev, tol, "exact vs wigner-prop vs weyl-prop")


def check_route_equivalence_j2() -> CheckResult:
    return check_route_equivalence(2.0, 2.0, 0.05, 1e-8, "route-equivalence-j2",
                                   LmgParams(n_spins=4, h=-0.1, gamma=0.2))


def check_route_equivalence_n21() -> CheckResult:
    return check_route_equivalence(10.0, 10.0, 0.05, 1e-6, "route-equivalence-n21",
                                   LmgParams(n_spins=20, h=-0.1, gamma=0.2))


def check_entropy_anchors_n21() -> CheckResult:
    """Published joint-entropy and mutual-correlation values, N = 21.

    t = 0 values are state properties; the t = 2.15 value needs the
    figure-generating field coefficient -0.2 (twice the quoted h).
    """
    sp = SpinSpace(10.0)
    ks = build_kernels(sp)
    sk = build_smoothing(sp)
    w0 = coherent_wigner(ks, math.pi / 2.0, 0.0)
    rep0 = entropies(husimi_from_wigner(w0, sk), rho=density_from_wigner(ks, w0))
    dev = max(abs(rep0.e_h - 0.1994), abs(rep0.i_h - 0.7144))
    params = LmgParams(n_spins=20, h=-0.2, gamma=0.2)
    hmat = lmg_hamiltonian(params, sp)
    times = np.arange(0.0, 2.15 + 1e-12, 0.05)
    traj = evolve_exact(hmat, density_from_wigner(ks, w0), times)
    w215 = wigner_of_state(ks, traj.frames[-1])
    rep215 = entropies(husimi_from_wigner(w215, sk), rho=traj.frames[-1], t=2.15)
    dev = max(dev, abs(rep215.e_h - 0.1958))
    detail = "E_H(0)=%.5f I(0)=%.5f E_H(2.15)=%.5f" % (rep0.e_h, rep0.i_h, rep215.e_h)
    return _result("entropy-anchors-n21", dev, 5e-3, detail)


def check_product_rules_n5() -> CheckResult:
    """Grid-level {A,B} and [A,B] maps against operator arithmetic at N = 5."""
    sp = SpinSpace(2.0)
    ks = build_kernels(sp)
    rng = np.random.default_rng(5)
    dev = 0.0
    for _ in range(4):
        a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        b = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        a = a + a.conj().T
        b = b + b.conj().T
        dev = max(dev, float(np.abs(
            map_anticommutator(ks, a, b) - map_operator(ks, a @ b + b @ a)).max()))
        dev = max(dev, float(np.abs(
            map_commutator(ks, a, b) - map_operator(ks, a @ b - b @ a)).max()))
    return _result("product-rules-n5", dev, 1e-10)


FAST_CHECKS: List[Callable[[], CheckResult]] = [
    check_gamma_oracle_n3,
    check_table2_j2,
    check_route_equivalence_j2,
]

FULL_CHECKS: List[Callable[[], CheckResult]] = FAST_CHECKS + [
    check_six_index_n3,
    check_product_rules_n5,
    check_route_equivalence_n21,
    check_entropy_anchors_n21,
]


def run_suite(level: str = "fast") -> List[CheckResult]:
    if level == "fast":
        checks = FAST_CHECKS
    elif level == "full":
        checks = FULL_CHECKS
    else:
        raise ValueError("level must be 'fast' or 'full'")
    return [fn() for fn in checks]
