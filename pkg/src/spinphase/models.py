"""Model Hamiltonians and their closed-form moment oracles.

Two collective-spin models drive everything downstream.

Anisotropic two-body model (N spins 1/2, maximal multiplet j = N/2).  The
working form is

    H' = -h J_z - (lam/N) (J_x^2 + gamma J_y^2)

with transverse field h, anisotropy gamma in [-1, 1] and ferromagnetic
coupling lam = 1 by default.  The underlying two-body form

    H = -2h J_z - 2 p_plus [J^2 - J_z^2 - (N/2) I] - p_minus (J_+^2 + J_-^2)

with p_pm = (lam/2N)(1 +- gamma) is available behind full_form=True; the two
differ by an overall factor 2 and the constant (lam/2)(1+gamma) I, i.e.
full = 2 H' + (lam/2)(1+gamma) I, so H' fixes the time scale used for all
quoted dynamics.  Block structure: <m|H'|m'> = 0 unless m - m' in {0, +-2},
hence [H', exp(i pi J_z)] = 0 for every gamma.  At gamma = 1 the model is
axially symmetric, [H', J_z] = 0.  At gamma = -1 the rotation R by pi about
the axis (x+y)/sqrt(2) maps (J_x, J_y, J_z) -> (J_y, J_x, -J_z) and
anticommutes with H' for any h, so that spectrum is symmetric about zero.
(The axial and the anticommuting symmetries sit at opposite ends of the
anisotropy interval; they are sometimes conflated in writeups.)

Twisting model H = chi J_z^2 with dimensionless time tau = chi t.  Its
Heisenberg moments on a coherent state |theta, phi> have closed forms built
from A_tau = [cos^2 tau + sin^2 tau cos^2 theta]^(1/2) and the phase
delta_tau = arg(cos tau + i sin tau cos theta).  Working with the complex
number z_tau = cos tau + i sin tau cos theta = A_tau e^(i delta_tau) keeps
every A^p trig(alpha - p delta) combination smooth through cos tau = 0,
where a naive arctan branch would jump.  The closed forms cover the means,
the diagonal second moments and the xy covariance; the xz/yz covariances
have no closed form here and are left as None in the report.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .su2 import SpinSpace, build_generators, coherent_state
from .measures import MomentReport, moments_from_density


@dataclass(frozen=True)
class LmgParams:
    n_spins: int
    h: float
    gamma: float
    lam: float = 1.0

    def __post_init__(self):
        if self.n_spins < 2 or self.n_spins % 2 != 0:
            raise ValueError("n_spins must be an even integer >= 2")
        if abs(self.gamma) > 1.0:
            raise ValueError("anisotropy gamma must lie in [-1, 1]")

    @property
    def j(self) -> float:
        return self.n_spins / 2.0

    @property
    def dim(self) -> int:
        return self.n_spins + 1


@dataclass(frozen=True)
class KuParams:
    chi: float
    j: float

    def __post_init__(self):
        twoj = round(2 * self.j)
        if twoj < 1 or abs(2 * self.j - twoj) > 1e-12:
            raise ValueError("j must be a positive half-integer")


def lmg_hamiltonian(p: LmgParams, space: SpinSpace, full_form: bool = False) -> np.ndarray:
    """Hamiltonian matrix in the |j, m> basis (working form by default)."""
    if space.dim != p.dim:
        raise ValueError("space dim %d does not match n_spins %d" % (space.dim, p.n_spins))
    g = build_generators(space)
    n = float(p.n_spins)
    if full_form:
        pp = p.lam * (1.0 + p.gamma) / (2.0 * n)
        pm = p.lam * (1.0 - p.gamma) / (2.0 * n)
        eye = np.eye(space.dim)
        h = (-2.0 * p.h * g.jz
             - 2.0 * pp * (g.j2 - g.jz @ g.jz - 0.5 * n * eye)
             - pm * (g.jp @ g.jp + g.jm @ g.jm))
    else:
        h = -p.h * g.jz - (p.lam / n) * (g.jx @ g.jx + p.gamma * (g.jy @ g.jy))
    return 0.5 * (h + h.conj().T)


def ku_hamiltonian(p: KuParams, space: SpinSpace) -> np.ndarray:
    """chi J_z^2, diagonal in the |j, m> basis."""
    if abs(space.j - p.j) > 1e-12:
        raise ValueError("space j=%s does not match params j=%s" % (space.j, p.j))
    return np.diag(p.chi * space.m_values ** 2).astype(complex)


def coherent_moments(j: float, theta: float, phi: float, t: float = 0.0) -> MomentReport:
    """Closed-form moments of a spin coherent state |theta, phi>."""
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    s2t, s2p = np.sin(2.0 * theta), np.sin(2.0 * phi)
    mean = {"x": j * cp * st, "y": j * sp * st, "z": -j * ct}
    var = {
        "x": 0.5 * j * (1.0 - cp * cp * st * st),
        "y": 0.5 * j * (1.0 - sp * sp * st * st),
        "z": 0.5 * j * st * st,
    }
    cov = {
        "xy": -0.25 * j * s2p * st * st,
        "xz": 0.25 * j * cp * s2t,
        "yz": 0.25 * j * sp * s2t,
    }
    second = {a: var[a] + mean[a] ** 2 for a in ("x", "y", "z")}
    return MomentReport(t=t, mean={k: float(v) for k, v in mean.items()},
                        second={k: float(v) for k, v in second.items()},
                        cov={k: float(v) for k, v in cov.items()})


def ku_analytic_moments(p: KuParams, theta: float, phi: float, tau: float) -> MomentReport:
    """Heisenberg-picture moments of the twisting model at tau = chi t.

    Continuous-branch evaluation: with z_s = cos s + i sin s cos(theta),
    A_s^p cos(alpha - p delta_s) = Re[e^(i alpha) conj(z_s)^p] and likewise
    with Im for the sine form.  The report's t field carries tau.
    """
    j = float(p.j)
    st, ct = np.sin(theta), np.cos(theta)
    z1 = complex(np.cos(tau), np.sin(tau) * ct)            # A_tau e^(i delta_tau)
    z2 = complex(np.cos(2.0 * tau), np.sin(2.0 * tau) * ct)  # for delta at 2 tau

    # means: <J_x> + i <J_y> = j sin(theta) A^(2j-1) e^{i [phi - (2j-1) delta]}
    w1 = np.exp(1j * phi) * np.conj(z1) ** (2.0 * j - 1.0)
    mean = {"x": j * st * w1.real, "y": j * st * w1.imag, "z": -j * ct}

    # diagonal second moments and the xy covariance
    w2 = np.exp(1j * 2.0 * phi) * np.conj(z2) ** (2.0 * j - 2.0)
    wq = np.exp(1j * 2.0 * phi) * np.conj(z1) ** (4.0 * j - 2.0)
    quarter = 0.25 * j * (2.0 * j - 1.0) * st * st
    second = {
        "x": 0.5 * j + quarter * (1.0 + w2.real),
        "y": 0.5 * j + quarter * (1.0 - w2.real),
        "z": j * j * ct * ct + 0.5 * j * st * st,
    }
    cov_xy = quarter * w2.imag - 0.5 * j * j * wq.imag * st * st
    return MomentReport(t=float(tau),
                        mean={k: float(v) for k, v in mean.items()},
                        second={k: float(v) for k, v in second.items()},
                        cov={"xy": float(cov_xy), "xz": None, "yz": None})


def ku_numeric_vs_analytic(p: KuParams, theta: float, phi: float, taus) -> dict:
    """Closed forms against direct matrix evolution on a tau grid.

    The Hamiltonian is diagonal, so each frame is a phase twist of the
    initial coherent state.  Returns the overall max-abs deviation plus a
    per-field breakdown; covariances other than xy are skipped (no closed
    form to compare).
    """
    taus = np.asarray(taus, dtype=float)
    space = SpinSpace(p.j)
    gens = build_generators(space)
    psi0 = coherent_state(space, theta, phi)
    msq = space.m_values ** 2

    fields = ["mean_x", "mean_y", "mean_z", "second_x", "second_y", "second_z", "cov_xy"]
    worst = {f: 0.0 for f in fields}
    for tau in taus:
        psi = np.exp(-1j * tau * msq) * psi0
        rho = np.outer(psi, psi.conj())
        num = moments_from_density(rho, gens, t=tau)
        ana = ku_analytic_moments(p, theta, phi, tau)
        for a in ("x", "y", "z"):
            worst["mean_" + a] = max(worst["mean_" + a], abs(num.mean[a] - ana.mean[a]))
            worst["second_" + a] = max(worst["second_" + a], abs(num.second[a] - ana.second[a]))
        worst["cov_xy"] = max(worst["cov_xy"], abs(num.cov["xy"] - ana.cov["xy"]))
    return {"max_dev": max(worst.values()), "field_dev": worst, "n_points": int(taus.size)}
