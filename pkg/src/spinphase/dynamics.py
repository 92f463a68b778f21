"""Time evolution: exact conjugation and phase-space Liouville kernels.

Three routes evolve the same physics (hbar = 1 throughout):

  exact   rho(t) = e^{-iHt} rho(0) e^{+iHt} via hermitian eigendecomposition;
  wigner  the N^2 x N^2 kernel L[(mu,nu),(mu',nu')] = (1/N) Tr[G [H, G']]
          acting on the Wigner grid;
  weyl    the closed-form kernel
          L[(eta,xi),(eta',xi')] = (2i/sqrt(N)) sin[(pi/N)(eta' xi - xi' eta)]
                                   * H~(eta-eta', xi-xi')
          acting on the characteristic function, where H~(a,b) = Tr[S(a,b) H]
          is evaluated at the literal out-of-range labels (the half-integer
          phase of S then supplies exactly the quasi-periodic signs that make
          the windowed kernel exact).

Both phase-space kernels satisfy i dW/dt = L W, so the propagator is
exp(-i L (t - t0)).  The truncated-series propagator uses the same sign;
the opposite (+i) convention circulating in some writeups makes the series
run backwards in time, which the exact-route cross-checks reject.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh, expm

from .mapping import KernelSet, schwinger_phase
from .su2 import is_hermitian


@dataclass(frozen=True)
class Trajectory:
    """Time series of frames; kind is 'density', 'wigner', or 'weyl'."""

    times: np.ndarray
    frames: np.ndarray = field(repr=False)
    kind: str

    def __len__(self) -> int:
        return len(self.times)

    def frame_at(self, t: float) -> np.ndarray:
        idx = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[idx] - t) > 1e-9:
            raise KeyError(f"no frame at t={t}; nearest is {self.times[idx]}")
        return self.frames[idx]


def validate_density(rho: np.ndarray, tol: float = 1e-9) -> None:
    if not is_hermitian(rho, 1e-10):
        raise ValueError("density matrix is not hermitian")
    if abs(np.trace(rho).real - 1.0) > tol:
        raise ValueError(f"density trace {np.trace(rho).real} != 1")
    evals = np.linalg.eigvalsh(rho)
    if evals.min() < -1e-8:
        raise ValueError(f"density matrix has negative eigenvalue {evals.min():.3e}")


def pure_density(vec: np.ndarray) -> np.ndarray:
    v = vec / np.linalg.norm(vec)
    return np.outer(v, v.conj())


def evolve_exact(h: np.ndarray, rho0: np.ndarray, times: np.ndarray) -> Trajectory:
    """Unitary conjugation rho(t) = e^{-iHt} rho0 e^{+iHt} at each time.

    H must be hermitian; the propagator comes from its eigendecomposition so
    unitarity holds to rounding at arbitrary t.
    """
    if not is_hermitian(h, 1e-9):
        raise ValueError("evolve_exact expects a hermitian Hamiltonian")
    validate_density(rho0)
    times = np.asarray(times, dtype=float)
    evals, evecs = eigh(h)
    r0 = evecs.conj().T @ rho0 @ evecs
    frames = np.empty((len(times), *rho0.shape), dtype=complex)
    for k, t in enumerate(times):
        ph = np.exp(-1j * evals * t)
        frames[k] = evecs @ (np.outer(ph, ph.conj()) * r0) @ evecs.conj().T
    return Trajectory(times, frames, "density")


def expectation(rho: np.ndarray, op: np.ndarray) -> complex:
    return complex(np.trace(rho @ op))


def fidelity(rho_a: np.ndarray, rho_b: np.ndarray) -> float:
    """Overlap Tr[rho_a rho_b]; real for hermitian inputs."""
    val = np.trace(rho_a @ rho_b)
    if abs(val.imag) > 1e-9:
        raise RuntimeError(f"fidelity has imaginary residue {val.imag:.3e}")
    return float(val.real)


def build_liouville_wigner(ks: KernelSet, h: np.ndarray) -> np.ndarray:
    """Wigner-space kernel L[(mu,nu),(mu',nu')] = (1/N) Tr[G(mu,nu) [H, G(mu',nu')]].

    Returned as an (N^2, N^2) matrix in row-major (mu,nu) flattening.
    i dW/dt = L W reproduces the von Neumann equation exactly.
    """
    n = ks.dim
    nn = n * n
    gflat = ks.g.reshape(nn, n, n)
    comm = np.einsum("ij,pjk->pik", h, gflat) - np.einsum("pij,jk->pik", gflat, h)
    # Tr[G_p C_q] = sum_ij G_p[i,j] C_q[j,i]
    gmat = gflat.reshape(nn, nn)
    cmat = comm.transpose(0, 2, 1).reshape(nn, nn)
    return (gmat @ cmat.T) / n


def build_liouville_weyl(ks: KernelSet, h: np.ndarray) -> np.ndarray:
    """Weyl-space kernel from the closed form with literal-label H~ lookups.

    H~(a, b) = Tr[S(a,b) H] is tabulated for a, b in [-2 ell, 2 ell] with the
    half-integer phase e^{i pi a b/N} taken at the literal labels; the kernel
    entry for rows (eta,xi) and columns (eta',xi') reads
        (2i/sqrt(N)) sin[(pi/N)(eta' xi - xi' eta)] H~(eta-eta', xi-xi').
    """
    n = ks.dim
    ell = ks.space.ell
    m = ks.space.m_values.astype(int)
    ext = np.arange(-2 * ell, 2 * ell + 1)
    roots = np.exp(2j * np.pi * np.arange(n) / n)

    htab = np.empty((len(ext), len(ext)), dtype=complex)
    idx = np.arange(n)
    for a_i, a in enumerate(ext):
        uph = roots[(int(a) * m) % n]
        for b_i, b in enumerate(ext):
            shift = (idx + int(b)) % n
            tr = np.sum(uph * h[shift, idx])
            htab[a_i, b_i] = schwinger_phase(int(a), int(b), n) * tr / np.sqrt(n)

    lab = ks.labels
    eta = lab[:, None, None, None]
    xi = lab[None, :, None, None]
    etap = lab[None, None, :, None]
    xip = lab[None, None, None, :]
    sin_fac = np.sin(np.pi * (etap * xi - xip * eta) / n)
    hval = htab[(eta - etap) + 2 * ell, (xi - xip) + 2 * ell]
    kern = (2j / np.sqrt(n)) * sin_fac * hval
    nn = n * n
    return kern.reshape(nn, nn)


@dataclass(frozen=True)
class SeriesResult:
    grid: np.ndarray
    order: int
    last_term_norm: float
    converged: bool


def propagate_series(
    kernel: np.ndarray,
    grid0: np.ndarray,
    delta_t: float,
    order: int = 40,
    rtol: float = 1e-12,
) -> SeriesResult:
    """Truncated propagator series sum_k (-i (t-t0))^k L^k / k! applied to grid0.

    Reports the norm of the last added term; converged=False flags a series
    that is still growing (or above rtol) at the requested order, rather than
    failing silently.
    """
    shape = grid0.shape
    vec = grid0.astype(complex).ravel()
    acc = vec.copy()
    term = vec.copy()
    last = 0.0
    growing = False
    prev = np.inf
    for k in range(1, order + 1):
        term = (-1j * delta_t / k) * (kernel @ term)
        acc = acc + term
        last = float(np.linalg.norm(term))
        growing = last > prev
        prev = last
    ref = max(float(np.linalg.norm(acc)), 1e-300)
    converged = (last / ref <= rtol) and not growing
    return SeriesResult(acc.reshape(shape), order, last, converged)


def propagate_exponential(kernel: np.ndarray, grid0: np.ndarray, delta_t: float) -> np.ndarray:
    """exp(-i L (t-t0)) applied to grid0; the production propagator."""
    shape = grid0.shape
    vec = grid0.astype(complex).ravel()
    out = expm(-1j * delta_t * kernel) @ vec
    return out.reshape(shape)


def trajectory_phase_space(
    kernel: np.ndarray,
    grid0: np.ndarray,
    times: np.ndarray,
    kind: str,
) -> Trajectory:
    """Propagate a phase-space grid along `times` with the exponential map.

    Uniformly spaced times reuse a single step propagator; otherwise each
    frame gets its own matrix exponential from t0.
    """
    times = np.asarray(times, dtype=float)
    shape = grid0.shape
    vec0 = grid0.astype(complex).ravel()
    frames = np.empty((len(times), *shape), dtype=complex)
    steps = np.diff(times)
    if len(times) > 1 and np.allclose(steps, steps[0], rtol=0, atol=1e-12):
        prop = expm(-1j * steps[0] * kernel)
        vec = vec0.copy()
        frames[0] = vec.reshape(shape)
        for k in range(1, len(times)):
            vec = prop @ vec
            frames[k] = vec.reshape(shape)
    else:
        for k, t in enumerate(times):
            frames[k] = propagate_exponential(kernel, grid0, t - times[0])
    if kind == "wigner":
        resid = float(np.max(np.abs(frames.imag))) if len(times) else 0.0
        if resid > 1e-8:
            raise RuntimeError(f"Wigner trajectory grew imaginary residue {resid:.3e}")
        frames = frames.real
    return Trajectory(times, frames, kind)


def wigner_trajectory_from_exact(ks: KernelSet, traj: Trajectory) -> Trajectory:
    """Map a density trajectory frame-by-frame to Wigner grids."""
    from .mapping import wigner_of_state

    frames = np.array([wigner_of_state(ks, rho) for rho in traj.frames])
    return Trajectory(traj.times, frames, "wigner")
