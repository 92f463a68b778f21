"""Discrete phase-space mapping for odd-dimensional spin spaces.

Operators on an N = 2j+1 dimensional space (N odd, so ell = (N-1)/2 is an
integer) are mapped onto functions on an N x N grid of integer labels
(mu, nu) in [-ell, ell]^2.  The machinery is the Schwinger unitary pair

    U |j,m> = w^m |j,m>,   V |j,m> = |j,m-1>  (cyclic mod N),   w = e^{2 pi i/N}

from which the symmetrized displacement operators and phase-point operators

    S(eta,xi) = N^{-1/2} e^{i pi eta xi / N} U^eta V^xi
    G(mu,nu)  = N^{-1/2} sum_{eta,xi} e^{-2 pi i (eta mu + xi nu)/N} S(eta,xi)

are built.  The Weyl symbol of an operator O is O~(eta,xi) = Tr[S(eta,xi) O];
its Wigner symbol is O(mu,nu) = Tr[G(mu,nu) O] (G is hermitian).  Means close
through <O> = (1/N) sum O(mu,nu) W(mu,nu).

All discrete Fourier phases use exact integer exponent arithmetic mod N
(mod 2N for the half-integer phase in S) and a root-of-unity lookup table,
so rebuilt kernels are bitwise reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .su2 import SpinSpace, is_hermitian

KERNEL_TOL = 1e-12


@dataclass(frozen=True)
class KernelSet:
    """Cached U, V, S, G tables for one spin space.

    s and g have shape (N, N, N, N): the first two axes are the label
    indices (eta+ell, xi+ell) or (mu+ell, nu+ell), the last two the matrix.
    """

    space: SpinSpace
    u: np.ndarray
    v: np.ndarray
    s: np.ndarray = field(repr=False)
    g: np.ndarray = field(repr=False)
    labels: np.ndarray

    @property
    def dim(self) -> int:
        return self.space.dim


def _unit_roots(n: int) -> np.ndarray:
    """w^k = exp(2 pi i k / n) for k = 0..n-1."""
    return np.exp(2j * np.pi * np.arange(n) / n)


def schwinger_phase(eta: int, xi: int, n: int) -> complex:
    """e^{i pi eta xi / N} with the exponent reduced exactly mod 2N.

    Evaluated at the literal integer labels, so calling it outside the
    fundamental window reproduces the quasi-periodicity
    S(eta+N, xi) = (-1)^xi S(eta, xi) of odd N.
    """
    roots_2n = _unit_roots(2 * n)
    return complex(roots_2n[(eta * xi) % (2 * n)])


def schwinger_operator(space: SpinSpace, eta: int, xi: int) -> np.ndarray:
    """S(eta, xi) at literal integer labels (any range).

    The U^eta V^xi part only depends on the labels mod N; the half-integer
    prefactor e^{i pi eta xi/N} is taken literally, which is what makes the
    extended-label evaluation used by the Weyl-space Liouville kernel exact.
    """
    n = space.dim
    ell = space.ell
    roots = _unit_roots(n)
    i = np.arange(n)
    m = i - ell
    col = (i + xi) % n
    mat = np.zeros((n, n), dtype=complex)
    mat[i, col] = roots[(eta * m) % n]
    return schwinger_phase(eta, xi, n) * mat / np.sqrt(n)


def build_kernels(space: SpinSpace, check: bool = True) -> KernelSet:
    """Construct the full S and G tables, verifying the defining algebra."""
    n = space.dim
    if n % 2 == 0:
        raise ValueError("phase-space kernels need odd dimension (integer j)")
    ell = space.ell
    labels = np.arange(-ell, ell + 1)
    roots = _unit_roots(n)

    u = np.diag(roots[(labels) % n]).astype(complex)
    v = np.roll(np.eye(n), -1, axis=0).astype(complex)

    s = np.empty((n, n, n, n), dtype=complex)
    for a, eta in enumerate(labels):
        for b, xi in enumerate(labels):
            s[a, b] = schwinger_operator(space, int(eta), int(xi))

    # F[r, c] = e^{-2 pi i labels[r] labels[c] / N} via exact integer exponents
    f_minus = roots[(-np.outer(labels, labels)) % n]
    g = np.einsum("ue,vx,exik->uvik", f_minus, f_minus, s, optimize=True) / np.sqrt(n)

    ks = KernelSet(space, u, v, s, g, labels)
    if check:
        _check_kernels(ks)
    return ks


def _check_kernels(ks: KernelSet) -> None:
    n = ks.dim
    eye = np.eye(n)
    if np.max(np.abs(np.linalg.matrix_power(ks.u, n) - eye)) > 1e-9:
        raise RuntimeError("U^N != 1")
    if np.max(np.abs(np.linalg.matrix_power(ks.v, n) - eye)) > 1e-9:
        raise RuntimeError("V^N != 1")
    w = np.exp(2j * np.pi / n)
    if np.max(np.abs(ks.v @ ks.u - w * ks.u @ ks.v)) > 1e-9:
        raise RuntimeError("VU != w UV")
    # S orthonormality Tr[S(l)^dag S(l')] = delta_{ll'}
    sf = ks.s.reshape(n * n, n * n)
    gram = sf.conj() @ sf.T
    if np.max(np.abs(gram - np.eye(n * n))) > 1e-8:
        raise RuntimeError("S table not orthonormal")
    # G hermitian, unit trace, resolution sum_G = N * identity
    gf = ks.g.reshape(n * n, n, n)
    if np.max(np.abs(gf - gf.conj().transpose(0, 2, 1))) > 1e-9:
        raise RuntimeError("G not hermitian")
    traces = np.einsum("pii->p", gf)
    if np.max(np.abs(traces - 1.0)) > 1e-9:
        raise RuntimeError("Tr G != 1")
    if np.max(np.abs(gf.sum(axis=0) - n * eye)) > 1e-8:
        raise RuntimeError("sum_{mu,nu} G != N * identity")


def map_operator(ks: KernelSet, op: np.ndarray) -> np.ndarray:
    """Wigner symbol O(mu, nu) = Tr[G(mu,nu)^dag O]; complex N x N grid."""
    return np.einsum("mnij,ij->mn", ks.g.conj(), op)


def wigner_of_state(ks: KernelSet, rho: np.ndarray) -> np.ndarray:
    """Wigner function of a hermitian density matrix; real N x N grid."""
    if not is_hermitian(rho, 1e-10):
        raise ValueError("wigner_of_state expects a hermitian density matrix")
    w = map_operator(ks, rho)
    resid = np.max(np.abs(w.imag))
    if resid > 1e-10:
        raise RuntimeError(f"Wigner grid has imaginary residue {resid:.3e}")
    return w.real


def weyl_of_state(ks: KernelSet, rho: np.ndarray) -> np.ndarray:
    """Weyl characteristic function W~(eta, xi) = Tr[S(eta,xi) rho]."""
    return np.einsum("exij,ji->ex", ks.s, rho)


def density_from_wigner(ks: KernelSet, wgrid: np.ndarray) -> np.ndarray:
    """Inverse expansion rho = (1/N) sum_{mu,nu} W(mu,nu) G(mu,nu)."""
    rho = np.einsum("mn,mnij->ij", np.asarray(wgrid, dtype=complex), ks.g) / ks.dim
    return 0.5 * (rho + rho.conj().T)


def wigner_from_weyl(ks: KernelSet, weyl: np.ndarray) -> np.ndarray:
    """W(mu,nu) = N^{-1/2} sum_{eta,xi} e^{-2 pi i(eta mu + xi nu)/N} W~(eta,xi).

    Direct O(N^4) double Fourier sum over the label window.
    """
    n = ks.dim
    roots = _unit_roots(n)
    f_minus = roots[(-np.outer(ks.labels, ks.labels)) % n]
    return np.einsum("me,nx,ex->mn", f_minus, f_minus, weyl, optimize=True) / np.sqrt(n)


def weyl_from_wigner(ks: KernelSet, wig: np.ndarray) -> np.ndarray:
    """Inverse of wigner_from_weyl: W~ = N^{-3/2} sum e^{+2 pi i(...)} W."""
    n = ks.dim
    roots = _unit_roots(n)
    f_plus = roots[(np.outer(ks.labels, ks.labels)) % n]
    return np.einsum("em,xn,mn->ex", f_plus, f_plus, wig, optimize=True) / n ** 1.5


def mean_value(ks: KernelSet, op_grid: np.ndarray, wig: np.ndarray) -> complex:
    """<O> = (1/N) sum_{mu,nu} O(mu,nu) W(mu,nu)."""
    return complex(np.sum(op_grid * wig) / ks.dim)


def grid_overlap(ks: KernelSet, wig_a: np.ndarray, wig_b: np.ndarray) -> float:
    """Tr[rho_a rho_b] = (1/N) sum W_a W_b for two Wigner grids."""
    val = np.sum(wig_a * wig_b) / ks.dim
    return float(np.real(val))


def map_anticommutator(ks: KernelSet, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Wigner symbol of {A, B} = AB + BA via the operator product."""
    return map_operator(ks, a @ b + b @ a)


def map_commutator(ks: KernelSet, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Wigner symbol of [A, B] = AB - BA via the operator product."""
    return map_operator(ks, a @ b - b @ a)


def coherent_weyl(ks: KernelSet, theta: float, phi: float) -> np.ndarray:
    """Characteristic function of |theta,phi> from the explicit m-sum.

    W~(eta,xi) = N^{-1/2} sum_m e^{(2 pi i/N) eta (m - xi/2)} c*_{m-xi} c_m
    with the amplitude index m - xi reduced cyclically into [-j, j].  This is
    an independent route from weyl_of_state and is kept separate on purpose.
    """
    from .su2 import coherent_state

    n = ks.dim
    space = ks.space
    c = coherent_state(space, theta, phi)
    m = space.m_values.astype(int)
    out = np.empty((n, n), dtype=complex)
    for a, eta in enumerate(ks.labels):
        for b, xi in enumerate(ks.labels):
            shifted = space.reduce(m - xi)
            phase = np.exp(2j * np.pi * eta * (m - xi / 2.0) / n)
            out[a, b] = np.sum(phase * c[space.index_of(shifted)].conj() * c) / np.sqrt(n)
    return out


def coherent_wigner(ks: KernelSet, theta: float, phi: float) -> np.ndarray:
    """Wigner function of a spin coherent state via its characteristic function."""
    w = wigner_from_weyl(ks, coherent_weyl(ks, theta, phi))
    resid = np.max(np.abs(w.imag))
    if resid > 1e-9:
        raise RuntimeError(f"coherent Wigner grid has imaginary residue {resid:.3e}")
    return w.real
