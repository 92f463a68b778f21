"""Finite spin spaces, angular momentum operators, and coherent states.

Everything downstream works in a single (2j+1)-dimensional irreducible
representation of SU(2).  The basis is |j,m> with m ascending, so index 0
is m = -j and index 2j is m = +j.  Operators are plain complex ndarrays.

The transform machinery implements the unitary

    T(xi, omega) = exp(xi J+ + i omega Jz - conj(xi) J-)

together with its normal-ordered decomposition

    T = exp(Lp J+) exp(ln(Lz) Jz) exp(Lm J-)

and the closed-form rotation of the generators, T^dag J_a T = sum_b A_ab J_b
with A in SO(3).  Setting xi = (theta/2) exp(-i phi), omega = 0 rotates the
lowest-weight state |j,-j> into the spin coherent state |theta, phi>.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh

HERM_TOL = 1e-12
ROUTE_TOL = 1e-10


@dataclass(frozen=True)
class SpinSpace:
    """A spin-j irreducible representation; dim = 2j+1."""

    j: float

    def __post_init__(self):
        two_j = round(2 * self.j)
        if two_j <= 0 or abs(2 * self.j - two_j) > 1e-12:
            raise ValueError(f"j must be a positive (half-)integer, got {self.j}")
        object.__setattr__(self, "j", two_j / 2.0)

    @property
    def dim(self) -> int:
        return round(2 * self.j) + 1

    @property
    def m_values(self) -> np.ndarray:
        return np.arange(self.dim) - self.j

    @property
    def ell(self) -> int:
        """Integer half-dimension (N-1)/2; only defined for odd dim."""
        if self.dim % 2 == 0:
            raise ValueError(
                f"dim = {self.dim} is even (half-integer j); phase-space "
                "constructions need odd dimension"
            )
        return (self.dim - 1) // 2

    def reduce(self, x) -> np.ndarray:
        """Reduce integer labels mod N into the symmetric window [-ell, ell]."""
        ell = self.ell
        return (np.asarray(x) + ell) % self.dim - ell

    def index_of(self, m) -> np.ndarray:
        """Basis index of magnetic quantum number m."""
        return np.asarray(np.round(np.asarray(m) + self.j), dtype=int)


@dataclass(frozen=True)
class Generators:
    """Angular momentum matrices on a fixed SpinSpace."""

    space: SpinSpace
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    jp: np.ndarray
    jm: np.ndarray
    j2: np.ndarray = field(repr=False)


def build_generators(space: SpinSpace) -> Generators:
    """Matrices of Jx, Jy, Jz, J+, J-, J^2 in the ascending-m basis."""
    j = space.j
    m = space.m_values
    # <m+1| J+ |m> = sqrt((j-m)(j+m+1)); one subdiagonal below the main
    # diagonal never appears because the basis ascends in m.
    raising = np.sqrt((j - m[:-1]) * (j + m[:-1] + 1))
    jp = np.diag(raising, -1).astype(complex)
    jm = jp.conj().T
    jz = np.diag(m).astype(complex)
    jx = (jp + jm) / 2
    jy = (jp - jm) / (2j)
    j2 = jx @ jx + jy @ jy + jz @ jz
    return Generators(space, jx, jy, jz, jp, jm, j2)


def is_hermitian(a: np.ndarray, tol: float = HERM_TOL) -> bool:
    return bool(np.max(np.abs(a - a.conj().T)) <= tol)


def ladder_power_element(j: float, mp: float, m: float, k: int, sign: int) -> float:
    """<j,mp| (J+-)^k |j,m> in closed form; sign=+1 for J+, -1 for J-.

    Nonzero only on mp = m + sign*k, where with a = j + sign*mp and
    b = j + sign*m it equals sqrt[a! (2j-b)! / (b! (2j-a)!)], the product of
    the intermediate ladder factors.
    """
    if abs(mp - (m + sign * k)) > 1e-9:
        return 0.0
    two_j = round(2 * j)
    a = round(j + sign * mp)
    b = round(j + sign * m)
    if not (0 <= a <= two_j and 0 <= b <= two_j):
        return 0.0
    return math.sqrt(
        math.factorial(a) * math.factorial(two_j - b)
        / (math.factorial(b) * math.factorial(two_j - a))
    )


def coherent_state(space: SpinSpace, theta: float, phi: float) -> np.ndarray:
    """Spin coherent state |theta, phi> as a unit vector.

    Amplitudes on |j, k-j>:
        c_k = sqrt(C(2j,k)) sin^k(theta/2) cos^(2j-k)(theta/2) exp(-i k phi)
    theta=0 gives the lowest-weight state |j,-j>; theta=pi the highest.
    The k=0 amplitude is real and non-negative by construction.
    """
    two_j = space.dim - 1
    half = theta / 2.0
    s, c = math.sin(half), math.cos(half)
    k = np.arange(space.dim)
    amps = np.array(
        [math.sqrt(math.comb(two_j, int(kk))) * s**kk * c ** (two_j - kk) for kk in k]
    )
    vec = amps * np.exp(-1j * phi * k)
    # unit norm up to rounding; renormalize to kill the last few ulps
    return vec / np.linalg.norm(vec)


def coherent_overlap(j: float, theta1: float, phi1: float, theta2: float, phi2: float) -> complex:
    """Closed-form overlap <theta1,phi1|theta2,phi2>.

    Binomial resummation of the coherent amplitudes gives
        [cos(t1/2)cos(t2/2) + sin(t1/2)sin(t2/2) e^{i(phi1-phi2)}]^(2j)
    so |overlap|^2 = cos^(4j)(Theta/2) with Theta the great-circle angle
    between the two Bloch directions; antipodal states are orthogonal.
    """
    two_j = round(2 * j)
    base = math.cos(theta1 / 2) * math.cos(theta2 / 2) + math.sin(theta1 / 2) * math.sin(
        theta2 / 2
    ) * cmath.exp(1j * (phi1 - phi2))
    return base**two_j


@dataclass(frozen=True)
class TransformParams:
    """Normal-ordering parameters of T(xi, omega)."""

    xi: complex
    omega: float
    lam_plus: complex
    lam_minus: complex
    lam_z: complex


def decomposition_params(xi: complex, omega: float) -> TransformParams:
    """Normal-ordering parameters Lp, Lm, Lz of T(xi, omega).

    With p = sqrt(|xi|^2 + (omega/2)^2) and D = cos p - i (omega/2p) sin p:
        Lp = (xi/p) sin(p) / D,  Lm = -(conj(xi)/p) sin(p) / D,  Lz = D^-2.
    The p -> 0 limit is (0, 0, 1).
    """
    xi = complex(xi)
    p = math.sqrt(abs(xi) ** 2 + (omega / 2.0) ** 2)
    if p < 1e-300:
        return TransformParams(xi, omega, 0j, 0j, 1.0 + 0j)
    sinc_p = math.sin(p) / p
    denom = math.cos(p) - 1j * (omega / 2.0) * sinc_p
    if abs(denom) < 1e-12:
        raise ValueError(f"normal-ordered decomposition singular at xi={xi}, omega={omega}")
    lam_plus = xi * sinc_p / denom
    lam_minus = -xi.conjugate() * sinc_p / denom
    lam_z = denom ** (-2.0)
    return TransformParams(xi, omega, lam_plus, lam_minus, lam_z)


def transform_matrix(space: SpinSpace, xi: complex, omega: float) -> np.ndarray:
    """Unitary T(xi, omega) = exp(xi J+ + i omega Jz - conj(xi) J-).

    The exponent is i*K with K hermitian, so T comes from the
    eigendecomposition of K (exactly unitary up to rounding).
    """
    g = build_generators(space)
    k = -1j * (xi * g.jp - np.conj(xi) * g.jm) + omega * g.jz
    if not is_hermitian(k, 1e-10):
        raise ValueError("transform exponent failed hermiticity check")
    evals, evecs = eigh(k)
    return (evecs * np.exp(1j * evals)) @ evecs.conj().T


def normal_ordered_transform(space: SpinSpace, params: TransformParams) -> np.ndarray:
    """exp(Lp J+) exp(ln(Lz) Jz) exp(Lm J-) as an explicit matrix product.

    J+ and J- are nilpotent so their exponentials are exact finite series;
    the middle factor is diag(Lz^m) (principal branch for half-integer m).
    """
    g = build_generators(space)
    n = space.dim

    def nilpotent_exp(a: np.ndarray) -> np.ndarray:
        out = np.eye(n, dtype=complex)
        term = np.eye(n, dtype=complex)
        for order in range(1, n):
            term = term @ a / order
            out += term
        return out

    log_lz = cmath.log(params.lam_z)
    mid = np.diag(np.exp(log_lz * space.m_values))
    return nilpotent_exp(params.lam_plus * g.jp) @ mid @ nilpotent_exp(params.lam_minus * g.jm)


def rotation_coefficients(xi: complex, omega: float) -> np.ndarray:
    """Closed-form SO(3) matrix A with T^dag J_a T = sum_b A_ab J_b.

    Written with sinc-type factors so the xi, omega -> 0 limit is smooth
    (A -> identity).
    """
    xi = complex(xi)
    rx, ix = xi.real, xi.imag
    p = math.sqrt(abs(xi) ** 2 + (omega / 2.0) ** 2)
    c2 = math.cos(2 * p)
    s2 = np.sinc(p / math.pi) ** 2          # sin^2(p)/p^2
    sc = np.sinc(2 * p / math.pi)           # sin(2p)/(2p)
    a = np.empty((3, 3))
    a[0, 0] = c2 + 2 * ix * ix * s2
    a[0, 1] = omega * sc + 2 * rx * ix * s2
    a[0, 2] = omega * ix * s2 - 2 * rx * sc
    a[1, 0] = -omega * sc + 2 * rx * ix * s2
    a[1, 1] = c2 + 2 * rx * rx * s2
    a[1, 2] = omega * rx * s2 + 2 * ix * sc
    a[2, 0] = omega * ix * s2 + 2 * rx * sc
    a[2, 1] = omega * rx * s2 - 2 * ix * sc
    a[2, 2] = c2 + (omega * omega / 2.0) * s2
    return a


def is_so3(a: np.ndarray, tol: float = 1e-10) -> bool:
    """Orthogonality, unit determinant, and the nine cofactor identities."""
    if np.max(np.abs(a @ a.T - np.eye(3))) > tol:
        return False
    if abs(np.linalg.det(a) - 1.0) > tol:
        return False
    for i in range(3):
        for k in range(3):
            i1, i2 = [r for r in range(3) if r != i]
            k1, k2 = [c for c in range(3) if c != k]
            cof = a[i1, k1] * a[i2, k2] - a[i1, k2] * a[i2, k1]
            if (i + k) % 2:
                cof = -cof
            if abs(cof - a[i, k]) > tol:
                return False
    return True


def transform_generators(space: SpinSpace, xi: complex, omega: float):
    """Rotated generators (Jx_bar, Jy_bar, Jz_bar, A) under T(xi, omega).

    Computes T^dag J_a T both by explicit conjugation and by the closed-form
    SO(3) coefficients; the two routes must agree to 1e-10 or an internal
    consistency error is raised.
    """
    g = build_generators(space)
    t = transform_matrix(space, xi, omega)
    a = rotation_coefficients(xi, omega)
    if not is_so3(a):
        raise RuntimeError("rotation coefficients failed SO(3) identities")
    old = (g.jx, g.jy, g.jz)
    conjugated = tuple(t.conj().T @ op @ t for op in old)
    combined = tuple(sum(a[r, c] * old[c] for c in range(3)) for r in range(3))
    dev = max(np.max(np.abs(u - v)) for u, v in zip(conjugated, combined))
    if dev > ROUTE_TOL * max(1.0, space.j):
        raise RuntimeError(f"generator rotation routes disagree by {dev:.3e}")
    return conjugated[0], conjugated[1], conjugated[2], a


def coherent_transform_params(theta: float, phi: float) -> tuple[complex, float]:
    """(xi, omega) that rotate |j,-j> into |theta, phi>."""
    return (theta / 2.0) * cmath.exp(-1j * phi), 0.0
