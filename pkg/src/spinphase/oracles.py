"""Brute-force reference sums for the phase-space kernels.

Everything here evaluates the defining multi-index Fourier sums literally,
with no algebraic shortcuts, so the fast production routes (operator traces,
reshaped matrix products) can be checked against an independent computation.
Costs scale like N^10 in the worst case, so these are meant for N = 3..5.
"""

from __future__ import annotations

import numpy as np

from .mapping import KernelSet, map_operator
from .su2 import SpinSpace


def _wrap_index(s: np.ndarray, ell: int) -> np.ndarray:
    """-1, 0 or +1 depending on which period cell the label sum s falls in."""
    return (s > ell).astype(int) - (s < -ell).astype(int)


def _wrap_weight(s_eta: np.ndarray, s_xi: np.ndarray, ell: int) -> np.ndarray:
    """Quasi-period sign carried by a product of two basis labels.

    When label sums leave [-ell, ell] the composition of two phase-point
    operators picks up the factor (-1)^(eps*s_xi + eps'*s_eta + eps*eps'),
    eps and eps' being the wrap indices of the eta- and xi-sums.  Compact
    writeups of these kernels often drop this weight, which silently breaks
    them on every wraparound cell; the trace route does not lie, and the
    cross-checks against it require the weight.
    """
    eps = _wrap_index(s_eta, ell)
    epsp = _wrap_index(s_xi, ell)
    expo = eps * s_xi + epsp * s_eta + eps * epsp
    return np.where(expo % 2 == 0, 1.0, -1.0)


def liouville_six_index(ks: KernelSet, h: np.ndarray) -> np.ndarray:
    """Brute-force six-index Fourier sum for the Wigner-space Liouville kernel.

    L(mu,nu,mu',nu') = (2i/N^4) * sum over alpha,beta,alpha',beta',mu'',nu''
        w(alpha+alpha', beta+beta')
        * sin[(pi/N)(alpha beta' - alpha' beta)]
        * exp[(2 pi i/N)(alpha (mu-mu') + beta (nu-nu'))]
        * exp[(2 pi i/N)(alpha'(mu-mu'') + beta'(nu-nu''))]
        * H(mu'',nu'')
    with H(mu'',nu'') = Tr[G(mu'',nu'') H], all labels in [-ell, ell], and
    w the quasi-period weight of _wrap_weight (equal to one on cells where
    no label sum wraps).

    Returns an (N^2, N^2) matrix in row-major (mu,nu) flattening.
    """
    n = ks.dim
    lab = ks.labels
    hgrid = map_operator(ks, h)

    al, be, alp, bep, mpp, npp = np.meshgrid(lab, lab, lab, lab, lab, lab, indexing="ij")
    al, be, alp, bep = (x.ravel() for x in (al, be, alp, bep))
    mpp, npp = mpp.ravel(), npp.ravel()
    sin_fac = np.sin(np.pi * (al * bep - alp * be) / n)
    sin_fac = sin_fac * _wrap_weight(al + alp, be + bep, ks.space.ell)
    hvals = hgrid[(mpp + ks.space.ell), (npp + ks.space.ell)]
    inner_static = sin_fac * np.exp(2j * np.pi * (-alp * mpp - bep * npp) / n) * hvals

    out = np.empty((n * n, n * n), dtype=complex)
    for a, mu in enumerate(lab):
        for b, nu in enumerate(lab):
            for c, mup in enumerate(lab):
                for d, nup in enumerate(lab):
                    phase = np.exp(
                        2j * np.pi * (al * (mu - mup) + be * (nu - nup)) / n
                    ) * np.exp(2j * np.pi * (alp * mu + bep * nu) / n)
                    out[a * n + b, c * n + d] = np.sum(inner_static * phase)
    return 2j * out / n**4


def gamma_kernel(ks: KernelSet, kind: str) -> np.ndarray:
    """Brute-force product kernels Gamma_A (anticommutator) / Gamma_C (commutator).

    Gamma(mu,nu | mu',nu', mu'',nu'') = (2/N^2) * sum over eta',xi',eta'',xi''
        w(eta'+eta'', xi'+xi'')
        * exp[(2 pi i/N)(eta'(mu-mu') + xi'(nu-nu'))]
        * exp[(2 pi i/N)(eta''(mu-mu'') + xi''(nu-nu''))]
        * trig[(pi/N)(...)]
    with trig = cos(eta' xi'' - xi' eta'') for kind='anti', trig =
    i*sin(xi' eta'' - eta' xi'') for kind='comm' (that orientation pairs the
    primed slot with the left operand of the commutator), and w the
    quasi-period weight of _wrap_weight.

    Gamma_A equals Tr[G(mu,nu){G(mu',nu'), G(mu'',nu'')}] and Gamma_C equals
    Tr[G(mu,nu)[G(mu',nu'), G(mu'',nu'')]], which is what the product rules
    in the mapping module use.

    Returns shape (N^2, N^2, N^2) indexed [(mu,nu), (mu',nu'), (mu'',nu'')].
    """
    n = ks.dim
    lab = ks.labels
    e1, x1, e2, x2 = np.meshgrid(lab, lab, lab, lab, indexing="ij")
    e1, x1, e2, x2 = (x.ravel() for x in (e1, x1, e2, x2))
    arg = np.pi * (e1 * x2 - x1 * e2) / n
    if kind == "anti":
        trig = np.cos(arg).astype(complex)
    elif kind == "comm":
        trig = -1j * np.sin(arg)
    else:
        raise ValueError("kind must be 'anti' or 'comm'")
    trig = trig * _wrap_weight(e1 + e2, x1 + x2, ks.space.ell)

    points = [(mu, nu) for mu in lab for nu in lab]
    npts = n * n
    out = np.empty((npts, npts, npts), dtype=complex)
    for i, (mu, nu) in enumerate(points):
        base = np.exp(2j * np.pi * ((e1 + e2) * mu + (x1 + x2) * nu) / n) * trig
        for k1, (mup, nup) in enumerate(points):
            ph1 = np.exp(-2j * np.pi * (e1 * mup + x1 * nup) / n)
            for k2, (mupp, nupp) in enumerate(points):
                ph2 = np.exp(-2j * np.pi * (e2 * mupp + x2 * nupp) / n)
                out[i, k1, k2] = np.sum(base * ph1 * ph2)
    return 2.0 * out / n**2


def product_via_gamma(ks: KernelSet, gamma: np.ndarray, agrid: np.ndarray, bgrid: np.ndarray) -> np.ndarray:
    """({A,B}) or ([A,B]) grid from a Gamma kernel and two symbol grids.

    (1/N^2) * sum_{mu'nu' mu''nu''} Gamma(...) A(mu',nu') B(mu'',nu'').
    """
    n = ks.dim
    res = np.einsum("pqr,q,r->p", gamma, agrid.ravel(), bgrid.ravel()) / n**2
    return res.reshape(n, n)


def g_matrix_element(space: SpinSpace, m: float, mp: float, mu: int, nu: int) -> complex:
    """Closed-form <j,m| G(mu,nu) |j,m'> as a single beta-sum.

    (1/N) sum_beta exp{-(2 pi i/N)[beta (mu - m') + (m' - m)(nu + beta/2)]},
    valid for |m - m'| <= ell (no cyclic wrap of the ladder offset).
    """
    n = space.dim
    beta = np.arange(-space.ell, space.ell + 1)
    expo = beta * (mu - mp) + (mp - m) * (nu + beta / 2.0)
    return complex(np.sum(np.exp(-2j * np.pi * expo / n)) / n)
