"""Squeezing and entanglement criteria built from angular-momentum moments.

Everything in this module consumes or produces MomentReport records: the
time-stamped collection of first moments <J_a>, second moments <J_a^2> and
covariances V_ab = <{J_a,J_b}>/2 - <J_a><J_b>.  Reports can come from three
routes that must agree: direct traces against a density matrix, phase-space
pairings of a Wigner grid with cached mapped operators, or closed forms
(coherent states, twisting model).

Derived criteria:

  * Robertson-Schroedinger denominators R_abc = [V_ab^2 + |<J_c>|^2/4]^(1/2)
    and squeezing parameters S_a^(c) = V_a / R_abc for the three pairings
    (x,y|z), (x,z|y), (y,z|x).  S < 1 flags squeezing; the product
    S_a^(c) S_b^(c) >= 1 is the RS uncertainty relation in disguise.
  * Mean-spin entanglement parameters E_sor[a] = N V_a / (<J_b>^2 + <J_c>^2),
    violated (entangled) when < 1.
  * Collective spin inequalities for separable N-spin states, all compared
    against the bound N(N+2)/4: the total second-moment identity, the
    variance-sum lower bound, and the two permutation families.  From the
    first permutation family comes the ratio form
    E_toth[a] = (N-1) V_a / (<J_b^2> + <J_c^2> - N/2), violated when < 1.
  * Signal-to-noise ratios r_a = |<J_a>| / sqrt(V_a).
  * Rotated-frame transport: means move with the SO(3) coefficient matrix A,
    covariance matrices as A C A^T.

Degenerate denominators are reported as NaN plus an "undef_" flag instead of
infinities.  Violation flags use a strict margin of 1e-9 so that states
sitting exactly on a bound (coherent states at t=0) are not flagged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .su2 import SpinSpace, Generators, build_generators, is_so3
from .mapping import KernelSet, map_operator, map_anticommutator

IMAG_TOL = 1e-9
DENOM_FLOOR = 1e-12
VIOLATION_MARGIN = 1e-9

AXES = ("x", "y", "z")
# Table pairings (a, b | c): the component c closes the commutator of a and b.
RS_PAIRINGS = (("x", "y", "z"), ("x", "z", "y"), ("y", "z", "x"))


def pair_key(a: str, b: str) -> str:
    return "".join(sorted((a, b), key=AXES.index))


def _others(a: str):
    return tuple(ax for ax in AXES if ax != a)


@dataclass(frozen=True)
class MomentReport:
    """First and second moments of J_x, J_y, J_z at one time stamp.

    mean and second are dicts keyed by axis; cov is keyed by "xy", "xz",
    "yz" and an entry may be None when the producing route does not supply
    that covariance (the twisting-model closed forms only give V_xy).
    Variances and anticommutator means are derived, never stored, so the
    identity V_a = <J_a^2> - <J_a>^2 holds by construction.
    """

    t: float
    mean: dict
    second: dict
    cov: dict

    def var(self, a: str) -> float:
        return self.second[a] - self.mean[a] ** 2

    @property
    def variances(self) -> dict:
        return {a: self.var(a) for a in AXES}

    def anticomm(self, a: str, b: str):
        c = self.cov[pair_key(a, b)]
        if c is None:
            return None
        return 2.0 * (c + self.mean[a] * self.mean[b])

    def var_sum(self, axes: str) -> float:
        """Variance of J_axes[0] + J_axes[1] + ... (needs the covariances)."""
        total = sum(self.var(a) for a in axes)
        for i in range(len(axes)):
            for k in range(i + 1, len(axes)):
                c = self.cov[pair_key(axes[i], axes[k])]
                if c is None:
                    raise ValueError("covariance %s not available" % pair_key(axes[i], axes[k]))
                total += 2.0 * c
        return total


def check_report(m: MomentReport, tol: float = 1e-9) -> None:
    """Covariances must sit inside +-sqrt(V_a V_b); raises on violation."""
    for a, b, _ in RS_PAIRINGS:
        c = m.cov[pair_key(a, b)]
        if c is None:
            continue
        lim = math.sqrt(max(m.var(a), 0.0) * max(m.var(b), 0.0))
        if abs(c) > lim + tol:
            raise ValueError("cov_%s = %.3e outside [-%.3e, %.3e]" % (pair_key(a, b), c, lim, lim))


@dataclass(frozen=True)
class MappedOperators:
    """Phase-space images of the moment operators, cached per kernel set.

    All grids are real (the mapping of a hermitian operator through the
    hermitian mapping kernel is real; asserted at build time).
    """

    space: SpinSpace
    first: dict      # axis -> grid of J_a
    second: dict     # axis -> grid of J_a^2
    anti: dict       # pair -> grid of {J_a, J_b}
    j2: np.ndarray   # grid of J^2


def _real_grid(ks: KernelSet, op: np.ndarray) -> np.ndarray:
    grid = map_operator(ks, op)
    scale = max(1.0, float(np.abs(grid).max()))
    worst = float(np.abs(grid.imag).max())
    if worst > 1e-10 * scale:
        raise RuntimeError("mapped operator grid has imaginary residue %.3e" % worst)
    return np.ascontiguousarray(grid.real)


def build_mapped_operators(ks: KernelSet) -> MappedOperators:
    g = build_generators(ks.space)
    ops = {"x": g.jx, "y": g.jy, "z": g.jz}
    first = {a: _real_grid(ks, ops[a]) for a in AXES}
    second = {a: _real_grid(ks, ops[a] @ ops[a]) for a in AXES}
    anti = {}
    for a, b, _ in RS_PAIRINGS:
        grid = map_anticommutator(ks, ops[a], ops[b])
        scale = max(1.0, float(np.abs(grid).max()))
        if float(np.abs(grid.imag).max()) > 1e-10 * scale:
            raise RuntimeError("anticommutator grid has imaginary residue")
        anti[pair_key(a, b)] = np.ascontiguousarray(grid.real)
    return MappedOperators(space=ks.space, first=first, second=second, anti=anti,
                           j2=_real_grid(ks, g.j2))


def _grid_mean(opgrid: np.ndarray, wgrid: np.ndarray, n: int) -> float:
    val = complex(np.sum(opgrid * wgrid) / n)
    if abs(val.imag) > IMAG_TOL * max(1.0, abs(val)):
        raise RuntimeError("phase-space mean has imaginary residue %.3e" % val.imag)
    return val.real


def moments_from_wigner(wgrid: np.ndarray, mops: MappedOperators, t: float = 0.0) -> MomentReport:
    """Moments via the discrete phase-space pairing (1/N) sum O(mu,nu) W(mu,nu)."""
    n = mops.space.dim
    if wgrid.shape != (n, n):
        raise ValueError("Wigner grid shape %s does not match dim %d" % (wgrid.shape, n))
    if np.iscomplexobj(wgrid):
        if float(np.abs(wgrid.imag).max()) > IMAG_TOL:
            raise RuntimeError("Wigner grid has imaginary residue")
        wgrid = wgrid.real
    mean = {a: _grid_mean(mops.first[a], wgrid, n) for a in AXES}
    second = {a: _grid_mean(mops.second[a], wgrid, n) for a in AXES}
    cov = {}
    for a, b, _ in RS_PAIRINGS:
        key = pair_key(a, b)
        half_anti = 0.5 * _grid_mean(mops.anti[key], wgrid, n)
        cov[key] = half_anti - mean[a] * mean[b]
    return MomentReport(t=t, mean=mean, second=second, cov=cov)


def moments_from_density(rho: np.ndarray, gens: Generators, t: float = 0.0) -> MomentReport:
    """Reference route: straight traces against a density matrix."""
    ops = {"x": gens.jx, "y": gens.jy, "z": gens.jz}

    def ev(op):
        val = complex(np.trace(op @ rho))
        if abs(val.imag) > IMAG_TOL * max(1.0, abs(val)):
            raise RuntimeError("trace moment has imaginary residue %.3e" % val.imag)
        return val.real

    mean = {a: ev(ops[a]) for a in AXES}
    second = {a: ev(ops[a] @ ops[a]) for a in AXES}
    cov = {}
    for a, b, _ in RS_PAIRINGS:
        half_anti = 0.5 * ev(ops[a] @ ops[b] + ops[b] @ ops[a])
        cov[pair_key(a, b)] = half_anti - mean[a] * mean[b]
    return MomentReport(t=t, mean=mean, second=second, cov=cov)


@dataclass(frozen=True)
class CriteriaReport:
    """Criteria values at one time stamp.

    s[a][c] are the squeezing parameters S_a^(c); r carries the RS
    denominators keyed "xyz", "xzy", "yzx".  toth_lhs is keyed "19", "20",
    "21_c", "22_c" with c the distinguished axis.  flags is a frozenset of
    strings: "squeeze_ac", "esor_a", "etoth_a", "toth20", "toth21_c",
    "toth22_c" mark violations, "undef_*" marks degenerate denominators.
    """

    t: float
    s: dict = field(default_factory=dict)
    r: dict = field(default_factory=dict)
    e_sorensen: dict = field(default_factory=dict)
    e_toth: dict = field(default_factory=dict)
    toth_lhs: dict = field(default_factory=dict)
    snr: dict = field(default_factory=dict)
    flags: frozenset = frozenset()


def squeezing_params(m: MomentReport) -> CriteriaReport:
    """RS denominators and S-parameters for the three axis pairings."""
    s = {a: {} for a in AXES}
    r = {}
    flags = set()
    for a, b, c in RS_PAIRINGS:
        key = a + b + c
        cab = m.cov[pair_key(a, b)]
        if cab is None:
            r[key] = math.nan
            s[a][c] = math.nan
            s[b][c] = math.nan
            flags.add("undef_r_" + key)
            continue
        rv = math.sqrt(cab * cab + 0.25 * m.mean[c] ** 2)
        r[key] = rv
        if rv < DENOM_FLOOR:
            s[a][c] = math.nan
            s[b][c] = math.nan
            flags.add("undef_r_" + key)
            continue
        for ax in (a, b):
            val = m.var(ax) / rv
            s[ax][c] = val
            if val < 1.0 - VIOLATION_MARGIN:
                flags.add("squeeze_%s%s" % (ax, c))
    return CriteriaReport(t=m.t, s=s, r=r, flags=frozenset(flags))


def entanglement_sorensen(m: MomentReport, n_spins: int):
    """Mean-spin parameters E_sor[a] = N V_a / (<J_b>^2 + <J_c>^2)."""
    vals = {}
    flags = set()
    for a in AXES:
        b, c = _others(a)
        den = m.mean[b] ** 2 + m.mean[c] ** 2
        if den < DENOM_FLOOR:
            vals[a] = math.nan
            flags.add("undef_esor_" + a)
            continue
        vals[a] = n_spins * m.var(a) / den
        if vals[a] < 1.0 - VIOLATION_MARGIN:
            flags.add("esor_" + a)
    return vals, flags


def entanglement_toth(m: MomentReport, n_spins: int):
    """Collective inequalities against the separable bound N(N+2)/4.

    Returns (lhs dict, ratio dict E_toth[a], flags).  The total second
    moment ("19") is an identity inside the maximal multiplet and carries
    no flag; the other three flag their violating side.
    """
    n = float(n_spins)
    bound = 0.25 * n * (n + 2.0)
    tol = VIOLATION_MARGIN * max(1.0, bound)
    lhs = {}
    ratios = {}
    flags = set()

    lhs["19"] = sum(m.second[a] for a in AXES)
    lhs["20"] = 0.5 * (n + 2.0) * sum(m.var(a) for a in AXES)
    if lhs["20"] < bound - tol:
        flags.add("toth20")
    for c in AXES:
        a, b = _others(c)
        lhs["21_" + c] = 0.5 * (n + 2.0) * (m.second[a] + m.second[b] - (n - 1.0) * m.var(c))
        if lhs["21_" + c] > bound + tol:
            flags.add("toth21_" + c)
        lhs["22_" + c] = (n - 1.0) * (m.var(a) + m.var(b)) - m.second[c] + n
        if lhs["22_" + c] < bound - tol:
            flags.add("toth22_" + c)
    for a in AXES:
        b, c = _others(a)
        den = m.second[b] + m.second[c] - 0.5 * n
        if den < DENOM_FLOOR:
            ratios[a] = math.nan
            flags.add("undef_etoth_" + a)
            continue
        ratios[a] = (n - 1.0) * m.var(a) / den
        if ratios[a] < 1.0 - VIOLATION_MARGIN:
            flags.add("etoth_" + a)
    return lhs, ratios, flags


def snr(m: MomentReport):
    """Signal-to-noise ratios |<J_a>| / sqrt(V_a)."""
    vals = {}
    flags = set()
    for a in AXES:
        v = m.var(a)
        if v < DENOM_FLOOR:
            vals[a] = math.nan
            flags.add("undef_snr_" + a)
            continue
        vals[a] = abs(m.mean[a]) / math.sqrt(v)
    return vals, flags


def criteria_from_moments(m: MomentReport, n_spins: int) -> CriteriaReport:
    """All criteria from one MomentReport, so they share the same moments."""
    sq = squeezing_params(m)
    esor, f1 = entanglement_sorensen(m, n_spins)
    lhs, etoth, f2 = entanglement_toth(m, n_spins)
    ratios, f3 = snr(m)
    flags = set(sq.flags) | f1 | f2 | f3
    return CriteriaReport(t=m.t, s=sq.s, r=sq.r, e_sorensen=esor, e_toth=etoth,
                          toth_lhs=lhs, snr=ratios, flags=frozenset(flags))


def transform_moments(m: MomentReport, a_matrix: np.ndarray) -> MomentReport:
    """Moments in a rotated frame J_bar = A J.

    Means transform linearly, the covariance matrix as A C A^T, and the
    rotated second moments follow from second = var + mean^2.  Needs all
    three covariances.
    """
    a_matrix = np.asarray(a_matrix, dtype=float)
    if not is_so3(a_matrix):
        raise ValueError("coefficient matrix is not a rotation")
    if any(m.cov[k] is None for k in ("xy", "xz", "yz")):
        raise ValueError("transform needs all covariances")
    mvec = np.array([m.mean[a] for a in AXES])
    cmat = np.array([
        [m.var("x"), m.cov["xy"], m.cov["xz"]],
        [m.cov["xy"], m.var("y"), m.cov["yz"]],
        [m.cov["xz"], m.cov["yz"], m.var("z")],
    ])
    mbar = a_matrix @ mvec
    cbar = a_matrix @ cmat @ a_matrix.T
    mean = {a: float(mbar[i]) for i, a in enumerate(AXES)}
    second = {a: float(cbar[i, i] + mbar[i] ** 2) for i, a in enumerate(AXES)}
    cov = {"xy": float(cbar[0, 1]), "xz": float(cbar[0, 2]), "yz": float(cbar[1, 2])}
    return MomentReport(t=m.t, mean=mean, second=second, cov=cov)


def local_extrema(times, values, kind: str = "min"):
    """Interior extrema of a sampled curve with parabolic refinement.

    Three-point comparison on the grid; each hit is refined by fitting a
    parabola through the bracketing triple.  Returns a list of (t, value)
    pairs in time order.  Plateaus count once, at their first grid point.
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    if times.shape != values.shape or times.ndim != 1:
        raise ValueError("times and values must be matching 1d arrays")
    sign = 1.0 if kind == "min" else -1.0
    if kind not in ("min", "max"):
        raise ValueError("kind must be 'min' or 'max'")
    y = sign * values
    hits = []
    k = 1
    while k < len(y) - 1:
        if y[k] <= y[k - 1] and y[k] <= y[k + 1] and (y[k] < y[k - 1] or y[k] < y[k + 1]):
            denom = y[k - 1] - 2.0 * y[k] + y[k + 1]
            if denom > 0.0:
                # vertex of the parabola through the three samples
                dx = 0.5 * (y[k - 1] - y[k + 1]) / denom
                dx = min(1.0, max(-1.0, dx))
                half_span = 0.5 * (times[k + 1] - times[k - 1])
                t_star = times[k] + dx * half_span
                y_star = y[k] - 0.25 * (y[k - 1] - y[k + 1]) * dx
            else:
                t_star = times[k]
                y_star = y[k]
            hits.append((float(t_star), float(sign * y_star)))
            while k < len(y) - 1 and y[k + 1] == y[k]:
                k += 1
        k += 1
    return hits
