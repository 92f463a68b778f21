"""Squeezing and entanglement criteria built from collective moments."""

import math

import numpy as np
import pytest

from spinphase.su2 import SpinSpace, build_generators
from spinphase.mapping import build_kernels, wigner_of_state
from spinphase.models import KuParams, coherent_moments, ku_analytic_moments
from spinphase.measures import (build_mapped_operators, check_report,
                                criteria_from_moments, local_extrema,
                                moments_from_density, moments_from_wigner,
                                snr, transform_moments)
from spinphase.su2 import rotation_coefficients


def random_density(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def test_moments_from_wigner_match_density():
    sp = SpinSpace(2.0)
    ks = build_kernels(sp)
    g = build_generators(sp)
    mops = build_mapped_operators(ks)
    for seed in (1, 2, 3):
        rho = random_density(5, seed)
        mw = moments_from_wigner(wigner_of_state(ks, rho), mops)
        md = moments_from_density(rho, g)
        for ax in "xyz":
            assert abs(mw.mean[ax] - md.mean[ax]) < 1e-11
            assert abs(mw.second[ax] - md.second[ax]) < 1e-11
        for key in ("xy", "xz", "yz"):
            assert abs(mw.cov[key] - md.cov[key]) < 1e-11


def test_check_report_flags_impossible_covariance():
    m = coherent_moments(2.0, 1.0, 0.5)
    check_report(m)
    bad = type(m)(t=0.0, mean=m.mean, second=m.second,
                  cov={"xy": 5.0, "xz": m.cov["xz"], "yz": m.cov["yz"]})
    with pytest.raises(ValueError):
        check_report(bad)


def test_coherent_state_squeezing_reference():
    # coherent states saturate the RS bound, so complementary squeezing
    # parameters multiply to exactly 1; single factors below 1 are frame
    # artifacts and carry no entanglement meaning
    m = coherent_moments(5.0, 1.1, 0.7)
    rep = criteria_from_moments(m, 10)
    for a, b, c in (("x", "y", "z"), ("x", "z", "y"), ("y", "z", "x")):
        sa = rep.s[a].get(c)
        sb = rep.s[b].get(c)
        if sa is not None and sb is not None and not math.isnan(sa) and not math.isnan(sb):
            assert abs(sa * sb - 1.0) < 1e-9
    # entanglement criteria must stay quiet on a product state
    for flag in rep.flags:
        assert not flag.startswith(("esor_", "etoth_", "toth")), flag


def test_pole_state_produces_undefined_entries():
    # at the pole only <J_z> is nonzero; criteria normalized by transverse
    # means must be reported as undefined rather than divided through
    m = coherent_moments(2.0, 0.0, 0.0)
    rep = criteria_from_moments(m, 4)
    assert any(f.startswith("undef_") for f in rep.flags)


def test_twisted_state_fires_entanglement_somewhere():
    # one-axis twisting from a tilted coherent state drives the transverse
    # Sorensen parameters below 1 inside the period
    p = KuParams(chi=1.0, j=2.0)
    fired = set()
    for tau in np.arange(0.0, 2.0 * math.pi, 0.02):
        m = ku_analytic_moments(p, math.pi / 4.0, math.pi / 4.0, float(tau))
        rep = criteria_from_moments(m, 4)
        fired |= {f for f in rep.flags if f.startswith("esor_")}
    assert "esor_x" in fired and "esor_y" in fired
    assert "esor_z" not in fired


def test_toth_lhs_coherent_values():
    m = coherent_moments(2.0, 1.3, 0.4)
    rep = criteria_from_moments(m, 4)
    bound = 0.25 * 4 * (4 + 2)
    assert rep.toth_lhs["19"] <= bound + 1e-9
    assert not any(f.startswith("toth") for f in rep.flags)


def test_transform_moments_matches_rotated_state():
    sp = SpinSpace(2.0)
    g = build_generators(sp)
    from spinphase.su2 import transform_matrix
    xi, om = 0.4 - 0.1j, 0.8
    a = rotation_coefficients(xi, om)
    t = transform_matrix(sp, xi, om)
    rho = random_density(5, 9)
    m = moments_from_density(rho, g)
    mt = transform_moments(m, a)
    rho_rot = t @ rho @ t.conj().T
    ref = moments_from_density(rho_rot, g)
    for ax in "xyz":
        assert abs(mt.mean[ax] - ref.mean[ax]) < 1e-10
        assert abs(mt.second[ax] - ref.second[ax]) < 1e-10
    for key in ("xy", "xz", "yz"):
        assert abs(mt.cov[key] - ref.cov[key]) < 1e-10


def test_snr_definition():
    m = coherent_moments(2.0, 1.0, 0.0)
    vals, flags = snr(m)
    for ax in "xyz":
        v = m.var(ax)
        if v < 1e-12:
            assert math.isnan(vals[ax]) and ("undef_snr_" + ax) in flags
        else:
            assert abs(vals[ax] - abs(m.mean[ax]) / math.sqrt(v)) < 1e-12


def test_local_extrema_on_cosine():
    t = np.linspace(0.0, 4.0 * math.pi, 800)
    mins = local_extrema(t, np.cos(t), "min")
    maxs = local_extrema(t, np.cos(t), "max")
    assert len(mins) == 2 and len(maxs) == 1
    assert abs(mins[0][0] - math.pi) < 1e-3
    assert abs(mins[1][0] - 3.0 * math.pi) < 1e-3
    assert abs(maxs[0][0] - 2.0 * math.pi) < 1e-3
    assert abs(mins[0][1] + 1.0) < 1e-6


def test_local_extrema_rejects_mismatched_input():
    with pytest.raises(ValueError):
        local_extrema(np.arange(4.0), np.arange(5.0))
    with pytest.raises(ValueError):
        local_extrema(np.arange(4.0), np.arange(4.0), kind="saddle")
