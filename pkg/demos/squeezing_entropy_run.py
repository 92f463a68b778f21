"""Long collective-spin run: criteria, return amplitude, and entropies.

Twenty spins, coherent state on the equator, anisotropic collective
Hamiltonian.  Tracks the z-axis entanglement parameter E_z, the return
amplitude Tr[rho(0) rho(t)], and the smoothed-distribution entropies
(joint, marginal, and their mutual-correlation combination) over t in
[0, 50].

A note on the field strength: compact writeups circulating for this
dataset quote the linear field as h = -0.1, but the tabulated return
amplitudes, entropy values, and E_z extremum times all follow from a
field term twice that size.  This script uses -0.2 so the printed
numbers match the tabulated ones; pass --printed-field to see the run
at the quoted value.

If matplotlib is importable the script also writes squeezing_entropy.png.

Run: python3 demos/squeezing_entropy_run.py [--printed-field]
"""

import argparse
import math

import numpy as np

from spinphase.su2 import SpinSpace, coherent_state
from spinphase.mapping import build_kernels
from spinphase.dynamics import evolve_exact, fidelity, pure_density, wigner_trajectory_from_exact
from spinphase.models import LmgParams, lmg_hamiltonian
from spinphase.measures import build_mapped_operators, criteria_from_moments, local_extrema, moments_from_wigner
from spinphase.husimi import build_smoothing, entropies, husimi_from_wigner


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--printed-field", action="store_true",
                    help="use h = -0.1 instead of the anchor-matching -0.2")
    args = ap.parse_args()
    h = -0.1 if args.printed_field else -0.2

    sp = SpinSpace(10.0)
    ks = build_kernels(sp)
    mops = build_mapped_operators(ks)
    sk = build_smoothing(sp)
    hmat = lmg_hamiltonian(LmgParams(n_spins=20, h=h, gamma=0.2), sp)
    times = 0.05 * np.arange(1001)
    rho0 = pure_density(coherent_state(sp, math.pi / 2.0, 0.0))

    print("running 20 spins at h = %g, gamma = 0.2, t in [0, 50] ..." % h)
    traj = evolve_exact(hmat, rho0, times)
    frames = wigner_trajectory_from_exact(ks, traj).frames

    esz = np.array([criteria_from_moments(
        moments_from_wigner(w, mops, t=float(t)), 20).e_sorensen["z"]
        for t, w in zip(times, frames)])

    print("\n== z-axis entanglement parameter E_z ==")
    mins = local_extrema(times, esz, "min")
    maxs = local_extrema(times, esz, "max")
    print("first minima:", ", ".join("t=%.3f (%.4f)" % m for m in mins[:3]))
    print("first maxima:", ", ".join("t=%.3f (%.4f)" % m for m in maxs[:3]))
    below = times[esz < 1.0 - 1e-9]
    if below.size:
        print("E_z < 1 (entangled) first at t = %.2f" % below[0])

    print("\n== return amplitude at the marked times ==")
    for t in (2.15, 4.75, 7.10, 9.05, 9.95):
        idx = int(np.argmin(np.abs(times - t)))
        print("t = %4.2f   Tr[rho(0) rho(t)] = %.4f"
              % (t, fidelity(rho0, traj.frames[idx])))

    print("\n== smoothed-distribution entropies ==")
    for t in (0.0, 2.15, 4.75):
        idx = int(np.argmin(np.abs(times - t)))
        rep = entropies(husimi_from_wigner(frames[idx], sk), rho=traj.frames[idx])
        print("t = %4.2f   E_H = %.5f   E_Q = %.5f   E_R = %.5f   I = %.5f"
              % (t, rep.e_h, rep.e_q, rep.e_r, rep.i_h))

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("\nmatplotlib not installed, skipping the plot")
        return

    ent = np.array([entropies(husimi_from_wigner(w, sk)).e_h for w in frames])
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(8, 6))
    ax1.plot(times, esz)
    ax1.axhline(1.0, color="k", lw=0.5)
    ax1.set_ylabel("E_z")
    ax2.plot(times, ent)
    ax2.set_ylabel("E_H")
    ax2.set_xlabel("t")
    fig.savefig("squeezing_entropy.png", dpi=120)
    print("\nwrote squeezing_entropy.png")


if __name__ == "__main__":
    main()
