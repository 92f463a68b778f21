"""Discrete phase-space mapping at small N.

Builds the kernel set at N = 5, maps a coherent state and the pole states
onto the grid, round-trips density <-> Wigner <-> Weyl, and reproduces an
operator product through the compact convolution kernels.

Run: python3 demos/wigner_mapping.py
"""

import math

import numpy as np

from spinphase.su2 import SpinSpace, build_generators, coherent_state
from spinphase.mapping import (build_kernels, coherent_wigner, density_from_wigner,
                               grid_overlap, map_anticommutator, map_operator,
                               mean_value, weyl_from_wigner, wigner_from_weyl,
                               wigner_of_state)
from spinphase.oracles import gamma_kernel, product_via_gamma
from spinphase.dynamics import pure_density


def show_grid(ks, w, label):
    print(label)
    header = "      " + "".join("nu=%+d    " % v for v in ks.labels)
    print(header)
    for i, mu in enumerate(ks.labels):
        print("mu=%+d " % mu + "".join("%8.4f " % x for x in w[i]))


def main():
    sp = SpinSpace(2.0)
    ks = build_kernels(sp)
    g = build_generators(sp)

    print("== coherent state on the grid ==")
    w = coherent_wigner(ks, math.pi / 3.0, 0.7)
    show_grid(ks, w, "Wigner function, theta = pi/3, phi = 0.7")
    print("normalization sum W / N = %.12f" % (w.sum() / ks.dim))

    print("\n== pole states live on single label rows ==")
    for name, vec_index, mu in (("lowest", 0, -sp.ell), ("highest", -1, sp.ell)):
        vec = np.zeros(ks.dim, dtype=complex)
        vec[vec_index] = 1.0
        wp = wigner_of_state(ks, pure_density(vec))
        row = int(np.where(ks.labels == mu)[0][0])
        off = float(np.abs(np.delete(wp, row, axis=0)).max())
        print("%s-weight state: row mu = %+d holds %s, off-support max %.1e"
              % (name, mu, wp[row].round(12), off))

    print("\n== round trips ==")
    rho = pure_density(coherent_state(sp, math.pi / 3.0, 0.7))
    back = density_from_wigner(ks, wigner_of_state(ks, rho))
    print("density -> Wigner -> density residual: %.2e" % np.abs(back - rho).max())
    v = weyl_from_wigner(ks, w)
    print("Wigner -> Weyl -> Wigner residual:     %.2e"
          % np.abs(wigner_from_weyl(ks, v) - w).max())

    print("\n== traces as grid averages ==")
    jz_grid = map_operator(ks, g.jz)
    print("<Jz> from grid: %.12f   from matrix: %.12f"
          % (mean_value(ks, jz_grid, w).real, np.trace(rho @ g.jz).real))
    print("purity from grid overlap: %.12f   Tr rho^2: %.12f"
          % (grid_overlap(ks, w, w), np.trace(rho @ rho).real))

    print("\n== products through the convolution kernel ==")
    wx = map_operator(ks, g.jx)
    wy = map_operator(ks, g.jy)
    anti_direct = map_anticommutator(ks, g.jx, g.jy)
    anti_kernel = product_via_gamma(ks, gamma_kernel(ks, "anti"), wx, wy)
    print("anticommutator {Jx, Jy}: kernel route vs direct map, residual %.2e"
          % np.abs(anti_kernel - anti_direct).max())


if __name__ == "__main__":
    main()
