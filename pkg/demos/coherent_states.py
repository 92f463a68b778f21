"""Angular-momentum algebra and spin coherent states.

Walks through the su2 layer: generator matrices, the closed-form overlap
of two coherent states against the direct vector inner product, and the
rotated-generator coefficient matrix checked to be a rotation.

Run: python3 demos/coherent_states.py
"""

import numpy as np

from spinphase.su2 import (SpinSpace, build_generators, coherent_overlap,
                           coherent_state, is_so3, rotation_coefficients,
                           transform_generators, transform_matrix)


def main():
    rng = np.random.default_rng(7)

    print("== generator algebra, j = 2 ==")
    sp = SpinSpace(2.0)
    g = build_generators(sp)
    comm = g.jx @ g.jy - g.jy @ g.jx - 1j * g.jz
    print("[Jx, Jy] - i Jz residual: %.2e" % np.abs(comm).max())
    print("J^2 diagonal: %s (j(j+1) = %g)"
          % (np.diag(g.j2).real.round(12), sp.j * (sp.j + 1.0)))

    print("\n== coherent states ==")
    south = coherent_state(sp, 0.0, 0.0)
    print("theta = 0 amplitudes:", south.real.round(12), " (lowest-weight state)")
    t1, f1 = 1.1, 0.4
    t2, f2 = 2.0, 5.3
    closed = coherent_overlap(sp.j, t1, f1, t2, f2)
    direct = np.vdot(coherent_state(sp, t1, f1), coherent_state(sp, t2, f2))
    print("overlap closed form  %.12f%+.12fi" % (closed.real, closed.imag))
    print("vector inner product %.12f%+.12fi" % (direct.real, direct.imag))
    print("agreement: %.2e" % abs(closed - direct))

    print("\n== rotated generators ==")
    xi = complex(rng.normal(), rng.normal()) * 0.4
    omega = float(rng.normal())
    a = rotation_coefficients(xi, omega)
    print("coefficient matrix is SO(3):", is_so3(a),
          " det = %.12f" % np.linalg.det(a))
    tmat = transform_matrix(sp, xi, omega)
    rotated = transform_generators(sp, xi, omega)[:3]
    old = (g.jx, g.jy, g.jz)
    worst = 0.0
    for i in range(3):
        direct = tmat.conj().T @ old[i] @ tmat
        recon = sum(a[i, k] * old[k] for k in range(3))
        worst = max(worst, float(np.abs(direct - recon).max()),
                    float(np.abs(rotated[i] - direct).max()))
    print("conjugation vs coefficient expansion, worst residual: %.2e" % worst)

    print("\n== minimum-uncertainty check ==")
    from spinphase.models import coherent_moments
    m = coherent_moments(sp.j, 1.1, 0.4)
    lhs = m.var("x") * m.var("y") - m.cov["xy"] ** 2
    rhs = 0.25 * m.mean["z"] ** 2
    print("VxVy - Vxy^2 = %.12f, (1/4)<Jz>^2 = %.12f (saturated)" % (lhs, rhs))


if __name__ == "__main__":
    main()
