"""Two independent routes to the iterated integral of log zeta.

eta_m integrates along the vertical segment up from sigma + i0, picking
up a 2 pi jump every time the walk passes a zero ordinate.  eta~_m
integrates horizontally off to the right, where the Dirichlet series is
tame.  The two are tied together by

    eta_m(s) = i^m eta~_m(s) + Y_m(s),

where Y_m collects one elementary polynomial term per zero below height
t.  With every zero on the critical line and sigma = 1/2 the correction
vanishes; move sigma off the line or move a zero off it and Y_m switches
on.  The residual of the identity is the sharpest internal check the
package has, so this script simply prints it at a spread of points.
"""

import numpy as np

from iterzeta import (ZeroTable, bundled_table, eta_tilde_weighted,
                      eta_vertical, y_m)

TAB = bundled_table()


def residual_row(m, sigma, t, table):
    ev = eta_vertical(m, sigma, t, table)
    et = eta_tilde_weighted(m, sigma, t, table)
    corr = y_m(m, sigma, t, table)
    res = abs(ev.value - (1j ** m * et.value + corr))
    return ev.value, et.value, corr, res


def main():
    print("bridge identity  eta_m = i^m eta~_m + Y_m")
    print(f"zero table: {TAB.betas.size} zeros up to t = {TAB.coverage:g}")
    print()
    print(f"{'m':>2} {'sigma':>6} {'t':>6} {'|Y_m|':>10} "
          f"{'residual':>10}")
    for m in (1, 2, 3):
        for sigma, t in ((0.5, 20.0), (0.8, 30.5), (2.0, 50.0)):
            _, _, corr, res = residual_row(m, sigma, t, TAB)
            print(f"{m:>2} {sigma:>6.2f} {t:>6.1f} {abs(corr):>10.2e} "
                  f"{res:>10.2e}")

    # Y_m for a single zero off the line has a closed form: a zero at
    # beta + i gamma seen from sigma < beta at height t > gamma gives
    # 2 pi (i (beta - sigma)^2 / 2 + (beta - sigma) gamma) at m = 2.
    synth = ZeroTable(betas=np.array([0.75]), gammas=np.array([10.0]),
                      mults=np.array([1], dtype=np.int64),
                      source_label="synthetic single zero")
    got = y_m(2, 0.5, 20.0, synth)
    hand = 2 * np.pi * (1j * 0.25 ** 2 / 2 + 0.25 * 10.0)
    print()
    print("single synthetic zero at 3/4 + 10i, y_2 at 1/2 + 20i:")
    print(f"  computed {got:.12f}")
    print(f"  by hand  {hand:.12f}   (difference {abs(got - hand):.1e})")

    # The residual also works as a lie detector.  Append that phantom
    # zero to the honest table: y_m dutifully adds its term, but the
    # vertical walk follows the true winding of zeta, which has no zero
    # there.  The mismatch surfaces as a residual of exactly |y_m| of
    # the phantom instead of 1e-10.
    merged = ZeroTable(betas=np.concatenate([[0.75], TAB.betas]),
                       gammas=np.concatenate([[10.0], TAB.gammas]),
                       mults=np.concatenate([[1], TAB.mults]),
                       source_label="bundled plus phantom")
    print()
    print("same phantom appended to the real table, bridge at 1/2 + 20i:")
    for m in (1, 2):
        _, _, corr, res = residual_row(m, 0.5, 20.0, merged)
        print(f"  m={m}: residual {res:.6f}  vs honest table "
              f"{residual_row(m, 0.5, 20.0, TAB)[3]:.2e}")


if __name__ == "__main__":
    main()
