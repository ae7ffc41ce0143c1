"""How well a short prime sum tracks the iterated integral.

Right of the critical strip log zeta is literally a sum of polylogs
over primes, so eta~_m inherits a Dirichlet-series shadow

    D_X(s) = sum_{p <= X} Li_{m+1}(p^-s) / (log p)^m,

and the interesting question is how far into the strip, and with how
few primes, the shadow still follows the function.  Two views here:

  * pointwise, at a fixed s, as the cutoff X grows;
  * in mean square along a vertical segment, where the error should
    shrink roughly like X^(1-2 sigma) / (log X)^(2m).

The von Mangoldt form sum Lambda(n) n^-s / (m-th log power) is the same
object expanded over prime powers; their difference has its own closed
expression, printed last as a consistency check.
"""

import numpy as np

from iterzeta import (bundled_table, dirichlet_li_sum, eta_tilde_weighted,
                      li_vs_mangoldt_gap, mangoldt_sum, mean_square_error,
                      sieve_primes)

TAB = bundled_table()
PRIMES = sieve_primes(200_000)


def pointwise(m, sigma, t):
    exact = eta_tilde_weighted(m, sigma, t, TAB).value
    print(f"pointwise at m={m}, s = {sigma} + {t}i "
          f"(exact {exact.real:+.6f}{exact.imag:+.6f}i):")
    for X in (3, 10, 100, 1_000, 100_000):
        d = dirichlet_li_sum(m, sigma, t, X, PRIMES)
        print(f"  X = {X:>6}: |eta~ - D_X| = {abs(exact - d):.3e}")
    print()


def in_mean_square(m, sigma, T):
    print(f"mean square over 14 <= t <= {T:g} at m={m}, sigma={sigma}:")
    print(f"  {'X':>5} {'mse':>10} {'mse/shape':>10}")
    for X in (3, 10, 20, 50):
        rep = mean_square_error(m, sigma, X, T, 0.25, TAB, primes=PRIMES)
        print(f"  {X:>5} {rep.mse:>10.3e} {rep.bound_ratio:>10.3f}")
    print("  (mse/shape divides by X^(1-2 sigma)/(log X)^(2m); a flat "
          "column means the shape is right)")
    print()


def main():
    pointwise(1, 2.0, 10.0)
    pointwise(1, 0.8, 10.0)
    in_mean_square(1, 0.8, 120.0)

    m, sigma, t, X = 2, 0.8, 7.0, 1_000.0
    li = dirichlet_li_sum(m, sigma, t, X, PRIMES)
    vm = mangoldt_sum(m, sigma, t, X)
    gap = li_vs_mangoldt_gap(m, sigma, t, X, PRIMES)
    print("prime-power bookkeeping at m=2, s = 0.8 + 7i, X = 1000:")
    print(f"  polylog-over-primes sum  {li:+.12f}")
    print(f"  von Mangoldt form        {vm:+.12f}")
    print(f"  closed-form difference   {gap:+.12f}")
    print(f"  decomposition residual   {abs(li - vm - gap):.2e}")


if __name__ == "__main__":
    main()
