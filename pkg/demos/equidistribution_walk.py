"""The prime orbit on the torus, measured and steered.

As t runs over the reals the point

    t  |->  ( t log 2 / 2 pi,  t log 3 / 2 pi, ... )   mod 1

winds around the torus, and because log p are linearly independent over
the rationals the winding line is dense and equidistributed: the time
spent in any box converges to the box volume.  First half of this
script watches that convergence.  Second half inverts it: given a
target point and a tolerance delta, scan the orbit for visit times,
which is how witnesses for prescribed eta~ values get found.
"""

import numpy as np

from iterzeta import TorusTarget, equidistribution_measure, kronecker_search


def convergence(primes, box, label, t_top):
    print(f"time in {label}, orbit of primes {primes}:")
    T = 1e3
    while T <= t_top:
        measured, expected = equidistribution_measure(box, T, primes)
        print(f"  T = {T:>9g}: measured {measured:.5f}  "
              f"(limit {expected:.5f}, gap {abs(measured - expected):.1e})")
        T *= 10
    print()


def main():
    convergence([2, 3], [(0.0, 0.5), (0.0, 0.5)], "the quarter box", 1e6)
    convergence([2, 3, 5], [(0.1, 0.3), (0.4, 0.9), (0.25, 0.35)],
                "a thin box in three dimensions", 1e5)

    # Steering: find times whose torus position is within delta of a
    # chosen point, coordinatewise around the circle.
    target = TorusTarget(primes=np.array([2, 3, 5]),
                         thetas=np.array([0.15, 0.65, 0.30]),
                         delta=0.02)
    hits = kronecker_search(target, 10.0, 5_000.0, 0.005)
    print(f"visits to (0.15, 0.65, 0.30) +- 0.02 before t = 5000: "
          f"{len(hits)} grid hits")
    shown = hits[:5]
    for t in shown:
        coords = np.mod(t * np.log([2, 3, 5]) / (2 * np.pi), 1.0)
        err = np.max(np.abs(np.mod(coords - target.thetas + 0.5, 1.0) - 0.5))
        print(f"  t = {t:>10.3f}  position ("
              + ", ".join(f"{c:.4f}" for c in coords)
              + f")  off by {err:.4f}")

    # Tighter tolerance, same box centre: visits thin out roughly like
    # delta^3 but never dry up.
    for delta in (0.05, 0.02, 0.01):
        tgt = TorusTarget(primes=np.array([2, 3, 5]),
                          thetas=np.array([0.15, 0.65, 0.30]), delta=delta)
        hits = kronecker_search(tgt, 10.0, 20_000.0, 0.005)
        print(f"delta = {delta}: {len(hits):>5} hits up to t = 20000, "
              f"first at t = {hits[0]:.3f}" if hits else
              f"delta = {delta}: none below 20000")


if __name__ == "__main__":
    main()
