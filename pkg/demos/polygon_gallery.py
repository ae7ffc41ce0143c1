"""Closing a polygon with prescribed side lengths onto a target.

Given radii r_1 >= r_2 >= ... and a target z with |z| <= sum r_i, we
want angles theta_i in [0, 1) with

    sum_i  r_i exp(-2 pi i theta_i)  =  z

(the clockwise convention matching p^-it on the prime orbit).

Geometrically: chain the r_i head to tail together with one virtual
side of length |z| and bend the chain into a closed convex polygon
inscribed in a circle; the circumradius is the one unknown, found by a
root solve on the angle-sum equation.  One wrinkle: when a single side
dominates the rest the centre falls outside, the long side subtends a
reflex arc and the angle equation flips sign on it.

Every assignment below is verified by brute re-summation, and the
residual printed is that honest |sum - z|.
"""

import numpy as np

from iterzeta import RadiiSet, check_dominance, polygon_angles, sieve_primes


def show(label, radii, z, list_angles=True):
    rs = RadiiSet(np.asarray(radii, dtype=float))
    asg = polygon_angles(rs, complex(z))
    print(f"{label}  (target {z}, residual {asg.residual:.2e})")
    if list_angles:
        for r, th in zip(radii, asg.thetas):
            print(f"    r = {r:<6g} theta = {th:.9f}")
    print()
    return asg


def main():
    show("three unit sides to the origin", [1.0, 1.0, 1.0], 0j)
    show("boundary case: everything aligned", [1.0, 1.0, 1.0], 3.0 + 0j)
    show("right triangle sides", [3.0, 4.0, 5.0], 0j)
    show("one dominant side forces the reflex branch",
         [10.0, 1.0, 1.0, 1.0], 8.0 + 2.0j)

    # Dominance: with the origin reachable every target in the full
    # disk |z| <= sum r is too.  Without it a hole of unreachable
    # targets opens around the origin.
    lopsided = RadiiSet(np.array([10.0, 1.0, 1.0]))
    print(f"dominance for (10, 1, 1): {check_dominance(lopsided)}; "
          f"targets with |z| < 8 are out of reach")
    show("  ...but |z| = 9 still closes", [10.0, 1.0, 1.0], 9j)

    # Scale test: one side per prime below 10^6, radii p^-0.8 / log p,
    # aimed at an arbitrary point.  78498 sides, same machinery.
    ps = sieve_primes(1_000_000).first(78_498).astype(float)
    radii = ps ** -0.8 / np.log(ps)
    target = 0.3 - 1.1j
    asg = polygon_angles(RadiiSet(radii), target)
    achieved = np.sum(radii * np.exp(-2j * np.pi * asg.thetas))
    print(f"78498 prime-weighted sides to {target}: "
          f"residual {abs(achieved - target):.2e}")
    print(f"    (sum of radii {radii.sum():.3f}, largest {radii[0]:.3f})")


if __name__ == "__main__":
    main()
