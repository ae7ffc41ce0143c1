"""Realizing a target as a sum of rotated radii.

Given positive radii r_1..r_N with the dominance property (no radius
exceeds the sum of the others) and a target z with |z| <= sum r_n, there
are angles theta_n in [0,1) with

    sum_n r_n exp(-2 pi i theta_n) = z.

Constructively: the radii together with one closing side of length |z|
are the sides of a convex polygon inscribed in some circle.  The
circumradius comes from a scalar root-find on the central-angle sum (the
reflected variant when the longest side subtends more than half the
circle); chord directions then give the angles, and rotating the whole
polygon aligns the closing side with z.  Closure is exact by telescoping,
so the residual is driven by the root-find alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import (DominanceViolation, RootFindFailure, TargetOutsideDisk,
                     TooFewRadii, ValidationError)

ALIGNED_RTOL = 1e-12       # |z| at the boundary of the disk
FLAT_RTOL = 1e-9           # degenerate polygon: longest side = sum of rest


@dataclass(frozen=True)
class RadiiSet:
    radii: np.ndarray
    labels: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        r = np.asarray(self.radii, dtype=np.float64)
        if r.size < 3:
            raise TooFewRadii("need at least three radii")
        if np.any(~np.isfinite(r)) or np.any(r <= 0.0):
            raise ValidationError("radii must be positive and finite")
        object.__setattr__(self, "radii", r)
        if self.labels is not None:
            lab = np.asarray(self.labels)
            if lab.size != r.size:
                raise ValidationError("labels must match radii in length")
            object.__setattr__(self, "labels", lab)


@dataclass(frozen=True)
class AngleAssignment:
    thetas: np.ndarray
    target: complex
    achieved: complex
    residual: float

    def __post_init__(self) -> None:
        th = np.asarray(self.thetas, dtype=np.float64)
        if np.any((th < 0.0) | (th >= 1.0)):
            raise ValidationError("angles must lie in [0, 1)")
        object.__setattr__(self, "thetas", th)


def check_dominance(radii: RadiiSet) -> bool:
    """True iff the largest radius is at most the sum of the others; then
    every target in the full disk |z| <= sum r is reachable."""
    r = radii.radii
    return bool(r.max() <= r.sum() - r.max())


def _angle_sum_root(sides: np.ndarray, i_max: int):
    """Circumradius parameter u = 1/(2R) for the cyclic polygon with the
    given side lengths.  Returns (u, reflected)."""
    l_max = sides[i_max]
    others = np.delete(sides, i_max)

    s1 = float(np.sum(np.arcsin(np.clip(others / l_max, 0.0, 1.0))))
    reflected = s1 < np.pi / 2.0

    if not reflected:
        def g(u):
            return float(np.sum(np.arcsin(np.clip(sides * u, -1.0, 1.0)))) - np.pi
        lo, hi = 1e-300, 1.0 / l_max
    else:
        def g(u):
            return float(np.sum(np.arcsin(np.clip(others * u, -1.0, 1.0)))
                         - np.arcsin(min(l_max * u, 1.0)))
        lo, hi = 1e-9 / l_max, 1.0 / l_max
        if g(lo) <= 0.0:
            raise RootFindFailure(
                "reflected-case bracket failed; sides nearly degenerate")

    try:
        u = brentq(g, lo, hi, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    except ValueError as exc:
        raise RootFindFailure(
            f"no circumradius bracket for sides in [{sides.min():.3g}, "
            f"{sides.max():.3g}]: {exc}") from None

    # a couple of Newton steps; the closure gap is R * (angle residual)
    for _ in range(3):
        if reflected:
            val = float(np.sum(np.arcsin(others * u)) - np.arcsin(l_max * u))
            der = float(np.sum(others / np.sqrt(1.0 - (others * u) ** 2))
                        - l_max / np.sqrt(max(1.0 - (l_max * u) ** 2, 1e-30)))
        else:
            val = float(np.sum(np.arcsin(sides * u))) - np.pi
            der = float(np.sum(sides / np.sqrt(
                np.maximum(1.0 - (sides * u) ** 2, 1e-30))))
        if der == 0.0:
            break
        step = val / der
        if not np.isfinite(step) or abs(step) > 0.5 * u:
            break
        u -= step
    return u, reflected


def _frac_angle(vec: np.ndarray) -> np.ndarray:
    """theta with exp(-2 pi i theta) = vec/|vec|, in [0,1)."""
    th = np.mod(-np.angle(vec) / (2.0 * np.pi), 1.0)
    return np.where(th >= 1.0, 0.0, th)


def polygon_angles(radii: RadiiSet, z: complex) -> AngleAssignment:
    """Angles theta with sum r_n exp(-2 pi i theta_n) = z, residual below
    1e-10 for well-conditioned inputs (see module docstring)."""
    r = radii.radii
    n = r.size
    total = float(r.sum())
    az = abs(z)
    if az > total * (1.0 + ALIGNED_RTOL):
        raise TargetOutsideDisk(f"|z|={az:.6g} beyond radius sum {total:.6g}")
    # reachable targets form an annulus: the closing side of length |z|
    # must keep the largest radius dominated
    if r.max() > (total - r.max()) + az + ALIGNED_RTOL * total:
        raise DominanceViolation(
            f"|z|={az:.6g} inside the unreachable hole of radius "
            f"{2.0 * r.max() - total:.6g}")

    if total - az <= ALIGNED_RTOL * total:
        # boundary of the disk: every side aligned with z
        th = np.full(n, _frac_angle(np.array([complex(z)]))[0])
        achieved = complex(np.sum(r) * z / az)
        return AngleAssignment(th, complex(z), achieved, abs(achieved - z))

    order = np.argsort(-r, kind="stable")
    if az > 0.0:
        sides = np.concatenate([[az], r[order]])
        radius_slots = np.arange(1, n + 1)
    else:
        sides = r[order].astype(float)
        radius_slots = np.arange(n)

    i_max = int(np.argmax(sides))
    l_max = sides[i_max]
    rest = sides.sum() - l_max
    if rest - l_max <= FLAT_RTOL * sides.sum():
        # degenerate: the polygon collapses onto a line
        if az > 0.0 and i_max == 0:
            th = np.full(n, _frac_angle(np.array([complex(z)]))[0])
            achieved = complex(np.sum(r) * z / az)
            return AngleAssignment(th, complex(z), achieved, abs(achieved - z))
        direction = complex(z) if az > 0.0 else 1.0 + 0.0j
        th_fwd = _frac_angle(np.array([direction]))[0]
        th_bwd = _frac_angle(np.array([-direction]))[0]
        th_sorted = np.full(sides.size, th_bwd)
        th_sorted[i_max] = th_fwd
        thetas = np.empty(n)
        thetas[order] = th_sorted[radius_slots]
        achieved = complex(np.sum(r * np.exp(-2j * np.pi * thetas)))
        return AngleAssignment(thetas, complex(z), achieved,
                               abs(achieved - complex(z)))

    u, reflected = _angle_sum_root(sides, i_max)
    phis = 2.0 * np.arcsin(np.clip(sides * u, 0.0, 1.0))
    if reflected:
        phis[i_max] = 2.0 * np.pi - phis[i_max]

    psi = np.concatenate([[0.0], np.cumsum(phis)])
    verts = np.exp(1j * psi) / (2.0 * u)
    chords = verts[1:] - verts[:-1]

    if az > 0.0:
        rot = complex(z) / (-chords[0])
        rot /= abs(rot)
        chords = chords * rot
    thetas_sorted = _frac_angle(chords[radius_slots])
    thetas = np.empty(n)
    thetas[order] = thetas_sorted
    achieved = complex(np.sum(r * np.exp(-2j * np.pi * thetas)))
    return AngleAssignment(thetas, complex(z), achieved,
                           abs(achieved - complex(z)))
