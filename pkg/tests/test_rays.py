import numpy as np
import mpmath as mp
import pytest

from iterzeta.errors import BranchObstruction, UnsupportedRange
from iterzeta.rays import (CUTOFF_OFFSET, RayBranch, log_zeta_horizontal,
                           log_zeta_real_axis)
from iterzeta.zeros import bundled_table

mp.mp.dps = 25


def _mp_continued(sigma, t, n=1600):
    """Independent oracle: dense principal-log samples along the ray,
    unwound by nearest-2pi matching from the far anchor."""
    alphas = np.linspace(sigma + CUTOFF_OFFSET, sigma, n)
    vals = [mp.log(mp.zeta(mp.mpc(float(a), t))) for a in alphas]
    out = complex(vals[0])
    prev = complex(vals[0])
    for v in vals[1:]:
        v = complex(v)
        k = round((prev.imag - v.imag) / (2 * np.pi))
        v += 2j * np.pi * k
        prev = v
    return prev


@pytest.mark.parametrize("sigma,t", [(0.5, 20.0), (0.8, 50.0), (2.0, 30.5)])
def test_against_mpmath_walk(sigma, t):
    got = log_zeta_horizontal(sigma, t, table=bundled_table())
    want = _mp_continued(sigma, t)
    assert abs(got - want) < 1e-10


def test_exp_recovers_zeta():
    for sigma, t in [(0.6, 33.3), (1.5, 101.7), (0.5, 48.0)]:
        lz = log_zeta_horizontal(sigma, t, table=bundled_table())
        want = complex(mp.zeta(mp.mpc(sigma, t)))
        assert abs(np.exp(lz) - want) < 1e-10


def test_far_right_decay():
    # |log zeta(sigma+it)| <= 2 * 2^-sigma once the 2^-s term dominates
    for sigma in (5.0, 10.0, 20.0):
        v = log_zeta_horizontal(sigma, 13.7)
        assert abs(v) <= 2.0 * 2.0 ** (-sigma)


def test_conjugate_symmetry():
    up = log_zeta_horizontal(0.7, 21.3, table=bundled_table())
    dn = log_zeta_horizontal(0.7, -21.3, table=bundled_table())
    assert abs(dn - np.conj(up)) < 1e-13


def test_branch_query_range():
    br = RayBranch(0.5, 20.0)
    alphas = np.array([0.5, 1.0, 10.0, 40.5])
    vals = br.log_zeta(alphas)
    assert abs(vals[0] - log_zeta_horizontal(0.5, 20.0)) < 1e-13
    with pytest.raises(UnsupportedRange):
        br.log_zeta(np.array([45.0]))


def test_guard_near_ordinate():
    tab = bundled_table()
    g1 = tab.gammas[0]
    with pytest.raises(BranchObstruction):
        log_zeta_horizontal(0.4, g1 + 5e-4, table=tab)
    # zero lies left of sigma: the ray is clean, no guard
    v = log_zeta_horizontal(0.8, g1 + 5e-4, table=tab)
    assert np.isfinite(v.real) and np.isfinite(v.imag)


def test_real_axis_route():
    # below the pole log zeta is real; above 1 it is log of a positive value
    v2 = log_zeta_horizontal(2.0, 0.0)
    assert abs(v2.imag) < 1e-14
    assert abs(v2.real - np.log(np.pi ** 2 / 6)) < 1e-12
    # between 0 and the pole zeta < 0; the limit from above approaches the
    # negative axis from below (zeta' < 0 there), so the branch carries -pi
    v_half = log_zeta_real_axis(np.array([0.5]))[0]
    assert abs(v_half.imag + np.pi) < 1e-14
    assert abs(np.exp(v_half) - complex(mp.zeta(0.5))) < 1e-12
    with pytest.raises(BranchObstruction):
        log_zeta_horizontal(1.0, 0.0)
