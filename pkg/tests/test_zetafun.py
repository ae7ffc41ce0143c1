import numpy as np
import mpmath as mp
import pytest

from iterzeta import ComplexPoint, EvalParams, PoleAtOne, UnsupportedRange
from iterzeta import zeta, zeta_batch

mp.mp.dps = 30


def test_classical_values():
    assert abs(zeta(2.0 + 0j) - np.pi ** 2 / 6) < 1e-12
    assert abs(zeta(0.0 + 0j) - (-0.5)) < 1e-12
    assert abs(zeta(4.0 + 0j) - np.pi ** 4 / 90) < 1e-12
    # Apery's constant
    assert abs(zeta(3.0 + 0j) - 1.2020569031595943) < 1e-12


def test_against_dirichlet_series():
    # absolutely convergent region: plain truncated sum as oracle
    n = np.arange(1, 400_000)
    for s in (2.5 + 0j, 3.0 + 4.0j, 5.0 + 0.7j):
        oracle = np.sum(n ** (-s)) + (n[-1] + 0.5) ** (1 - s) / (s - 1)
        assert abs(zeta(s) - oracle) < 1e-11


@pytest.mark.parametrize("sigma", [0.1, 0.5, 1.5, 3.0])
@pytest.mark.parametrize("t", [0.0, 1.0, 17.5, 300.0])
def test_against_mpmath(sigma, t):
    s = complex(sigma, t)
    if s == 1.0:
        return
    want = complex(mp.zeta(mp.mpc(sigma, t)))
    assert abs(zeta(s) - want) < 1e-10


def test_tall_point_against_mpmath():
    want = complex(mp.zeta(mp.mpc(0.5, 9000.0)))
    assert abs(zeta(0.5 + 9000.0j) - want) < 1e-9


def test_conjugate_symmetry():
    for s in (0.3 + 7.2j, 2.0 + 31.4j, 0.5 + 104.0j):
        assert abs(zeta(np.conj(s)) - np.conj(zeta(s))) < 1e-13


def test_first_zero_is_small():
    assert abs(zeta(0.5 + 14.134725141734694j)) < 1e-9


def test_batch_matches_scalar():
    pts = np.array([0.5 + 20j, 2.0 + 0j, 0.8 + 55.5j, 1.5 + 999.0j])
    vals = zeta_batch(pts)
    for p, v in zip(pts, vals):
        assert abs(v - zeta(complex(p))) < 1e-11


def test_complex_point_interface():
    p = ComplexPoint(sigma=0.75, t=12.5)
    assert p.as_complex == 0.75 + 12.5j
    assert zeta(p) == zeta(0.75 + 12.5j)


def test_desk_limits():
    with pytest.raises(UnsupportedRange):
        zeta(-0.5 + 3j)
    with pytest.raises(UnsupportedRange):
        zeta(2.0 + 2.0e4j)
    with pytest.raises(PoleAtOne):
        zeta(1.0 + 0j)


def test_params_validation():
    with pytest.raises(UnsupportedRange):
        EvalParams(em_bernoulli=9)
    with pytest.raises(UnsupportedRange):
        EvalParams(em_terms=3)
