import numpy as np
import mpmath as mp
import pytest

from iterzeta.errors import (LimitExceeded, ValidationError, WindowExhausted)
from iterzeta.primes import sieve_primes
from iterzeta.torus import (construct_theta, gamma_m_sigma,
                            gamma_tail_estimate, load_theta, s_sum,
                            save_theta, second_moment_s)

mp.mp.dps = 30

PT = sieve_primes(1_000_000)


def test_gamma_leading_terms():
    # hand value from the first two primes; the rest is bounded by the
    # third term
    m, sigma = 2, 0.9
    lead = (complex(mp.polylog(3, 2.0 ** -sigma)) / np.log(2.0) ** 2
            + complex(mp.polylog(3, -(3.0 ** -sigma))) / np.log(3.0) ** 2)
    third = 5.0 ** -sigma / np.log(5.0) ** 2
    got = gamma_m_sigma(m, sigma, 1e3, PT)
    assert abs(got.imag) < 1e-15
    assert abs(got - lead) < third


def test_gamma_truncation_obeys_tail_estimate():
    for m, sigma in ((1, 0.8), (2, 0.6)):
        full = gamma_m_sigma(m, sigma, 1e6, PT)
        part = gamma_m_sigma(m, sigma, 1e4, PT)
        est = gamma_tail_estimate(m, sigma, 1e4)
        assert abs(full - part) <= 1.1 * est


def test_gamma_validation():
    with pytest.raises(ValidationError):
        gamma_m_sigma(1, 0.8, 100.0, PT)
    with pytest.raises(ValidationError):
        gamma_m_sigma(1, 1.2, 1e4, PT)
    with pytest.raises(LimitExceeded):
        gamma_m_sigma(1, 0.8, 1e7, PT)


def test_s_sum_single_primes_by_hand():
    v2 = s_sum({2: 0.25}, 0.8, 1)
    want = complex(mp.polylog(2, 2.0 ** -0.8 * mp.e ** (-0.5j * mp.pi)))
    want /= np.log(2.0)
    assert abs(v2 - want) < 1e-14


def test_s_sum_additive():
    asn = {int(p): float(th) for p, th in
           zip(PT.first(50), np.linspace(0.0, 0.9, 50))}
    items = list(asn.items())
    whole = s_sum(asn, 0.7, 2)
    parts = s_sum(dict(items[:20]), 0.7, 2) + s_sum(dict(items[20:]), 0.7, 2)
    assert abs(whole - parts) < 1e-14
    assert s_sum({}, 0.7, 2) == 0.0


def test_second_moment_explicit():
    ps = PT.first(6)[2:6].astype(float)
    want = sum(p ** (-1.6 * k) / (k ** 4 * np.log(p) ** 2)
               for p in ps for k in range(1, 60))
    assert abs(second_moment_s(1, 0.8, 2, 6, PT) - want) < 1e-15
    assert second_moment_s(1, 0.8, 4, 4, PT) == 0.0


def test_second_moment_vs_monte_carlo():
    # independent uniform angles; sample mean within 3 standard errors
    m, sigma, lo, hi = 1, 0.8, 3, 10
    want = second_moment_s(m, sigma, lo, hi, PT)
    rng = np.random.default_rng(11)
    ps = PT.first(hi)[lo:hi]
    logs = np.log(ps.astype(float))
    n = 20_000
    vals = np.zeros(n)
    for i in range(0, n, 4000):
        th = rng.uniform(size=(4000, ps.size))
        zs = np.exp(-sigma * logs)[None, :] * np.exp(-2j * np.pi * th)
        li = np.zeros_like(zs)
        zk = np.ones_like(zs)
        for k in range(1, 200):
            zk = zk * zs
            li += zk / k ** (m + 1)
            if np.max(np.abs(zk)) < 1e-17:
                break
        vals[i:i + 4000] = np.abs(np.sum(li / logs[None, :], axis=1)) ** 2
    se = vals.std(ddof=1) / np.sqrt(n)
    assert abs(vals.mean() - want) < 3 * se


def test_construct_smoke():
    res = construct_theta(1, 0.9, 0.35 + 0.1j, 0.2, PT)
    assert res.final_error < 0.2
    assert res.theta2.residual < 1e-10
    assert res.U == 10
    # reference pattern below U
    below = res.primes < res.U
    assert np.allclose(res.theta2.thetas[below][::2], 0.0)
    assert np.allclose(res.theta2.thetas[below][1::2], 0.5)
    # re-verify through the public sum
    s = s_sum(res.assignment(), 0.9, 1)
    assert abs(abs(s - res.a) - res.final_error) < 1e-12


def test_construct_window_exhaustion():
    with pytest.raises(WindowExhausted):
        construct_theta(1, 0.8, 1 + 1j, 1e-9, PT)


def test_construct_validation():
    with pytest.raises(ValidationError):
        construct_theta(1, 1.1, 0.2 + 0j, 0.1, PT)
    with pytest.raises(ValidationError):
        construct_theta(1, 0.8, 0.2 + 0j, -0.1, PT)


def test_theta_roundtrip(tmp_path):
    res = construct_theta(1, 0.9, 0.35 + 0.1j, 0.2, PT)
    path = tmp_path / "theta.txt"
    save_theta(res, path)
    back = load_theta(path)
    assert back.m == res.m and back.U == res.U and back.N == res.N
    assert np.array_equal(back.primes, res.primes)
    assert np.array_equal(back.theta2.thetas, res.theta2.thetas)
    assert back.final_sum == res.final_sum
    assert back.final_error == res.final_error


def test_load_rejects_malformed(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("m = 1\n2 0.5 extra\n")
    with pytest.raises(ValidationError):
        load_theta(p)
