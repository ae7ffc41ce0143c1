"""End-to-end acceptance gate: one test per criterion, one verdict line
each.  Ordered roughly by cost; the expensive prime sieve is shared."""

import numpy as np
import pytest

from iterzeta import (bundled_table, check_bridge, construct_theta,
                      equidistribution_measure, eta_tilde_recursive,
                      eta_tilde_weighted, hunt_value, mean_square_error,
                      polygon_angles, polylog, s_sum, second_moment_s,
                      sieve_primes, y_m, zeta)
from iterzeta.dirichlet import (dirichlet_li_sum, li_vs_mangoldt_gap,
                                mangoldt_sum)
from iterzeta.polygon import RadiiSet, check_dominance
from iterzeta.zeros import ZeroTable

TAB = bundled_table()
LOG2 = np.log(2.0)


def _verdict(num, ok, detail):
    print(f"criterion {num:2d} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def test_criterion_01_classical_values():
    errs = [
        abs(zeta(2.0 + 0j) - np.pi ** 2 / 6),
        abs(zeta(0.0 + 0j) + 0.5),
        abs(polylog(1, 0.5) - LOG2),
        abs(polylog(2, 0.5) - (np.pi ** 2 / 12 - LOG2 ** 2 / 2)),
    ]
    ok = errs[0] < 1e-10 and errs[1] < 1e-10 and errs[2] < 1e-12 \
        and errs[3] < 1e-12
    _verdict(1, ok, f"zeta/polylog classics, worst {max(errs):.2e}")


def test_criterion_02_route_equivalence():
    worst = 0.0
    for m in (2, 3):
        for sigma in (0.5, 0.8, 2.0):
            for t in (0.0, 5.0, 20.0):
                w = eta_tilde_weighted(m, sigma, t, table=TAB)
                r = eta_tilde_recursive(m, sigma, t, table=TAB)
                worst = max(worst, abs(w.value - r.value))
    _verdict(2, worst <= 1e-5,
             f"|weighted - recursive| on 18-point grid, worst {worst:.2e}")


def test_criterion_03_bridge_identity():
    worst = 0.0
    for m in (1, 2):
        for sigma in (0.5, 2.0):
            for t in (20.0, 30.5, 50.0):
                worst = max(worst, check_bridge(m, sigma, t, TAB))
    synth = ZeroTable(betas=np.array([0.75]), gammas=np.array([10.0]),
                      mults=np.array([1], dtype=np.int64),
                      source_label="synthetic")
    hand = 2 * np.pi * (1j * 0.25 ** 2 / 2 + 0.25 * 10.0)
    y_err = abs(y_m(2, 0.5, 20.0, synth) - hand)
    ok = worst <= 1e-4 and y_err <= 1e-12
    _verdict(3, ok, f"bridge worst {worst:.2e}, synthetic y_2 err "
                    f"{y_err:.2e}")


def test_criterion_04_decomposition():
    pt = sieve_primes(100_000)
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(20):
        m = int(rng.integers(1, 4))
        sigma = float(rng.uniform(0.5, 2.0))
        t = float(rng.uniform(0.0, 60.0))
        X = float(rng.uniform(10.0, 5000.0))
        gap = abs(dirichlet_li_sum(m, sigma, t, X, pt)
                  - mangoldt_sum(m, sigma, t, X)
                  - li_vs_mangoldt_gap(m, sigma, t, X, pt))
        worst = max(worst, gap)
    _verdict(4, worst < 1e-12,
             f"li = mangoldt + gap at 20 random points, worst {worst:.2e}")


def test_criterion_05_polygon():
    rng = np.random.default_rng(5)
    worst = 0.0
    done = 0
    while done < 200:
        n = int(rng.integers(3, 51))
        r = rng.uniform(0.05, 3.0, n)
        if not check_dominance(RadiiSet(r)):
            continue
        z = rng.uniform(0.0, 0.999 * r.sum()) * np.exp(
            2j * np.pi * rng.uniform())
        worst = max(worst, polygon_angles(RadiiSet(r), complex(z)).residual)
        done += 1
    sym = polygon_angles(RadiiSet(np.array([1.0, 1.0, 1.0])), 0j)
    edge = polygon_angles(RadiiSet(np.array([1.0, 1.0, 1.0])), 3.0 + 0j)
    worst = max(worst, sym.residual, edge.residual)
    _verdict(5, worst < 1e-10,
             f"200 random + symmetric + boundary, worst residual "
             f"{worst:.2e}")


@pytest.fixture(scope="module")
def deep_primes():
    return sieve_primes(40_000_000)


def test_criterion_06_construction_pipeline(deep_primes):
    res = construct_theta(1, 0.8, 1 + 1j, 0.05, deep_primes)
    reverify = abs(s_sum(res.assignment(), 0.8, 1) - (1 + 1j))
    zero = construct_theta(1, 0.8, res.gamma_value, 0.05, deep_primes)
    ok = (res.final_error < 0.05 and reverify < 0.05
          and zero.final_error < 0.05)
    _verdict(6, ok, f"final_error {res.final_error:.5f}, independent "
                    f"re-sum {reverify:.5f}, zero-target "
                    f"{zero.final_error:.5f}")


def test_criterion_07_second_moment_mc():
    pt = sieve_primes(10_000)
    rng = np.random.default_rng(7)
    n = 100_000
    oks, details = [], []
    for m, sigma, lo, hi in ((1, 0.8, 3, 10), (2, 0.6, 0, 6),
                             (1, 0.5, 5, 20)):
        want = second_moment_s(m, sigma, lo, hi, pt)
        ps = pt.first(hi)[lo:hi]
        logs = np.log(ps.astype(float))
        vals = np.zeros(n)
        for i in range(0, n, 10_000):
            th = rng.uniform(size=(10_000, ps.size))
            zs = np.exp(-sigma * logs)[None, :] * np.exp(-2j * np.pi * th)
            li = np.zeros_like(zs)
            zk = np.ones_like(zs)
            for k in range(1, 200):
                zk = zk * zs
                li += zk / k ** (m + 1)
                if np.max(np.abs(zk)) < 1e-17:
                    break
            vals[i:i + 10_000] = np.abs(
                np.sum(li / logs[None, :] ** m, axis=1)) ** 2
        se = vals.std(ddof=1) / np.sqrt(n)
        oks.append(abs(vals.mean() - want) < 3 * se)
        details.append(f"{abs(vals.mean() - want) / se:.2f}se")
    _verdict(7, all(oks), "closed form vs 1e5-sample MC: deviations "
             + ", ".join(details))


def test_criterion_08_equidistribution():
    meas, exp = equidistribution_measure([(0.0, 0.5), (0.0, 0.5)], 1e5,
                                         [2, 3])
    ok = abs(meas - exp) < 0.05 and exp == 0.25
    _verdict(8, ok, f"box density {meas:.4f} vs {exp}")


def test_criterion_09_hunt():
    a = eta_tilde_weighted(1, 0.8, 50.0, table=TAB).value
    res = hunt_value(1, 0.8, a, 0.1, table=TAB)
    ok = res.success and res.final_error < 0.1
    _verdict(9, ok, f"self-referential target: final_error "
                    f"{res.final_error:.4f} at t = {res.t_witness:.3f}")


def test_criterion_10_mean_square_trend():
    r3 = mean_square_error(1, 0.8, 3, 200.0, 0.25, TAB)
    r20 = mean_square_error(1, 0.8, 20, 200.0, 0.25, TAB)
    ok = r20.mse < r3.mse
    _verdict(10, ok, f"mse(X=20) = {r20.mse:.3e} < mse(X=3) = "
                     f"{r3.mse:.3e}; bound ratios {r20.bound_ratio:.3f}, "
                     f"{r3.bound_ratio:.3f} (reported, not thresholded)")
