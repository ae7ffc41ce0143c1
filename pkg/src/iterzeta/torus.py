"""Prime-power sums on the torus and the angle-construction pipeline.

The truncated weighted integral of log zeta along a horizontal ray turns,
prime by prime, into

    S_{m,sigma}(theta) = sum_p Li_{m+1}(p^-sigma e^{-2 pi i theta_p})
                         / (log p)^m,

where theta_p = t log p / 2 pi mod 1 on the zeta line.  Treating the
theta_p as free coordinates, any target value a can be realized: fix the
alternating reference pattern theta^(0) = (0, 1/2, 0, 1/2, ...) outside
a window of primes (U, N], and choose the window angles by the polygon
construction so their first harmonics sum to a minus the reference value
gamma_{m,sigma}.  Higher harmonics in the window and the perturbed tail
are controlled by explicit bounds, each budgeted at epsilon/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from .dirichlet import polylog_batch
from .errors import (LimitExceeded, ValidationError, WindowExhausted)
from .polygon import AngleAssignment, RadiiSet, polygon_angles
from .primes import PrimeTable, sieve_primes

GAMMA_CUT = 1_000_000
U_CANDIDATES = (10, 100, 1_000, 10_000, 100_000)
_CHUNK = 500_000


def _validate_order_sigma(m: int, sigma: float) -> None:
    if m not in (1, 2, 3):
        raise ValidationError(f"order m={m} not supported; use 1, 2 or 3")
    if not (0.5 <= sigma < 1.0):
        raise ValidationError(
            f"sigma={sigma} outside [1/2, 1) for the torus construction")


def _theta0(count: int) -> np.ndarray:
    th = np.zeros(count)
    th[1::2] = 0.5
    return th


def _s_sum_arrays(primes: np.ndarray, logs: np.ndarray, thetas: np.ndarray,
                  sigma: float, m: int) -> complex:
    total = 0.0 + 0.0j
    for lo in range(0, primes.size, _CHUNK):
        hi = min(lo + _CHUNK, primes.size)
        zs = np.exp(-sigma * logs[lo:hi]
                    - 2j * np.pi * thetas[lo:hi]).astype(np.complex128)
        total += complex(np.sum(polylog_batch(m + 1, zs)
                                / logs[lo:hi] ** m))
    return total


def gamma_m_sigma(m: int, sigma: float, tail_cut: float,
                  primes: Optional[PrimeTable] = None) -> complex:
    """Reference value S_{m,sigma}(theta^(0)) over primes up to tail_cut.

    The terms alternate in sign with the prime index, so the truncation
    error obeys the Leibniz bound gamma_tail_estimate."""
    _validate_order_sigma(m, sigma)
    if tail_cut < 1_000:
        raise ValidationError("tail_cut below 1000 gives a useless estimate")
    if primes is None:
        primes = sieve_primes(int(tail_cut))
    if primes.limit < tail_cut:
        raise LimitExceeded(
            f"prime table reaches {primes.limit}, below tail_cut {tail_cut}")
    n = int(np.searchsorted(primes.primes, tail_cut, side="right"))
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    total = 0.0 + 0.0j
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        zs = (signs[lo:hi]
              * np.exp(-sigma * primes.logs[lo:hi])).astype(np.complex128)
        total += complex(np.sum(polylog_batch(m + 1, zs)
                                / primes.logs[lo:hi] ** m))
    return total


def gamma_tail_estimate(m: int, sigma: float, tail_cut: float) -> float:
    """First omitted term of the alternating reference sum."""
    _validate_order_sigma(m, sigma)
    if tail_cut < 1_000:
        raise ValidationError("tail_cut below 1000 gives a useless estimate")
    x = tail_cut ** (-sigma)
    return float(abs(polylog_batch(m + 1, np.array([x + 0j]))[0])
                 / math.log(tail_cut) ** m)


def s_sum(assignment: Mapping[int, float], sigma: float, m: int) -> complex:
    """S_{m,sigma} over exactly the primes present in the assignment."""
    _validate_order_sigma(m, sigma)
    if len(assignment) == 0:
        return 0.0 + 0.0j
    ps = np.fromiter(assignment.keys(), dtype=np.int64, count=len(assignment))
    ths = np.fromiter(assignment.values(), dtype=np.float64, count=len(ps))
    order = np.argsort(ps, kind="stable")
    ps, ths = ps[order], ths[order]
    if ps[0] < 2 or np.any(np.diff(ps) == 0):
        raise ValidationError("assignment keys must be distinct primes >= 2")
    if np.any(~np.isfinite(ths)):
        raise ValidationError("assignment angles must be finite")
    return _s_sum_arrays(ps, np.log(ps.astype(np.float64)), ths, sigma, m)


def second_moment_s(m: int, sigma: float, M: int, N: int,
                    primes: PrimeTable) -> float:
    """Mean of |S restricted to prime indices M < n <= N|^2 over
    independent uniform angles.  Cross terms vanish, leaving

        sum_{M<n<=N} sum_k  1 / (k^{2(m+1)} p_n^{2 sigma k} (log p_n)^{2m}).
    """
    _validate_order_sigma(m, sigma)
    if not (0 <= M <= N):
        raise ValidationError(f"need 0 <= M <= N, got M={M}, N={N}")
    if M == N:
        return 0.0
    ps = primes.first(N)[M:N].astype(np.float64)
    logs = np.log(ps)
    acc = 0.0
    k = 1
    while True:
        term = float(np.sum(ps ** (-2.0 * sigma * k)
                            / (k ** (2 * (m + 1)) * logs ** (2 * m))))
        acc += term
        if term < 1e-18 * acc or k > 200:
            break
        k += 1
    return acc


def first_harmonic_radii(m: int, sigma: float,
                         ps: np.ndarray) -> np.ndarray:
    """|k=1 coefficient| p^-sigma / (log p)^m for each prime."""
    ps = np.asarray(ps, dtype=np.float64)
    logs = np.log(ps)
    return ps ** (-sigma) / logs ** m


def _window_harmonic_error(m: int, sigma: float, primes: PrimeTable,
                           u_bound: float, cut: float) -> float:
    """Bound on all k >= 2 harmonics of primes beyond u_bound: exact sum
    to the sieve cut plus an integral bound past it."""
    lo = int(np.searchsorted(primes.primes, u_bound, side="right"))
    hi = int(np.searchsorted(primes.primes, cut, side="right"))
    ps = primes.primes[lo:hi].astype(np.float64)
    logs = primes.logs[lo:hi]
    acc = 0.0
    k = 2
    while True:
        term = float(np.sum(ps ** (-sigma * k)
                            / (k ** (m + 1) * logs ** m)))
        acc += term
        if term < 1e-18 * max(acc, 1e-300) or k > 200:
            break
        k += 1
    logc = math.log(cut)
    if sigma > 0.5:
        integral = cut ** (1.0 - 2.0 * sigma) / ((2.0 * sigma - 1.0)
                                                 * logc ** (m + 1))
    else:
        integral = 1.0 / (m * logc ** m)
    beyond = integral / (2 ** (m + 1) * (1.0 - cut ** (-sigma)))
    return acc + beyond


def _tail_first_harmonic_error(m: int, sigma: float, primes: PrimeTable,
                               u_bound: float, cut: float) -> float:
    """|alternating k=1 tail over (u_bound, cut]| plus the Leibniz bound
    for everything past the cut."""
    lo = int(np.searchsorted(primes.primes, u_bound, side="right"))
    hi = int(np.searchsorted(primes.primes, cut, side="right"))
    ps = primes.primes[lo:hi].astype(np.float64)
    signs = np.where(np.arange(lo, hi) % 2 == 0, 1.0, -1.0)
    alt = float(np.sum(signs * ps ** (-sigma) / primes.logs[lo:hi] ** m))
    return abs(alt) + cut ** (-sigma) / math.log(cut) ** m


@dataclass(frozen=True)
class ThetaPipelineResult:
    m: int
    sigma: float
    a: complex
    epsilon: float
    U: int
    N: int
    gamma_value: complex
    primes: np.ndarray
    theta2: AngleAssignment
    final_sum: complex
    final_error: float

    def assignment(self) -> dict:
        return {int(p): float(t)
                for p, t in zip(self.primes, self.theta2.thetas)}


def construct_theta(m: int, sigma: float, a: complex, epsilon: float,
                    primes: Optional[PrimeTable] = None
                    ) -> ThetaPipelineResult:
    """Angles realizing S_{m,sigma}(theta) = a to within epsilon.

    Reference pattern outside the window, polygon angles inside; U is the
    smallest power of ten whose two tail bounds both fit in epsilon/4.
    Raises WindowExhausted when the prime table cannot support either the
    choice of U or the radius sum needed to reach the target."""
    _validate_order_sigma(m, sigma)
    if not np.isfinite(epsilon) or epsilon <= 0.0:
        raise ValidationError("epsilon must be positive")
    a = complex(a)
    if not (np.isfinite(a.real) and np.isfinite(a.imag)):
        raise ValidationError("target must be finite")
    if primes is None:
        primes = sieve_primes(GAMMA_CUT)
    cut = float(min(GAMMA_CUT, primes.limit))
    if cut < 1_000:
        raise LimitExceeded("prime table too small; need limit >= 1000")

    gamma = gamma_m_sigma(m, sigma, cut, primes)
    z_star = a - gamma

    budget = epsilon / 4.0
    u_bound = None
    for cand in U_CANDIDATES:
        if cand >= cut:
            break
        e1 = _window_harmonic_error(m, sigma, primes, cand, cut)
        e2 = _tail_first_harmonic_error(m, sigma, primes, cand, cut)
        if e1 <= budget and e2 <= budget:
            u_bound = cand
            break
    if u_bound is None:
        raise WindowExhausted(
            f"no window start U below the sieve cut {cut:.0f} brings both "
            f"tail bounds under epsilon/4 = {budget:.3g}")

    i_u = int(np.searchsorted(primes.primes, u_bound, side="right"))
    win_p = primes.primes[i_u:]
    win_r = first_harmonic_radii(m, sigma, win_p)
    rcum = np.cumsum(win_r)
    need = abs(z_star)
    count = int(np.searchsorted(rcum, need)) + 1
    count = max(count, 3)
    if count > win_p.size:
        raise WindowExhausted(
            f"window radii over ({u_bound}, {primes.limit}] reach only "
            f"{rcum[-1] if rcum.size else 0.0:.6g} of the required "
            f"{need:.6g}; extend the prime table")
    while count < win_p.size and win_r[0] > rcum[count - 1] - win_r[0]:
        count += 1
    if win_r[0] > rcum[count - 1] - win_r[0]:
        raise WindowExhausted("window cannot satisfy dominance")

    window = polygon_angles(
        RadiiSet(win_r[:count], labels=win_p[:count]), z_star)

    n_bound = int(win_p[count - 1])
    all_p = primes.primes[:i_u + count]
    thetas = np.empty(all_p.size)
    thetas[:i_u] = _theta0(i_u)
    thetas[i_u:] = window.thetas
    theta2 = AngleAssignment(thetas, window.target, window.achieved,
                             window.residual)

    final_sum = _s_sum_arrays(all_p.astype(np.float64),
                              primes.logs[:i_u + count], thetas, sigma, m)
    final_error = abs(final_sum - a)
    return ThetaPipelineResult(m=m, sigma=sigma, a=a, epsilon=epsilon,
                               U=u_bound, N=n_bound, gamma_value=gamma,
                               primes=all_p.copy(), theta2=theta2,
                               final_sum=final_sum, final_error=final_error)


def save_theta(result: ThetaPipelineResult, path) -> None:
    """Plain-text serialization; one prime/angle pair per line."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("# torus angle assignment\n")
        fh.write(f"m = {int(result.m)}\n")
        fh.write(f"sigma = {float(result.sigma)!r}\n")
        fh.write(f"a = {complex(result.a)!r}\n")
        fh.write(f"epsilon = {float(result.epsilon)!r}\n")
        fh.write(f"U = {int(result.U)}\n")
        fh.write(f"N = {int(result.N)}\n")
        fh.write(f"gamma = {complex(result.gamma_value)!r}\n")
        fh.write(f"target = {complex(result.theta2.target)!r}\n")
        fh.write(f"achieved = {complex(result.theta2.achieved)!r}\n")
        fh.write(f"residual = {float(result.theta2.residual)!r}\n")
        fh.write(f"final_sum = {complex(result.final_sum)!r}\n")
        fh.write(f"final_error = {float(result.final_error)!r}\n")
        fh.write(f"count = {result.primes.size}\n")
        for p, t in zip(result.primes, result.theta2.thetas):
            fh.write(f"{int(p)} {float(t)!r}\n")


def load_theta(path) -> ThetaPipelineResult:
    meta = {}
    ps = []
    ths = []
    with open(path, "r", encoding="ascii") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" in line:
                key, _, val = line.partition("=")
                meta[key.strip()] = val.strip()
            else:
                parts = line.split()
                if len(parts) != 2:
                    raise ValidationError(
                        f"{path}: malformed assignment line {line!r}")
                ps.append(int(parts[0]))
                ths.append(float(parts[1]))
    try:
        primes = np.asarray(ps, dtype=np.int64)
        thetas = np.asarray(ths, dtype=np.float64)
        theta2 = AngleAssignment(thetas, complex(meta["target"]),
                                 complex(meta["achieved"]),
                                 float(meta["residual"]))
        return ThetaPipelineResult(
            m=int(meta["m"]), sigma=float(meta["sigma"]),
            a=complex(meta["a"]), epsilon=float(meta["epsilon"]),
            U=int(meta["U"]), N=int(meta["N"]),
            gamma_value=complex(meta["gamma"]), primes=primes,
            theta2=theta2, final_sum=complex(meta["final_sum"]),
            final_error=float(meta["final_error"]))
    except (KeyError, ValueError) as exc:
        raise ValidationError(f"{path}: incomplete theta file: {exc}") from None
