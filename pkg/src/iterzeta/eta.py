"""Iterated integrals of log zeta and the identity linking their two forms.

Horizontal form (weight collapsed by parts):

    eta_tilde_m(sigma + it) = 1/(m-1)! int_sigma^inf (a - sigma)^(m-1)
                              log zeta(a + it) da

Vertical form, defined by recursion in t with base log zeta:

    eta_m(sigma + it) = int_0^t eta_(m-1)(sigma + it') dt' + c_m(sigma)

The two are linked by eta_m = i^m eta_tilde_m + Y_m where Y_m collects
contributions of zeros right of the line below height t; check_bridge
measures the residual of that identity, which is the sharpest end-to-end
test the artifact has.

All vertical-line values of log zeta use the horizontal-continuation
branch (see rays); that choice is what makes the identity hold with the
Y_m correction exactly as stated.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, e as _E, factorial, log
from typing import Optional

import numpy as np
from numpy.polynomial import chebyshev as _cheb

from .errors import (BranchObstruction, QuadratureNonconvergence,
                     TableCoverage, UnsupportedRange, ValidationError)
from .quadrature import gl_nodes, integrate_vec, poly_log_integral
from .rays import (CUTOFF_OFFSET, RayBranch, log_zeta_real_axis,
                   vertical_log_zeta)
from .zetafun import DEFAULT_PARAMS, ComplexPoint, EvalParams, zeta_batch
from .zeros import EMPTY_TABLE, ZeroTable, zeros_in_box

GUARD = 1e-3          # min |t - gamma| for rays passing a zero with beta >= sigma
SUPPORTED_M = (1, 2, 3)


@dataclass(frozen=True)
class QuadSpec:
    """Quadrature policy shared by the eta operations.

    horiz_cutoff is the absolute truncation point A of the integrals to
    infinity; None means sigma + 40.  singularity_pad is the half-width
    around a zero ordinate treated by the analytic local model.
    """
    abs_tol: float = 1e-8
    max_depth: int = 48
    horiz_cutoff: Optional[float] = None
    singularity_pad: float = 1e-2

    def __post_init__(self) -> None:
        if not self.abs_tol > 0.0:
            raise ValidationError("abs_tol must be positive")
        if self.max_depth < 1:
            raise ValidationError("max_depth must be at least 1")
        if not self.singularity_pad > 0.0:
            raise ValidationError("singularity_pad must be positive")

    def cutoff(self, sigma: float) -> float:
        a = sigma + CUTOFF_OFFSET if self.horiz_cutoff is None \
            else float(self.horiz_cutoff)
        if a < sigma + 10.0:
            raise ValidationError(
                f"horiz_cutoff {a:g} below sigma + 10 = {sigma + 10:g}")
        if a > sigma + CUTOFF_OFFSET + 1e-9:
            raise UnsupportedRange(
                f"horiz_cutoff {a:g} beyond the resolved ray "
                f"sigma + {CUTOFF_OFFSET:g}")
        return a


DEFAULT_QUAD = QuadSpec()


@dataclass(frozen=True)
class EtaValue:
    m: int
    point: ComplexPoint
    value: complex
    est_error: float
    nevals: int = 0

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValidationError("order m must be nonnegative")
        if not np.isfinite(self.est_error):
            raise ValidationError("est_error must be finite")


@dataclass(frozen=True)
class ZeroSumTerm:
    """One k-term of the zero sum Y_m."""
    k: int
    contribution: complex

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValidationError("zero-sum index k must be nonnegative")


def _validate_order_sigma(m: int, sigma: float) -> None:
    if m not in SUPPORTED_M:
        raise UnsupportedRange(f"order m={m} unsupported; use m in {SUPPORTED_M}")
    if not np.isfinite(sigma) or sigma < 0.5:
        raise ValidationError("sigma must be finite and >= 1/2")


def check_guard(table: ZeroTable, sigma: float, t: float) -> None:
    """Reject heights within GUARD of an ordinate whose zero lies at or
    right of the ray start; the branch walk degenerates there."""
    if len(table) == 0:
        return
    near = np.abs(table.gammas - abs(t)) <= GUARD
    if np.any(near & (table.betas >= sigma)):
        g = table.gammas[near & (table.betas >= sigma)][0]
        raise BranchObstruction(
            f"height t={t:g} within {GUARD:g} of zero ordinate {g:.6f}")


def tail_bound(m: int, sigma: float, a_cut: float) -> float:
    """Bound for 1/(m-1)! int_A^inf (a-sigma)^(m-1) |log zeta| da using
    |log zeta(a + it)| <= 2 * 2^-a for a >= 2."""
    ln2 = log(2.0)
    x = a_cut - sigma
    j = m - 1
    s = sum(factorial(j) // factorial(j - i) * x ** (j - i) / ln2 ** (i + 1)
            for i in range(j + 1))
    return 2.0 * 2.0 ** (-a_cut) * s / factorial(j)


def _pole_weighted_integral(m: int, sigma: float, lo: float, hi: float) -> complex:
    """int_lo^hi (a-sigma)^(m-1) (log|a-1| + i pi [a<1]) da, exact.

    This is the non-smooth part of log zeta(a + i0+) = log W(a)
    - log|a-1| - i pi [a<1]; expanding around v = a-1 gives elementary
    moments, continuous through v = 0.
    """
    v0, v1 = lo - 1.0, hi - 1.0

    def logmoment(q: int, v: float) -> float:
        if v == 0.0:
            return 0.0
        return v ** (q + 1) * (log(abs(v)) - 1.0 / (q + 1)) / (q + 1)

    acc = 0.0 + 0.0j
    for q in range(m):
        coef = comb(m - 1, q) * (1.0 - sigma) ** (m - 1 - q)
        part = logmoment(q, v1) - logmoment(q, v0)
        if v0 < 0.0:
            vneg = min(v1, 0.0)
            part += 1j * np.pi * (vneg ** (q + 1) - v0 ** (q + 1)) / (q + 1)
        acc += coef * part
    return acc


def _log_w_real(alphas: np.ndarray, eval_params: EvalParams) -> np.ndarray:
    """log of zeta(a)(a-1) on the real axis: real, smooth through a = 1."""
    a = np.where(np.abs(alphas - 1.0) < 1e-13, alphas + 3e-13, alphas)
    w = np.real(zeta_batch(a.astype(complex), eval_params)) * (a - 1.0)
    return np.log(w)


def eta_tilde_weighted(m: int, sigma: float, t: float,
                       table: ZeroTable = EMPTY_TABLE,
                       quad: QuadSpec = DEFAULT_QUAD,
                       eval_params: EvalParams = DEFAULT_PARAMS) -> EtaValue:
    """Horizontal iterated integral via the collapsed weighted form."""
    _validate_order_sigma(m, sigma)
    if t < 0.0:
        below = eta_tilde_weighted(m, sigma, -t, table, quad, eval_params)
        return EtaValue(m, ComplexPoint(sigma, t),
                        np.conjugate(below.value), below.est_error,
                        below.nevals)
    check_guard(table, sigma, t)
    a_cut = quad.cutoff(sigma)
    fm = factorial(m - 1)

    if t == 0.0:
        def f(alphas):
            return (alphas - sigma) ** (m - 1) \
                * _log_w_real(alphas, eval_params) / fm
        smooth, qerr, nev = integrate_vec(f, sigma, a_cut, quad.abs_tol,
                                          quad.max_depth, initial_splits=8)
        value = smooth - _pole_weighted_integral(m, sigma, sigma, a_cut) / fm
    else:
        branch = RayBranch(sigma, t, eval_params)

        def f(alphas):
            return (alphas - sigma) ** (m - 1) * branch.log_zeta(alphas) / fm
        value, qerr, nev = integrate_vec(f, sigma, a_cut, quad.abs_tol,
                                         quad.max_depth, initial_splits=8)
        nev += branch.nodes_used

    zeta_term = eval_params.tol * (a_cut - sigma) ** m / factorial(m)
    err = qerr + tail_bound(m, sigma, a_cut) + zeta_term
    return EtaValue(m, ComplexPoint(sigma, t), complex(value), err, nev)


class _PiecewiseCheb:
    """Piecewise Chebyshev representation on a shared edge ladder, with
    exact integration (the pieces are polynomials)."""

    def __init__(self, edges: np.ndarray, coeffs: list):
        self.edges = edges
        self.coeffs = coeffs

    def __call__(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=float)
        idx = np.clip(np.searchsorted(self.edges, xs, side="right") - 1,
                      0, len(self.coeffs) - 1)
        out = np.empty(xs.size, dtype=complex)
        for i in np.unique(idx):
            sel = idx == i
            a, b = self.edges[i], self.edges[i + 1]
            u = (2.0 * xs[sel] - (a + b)) / (b - a)
            out[sel] = _cheb.chebval(u, self.coeffs[i])
        return out

    def interval_integrals(self) -> np.ndarray:
        vals = np.empty(len(self.coeffs), dtype=complex)
        for i, c in enumerate(self.coeffs):
            a, b = self.edges[i], self.edges[i + 1]
            anti = _cheb.chebint(c)
            vals[i] = 0.5 * (b - a) * (_cheb.chebval(1.0, anti)
                                       - _cheb.chebval(-1.0, anti))
        return vals

    def integral_from(self, x: float, i: int, suffix: np.ndarray) -> complex:
        """int_x^edges[-1] of the representation; i is x's interval,
        suffix[i] the exact sum over intervals right of i."""
        a, b = self.edges[i], self.edges[i + 1]
        u = (2.0 * x - (a + b)) / (b - a)
        anti = _cheb.chebint(self.coeffs[i])
        part = 0.5 * (b - a) * (_cheb.chebval(1.0, anti)
                                - _cheb.chebval(u, anti))
        return part + suffix[i]


_CHEB_DEG = 8
_CHEB_NODES = np.cos(np.pi * (np.arange(_CHEB_DEG + 1) + 0.5)
                     / (_CHEB_DEG + 1))[::-1]
_CHECK_NODES = np.array([-0.83, 0.11, 0.77])


def _first_level_samples(f_vec, edges: np.ndarray):
    """F(x) = int_x^edges[-1] f at the Chebyshev and check nodes of every
    interval: one GL16 partial panel per sample plus exact suffix sums.
    All f evaluations happen in two batched calls."""
    x16, w16 = gl_nodes(16)
    x32, w32 = gl_nodes(32)
    lo, hi = edges[:-1], edges[1:]
    n_int = lo.size

    full_nodes = (0.5 * (lo + hi)[:, None]
                  + 0.5 * (hi - lo)[:, None] * x32).ravel()
    fv = f_vec(full_nodes).reshape(n_int, x32.size)
    full = 0.5 * (hi - lo) * (fv @ w32)
    suffix = np.concatenate([np.cumsum(full[::-1])[::-1][1:], [0.0 + 0.0j]])

    def sample(node_frac: np.ndarray):
        xs = lo[:, None] + 0.5 * (node_frac[None, :] + 1.0) * (hi - lo)[:, None]
        pl = xs.ravel()[:, None] * (1.0 - (x16[None, :] + 1.0) / 2.0) \
            + hi.repeat(node_frac.size)[:, None] * (x16[None, :] + 1.0) / 2.0
        vals = f_vec(pl.ravel()).reshape(-1, x16.size)
        halfw = 0.5 * (hi.repeat(node_frac.size) - xs.ravel())
        partial = halfw * (vals @ w16)
        return xs, partial.reshape(n_int, node_frac.size) \
            + suffix[:, None]

    return sample, suffix, full


def _rep_from_samples(edges: np.ndarray, samples: np.ndarray) -> _PiecewiseCheb:
    coeffs = [_cheb.chebfit(_CHEB_NODES, samples[i], _CHEB_DEG)
              for i in range(edges.size - 1)]
    return _PiecewiseCheb(edges, coeffs)


def _integrate_level(rep: _PiecewiseCheb):
    """Next-level samples from an existing representation, all exact."""
    full = rep.interval_integrals()
    suffix = np.concatenate([np.cumsum(full[::-1])[::-1][1:], [0.0 + 0.0j]])
    lo, hi = rep.edges[:-1], rep.edges[1:]

    def sample(node_frac: np.ndarray):
        xs = lo[:, None] + 0.5 * (node_frac[None, :] + 1.0) * (hi - lo)[:, None]
        out = np.empty_like(xs, dtype=complex)
        for i in range(lo.size):
            for j in range(node_frac.size):
                out[i, j] = rep.integral_from(xs[i, j], i, suffix)
        return xs, out

    return sample, suffix, full


def _build_level_rep(edges, sampler, tol, what):
    """Fit Chebyshev pieces and verify at off-grid points; bisect
    intervals that miss tol.  sampler(node_frac) -> (xs, values) closes
    over the current edges, so it is rebuilt by the caller on refine."""
    _, smp = sampler(_CHEB_NODES)
    rep = _rep_from_samples(edges, smp)
    xc, direct = sampler(_CHECK_NODES)
    dev = np.abs(rep(xc.ravel()) - direct.ravel())
    bad_int = np.unique(np.nonzero(dev.reshape(len(edges) - 1, -1)
                                   .max(axis=1) > tol)[0])
    return rep, float(dev.max()), bad_int


def eta_tilde_recursive(m: int, sigma: float, t: float,
                        table: ZeroTable = EMPTY_TABLE,
                        quad: QuadSpec = DEFAULT_QUAD,
                        eval_params: EvalParams = DEFAULT_PARAMS) -> EtaValue:
    """Horizontal iterated integral by literal nesting.

    Level one is sampled by panel quadrature of log zeta; each further
    level integrates a piecewise-polynomial fit of the previous one.
    Truncating every level at the same cutoff A makes the nested region
    exactly the simplex of the weighted form, so the two routes agree up
    to quadrature error and serve as mutual checks.
    """
    _validate_order_sigma(m, sigma)
    if t < 0.0:
        below = eta_tilde_recursive(m, sigma, -t, table, quad, eval_params)
        return EtaValue(m, ComplexPoint(sigma, t),
                        np.conjugate(below.value), below.est_error,
                        below.nevals)
    check_guard(table, sigma, t)
    a_cut = quad.cutoff(sigma)

    if m == 1:
        # identical integrand and panels as the weighted form
        return eta_tilde_weighted(1, sigma, t, table, quad, eval_params)

    nev = 0
    if t == 0.0:
        edges = np.unique(np.concatenate(
            [np.arange(sigma, min(sigma + 3.0, a_cut), 0.25),
             np.geomspace(min(sigma + 3.0, a_cut), a_cut, 24)]))

        def f_vec(xs):
            return _log_w_real(xs, eval_params).astype(complex)
        pole_at = lambda x, j: -_pole_weighted_integral(  # noqa: E731
            j, x, x, a_cut) / factorial(j - 1)
    else:
        branch = RayBranch(sigma, t, eval_params)
        nev += branch.nodes_used
        edges = sigma + branch.offsets
        if edges[-1] > a_cut:
            edges = np.unique(np.append(edges[edges < a_cut], a_cut))
        f_vec = branch.log_zeta
        pole_at = None

    tol_i = max(quad.abs_tol * 1e-2, 1e-11)
    dev_max = 0.0
    for _ in range(14):
        sampler, suffix, _ = _first_level_samples(f_vec, edges)
        nev += (edges.size - 1) * (32 + 16 * (_CHEB_NODES.size
                                              + _CHECK_NODES.size))
        rep, dev, bad = _build_level_rep(edges, sampler, tol_i, "level 1")
        dev_max = dev
        if bad.size == 0:
            break
        mids = 0.5 * (edges[bad] + edges[bad + 1])
        edges = np.unique(np.concatenate([edges, mids]))
    else:
        raise QuadratureNonconvergence(
            f"nested level-1 fit stalled at deviation {dev_max:.2e}")

    # higher levels are exact integrals of the previous representation
    for _level in range(2, m):
        sampler, suffix, _ = _integrate_level(rep)
        rep, dev, bad = _build_level_rep(rep.edges, sampler, tol_i * 10,
                                         "higher level")
        dev_max = max(dev_max, dev)

    full = rep.interval_integrals()
    value = complex(np.sum(full))
    if pole_at is not None:
        value += pole_at(sigma, m)

    span = a_cut - sigma
    err = dev_max * span ** (m - 1) / factorial(m - 1) \
        + 1e-10 * span + tail_bound(m, sigma, a_cut) \
        + eval_params.tol * span ** m / factorial(m)
    return EtaValue(m, ComplexPoint(sigma, t), value, err, nev)


_C_CACHE: dict = {}


def _c_eta(m: int, sigma: float, quad: QuadSpec,
           eval_params: EvalParams) -> EtaValue:
    key = (m, sigma, quad.abs_tol, quad.horiz_cutoff, eval_params.tol)
    if key not in _C_CACHE:
        _C_CACHE[key] = eta_tilde_weighted(m, sigma, 0.0, EMPTY_TABLE,
                                           quad, eval_params)
    return _C_CACHE[key]


def c_m(m: int, sigma: float, quad: QuadSpec = DEFAULT_QUAD,
        eval_params: EvalParams = DEFAULT_PARAMS) -> complex:
    """Integration constant of the vertical recursion:
    i^m / (m-1)! int_sigma^inf (a-sigma)^(m-1) log zeta(a) da, with the
    real-axis branch taken as the limit from the upper half plane."""
    _validate_order_sigma(m, sigma)
    return 1j ** m * _c_eta(m, sigma, quad, eval_params).value


def y_m_terms(m: int, sigma: float, t: float,
              table: ZeroTable) -> list[ZeroSumTerm]:
    if m not in SUPPORTED_M:
        raise UnsupportedRange(f"order m={m} unsupported")
    betas, gammas, mults = zeros_in_box(table, sigma, t)
    terms = []
    for k in range(m):
        inner = np.sum(mults * (betas - sigma) ** (m - k) * (t - gammas) ** k)
        coef = 2.0 * np.pi * 1j ** (m - 1 - k) \
            / (factorial(m - k) * factorial(k))
        terms.append(ZeroSumTerm(k, complex(coef * inner)))
    return terms


def y_m(m: int, sigma: float, t: float, table: ZeroTable) -> complex:
    """Zero-sum correction of the bridge identity, multiplicity-weighted.
    Empty box gives 0."""
    return sum((term.contribution for term in y_m_terms(m, sigma, t, table)),
               0.0 + 0.0j)


def eta_vertical(m: int, sigma: float, t: float, table: ZeroTable,
                 quad: QuadSpec = DEFAULT_QUAD,
                 eval_params: EvalParams = DEFAULT_PARAMS) -> EtaValue:
    """Vertical iterated integral, collapsed to a single weighted
    quadrature in the height:

        eta_m = 1/(m-1)! int_0^t (t-u)^(m-1) log zeta(sigma+iu) du
                + sum_j c_j(sigma) t^(m-j)/(m-j)!

    The path is split at every table ordinate below t; within
    singularity_pad of an ordinate the local log(s - rho) model is
    integrated in closed form and only the smooth remainder numerically.
    """
    _validate_order_sigma(m, sigma)
    if not t > 0.0:
        raise ValidationError("eta_vertical needs t > 0; at t = 0 the "
                              "value is c_m(sigma) by definition")
    if t > table.coverage:
        raise TableCoverage(
            f"height t={t:g} beyond table coverage {table.coverage:g} "
            f"({table.source_label}); zeros there would be invisible")
    h = quad.singularity_pad
    fm = factorial(m - 1)

    sel = table.gammas < t
    gam = table.gammas[sel]
    bet = table.betas[sel]
    mlt = table.mults[sel]
    if gam.size and np.min(np.diff(gam), initial=np.inf) <= 2.0 * h:
        raise UnsupportedRange("table ordinates closer than twice the "
                               "singularity pad; shrink the pad")

    pads = []     # (lo, hi, gamma, c, mult)
    edges = [0.0, t]
    for g, b, k in zip(gam, bet, mlt):
        if abs(sigma - b) <= h:
            lo, hi = max(g - h, 0.0), min(g + h, t)
            pads.append((lo, hi, g, sigma - b, int(k)))
            edges += [lo, hi]
        else:
            edges.append(g)
    edges = np.unique(np.asarray(edges))
    pad_spans = {(lo, hi) for lo, hi, *_ in pads}

    def f(us):
        return (t - us) ** (m - 1) * vertical_log_zeta(
            sigma, us, eval_params) / fm

    value = 0.0 + 0.0j
    qerr = 0.0
    nev = 0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if (lo, hi) in pad_spans:
            continue
        if hi - lo < 1e-13:
            continue
        v, err, ne = integrate_vec(f, lo, hi,
                                   quad.abs_tol * (hi - lo) / t,
                                   quad.max_depth)
        value += v
        qerr += err
        nev += ne

    x16, w16 = gl_nodes(16)
    x24, w24 = gl_nodes(24)
    for lo, hi, g, c, k in pads:
        value += k * poly_log_integral(m, t, lo, hi, g, c)

        def rem(us):
            return (t - us) ** (m - 1) / fm * (
                vertical_log_zeta(sigma, us, eval_params)
                - k * np.log(c + 1j * (us - g)))
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
        r16 = half * np.sum(w16 * rem(mid + half * x16))
        r24 = half * np.sum(w24 * rem(mid + half * x24))
        value += r24
        qerr += abs(r24 - r16)
        nev += 40

    cs_err = 0.0
    for j in range(1, m + 1):
        cj = _c_eta(j, sigma, quad, eval_params)
        value += 1j ** j * cj.value * t ** (m - j) / factorial(m - j)
        cs_err += cj.est_error * t ** (m - j) / factorial(m - j)
        nev += cj.nevals

    err = qerr + cs_err + eval_params.tol * t ** m / factorial(m)
    return EtaValue(m, ComplexPoint(sigma, t), complex(value), err, nev)


def check_bridge(m: int, sigma: float, t: float, table: ZeroTable,
                 quad: QuadSpec = DEFAULT_QUAD,
                 eval_params: EvalParams = DEFAULT_PARAMS) -> float:
    """|eta_vertical - (i^m eta_tilde_weighted + y_m)|; should sit inside
    the combined est_error budget."""
    ev = eta_vertical(m, sigma, t, table, quad, eval_params)
    et = eta_tilde_weighted(m, sigma, t, table, quad, eval_params)
    return abs(ev.value - (1j ** m * et.value + y_m(m, sigma, t, table)))


def growth_check(m: int, sigma: float, t_samples, table: ZeroTable,
                 quad: QuadSpec = DEFAULT_QUAD,
                 eval_params: EvalParams = DEFAULT_PARAMS
                 ) -> list[tuple[float, float]]:
    """Normalized residuals |eta_m - Y_m| / log t over the samples; the
    sequence should stay bounded (reported, not asserted to a constant)."""
    out = []
    for t in t_samples:
        if not t > _E:
            raise ValidationError("growth samples need t > e for the "
                                  "log t normalization")
        ev = eta_vertical(m, sigma, float(t), table, quad, eval_params)
        out.append((float(t),
                    abs(ev.value - y_m(m, sigma, float(t), table)) / log(t)))
    return out
