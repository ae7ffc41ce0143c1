"""Riemann zeta by Euler-Maclaurin summation.

For N >= 1 and K >= 1 Bernoulli corrections,

    zeta(s) = sum_{n=1}^{N-1} n^-s  +  N^(1-s)/(s-1)  +  N^-s/2
              + sum_{k=1}^{K} B_{2k}/(2k)! * N^(1-s-2k) * prod_{j=0}^{2k-2}(s+j)
              + E_K(s, N),

with the classical remainder bound

    |E_K| <= |T_{K+1}(s, N)| * |s + 2K + 1| / (Re s + 2K + 1),

T_{K+1} being the first omitted correction term.  With N scaled like 3|t|
the remainder is far below 1e-12 everywhere in the supported desk range
Re s >= 0, |t| <= 1e4 (s = 1 excluded).

Everything here is plain float64 numpy; batched evaluation shares the
direct-sum matrix across points of comparable height, which is what the
branch-tracking walks and the quadrature loops rely on for speed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import bernoulli

from .errors import PoleAtOne, UnsupportedRange, ValidationError

SIGMA_MIN = 0.0
T_MAX = 1.0e4

# B_2, B_4, ..., B_18; the last one only feeds the remainder bound.
_B2K = bernoulli(18)[2::2]


@dataclass(frozen=True)
class ComplexPoint:
    """A point sigma + it of the half plane the artifact works on."""
    sigma: float
    t: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.sigma) and np.isfinite(self.t)):
            raise ValidationError("point coordinates must be finite")

    @property
    def as_complex(self) -> complex:
        return complex(self.sigma, self.t)


@dataclass(frozen=True)
class EvalParams:
    """Accuracy knobs for zeta evaluation.

    em_terms is the floor on the direct-sum length N; the effective N is
    max(em_terms, ceil(3|t|)).  em_bernoulli is the number of Bernoulli
    correction terms K (at most 8; B_18 is reserved for the error bound).
    tol is the target absolute error; N is doubled (a few times) if the
    remainder bound does not meet it.
    """

    em_terms: int = 50
    em_bernoulli: int = 8
    tol: float = 1.0e-12

    def __post_init__(self) -> None:
        if not (1 <= self.em_bernoulli <= 8):
            raise UnsupportedRange("em_bernoulli must be in 1..8")
        if self.em_terms < 10:
            raise UnsupportedRange("em_terms must be at least 10")
        if not self.tol > 0:
            raise UnsupportedRange("tol must be positive")


DEFAULT_PARAMS = EvalParams()


def _em_value(s: np.ndarray, n_terms: int, k_terms: int) -> np.ndarray:
    """Euler-Maclaurin value for an array of points sharing one N."""
    n = np.arange(1, n_terms, dtype=np.float64)
    # n^-s = exp(-s log n); outer product over (points, terms)
    mat = np.exp(-np.multiply.outer(s, np.log(n)))
    val = mat.sum(axis=-1)
    nn = float(n_terms)
    val += nn ** (1.0 - s) / (s - 1.0)
    val += 0.5 * nn ** (-s)
    pref = nn ** (1.0 - s)  # running N^(1-s-2k) * prod(s+j) accumulator
    poly = np.ones_like(s)
    j = 0
    for k in range(1, k_terms + 1):
        # extend prod_{j=0}^{2k-2}(s+j): two new factors except at k=1
        if k == 1:
            poly = poly * s
        else:
            poly = poly * (s + (j + 1)) * (s + (j + 2))
            j += 2
        pref = pref / (nn * nn)
        val += _B2K[k - 1] / math.factorial(2 * k) * pref * poly
    return val


def _em_error_bound(s: np.ndarray, n_terms: int, k_terms: int) -> np.ndarray:
    """Bound on the omitted remainder, per point."""
    k1 = k_terms + 1
    nn = float(n_terms)
    # |T_{K+1}| = |B_{2K+2}/(2K+2)! * N^(1-s-2K-2) * prod_{j=0}^{2K}(s+j)|
    logmag = (1.0 - s.real - 2 * k1) * math.log(nn)
    prod = np.ones(s.shape, dtype=np.float64)
    for j in range(0, 2 * k1 - 1):
        prod *= np.abs(s + j)
    t_next = abs(_B2K[k1 - 1]) / math.factorial(2 * k1) * np.exp(logmag) * prod
    return t_next * np.abs(s + 2 * k1 - 1) / (s.real + 2 * k1 - 1)


def zeta_batch(s: np.ndarray, params: EvalParams = DEFAULT_PARAMS) -> np.ndarray:
    """Vectorised zeta over an array of complex points.

    All points share one direct-sum length N chosen from the tallest
    |Im s| in the batch, so group points of comparable height.

    Raises
    ------
    UnsupportedRange
        Any point with Re s < 0 or |Im s| > 1e4.
    PoleAtOne
        Any point equal to 1 (within 1e-14).
    """
    s = np.asarray(s, dtype=np.complex128)
    if s.size == 0:
        return s.copy()
    if np.any(s.real < SIGMA_MIN):
        raise UnsupportedRange("zeta supported for Re s >= 0 only")
    tmax = float(np.max(np.abs(s.imag)))
    if tmax > T_MAX:
        raise UnsupportedRange(f"zeta supported for |Im s| <= {T_MAX:g}")
    if np.any(np.abs(s - 1.0) < 1.0e-14):
        raise PoleAtOne("zeta has its pole at s = 1")

    n_terms = max(params.em_terms, int(math.ceil(3.0 * tmax)))
    for _ in range(6):
        bound = _em_error_bound(s, n_terms, params.em_bernoulli)
        if float(np.max(bound)) <= params.tol:
            break
        n_terms *= 2
        if n_terms > 600_000:
            raise UnsupportedRange(
                "cannot meet tol within the Euler-Maclaurin term cap")
    # chunk over points so the (points x terms) matrix stays modest
    block = max(1, 4_000_000 // n_terms)
    if s.size <= block:
        return _em_value(s, n_terms, params.em_bernoulli)
    flat = s.ravel()
    out = np.empty_like(flat)
    for i in range(0, flat.size, block):
        out[i:i + block] = _em_value(flat[i:i + block], n_terms,
                                     params.em_bernoulli)
    return out.reshape(s.shape)


def zeta(s, params: EvalParams = DEFAULT_PARAMS) -> complex:
    """zeta(s) with absolute error below params.tol.

    Accepts a complex number or a ComplexPoint.  Supported desk range:
    Re s >= 0, |Im s| <= 1e4, s != 1.
    """
    if isinstance(s, ComplexPoint):
        s = s.as_complex
    return complex(zeta_batch(np.array([s]), params)[0])
