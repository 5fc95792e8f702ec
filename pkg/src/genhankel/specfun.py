"""Scalar special functions and Gaussian quadrature rules.

Everything else in the package is built on the routines here: the
normalized Bessel function of the first kind, Gegenbauer polynomials,
the Pochhammer symbol, and Gauss-Legendre / Gauss-Jacobi rules on
(-1, 1).  All routines are deterministic: identical inputs give
bit-identical outputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .errors import AccuracyError, DomainError

__all__ = [
    "Params",
    "QuadratureRule",
    "pochhammer",
    "sonine_constant",
    "bessel_j_norm",
    "gegenbauer",
    "gauss_rule",
]

# Evaluation regimes for bessel_j_norm.  Plain double summation is only
# trusted while the alternating series stays well conditioned; beyond that
# a compensated double-double summation carries the series to |x| <= 40,
# and a large-argument expansion with a certified truncation bound covers
# the rest up to |x| <= 200.
_X_PLAIN = 4.0
_X_SERIES = 40.0
_X_MAX = 200.0

_GEGENBAUER_M_MAX = 200


@dataclass(frozen=True)
class Params:
    """Parameter pair (n, kappa) with its derived constants.

    alpha is the Bessel order kappa*n - n/2, M the normalization of the
    reference measure and C_alpha the constant Gamma(alpha+1) /
    (sqrt(pi) * Gamma(alpha+1/2)) of the angular product formula.
    Requires kappa > (n-1)/(2n), equivalently alpha > -1/2.
    """

    n: int
    kappa: float
    alpha: float = field(init=False)
    M: float = field(init=False)
    C_alpha: float = field(init=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        lo = (self.n - 1) / (2.0 * self.n)
        if not self.kappa > lo:
            raise DomainError(
                f"kappa must exceed (n-1)/(2n) = {lo!r}, got {self.kappa!r}"
            )
        alpha = self.kappa * self.n - 0.5 * self.n
        M = 2.0 * (2.0 / self.n) ** alpha * math.gamma(alpha + 1.0)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "C_alpha", sonine_constant(alpha))

    @property
    def in_proposition_gap(self) -> bool:
        """True when kappa <= (n-1)/n, the weaker of the two admissible
        lower bounds.  Parameters in this zone are accepted but flagged
        in verification reports."""
        return self.kappa <= (self.n - 1) / self.n


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gaussian rule on (-1, 1): Legendre (weight 1) or symmetric Jacobi
    (weight (1-t^2)^exponent)."""

    kind: str
    exponent: float | None
    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def zeroth_moment(self) -> float:
        """Exact integral of the rule's weight function over (-1, 1)."""
        if self.kind == "legendre":
            return 2.0
        a = self.exponent
        return math.sqrt(math.pi) * math.gamma(a + 1.0) / math.gamma(a + 1.5)


def pochhammer(a: float, m: int) -> float:
    """Rising factorial (a)_m = a (a+1) ... (a+m-1), with (a)_0 = 1.

    Evaluated as a plain product, which is exact at poles of the
    gamma-ratio form (a zero factor simply gives 0).
    """
    if not isinstance(m, (int, np.integer)) or m < 0:
        raise DomainError(f"m must be a nonnegative integer, got {m!r}")
    out = 1.0
    for k in range(m):
        out *= a + k
    return out


def sonine_constant(alpha: float) -> float:
    """Gamma(alpha+1) / (sqrt(pi) Gamma(alpha+1/2)) for alpha > -1/2."""
    if not alpha > -0.5:
        raise DomainError(f"alpha must exceed -1/2, got {alpha!r}")
    return math.gamma(alpha + 1.0) / (math.sqrt(math.pi) * math.gamma(alpha + 0.5))


# ---------------------------------------------------------------------------
# double-double helpers (error-free transforms; Dekker/Knuth)

_SPLITTER = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    ah = _SPLITTER * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLITTER * b
    bh = bh - (bh - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(x, y):
    s, e = _two_sum(x[0], y[0])
    t, f = _two_sum(x[1], y[1])
    e = e + t
    s, e = _quick_two_sum(s, e)
    e = e + f
    return _quick_two_sum(s, e)


def _dd_mul(x, y):
    p, e = _two_prod(x[0], y[0])
    e = e + (x[0] * y[1] + x[1] * y[0])
    return _quick_two_sum(p, e)


def _dd_div(x, y):
    q1 = x[0] / y[0]
    p, e = _two_prod(y[0], q1)
    e = e + y[1] * q1
    r = _dd_add(x, (-p, -e))
    q2 = (r[0] + r[1]) / y[0]
    return _quick_two_sum(q1, q2)


# ---------------------------------------------------------------------------
# normalized Bessel function


def _bessel_series_plain(alpha: float, x: np.ndarray) -> np.ndarray:
    # sum_m (-x^2/4)^m / (m! (alpha+1)_m), Kahan-compensated, term-ratio stop
    q = 0.25 * x * x
    term = np.ones_like(x)
    total = np.ones_like(x)
    comp = np.zeros_like(x)
    m = 0
    while True:
        term = term * (-q / ((m + 1.0) * (alpha + m + 1.0)))
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        m += 1
        if m >= 2 and np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
        if m > 200:  # unreachable for |x| <= _X_PLAIN
            raise AccuracyError("bessel series did not converge")
    return total


def _bessel_series_dd(alpha: float, x: np.ndarray) -> np.ndarray:
    # Same series in compensated double-double arithmetic.  The alternating
    # sum loses ~x/ln(10) digits to cancellation; ~32 working digits keep
    # full double accuracy up to |x| = 40.
    qh, ql = _two_prod(x, x)
    q = (0.25 * qh, 0.25 * ql)
    term = (np.ones_like(x), np.zeros_like(x))
    total = (np.ones_like(x), np.zeros_like(x))
    qmax = float(np.max(q[0])) if x.size else 0.0
    m = 0
    while True:
        dh, dl = _two_sum(alpha, m + 1.0)
        ph, pe = _two_prod(dh, m + 1.0)
        pe = pe + dl * (m + 1.0)
        denom = _quick_two_sum(ph, pe)
        num = _dd_mul(term, q)
        t = _dd_div(num, denom)
        term = (-t[0], -t[1])
        total = _dd_add(total, term)
        m += 1
        if m >= 4 and qmax < 0.5 * (m + 1.0) * (alpha + m + 1.0):
            if np.all(np.abs(term[0]) <= 1e-32 * np.abs(total[0])):
                break
        if m > 800:
            raise AccuracyError("bessel series did not converge")
    return total[0] + total[1]


def _bessel_asymptotic(alpha: float, x: float) -> float:
    # Large-argument expansion J_a(x) ~ sqrt(2/(pi x)) (P cos(chi) - Q sin(chi)).
    # Terms are summed until they stop decreasing; the smallest term bounds
    # the truncation error, and we refuse to answer if it is not negligible.
    mu4 = 4.0 * alpha * alpha
    tk = 1.0
    p_sum = 1.0
    q_sum = 0.0
    bound = 1.0
    k = 0
    while k < 100:
        tn = tk * (mu4 - (2 * k + 1.0) ** 2) / (8.0 * (k + 1.0) * x)
        if k >= 2 and abs(tn) >= abs(tk):
            bound = abs(tn)
            break
        tk = tn
        k += 1
        contrib = tk if (k // 2) % 2 == 0 else -tk
        if k % 2 == 1:
            q_sum += contrib
        else:
            p_sum += contrib
        if abs(tk) < 1e-18:
            bound = abs(tk)
            break
    else:
        bound = abs(tk)
    if bound > 1e-12:
        raise AccuracyError(
            f"large-argument expansion uncertified for alpha={alpha}, x={x}"
        )
    chi = x - (0.5 * alpha + 0.25) * math.pi
    j_big = math.sqrt(2.0 / (math.pi * x)) * (
        p_sum * math.cos(chi) - q_sum * math.sin(chi)
    )
    return math.exp(math.lgamma(alpha + 1.0) - alpha * math.log(0.5 * x)) * j_big


def bessel_j_norm(alpha: float, x):
    """Normalized Bessel function Gamma(alpha+1) (x/2)^(-alpha) J_alpha(x).

    Even in x and equal to 1 at x = 0.  Accepts a scalar or ndarray.
    The power series (compensated beyond |x| = 4) covers |x| <= 40; a
    guarded large-argument expansion extends the range to |x| <= 200,
    beyond which an AccuracyError is raised.
    """
    if not alpha > -0.5:
        raise DomainError(f"alpha must exceed -1/2, got {alpha!r}")
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    ax = np.abs(np.atleast_1d(arr)).ravel()
    if ax.size and float(np.max(ax)) > _X_MAX:
        raise AccuracyError(
            f"|x| = {float(np.max(ax))} outside validated region (<= {_X_MAX})"
        )
    out = np.empty_like(ax)
    small = ax <= _X_PLAIN
    if np.any(small):
        out[small] = _bessel_series_plain(alpha, ax[small])
    mid = ~small & (ax <= _X_SERIES)
    if np.any(mid):
        out[mid] = _bessel_series_dd(alpha, ax[mid])
    big = ax > _X_SERIES
    if np.any(big):
        out[big] = [_bessel_asymptotic(alpha, float(v)) for v in ax[big]]
    if scalar:
        return float(out[0])
    return out.reshape(arr.shape)


def gegenbauer(m: int, alpha: float, t):
    """Gegenbauer polynomial C_m^alpha(t) by forward three-term recurrence.

    C_0 = 1, C_1 = 2 alpha t,
    m C_m = 2 (m+alpha-1) t C_{m-1} - (m+2alpha-2) C_{m-2}.
    Stable for t in [-1, 1], which is the only regime the kernels need.
    Accepts a scalar or ndarray t.
    """
    if not isinstance(m, (int, np.integer)) or m < 0:
        raise DomainError(f"m must be a nonnegative integer, got {m!r}")
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    if m > _GEGENBAUER_M_MAX:
        raise AccuracyError(f"degree {m} above supported maximum {_GEGENBAUER_M_MAX}")
    arr = np.asarray(t, dtype=float)
    scalar = arr.ndim == 0
    tt = np.atleast_1d(arr).astype(float)
    c_prev = np.ones_like(tt)
    if m == 0:
        return float(c_prev[0]) if scalar else c_prev.reshape(arr.shape)
    c_cur = 2.0 * alpha * tt
    for k in range(2, m + 1):
        c_prev, c_cur = c_cur, (
            2.0 * (k + alpha - 1.0) * tt * c_cur - (k + 2.0 * alpha - 2.0) * c_prev
        ) / k
    return float(c_cur[0]) if scalar else c_cur.reshape(arr.shape)


@lru_cache(maxsize=512)
def _jacobi_nodes(order: int, a: float, b: float):
    """Cached Gauss-Jacobi nodes/weights for weight (1-t)^a (1+t)^b."""
    try:
        nodes, weights = roots_jacobi(order, a, b)
    except Exception as exc:  # pragma: no cover - scipy failure path
        raise AccuracyError(f"quadrature construction failed: {exc}") from exc
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


@lru_cache(maxsize=64)
def _legendre_nodes(order: int):
    try:
        nodes, weights = roots_legendre(order)
    except Exception as exc:  # pragma: no cover
        raise AccuracyError(f"quadrature construction failed: {exc}") from exc
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def gauss_rule(order: int, kind: str = "legendre", exponent: float | None = None) -> QuadratureRule:
    """Construct a Gaussian rule on (-1, 1), exact for polynomials of
    degree <= 2*order - 1 against the rule's weight.

    kind "legendre" integrates with weight 1; kind "jacobi" with weight
    (1-t^2)^exponent, exponent > -1.
    """
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise DomainError(f"order must be a positive integer, got {order!r}")
    kind = kind.lower()
    if kind == "legendre":
        nodes, weights = _legendre_nodes(int(order))
        return QuadratureRule("legendre", None, nodes, weights, int(order))
    if kind == "jacobi":
        if exponent is None or not exponent > -1.0:
            raise DomainError(f"jacobi exponent must exceed -1, got {exponent!r}")
        nodes, weights = _jacobi_nodes(int(order), float(exponent), float(exponent))
        return QuadratureRule("jacobi", float(exponent), nodes, weights, int(order))
    raise DomainError(f"unknown rule kind {kind!r}")
