"""Product-formula kernels and measures.

Builds the triangle geometry, the Bessel product kernel, the signed
Gegenbauer coupling factor, the full kernel, and the compactly supported
signed measure whose integrals realize products of transform kernels.
Includes residual checks for the two angular product identities that the
measure construction rests on.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .errors import AccuracyError, DomainError
from .specfun import (
    Params,
    _jacobi_nodes,
    _legendre_nodes,
    bessel_j_norm,
    gegenbauer,
    pochhammer,
    sonine_constant,
)

__all__ = [
    "third_side",
    "bessel_product_kernel",
    "bessel_kernel_mass",
    "radial_cosine",
    "parity_factor",
    "scaled_gegenbauer",
    "product_kernel",
    "ProductMeasure",
    "product_measure",
    "integrate_product_measure",
    "total_variation",
    "check_shifted_product",
    "check_matched_product",
    "ResidualRecord",
]

# Roundoff slack allowed when a cosine argument lands just outside [-1, 1]
# at a support endpoint; anything further out is a genuine domain error.
_COS_CLAMP = 1e-12

# Bump-type integrands are smooth but not analytic at their support edges,
# so the doubling ladder converges super-algebraically rather than
# geometrically: the absolute floor reflects what one final doubling can
# still resolve at the order cap.
_QUAD_START_ORDER = 64
_QUAD_MAX_ORDER = 512
_QUAD_REL = 1e-11
_QUAD_ABS = 1e-10


@dataclass(frozen=True)
class ResidualRecord:
    """Both sides of a verified identity plus the error in each metric.

    rel_err uses max(|lhs|, |rhs|, 1e-300) as denominator.
    """

    inputs: dict
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float

    @classmethod
    def build(cls, inputs: dict, lhs, rhs) -> "ResidualRecord":
        abs_err = abs(lhs - rhs)
        rel_err = abs_err / max(abs(lhs), abs(rhs), 1e-300)
        return cls(inputs, lhs, rhs, float(abs_err), float(rel_err))


def third_side(u: float, v: float, phi: float):
    """Third side of a triangle with sides u, v and enclosed angle phi:
    sqrt(u^2 + v^2 - 2 u v cos(phi)).  Computed in the cancellation-free
    form sqrt((u-v)^2 + 4 u v sin^2(phi/2))."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    s = np.sin(0.5 * np.asarray(phi, dtype=float))
    out = np.sqrt((u - v) ** 2 + 4.0 * u * v * s * s)
    return float(out) if out.ndim == 0 else out


def bessel_product_kernel(alpha: float, u: float, v: float, w):
    """Bessel product kernel: for |u-v| <= w <= u+v,

        2^(1-2a) C_a {[(u+v)^2 - w^2][w^2 - (u-v)^2]}^(a-1/2) / (u v w)^(2a),

    and 0 elsewhere.  Nonnegative, homogeneous of degree -2a-2, and
    normalized to unit mass against w^(2a+1) dw.  w may be an ndarray.
    """
    if not alpha > -0.5:
        raise DomainError(f"alpha must exceed -1/2, got {alpha!r}")
    if not (u > 0 and v > 0):
        raise DomainError("u and v must be positive")
    warr = np.asarray(w, dtype=float)
    scalar = warr.ndim == 0
    ww = np.atleast_1d(warr).astype(float)
    if np.any(ww < 0):
        raise DomainError("w must be nonnegative")
    p1 = (u + v) ** 2 - ww**2
    p2 = ww**2 - (u - v) ** 2
    prod = p1 * p2
    inside = prod > 0.0
    out = np.zeros_like(ww)
    if np.any(inside):
        c = 2.0 ** (1.0 - 2.0 * alpha) * sonine_constant(alpha)
        out[inside] = (
            c * prod[inside] ** (alpha - 0.5) / (u * v * ww[inside]) ** (2.0 * alpha)
        )
    return float(out[0]) if scalar else out.reshape(warr.shape)


def bessel_kernel_mass(
    alpha: float,
    u: float,
    v: float,
    *,
    start_order: int = 32,
    max_order: int = _QUAD_MAX_ORDER,
) -> float:
    """Numerically integrate the explicit product kernel against
    w^(2a+1) dw over its support; the exact value is 1.

    Integrates in the angle parametrization w = third_side(u, v, phi) so
    the endpoint singularity of exponent a - 1/2 is absorbed by the
    Gauss-Jacobi weight.
    """

    def value(order: int) -> float:
        t, wts = _jacobi_nodes(order, alpha - 0.5, alpha - 0.5)
        d2 = (u - v) ** 2 + 2.0 * u * v * (1.0 - t)
        delta = np.sqrt(d2)
        kb = bessel_product_kernel(alpha, u, v, delta)
        # divide out the rule's weight so the explicit formula is what is
        # actually being integrated
        integrand = kb * delta ** (2.0 * alpha) * u * v * (1.0 - t * t) ** (0.5 - alpha)
        return float(np.sum(wts * integrand))

    return _double_until(value, start_order, max_order, _QUAD_REL, _QUAD_ABS)


def radial_cosine(x: float, y: float, z: float, n: int) -> float:
    """Cosine of the angle opposite |z|^(1/n) in the triangle with sides
    |x|^(1/n), |y|^(1/n):  (|x|^(2/n) + |y|^(2/n) - |z|^(2/n)) /
    (2 |xy|^(1/n)).  Homogeneous of degree 0; requires x, y != 0."""
    if x == 0 or y == 0:
        raise DomainError("x and y must be nonzero")
    a = abs(x) ** (1.0 / n)
    b = abs(y) ** (1.0 / n)
    c2 = abs(z) ** (2.0 / n)
    return (a * a + b * b - c2) / (2.0 * a * b)


def _gegenbauer_normalized(m: int, alpha: float, t):
    # C_m^alpha(t) / C_m^alpha(1); bounded by 1 in modulus on [-1, 1]
    if m == 0:
        arr = np.asarray(t, dtype=float)
        return 1.0 if arr.ndim == 0 else np.ones_like(arr)
    norm = math.factorial(m) / pochhammer(2.0 * alpha, m)
    return gegenbauer(m, alpha, t) * norm


def parity_factor(p: Params, x: float, y: float, z: float) -> float:
    """Signed, unit-bounded coupling factor sgn(xy) * C_n^a(sigma) /
    C_n^a(1) evaluated at the radial cosine sigma of (x, y, z)."""
    if x == 0 or y == 0:
        raise DomainError("x and y must be nonzero")
    _require_positive_index(p)
    s = radial_cosine(x, y, z, p.n)
    if abs(s) > 1.0 + _COS_CLAMP:
        raise DomainError(f"radial cosine {s!r} outside [-1, 1]")
    s = min(1.0, max(-1.0, s))
    sign = 1.0 if x * y > 0 else -1.0
    return sign * float(_gegenbauer_normalized(p.n, p.alpha, s))


def _scaled_gegenbauer_parts(m: int, alpha: float, s, d2):
    # (m!/(2a)_m) * d^m * C_m^a(s/d) written as a polynomial in s and d^2,
    # finite at d = 0:
    #   sum_k (-1)^k 2^(m-2k) m! (a)_{m-k} / ((2a)_m k! (m-2k)!) s^(m-2k) d2^k
    s = np.asarray(s, dtype=float)
    d2 = np.asarray(d2, dtype=float)
    if m == 0:
        return np.ones(np.broadcast(s, d2).shape)
    denom = pochhammer(2.0 * alpha, m)
    total = np.zeros(np.broadcast(s, d2).shape)
    for k in range(m // 2 + 1):
        coef = (
            (-1.0) ** k
            * 2.0 ** (m - 2 * k)
            * math.factorial(m)
            * pochhammer(alpha, m - k)
            / (denom * math.factorial(k) * math.factorial(m - 2 * k))
        )
        total = total + coef * s ** (m - 2 * k) * d2**k
    return total


def scaled_gegenbauer(m: int, alpha: float, u: float, v: float, phi: float) -> float:
    """The degree-m angular polynomial (m!/(2a)_m) d^m C_m^a((u - v cos
    phi)/d) with d = third_side(u, v, phi), evaluated in a polynomial form
    that is finite at d = 0.

    Its u-derivative ladders down: d/du of degree m gives m times
    degree m-1.
    """
    if not isinstance(m, (int, np.integer)) or m < 0:
        raise DomainError(f"m must be a nonnegative integer, got {m!r}")
    if m >= 1 and not alpha > 0:
        raise DomainError(f"alpha must be positive for m >= 1, got {alpha!r}")
    ct = math.cos(phi)
    s = u - v * ct
    d2 = (u - v) ** 2 + 4.0 * u * v * math.sin(0.5 * phi) ** 2
    return float(_scaled_gegenbauer_parts(m, alpha, s, d2))


def _require_positive_index(p: Params) -> None:
    if not p.alpha > 0:
        raise DomainError(
            f"kernel requires kappa*n - n/2 > 0 (got alpha = {p.alpha!r})"
        )


def product_kernel(p: Params, x: float, y: float, z: float) -> float:
    """Density of the product-formula measure against the reference
    measure: (M/2n) K_B(|x|^(1/n), |y|^(1/n), |z|^(1/n)) * {1 + (-1)^n
    xi(x,y,z) + xi(z,x,y) + xi(y,z,x)} with xi the signed coupling factor.

    Zero for z = 0 and for z outside the open support shell; may be
    negative inside it.
    """
    if x == 0 or y == 0:
        raise DomainError("x and y must be nonzero")
    _require_positive_index(p)
    if z == 0:
        return 0.0
    n = p.n
    a = abs(x) ** (1.0 / n)
    b = abs(y) ** (1.0 / n)
    c = abs(z) ** (1.0 / n)
    if not (abs(a - b) < c < a + b):
        return 0.0
    kb = bessel_product_kernel(p.alpha, a, b, c)
    s1 = _clamped((a * a + b * b - c * c) / (2.0 * a * b))
    s2 = _clamped((c * c + a * a - b * b) / (2.0 * c * a))
    s3 = _clamped((b * b + c * c - a * a) / (2.0 * b * c))
    g1 = float(_gegenbauer_normalized(n, p.alpha, s1))
    g2 = float(_gegenbauer_normalized(n, p.alpha, s2))
    g3 = float(_gegenbauer_normalized(n, p.alpha, s3))
    sx = 1.0 if x > 0 else -1.0
    sy = 1.0 if y > 0 else -1.0
    sz = 1.0 if z > 0 else -1.0
    theta = 1.0 + (-1.0) ** n * sx * sy * g1 + sz * sx * g2 + sy * sz * g3
    return p.M / (2.0 * n) * kb * theta


def _clamped(s: float) -> float:
    if abs(s) > 1.0 + _COS_CLAMP:
        raise DomainError(f"radial cosine {s!r} outside [-1, 1]")
    return min(1.0, max(-1.0, s))


def _vector_call(f: Callable, arr) -> np.ndarray:
    """Evaluate f on an array, falling back to an elementwise loop for
    scalar-only callables."""
    arr = np.asarray(arr, dtype=float)
    if arr.ndim == 0:
        return np.asarray(f(float(arr)))
    try:
        vals = np.asarray(f(arr))
    except Exception:
        vals = None
    if vals is not None:
        if vals.shape == arr.shape:
            return vals
        if vals.ndim == 0:
            return np.full(arr.shape, vals[()])
    return np.asarray([f(float(v)) for v in arr])


def _double_until(value, start_order, max_order, rel_tol, abs_tol):
    prev = value(start_order)
    order = 2 * start_order
    change = math.inf
    while order <= max_order:
        cur = value(order)
        change = abs(cur - prev)
        if change <= max(abs_tol, rel_tol * abs(cur)):
            return cur
        prev = cur
        order *= 2
    raise AccuracyError(
        f"quadrature did not converge by order {max_order} "
        f"(last change {change:.3e})"
    )


def _window_nodes(order: int, alpha: float, t1: float, t2: float):
    """Nodes and effective weights for the integral of F(t) (1-t^2)^(a-1/2)
    over [t1, t2] within (-1, 1): full-interval and endpoint-touching
    windows absorb the singular factor with a Jacobi rule; interior windows
    carry the (there smooth) weight explicitly under Gauss-Legendre."""
    eps = 1e-14
    at_lo = t1 <= -1.0 + eps
    at_hi = t2 >= 1.0 - eps
    if at_lo and at_hi:
        return _jacobi_nodes(order, alpha - 0.5, alpha - 0.5)
    half = 0.5 * (t2 - t1)
    mid = 0.5 * (t2 + t1)
    if at_hi:
        xi, w = _jacobi_nodes(order, alpha - 0.5, 0.0)
        t = mid + half * xi
        return t, w * half ** (alpha + 0.5) * (1.0 + t) ** (alpha - 0.5)
    if at_lo:
        xi, w = _jacobi_nodes(order, 0.0, alpha - 0.5)
        t = mid + half * xi
        return t, w * half ** (alpha + 0.5) * (1.0 - t) ** (alpha - 0.5)
    xi, w = _legendre_nodes(order)
    t = mid + half * xi
    return t, w * half * (1.0 - t * t) ** (alpha - 0.5)


def integrate_product_measure(
    p: Params,
    x: float,
    y: float,
    f: Callable,
    *,
    f_support: tuple[float, float] | None = None,
    rel_tol: float = _QUAD_REL,
    abs_tol: float = _QUAD_ABS,
    start_order: int = _QUAD_START_ORDER,
    max_order: int = _QUAD_MAX_ORDER,
) -> complex:
    """Integral of f against the product-formula measure for (x, y).

    Point masses when x or y vanishes; otherwise a quadrature over the
    angle parametrization |z| = third_side(|x|^(1/n), |y|^(1/n), phi)^n,
    once per sign of z, with order doubling until two successive orders
    agree to the target tolerance.

    When f is compactly supported (an f.support attribute, or f_support
    given here), each sign branch is clipped to the preimage of the
    support, which both sharpens resolution and makes vanishing outside
    the support exact.
    """
    if y == 0:
        return complex(f(x))
    if x == 0:
        return complex(f(y))
    _require_positive_index(p)
    supp = f_support if f_support is not None else getattr(f, "support", None)
    n = p.n
    a = abs(x) ** (1.0 / n)
    b = abs(y) ** (1.0 / n)
    sx = 1.0 if x > 0 else -1.0
    sy = 1.0 if y > 0 else -1.0
    sign_even = (-1.0) ** n * sx * sy

    # Window of admissible |z|^(1/n): the support shell, clipped to the
    # symmetrized support of f when one is known.
    dlo, dhi = abs(a - b), a + b
    if supp is not None:
        lo, hi = supp
        m2 = max(abs(lo), abs(hi))
        m1 = 0.0 if lo <= 0.0 <= hi else min(abs(lo), abs(hi))
        dlo = max(dlo, m1 ** (1.0 / n))
        dhi = min(dhi, m2 ** (1.0 / n))
        if not dlo < dhi:
            return 0.0 + 0.0j

    def t_of(d):  # t is decreasing in delta
        return min(1.0, max(-1.0, (a * a + b * b - d * d) / (2.0 * a * b)))

    t1, t2 = t_of(dhi), t_of(dlo)
    if not t1 < t2:
        return 0.0 + 0.0j
    # Snap near-endpoint windows out to +-1: the integrand vanishes on the
    # extension, and an endpoint-touching window absorbs the (1 -+ t)
    # factor exactly instead of leaving it as a near-singular weight.
    snap = 0.2
    if t1 + 1.0 < snap:
        t1 = -1.0
    if 1.0 - t2 < snap:
        t2 = 1.0

    # The integrand is organized by the parity of f: both f_e(delta^n) and
    # f_o(delta^n)/delta^n are smooth functions of delta^2 (affine in t),
    # and the odd coupling delta^n * C_n(sigma/delta) is a polynomial in
    # (a - b t, delta^2), so every factor below is free of the boundary
    # layers the raw per-sign form develops when a is close to b.
    def value(order: int) -> complex:
        t, w = _window_nodes(order, p.alpha, t1, t2)
        d2 = (a - b) ** 2 + 2.0 * a * b * (1.0 - t)
        z = np.sqrt(d2) ** n
        even_geg = _gegenbauer_normalized(n, p.alpha, t)
        lad2 = _scaled_gegenbauer_parts(n, p.alpha, a - b * t, d2)
        lad3 = _scaled_gegenbauer_parts(n, p.alpha, b - a * t, d2)
        fp = _vector_call(f, z)
        fm = _vector_call(f, -z)
        vals = 0.5 * (fp + fm) * (1.0 + sign_even * even_geg) + (
            0.5 * (fp - fm) / z
        ) * (sx * lad2 + sy * lad3)
        return p.C_alpha * complex(np.sum(w * vals))

    return _double_until(value, start_order, max_order, rel_tol, abs_tol)


def total_variation(p: Params, x: float, y: float) -> float:
    """Total variation of the product-formula measure: the integral of the
    absolute density.  1 in the point-mass cases; bounded by 4.

    The absolute value introduces kinks, so this uses adaptive QUADPACK
    integration in the angle variable rather than fixed Gauss orders.
    """
    if x == 0 or y == 0:
        return 1.0
    _require_positive_index(p)
    n = p.n
    a = abs(x) ** (1.0 / n)
    b = abs(y) ** (1.0 / n)
    sx = 1.0 if x > 0 else -1.0
    sy = 1.0 if y > 0 else -1.0
    sign_even = (-1.0) ** n * sx * sy
    two_alpha = 2.0 * p.alpha

    def integrand(phi: float) -> float:
        t = math.cos(phi)
        delta = math.sqrt((a - b) ** 2 + 4.0 * a * b * math.sin(0.5 * phi) ** 2)
        g1 = float(_gegenbauer_normalized(n, p.alpha, _clamped(t)))
        g2 = float(
            _gegenbauer_normalized(n, p.alpha, _clamped((a - b * t) / delta))
        )
        g3 = float(
            _gegenbauer_normalized(n, p.alpha, _clamped((b - a * t) / delta))
        )
        base = 1.0 + sign_even * g1
        odd = sx * g2 + sy * g3
        return (abs(base + odd) + abs(base - odd)) * math.sin(phi) ** two_alpha

    val, est = quad(integrand, 0.0, math.pi, epsabs=1e-10, epsrel=1e-10, limit=400)
    if est > 1e-6:
        raise AccuracyError(f"total-variation quadrature error estimate {est:.3e}")
    return 0.5 * p.C_alpha * val


@dataclass(frozen=True)
class ProductMeasure:
    """The measure realizing products of transform kernels: a signed
    kernel density against the reference measure when both x and y are
    nonzero, a point mass otherwise.

    radial_support holds the open shell (r_lo, r_hi) of admissible
    |z|^(1/n) in the kernel case, None for point masses.
    """

    params: Params
    x: float
    y: float
    kind: str  # "kernel" | "point_mass_x" | "point_mass_y"
    radial_support: tuple[float, float] | None

    def density(self, z: float) -> float:
        if self.kind != "kernel":
            raise DomainError("point-mass measure has no density")
        return product_kernel(self.params, self.x, self.y, z)

    def contains(self, z: float) -> bool:
        """True when z lies in the open support shell (kernel case) or at
        the mass point."""
        if self.kind == "point_mass_x":
            return z == self.x
        if self.kind == "point_mass_y":
            return z == self.y
        lo, hi = self.radial_support
        return lo < abs(z) ** (1.0 / self.params.n) < hi

    def z_magnitude_bounds(self) -> tuple[float, float]:
        if self.kind != "kernel":
            raise DomainError("point-mass measure has no support shell")
        lo, hi = self.radial_support
        return lo**self.params.n, hi**self.params.n

    def integrate(self, f: Callable, **kwargs) -> complex:
        return integrate_product_measure(self.params, self.x, self.y, f, **kwargs)

    def mass(self, **kwargs) -> complex:
        return self.integrate(lambda z: 1.0, **kwargs)

    def total_variation(self) -> float:
        return total_variation(self.params, self.x, self.y)


def product_measure(p: Params, x: float, y: float) -> ProductMeasure:
    """Construct the product-formula measure for the pair (x, y)."""
    if y == 0:
        return ProductMeasure(p, x, y, "point_mass_x", None)
    if x == 0:
        return ProductMeasure(p, x, y, "point_mass_y", None)
    _require_positive_index(p)
    a = abs(x) ** (1.0 / p.n)
    b = abs(y) ** (1.0 / p.n)
    return ProductMeasure(p, x, y, "kernel", (abs(a - b), a + b))


def check_shifted_product(
    alpha: float,
    n: int,
    u: float,
    v: float,
    *,
    rel_tol: float = _QUAD_REL,
    abs_tol: float = _QUAD_ABS,
    start_order: int = _QUAD_START_ORDER,
    max_order: int = _QUAD_MAX_ORDER,
) -> ResidualRecord:
    """Residual of the order-shifting product identity

        u^n j_{a+n}(u) j_a(v) = C_a int_0^pi j_{a+n}(d) *
            [scaled Gegenbauer of degree n] (sin phi)^(2a) dphi,

    the n = 0 case being the classical angular product formula.
    """
    _check_uv_index(alpha, n, u, v, allow_zero=True)
    lhs = u**n * bessel_j_norm(alpha + n, u) * bessel_j_norm(alpha, v)

    def value(order: int) -> float:
        t, w = _jacobi_nodes(order, alpha - 0.5, alpha - 0.5)
        d2 = (u - v) ** 2 + 2.0 * u * v * (1.0 - t)
        poly = _scaled_gegenbauer_parts(n, alpha, u - v * t, d2)
        vals = bessel_j_norm(alpha + n, np.sqrt(d2)) * poly
        return sonine_constant(alpha) * float(np.sum(w * vals))

    rhs = _double_until(value, start_order, max_order, rel_tol, abs_tol)
    return ResidualRecord.build(
        {"alpha": alpha, "n": n, "u": u, "v": v}, float(lhs), float(rhs)
    )


def check_matched_product(
    alpha: float,
    n: int,
    u: float,
    v: float,
    *,
    rel_tol: float = _QUAD_REL,
    abs_tol: float = _QUAD_ABS,
    start_order: int = _QUAD_START_ORDER,
    max_order: int = _QUAD_MAX_ORDER,
) -> ResidualRecord:
    """Residual of the equal-order product identity

        (uv)^n / 4^n j_{a+n}(u) j_{a+n}(v) = n! ((a+1)_n)^2 / (2a)_n *
            int_0^inf j_a(w) K_B(u,v,w) C_n^a((u^2+v^2-w^2)/(2uv))
            w^(2a+1) dw,

    integrated in the angle parametrization where the Gegenbauer argument
    becomes cos(phi).
    """
    _check_uv_index(alpha, n, u, v, allow_zero=False)
    lhs = (
        (u * v) ** n
        / 4.0**n
        * bessel_j_norm(alpha + n, u)
        * bessel_j_norm(alpha + n, v)
    )
    pref = (
        math.factorial(n)
        * pochhammer(alpha + 1.0, n) ** 2
        / pochhammer(2.0 * alpha, n)
        if n >= 1
        else 1.0
    )

    def value(order: int) -> float:
        t, w = _jacobi_nodes(order, alpha - 0.5, alpha - 0.5)
        delta = np.sqrt((u - v) ** 2 + 2.0 * u * v * (1.0 - t))
        geg = gegenbauer(n, alpha, t) if n >= 1 else np.ones_like(t)
        vals = bessel_j_norm(alpha, delta) * geg
        return pref * sonine_constant(alpha) * float(np.sum(w * vals))

    rhs = _double_until(value, start_order, max_order, rel_tol, abs_tol)
    return ResidualRecord.build(
        {"alpha": alpha, "n": n, "u": u, "v": v}, float(lhs), float(rhs)
    )


def _check_uv_index(alpha, n, u, v, *, allow_zero):
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    if n >= 1 and not alpha > 0:
        raise DomainError(f"alpha must be positive for n >= 1, got {alpha!r}")
    if n == 0 and not alpha > -0.5:
        raise DomainError(f"alpha must exceed -1/2, got {alpha!r}")
    lo_ok = (u >= 0 and v >= 0) if allow_zero else (u > 0 and v > 0)
    if not lo_ok:
        raise DomainError("u and v must be nonnegative" if allow_zero else "positive")
