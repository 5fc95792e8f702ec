"""Translation, convolution, the differential-difference generator of the
transform, and weighted L^p norms."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .errors import AccuracyError, DomainError
from .kernels import _vector_call, integrate_product_measure
from .specfun import Params
from .transform import integrate_mu

__all__ = ["NormSpec", "translate", "convolve", "apply_generator", "lp_norm"]


@dataclass(frozen=True)
class NormSpec:
    """An exponent p in [1, inf] together with its Holder conjugate."""

    p: float
    conjugate: float = field(init=False)

    def __post_init__(self):
        if not (self.p >= 1.0):
            raise DomainError(f"p must lie in [1, inf], got {self.p!r}")
        if self.p == 1.0:
            conj = math.inf
        elif math.isinf(self.p):
            conj = 1.0
        else:
            conj = self.p / (self.p - 1.0)
        object.__setattr__(self, "conjugate", conj)


def translate(p: Params, f: Callable, x: float, y: float, **quad_kwargs) -> complex:
    """Generalized shift of f: the integral of f against the
    product-formula measure for (x, y).  Reduces to f(y) at x = 0."""
    return integrate_product_measure(p, x, y, f, **quad_kwargs)


def convolve(
    p: Params,
    f: Callable,
    g: Callable,
    x: float,
    *,
    support: tuple[float, float] | None = None,
    rel_tol: float = 1e-8,
    abs_tol: float = 1e-9,
    start_order: int = 48,
    max_order: int = 512,
    inner_kwargs: dict | None = None,
) -> complex:
    """Convolution (f * g)(x): the integral over supp f of
    f(y) times the translate of g evaluated at (-1)^n y.

    The inner translation quadrature runs 10x tighter than the outer
    target by default so errors compose below the outer tolerance.
    """
    supp = support if support is not None else getattr(f, "support", None)
    if supp is None:
        raise DomainError("a compact support for f must be supplied")
    inner = {
        "rel_tol": rel_tol / 10.0,
        "abs_tol": abs_tol / 10.0,
    }
    if inner_kwargs:
        inner.update(inner_kwargs)
    sgn = (-1.0) ** p.n

    def integrand(ys):
        ys = np.atleast_1d(np.asarray(ys, dtype=float))
        shifted = np.asarray(
            [translate(p, g, x, sgn * float(yv), **inner) for yv in ys]
        )
        return _vector_call(f, ys) * shifted

    return integrate_mu(
        p,
        integrand,
        supp,
        rel_tol=rel_tol,
        abs_tol=abs_tol,
        start_order=start_order,
        max_order=max_order,
    )


def apply_generator(
    p: Params,
    f: Callable,
    x: float,
    *,
    df: Callable | None = None,
    d2f: Callable | None = None,
    h: float | None = None,
):
    """The transform's generator applied to f at x != 0:

        |x|^(2(1-1/n)) { f''(x) + (2 kappa / x) f'(x)
                         - (kappa / x^2) (f(x) - f(-x)) }.

    Derivatives come from df/d2f when supplied, otherwise from central
    differences with step h (default 1e-4 * max(1, |x|)).
    """
    if x == 0:
        raise DomainError("the generator is singular at x = 0")
    f0 = f(x)
    fm = f(-x)
    if df is not None and d2f is not None:
        f1 = df(x)
        f2 = d2f(x)
    else:
        h0 = h if h is not None else 1e-4 * max(1.0, abs(x))
        fp = f(x + h0)
        fn = f(x - h0)
        f1 = (fp - fn) / (2.0 * h0)
        f2 = (fp - 2.0 * f0 + fn) / (h0 * h0)
    radial = f2 + (2.0 * p.kappa / x) * f1
    reflect = (p.kappa / (x * x)) * (f0 - fm)
    return abs(x) ** (2.0 * (1.0 - 1.0 / p.n)) * (radial - reflect)


def lp_norm(
    p: Params,
    f: Callable,
    spec: NormSpec,
    *,
    support: tuple[float, float] | None = None,
    sup_points: int = 2001,
    epsabs: float = 1e-11,
) -> float:
    """Weighted norm (integral of |f|^p against the reference measure)^(1/p),
    or the sup of |f| on a grid over the support for p = inf.

    |f|^p has kinks wherever f changes sign, so the finite-p integrals use
    adaptive QUADPACK in the (t/n)^n-substituted variable.
    """
    supp = support if support is not None else getattr(f, "support", None)
    if supp is None:
        raise DomainError("a compact support must be supplied")
    lo, hi = supp
    if math.isinf(spec.p):
        xs = np.linspace(lo, hi, sup_points)
        return float(np.max(np.abs(_vector_call(f, xs))))
    n = p.n
    pw = spec.p
    pref = n ** (-(2.0 * p.alpha + 1.0)) / p.M
    total = 0.0
    for c, sgn in ((hi, 1.0), (-lo, -1.0)):
        if c <= 0:
            continue
        big_t = n * c ** (1.0 / n)

        def integrand(t, _s=sgn):
            return abs(f(_s * (t / n) ** n)) ** pw * t ** (2.0 * p.alpha + 1.0)

        val, est = quad(integrand, 0.0, big_t, epsabs=epsabs, epsrel=1e-10, limit=300)
        if est > 1e-7 * max(1.0, abs(val)):
            raise AccuracyError(f"norm quadrature error estimate {est:.3e}")
        total += pref * val
    return float(total ** (1.0 / pw))
