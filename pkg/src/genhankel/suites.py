"""Named verification suites sweeping the package's identities over
deterministic, seeded parameter grids, and the report type they produce.

Every suite maps one-to-one onto an identity or bound implemented in the
library; a report records each case's two sides plus absolute and relative
errors, and passes when the suite's configured metric stays within
tolerance.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .functions import SmoothBump, BumpSum, mirrored_bump, truncated_gaussian
from .kernels import (
    bessel_kernel_mass,
    bessel_product_kernel,
    check_matched_product,
    check_shifted_product,
    integrate_product_measure,
    parity_factor,
    product_kernel,
    scaled_gegenbauer,
    third_side,
    total_variation,
)
from .operators import NormSpec, apply_generator, convolve, lp_norm, translate
from .specfun import Params, gauss_rule, gegenbauer, pochhammer
from .transform import (
    SampledFunction,
    hankel_kernel,
    hankel_transform,
    integrate_mu,
    parity_split_transform,
)

__all__ = ["VerificationReport", "run_suite", "SUITE_NAMES", "DEFAULT_TOLERANCES"]

_ALPHAS = (0.55, 1.0, 2.3)
_UV = (0.1, 0.5, 1.0, 2.0, 5.0)
_PAIRS = ((1, 1.0), (2, 0.8), (3, 0.7), (4, 0.6))

DEFAULT_TOLERANCES = {
    "sonine": 1e-8,
    "th0": 1e-8,
    "key1": 1e-8,
    "psi_ladder": 1e-6,
    "gegenbauer": 1e-10,
    "kernel_props": 1e-9,
    "product_formula": 1e-7,
    "measure_props": 1e-8,
    "transform_decomp": 1e-6,
    "translation": 1e-7,
    "convolution": 1e-6,
    "operator_T": 1e-5,
    "lp_bounds": 1e-8,
}

_METRIC = {
    "psi_ladder": "rel",
    "transform_decomp": "rel",
    "convolution": "rel",
    "operator_T": "abs",
}


def _metric(name: str) -> str:
    return _METRIC.get(name, "abs")


@dataclass
class VerificationReport:
    suite: str
    params: dict
    tolerance: float
    seed: int
    cases: list
    max_abs_err: float
    max_rel_err: float
    passed: bool
    runtime_ms: int

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "tolerance": self.tolerance,
            "seed": self.seed,
            "cases": self.cases,
            "max_abs_err": self.max_abs_err,
            "max_rel_err": self.max_rel_err,
            "pass": self.passed,
            "runtime_ms": self.runtime_ms,
        }


def _num(v):
    if isinstance(v, complex):
        return [float(v.real), float(v.imag)]
    return float(v)


def _case(inputs: dict, lhs, rhs) -> dict:
    abs_err = abs(lhs - rhs)
    rel_err = abs_err / max(abs(lhs), abs(rhs), 1e-300)
    return {
        "inputs": inputs,
        "lhs": _num(lhs),
        "rhs": _num(rhs),
        "abs_err": float(abs_err),
        "rel_err": float(rel_err),
    }


def _bound_case(inputs: dict, value: float, bound: float) -> dict:
    # err = amount by which an upper bound is violated
    err = max(0.0, float(value) - float(bound))
    return {
        "inputs": {**inputs, "check": "upper_bound"},
        "lhs": _num(value),
        "rhs": _num(bound),
        "abs_err": err,
        "rel_err": err / max(abs(bound), 1e-300),
    }


def _negative_case(inputs: dict, value: float) -> dict:
    err = 0.0 if value < 0.0 else 1.0 + abs(value)
    return {
        "inputs": {**inputs, "check": "strictly_negative"},
        "lhs": _num(value),
        "rhs": 0.0,
        "abs_err": err,
        "rel_err": err,
    }


def _record_case(rec) -> dict:
    return {
        "inputs": rec.inputs,
        "lhs": _num(rec.lhs),
        "rhs": _num(rec.rhs),
        "abs_err": rec.abs_err,
        "rel_err": rec.rel_err,
    }


def _pair_meta(pairs) -> list:
    out = []
    for n, kappa in pairs:
        p = Params(n, kappa)
        out.append(
            {
                "n": n,
                "kappa": kappa,
                "alpha": p.alpha,
                "kappa_gap": p.in_proposition_gap,
            }
        )
    return out


def _sample_xy(rng, lo=0.05):
    while True:
        v = rng.uniform(-5.0, 5.0)
        if abs(v) >= lo:
            return float(v)


# ---------------------------------------------------------------------------
# suite builders: each returns (params_meta, [(inputs, thunk), ...])


def _build_sonine(rng, opts):
    specs = []
    for alpha in _ALPHAS:
        for u in _UV:
            for v in _UV:
                inputs = {"alpha": alpha, "n": 0, "u": u, "v": v}
                specs.append(
                    (inputs, lambda a=alpha, uu=u, vv=v:
                     _record_case(check_shifted_product(a, 0, uu, vv)))
                )
    return {"alphas": _ALPHAS, "uv": _UV}, specs


def _build_th0(rng, opts):
    specs = []
    for n in range(5):
        for alpha in _ALPHAS:
            for u in _UV:
                for v in _UV:
                    inputs = {"alpha": alpha, "n": n, "u": u, "v": v}
                    specs.append(
                        (inputs, lambda a=alpha, m=n, uu=u, vv=v:
                         _record_case(check_shifted_product(a, m, uu, vv)))
                    )
    return {"n": list(range(5)), "alphas": _ALPHAS, "uv": _UV}, specs


def _build_key1(rng, opts):
    specs = []
    for n in range(5):
        for alpha in _ALPHAS:
            for u in _UV:
                for v in _UV:
                    inputs = {"alpha": alpha, "n": n, "u": u, "v": v}
                    specs.append(
                        (inputs, lambda a=alpha, m=n, uu=u, vv=v:
                         _record_case(check_matched_product(a, m, uu, vv)))
                    )
    return {"n": list(range(5)), "alphas": _ALPHAS, "uv": _UV}, specs


def _ladder_case(n, alpha, u, v, phi, h=1e-5):
    fd = (
        scaled_gegenbauer(n, alpha, u + h, v, phi)
        - scaled_gegenbauer(n, alpha, u - h, v, phi)
    ) / (2.0 * h)
    return _case(
        {"n": n, "alpha": alpha, "u": u, "v": v, "phi": phi, "h": h},
        fd,
        n * scaled_gegenbauer(n - 1, alpha, u, v, phi),
    )


def _build_psi_ladder(rng, opts):
    specs = [
        (
            {"n": 3, "alpha": 1.1, "u": 1.4, "v": 0.6, "phi": 1.0},
            lambda: _ladder_case(3, 1.1, 1.4, 0.6, 1.0),
        )
    ]
    per_n = int(opts.get("ladder_cases_per_n", 10))
    for n in range(1, 6):
        for _ in range(per_n):
            alpha = float(rng.uniform(0.6, 2.5))
            u = float(rng.uniform(0.1, 3.0))
            v = float(rng.uniform(0.1, 3.0))
            phi = float(rng.uniform(0.1, 3.0))
            inputs = {"n": n, "alpha": alpha, "u": u, "v": v, "phi": phi}
            specs.append(
                (inputs, lambda m=n, a=alpha, uu=u, vv=v, ph=phi:
                 _ladder_case(m, a, uu, vv, ph))
            )
    return {"n": list(range(1, 6)), "cases_per_n": per_n}, specs


def _orthogonality_closed_form(alpha, m):
    return (
        math.pi
        * math.gamma(2.0 * alpha + m)
        / (
            2.0 ** (2.0 * alpha - 1.0)
            * math.factorial(m)
            * (m + alpha)
            * math.gamma(alpha) ** 2
        )
    )


def _build_gegenbauer(rng, opts):
    specs = []
    for alpha in (0.6, 1.5):
        rule = gauss_rule(16, "jacobi", alpha - 0.5)
        for m in range(9):
            for mp in range(m, 9):
                lhs = float(
                    np.sum(
                        rule.weights
                        * gegenbauer(m, alpha, rule.nodes)
                        * gegenbauer(mp, alpha, rule.nodes)
                    )
                )
                rhs = _orthogonality_closed_form(alpha, m) if m == mp else 0.0
                specs.append(
                    (
                        {"alpha": alpha, "m": m, "mp": mp},
                        lambda c=_case({"alpha": alpha, "m": m, "mp": mp}, lhs, rhs): c,
                    )
                )
    for alpha in (0.6, 0.9, 1.5):
        for m in range(9):
            cp = _case(
                {"alpha": alpha, "m": m, "t": 1.0},
                gegenbauer(m, alpha, 1.0),
                pochhammer(2 * alpha, m) / math.factorial(m),
            )
            cm = _case(
                {"alpha": alpha, "m": m, "t": -1.0},
                gegenbauer(m, alpha, -1.0),
                (-1.0) ** m * pochhammer(2 * alpha, m) / math.factorial(m),
            )
            specs.append(((cp["inputs"]), lambda c=cp: c))
            specs.append(((cm["inputs"]), lambda c=cm: c))
    return {"alphas": (0.6, 1.5), "m_max": 8}, specs


def _sample_admissible_triple(rng, p):
    x = _sample_xy(rng)
    y = _sample_xy(rng)
    a, b = abs(x) ** (1.0 / p.n), abs(y) ** (1.0 / p.n)
    phi = float(rng.uniform(0.05, math.pi - 0.05))
    zmag = third_side(a, b, phi) ** p.n
    z = zmag if rng.uniform() < 0.5 else -zmag
    return x, y, float(z)


def _build_kernel_props(rng, opts):
    specs = []
    n_mass = int(opts.get("mass_cases", 20))
    for _ in range(n_mass):
        alpha = float(rng.uniform(0.55, 2.5))
        u = float(rng.uniform(0.1, 5.0))
        v = float(rng.uniform(0.1, 5.0))
        inputs = {"identity": "unit_mass", "alpha": alpha, "u": u, "v": v}
        specs.append(
            (inputs, lambda a=alpha, uu=u, vv=v:
             _case({"identity": "unit_mass", "alpha": a, "u": uu, "v": vv},
                   bessel_kernel_mass(a, uu, vv), 1.0))
        )

    def homog_case(alpha, u, v, w, scale):
        lhs = bessel_product_kernel(alpha, scale * u, scale * v, scale * w)
        rhs = scale ** (-2.0 * alpha - 2.0) * bessel_product_kernel(alpha, u, v, w)
        return _case(
            {"identity": "homogeneity", "alpha": alpha, "u": u, "v": v, "w": w,
             "scale": scale},
            lhs, rhs,
        )

    specs.append(({"identity": "homogeneity"}, lambda: homog_case(0.8, 1.0, 1.5, 2.0, 2.0)))
    for _ in range(5):
        alpha = float(rng.uniform(0.55, 2.5))
        u = float(rng.uniform(0.2, 3.0))
        v = float(rng.uniform(0.2, 3.0))
        w = float(rng.uniform(abs(u - v) + 0.05, u + v - 0.05))
        s = float(rng.uniform(0.5, 3.0))
        specs.append(
            ({"identity": "homogeneity"},
             lambda a=alpha, uu=u, vv=v, ww=w, ss=s: homog_case(a, uu, vv, ww, ss))
        )

    def symmetry_cases(p, x, y, z):
        k0 = product_kernel(p, x, y, z)
        sgn = (-1.0) ** p.n
        return [
            _case({"identity": "swap_xy", "n": p.n, "kappa": p.kappa,
                   "x": x, "y": y, "z": z}, k0, product_kernel(p, y, x, z)),
            _case({"identity": "exchange_zy", "n": p.n, "kappa": p.kappa,
                   "x": x, "y": y, "z": z}, k0, product_kernel(p, sgn * x, z, y)),
            _case({"identity": "exchange_zx", "n": p.n, "kappa": p.kappa,
                   "x": x, "y": y, "z": z}, k0, product_kernel(p, z, sgn * y, x)),
        ]

    for n, kappa in _PAIRS:
        p = Params(n, kappa)
        for _ in range(5):
            x, y, z = _sample_admissible_triple(rng, p)
            for idx in range(3):
                specs.append(
                    ({"identity": "kernel_symmetry", "n": n},
                     lambda pp=p, xx=x, yy=y, zz=z, i=idx:
                     symmetry_cases(pp, xx, yy, zz)[i])
                )

    p_xi = Params(3, 0.9)
    n_xi = int(opts.get("xi_cases", 1000))
    for _ in range(n_xi):
        x, y, z = _sample_admissible_triple(rng, p_xi)
        specs.append(
            ({"identity": "xi_bound"},
             lambda xx=x, yy=y, zz=z:
             _bound_case({"identity": "xi_bound", "x": xx, "y": yy, "z": zz},
                         abs(parity_factor(p_xi, xx, yy, zz)), 1.0))
        )

    for n, kappa in _PAIRS:
        p = Params(n, kappa)
        for eta in (0.02, 0.005):
            zin, xn, yn = _negativity_witness(n, eta)
            specs.append(
                ({"identity": "negativity", "n": n},
                 lambda pp=p, z=zin, xx=xn, yy=yn:
                 _negative_case(
                     {"identity": "negativity", "n": pp.n, "kappa": pp.kappa,
                      "x": xx, "y": yy, "z": z},
                     product_kernel(pp, xx, yy, z)))
            )
    return {"pairs": _pair_meta(_PAIRS), "mass_cases": n_mass, "xi_cases": n_xi}, specs


def _negativity_witness(n: int, eta: float, xw: float = 2.0, yw: float = 1.0):
    """An interior point of the support shell near the boundary radius where
    the kernel is strictly negative: the kernel vanishes at the boundary
    itself, and the negative neighborhood lies just inside it (radius
    (x-y)(1+eta) for odd n, (x+y)(1-eta) for even n)."""
    if n % 2 == 1:
        r = (xw - yw) * (1.0 + eta)
    else:
        r = (xw + yw) * (1.0 - eta)
    return -(r**n), xw**n, yw**n


def _build_product_formula(rng, opts):
    per_pair = int(opts.get("cases_per_pair", 100))
    specs = []
    for n, kappa in _PAIRS:
        p = Params(n, kappa)
        for _ in range(per_pair):
            lam = float(rng.uniform(-5.0, 5.0))
            x = _sample_xy(rng)
            y = _sample_xy(rng)

            def thunk(pp=p, lm=lam, xx=x, yy=y):
                lhs = hankel_kernel(pp, lm, xx) * hankel_kernel(pp, lm, yy)
                rhs = integrate_product_measure(
                    pp, xx, yy, lambda z: hankel_kernel(pp, lm, z)
                )
                return _case(
                    {"n": pp.n, "kappa": pp.kappa, "lambda": lm, "x": xx, "y": yy},
                    lhs, rhs,
                )

            specs.append(({"n": n, "kappa": kappa}, thunk))
    return {"pairs": _pair_meta(_PAIRS), "cases_per_pair": per_pair}, specs


def _build_measure_props(rng, opts):
    specs = []
    mass_per_pair = int(opts.get("mass_cases_per_pair", 5))
    tv_total = int(opts.get("tv_cases", 200))
    for n, kappa in _PAIRS:
        p = Params(n, kappa)
        for _ in range(mass_per_pair):
            x = _sample_xy(rng)
            y = _sample_xy(rng)
            specs.append(
                ({"identity": "unit_mass", "n": n},
                 lambda pp=p, xx=x, yy=y:
                 _case({"identity": "unit_mass", "n": pp.n, "kappa": pp.kappa,
                        "x": xx, "y": yy},
                       integrate_product_measure(pp, xx, yy, lambda z: 1.0), 1.0))
            )
    tv_pairs = ((1, 1.0), (2, 0.8), (3, 0.7))
    for i in range(tv_total):
        n, kappa = tv_pairs[i % len(tv_pairs)]
        p = Params(n, kappa)
        x = _sample_xy(rng)
        y = _sample_xy(rng)
        specs.append(
            ({"identity": "total_variation", "n": n},
             lambda pp=p, xx=x, yy=y:
             _bound_case({"identity": "total_variation", "n": pp.n,
                          "kappa": pp.kappa, "x": xx, "y": yy},
                         total_variation(pp, xx, yy), 4.0))
        )
    for n, kappa in _PAIRS:
        p = Params(n, kappa)
        for _ in range(3):
            x = _sample_xy(rng)
            y = _sample_xy(rng)
            a, b = abs(x) ** (1.0 / n), abs(y) ** (1.0 / n)
            for c in (abs(a - b) * 0.9, (a + b) * 1.1):
                if c <= 0:
                    continue
                z = c**n * (1.0 if rng.uniform() < 0.5 else -1.0)
                specs.append(
                    ({"identity": "support", "n": n},
                     lambda pp=p, xx=x, yy=y, zz=float(z):
                     _case({"identity": "support", "n": pp.n, "kappa": pp.kappa,
                            "x": xx, "y": yy, "z": zz},
                           product_kernel(pp, xx, yy, zz), 0.0))
                )
    for n, kappa in _PAIRS:
        p = Params(n, kappa)
        zin, xn, yn = _negativity_witness(n, 0.02)
        specs.append(
            ({"identity": "negativity", "n": n},
             lambda pp=p, z=zin, xx=xn, yy=yn:
             _negative_case({"identity": "negativity", "n": pp.n,
                             "kappa": pp.kappa, "x": xx, "y": yy, "z": z},
                            product_kernel(pp, xx, yy, z)))
        )
    p3 = Params(3, 0.7)
    specs.append(
        ({"identity": "point_mass"},
         lambda: _case({"identity": "point_mass", "n": 3, "kappa": 0.7,
                        "x": 1.2, "y": 0.0},
                       integrate_product_measure(p3, 1.2, 0.0, lambda z: z * z),
                       1.2**2))
    )
    return {
        "pairs": _pair_meta(_PAIRS),
        "tv_cases": tv_total,
        "mass_cases_per_pair": mass_per_pair,
    }, specs


_DECOMP_PAIRS = ((1, 1.0), (2, 0.9), (3, 0.8), (3, 0.55))


def _build_transform_decomp(rng, opts):
    f = BumpSum(((1.0, SmoothBump(0.6, 1.2)), (0.5, SmoothBump(-1.1, 0.8))))
    lambdas = (0.1, 0.5, 1.0, 1.7, 2.6, 4.0)
    specs = []
    for n, kappa in _DECOMP_PAIRS:
        p = Params(n, kappa)
        lams = lambdas + ((-0.7, -2.2) if n % 2 == 1 else ())
        for lam in lams:

            def thunk(pp=p, lm=lam):
                direct = hankel_transform(pp, f, [lm]).values[0]
                split = parity_split_transform(pp, f, lm)
                return _case(
                    {"n": pp.n, "kappa": pp.kappa, "lambda": lm,
                     "kappa_gap": pp.in_proposition_gap},
                    direct, split,
                )

            specs.append(({"n": n, "kappa": kappa, "lambda": lam}, thunk))
    return {"pairs": _pair_meta(_DECOMP_PAIRS)}, specs


_TRANS_PAIRS = ((1, 1.0), (2, 0.8), (3, 0.7))


def _translated(p, f, x, **kwargs):
    def fn(ys):
        ys = np.atleast_1d(np.asarray(ys, dtype=float))
        return np.asarray(
            [translate(p, f, x, float(yv), **kwargs) for yv in ys]
        )

    return fn


def _translate_support(p, f, x):
    r = max(abs(f.support[0]), abs(f.support[1]))
    rad = (abs(x) ** (1.0 / p.n) + r ** (1.0 / p.n)) ** p.n
    return (-rad, rad)


def _build_translation(rng, opts):
    f = SmoothBump(0.4, 1.8)
    specs = []
    for n, kappa in _TRANS_PAIRS:
        p = Params(n, kappa)
        for y in (-1.5, -0.2, 0.7, 2.0):
            specs.append(
                ({"identity": "tau0", "n": n, "y": y},
                 lambda pp=p, yy=y:
                 _case({"identity": "tau0", "n": pp.n, "kappa": pp.kappa, "y": yy},
                       translate(pp, f, 0.0, yy), complex(f(yy))))
            )
        for _ in range(4):
            x = float(rng.uniform(-3.0, 3.0))
            y = float(rng.uniform(-3.0, 3.0))
            specs.append(
                ({"identity": "symmetry", "n": n},
                 lambda pp=p, xx=x, yy=y:
                 _case({"identity": "symmetry", "n": pp.n, "kappa": pp.kappa,
                        "x": xx, "y": yy},
                       translate(pp, f, xx, yy), translate(pp, f, yy, xx)))
            )
        for x in (0.9, -1.3):
            for lam in (0.5, 1.5, 3.0):

                def thunk(pp=p, xx=x, lm=lam):
                    supp = _translate_support(pp, f, xx)
                    tf = _translated(pp, f, xx)
                    lhs = hankel_transform(
                        pp, tf, [lm], support=supp, abs_tol=1e-9
                    ).values[0]
                    ff = hankel_transform(pp, f, [lm]).values[0]
                    rhs = hankel_kernel(pp, lm, (-1.0) ** pp.n * xx) * ff
                    return _case(
                        {"identity": "spectral", "n": pp.n, "kappa": pp.kappa,
                         "x": xx, "lambda": lm},
                        lhs, rhs,
                    )

                specs.append(({"identity": "spectral", "n": n}, thunk))
        for x in (0.7, -1.1):
            for pw in (1.0, 2.0, math.inf):

                def thunk(pp=p, xx=x, q=pw):
                    spec = NormSpec(q)
                    supp = _translate_support(pp, f, xx)
                    nt = lp_norm(
                        pp, _translated(pp, f, xx), spec,
                        support=supp, sup_points=401,
                    )
                    nf = lp_norm(pp, f, spec)
                    return _bound_case(
                        {"identity": "translation_bound", "n": pp.n,
                         "kappa": pp.kappa, "x": xx,
                         "p": ("inf" if math.isinf(q) else q)},
                        nt, 4.0 * nf + 1e-8,
                    )

                specs.append(({"identity": "translation_bound", "n": n}, thunk))
    return {"pairs": _pair_meta(_TRANS_PAIRS)}, specs


def _sampled_convolution(p, f, g, num=225):
    rf = max(abs(f.support[0]), abs(f.support[1]))
    rg = max(abs(g.support[0]), abs(g.support[1]))
    rad = (rf ** (1.0 / p.n) + rg ** (1.0 / p.n)) ** p.n
    grid = np.linspace(-rad, rad, num)
    vals = np.asarray(
        [
            convolve(p, f, g, float(xx), start_order=32,
                     inner_kwargs={"start_order": 32})
            for xx in grid
        ]
    )
    return SampledFunction(grid, vals, (-rad, rad)), rad


def _build_convolution(rng, opts):
    f = SmoothBump(0.4, 1.2)
    g = SmoothBump(-0.2, 1.0, 0.8)
    specs = []
    for n, kappa in _TRANS_PAIRS:
        p = Params(n, kappa)
        for x in (0.5, -0.8):
            specs.append(
                ({"identity": "commutativity", "n": n},
                 lambda pp=p, xx=x:
                 _case({"identity": "commutativity", "n": pp.n,
                        "kappa": pp.kappa, "x": xx},
                       convolve(pp, f, g, xx), convolve(pp, g, f, xx)))
            )
        rf = max(abs(f.support[0]), abs(f.support[1]))
        rg = max(abs(g.support[0]), abs(g.support[1]))
        rad = (rf ** (1.0 / n) + rg ** (1.0 / n)) ** n
        for x in (rad * 1.05, -rad * 1.3):
            specs.append(
                ({"identity": "support_growth", "n": n},
                 lambda pp=p, xx=float(x), rr=rad:
                 _case({"identity": "support_growth", "n": pp.n,
                        "kappa": pp.kappa, "x": xx, "radius": rr},
                       convolve(pp, f, g, xx), 0.0))
            )

    p2 = Params(2, 0.8)
    lams = (0.2, 0.5, 1.0, 1.8, 3.0)
    lhs_by_lam = _transform_of_convolution(p2, f, g, lams)

    def conv_theorem(lam):
        ff = hankel_transform(p2, f, [lam]).values[0]
        gg = hankel_transform(p2, g, [lam]).values[0]
        return _case(
            {"identity": "transform_of_convolution", "n": 2, "kappa": 0.8,
             "lambda": lam},
            lhs_by_lam[lam], ff * gg,
        )

    for lam in lams:
        specs.append(
            ({"identity": "transform_of_convolution", "lambda": lam},
             lambda lm=lam: conv_theorem(lm))
        )
    return {"pairs": _pair_meta(_TRANS_PAIRS), "lambdas": list(lams)}, specs


def _transform_of_convolution(p, f, g, lams, orders=(64, 128)):
    """Transform of the convolution at several spectral points, integrating
    convolution values directly on shared quadrature nodes (no
    interpolation; the nodes are lambda-independent, so each convolution
    value is computed once and reused across the whole spectral grid)."""
    n, alpha = p.n, p.alpha
    rf = max(abs(f.support[0]), abs(f.support[1]))
    rg = max(abs(g.support[0]), abs(g.support[1]))
    rad = (rf ** (1.0 / n) + rg ** (1.0 / n)) ** n
    big_t = n * rad ** (1.0 / n)
    pref0 = n ** (-(2.0 * alpha + 1.0)) / p.M

    def level(order):
        total = {lm: 0.0 + 0.0j for lm in lams}
        xi, w = _jacobi_nodes_cached(order, 0.0, 2.0 * alpha + 1.0)
        t = 0.5 * big_t * (1.0 + xi)
        for sgn in (1.0, -1.0):
            xs = sgn * (t / n) ** n
            cv = np.asarray(
                [
                    convolve(p, f, g, float(xx), start_order=24,
                             rel_tol=1e-8, abs_tol=1e-9,
                             inner_kwargs={"start_order": 32, "rel_tol": 1e-9,
                                           "abs_tol": 1e-9})
                    for xx in xs
                ]
            )
            for lm in lams:
                bk = hankel_kernel(p, lm, xs)
                total[lm] += pref0 * (0.5 * big_t) ** (2.0 * alpha + 2.0) * complex(
                    np.sum(w * cv * bk)
                )
        return total

    lo = level(orders[0])
    hi = level(orders[1])
    for lm in lams:
        if abs(hi[lm] - lo[lm]) > 1e-8 * max(1.0, abs(hi[lm])):
            raise AccuracyError(
                f"transform of convolution did not converge at lambda={lm}"
            )
    return hi


def _build_operator(rng, opts):
    specs = []
    for n, kappa in _TRANS_PAIRS:
        p = Params(n, kappa)
        for lam, x in ((1.5, 0.9), (0.8, 1.6)):

            def ratio_case(pp=p, lm=lam, xx=x):
                kern = lambda t: hankel_kernel(pp, lm, t)
                ev = -abs(lm) ** (2.0 / pp.n) * kern(xx)
                h = 2e-3 * max(1.0, abs(xx))
                r1 = abs(apply_generator(pp, kern, xx, h=h) - ev)
                r2 = abs(apply_generator(pp, kern, xx, h=0.5 * h) - ev)
                ratio = r1 / r2
                err = max(0.0, 3.2 - ratio, ratio - 4.8)
                return {
                    "inputs": {"identity": "eigen_fd_ratio", "n": pp.n,
                               "kappa": pp.kappa, "lambda": lm, "x": xx, "h": h},
                    "lhs": float(ratio),
                    "rhs": 4.0,
                    "abs_err": float(err),
                    "rel_err": float(err / 4.0),
                }

            specs.append(({"identity": "eigen_fd_ratio", "n": n}, ratio_case))

    gauss = truncated_gaussian()
    p2 = Params(2, 0.8)

    def even_case():
        x = 0.8
        full = apply_generator(p2, gauss, x, df=gauss.deriv, d2f=gauss.deriv2)
        radial_only = abs(x) ** (2.0 * (1.0 - 1.0 / p2.n)) * (
            gauss.deriv2(x) + (2.0 * p2.kappa / x) * gauss.deriv(x)
        )
        return _case(
            {"identity": "even_reflection_vanishes", "n": 2, "kappa": 0.8, "x": x},
            full, radial_only,
        )

    specs.append(({"identity": "even_reflection_vanishes"}, even_case))

    fb = mirrored_bump(1.4, 1.1, parity=+1)
    gb = mirrored_bump(1.2, 0.8, parity=-1)

    def bilinear_case():
        tf = lambda y: apply_generator(p2, fb, y, df=fb.deriv, d2f=fb.deriv2)
        tg = lambda y: apply_generator(p2, gb, y, df=gb.deriv, d2f=gb.deriv2)
        lhs = integrate_mu(p2, lambda ys: _arr(tf, ys) * _arr(gb, ys), gb.support)
        rhs = integrate_mu(p2, lambda ys: _arr(fb, ys) * _arr(tg, ys), fb.support)
        return _case(
            {"identity": "bilinear_symmetry", "n": 2, "kappa": 0.8}, lhs, rhs
        )

    specs.append(({"identity": "bilinear_symmetry"}, bilinear_case))
    return {"pairs": _pair_meta(_TRANS_PAIRS)}, specs


def _arr(fn, xs):
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    return np.asarray([fn(float(v)) for v in xs])


def _build_lp_bounds(rng, opts):
    p2 = Params(2, 0.8)
    f = SmoothBump(0.3, 0.9)
    g = SmoothBump(-0.2, 0.7, 0.8)
    specs = []
    for pw in (1.0, 2.0, math.inf):
        specs.append(
            ({"identity": "scaling", "p": ("inf" if math.isinf(pw) else pw)},
             lambda q=pw:
             _case({"identity": "scaling", "p": ("inf" if math.isinf(q) else q)},
                   lp_norm(p2, lambda x: 3.0 * f(x), NormSpec(q),
                           support=f.support),
                   3.0 * lp_norm(p2, f, NormSpec(q))))
        )
    specs.append(
        ({"identity": "zero_norm"},
         lambda: _case({"identity": "zero_norm"},
                       lp_norm(p2, lambda x: 0.0 * np.asarray(x), NormSpec(2.0),
                               support=(-1.0, 1.0)),
                       0.0))
    )

    def l1_linf_case(lam):
        ff = abs(hankel_transform(p2, f, [lam]).values[0])
        n1 = lp_norm(p2, f, NormSpec(1.0))
        return _bound_case(
            {"identity": "transform_sup_bound", "lambda": lam}, ff, n1 + 1e-10
        )

    for lam in (0.0, 0.5, -2.0, 5.0):
        specs.append(
            ({"identity": "transform_sup_bound", "lambda": lam},
             lambda lm=lam: l1_linf_case(lm))
        )

    sf, _ = _sampled_convolution(p2, f, g, 161)

    def young_case(pw, qw, rw):
        spec_r = NormSpec(rw)
        nr = lp_norm(p2, sf, spec_r, support=sf.support)
        nf = lp_norm(p2, f, NormSpec(pw))
        ng = lp_norm(p2, g, NormSpec(qw))
        return _bound_case(
            {"identity": "young", "p": ("inf" if math.isinf(pw) else pw),
             "q": ("inf" if math.isinf(qw) else qw),
             "r": ("inf" if math.isinf(rw) else rw)},
            nr, 4.0 * nf * ng + 1e-8,
        )

    for pw, qw, rw in ((1.0, 1.0, 1.0), (1.0, 2.0, 2.0), (2.0, 2.0, math.inf)):
        specs.append(
            ({"identity": "young"},
             lambda a=pw, b=qw, c=rw: young_case(a, b, c))
        )

    for x in (0.6, -1.4):
        for pw in (1.0, 2.0, math.inf):

            def thunk(xx=x, q=pw):
                spec = NormSpec(q)
                supp = _translate_support(p2, f, xx)
                nt = lp_norm(p2, _translated(p2, f, xx), spec,
                             support=supp, sup_points=401)
                nf = lp_norm(p2, f, spec)
                return _bound_case(
                    {"identity": "translation_bound", "x": xx,
                     "p": ("inf" if math.isinf(q) else q)},
                    nt, 4.0 * nf + 1e-8,
                )

            specs.append(({"identity": "translation_bound"}, thunk))
    return {"pair": _pair_meta([(2, 0.8)])[0]}, specs


_BUILDERS = {
    "sonine": _build_sonine,
    "th0": _build_th0,
    "key1": _build_key1,
    "psi_ladder": _build_psi_ladder,
    "gegenbauer": _build_gegenbauer,
    "kernel_props": _build_kernel_props,
    "product_formula": _build_product_formula,
    "measure_props": _build_measure_props,
    "transform_decomp": _build_transform_decomp,
    "translation": _build_translation,
    "convolution": _build_convolution,
    "operator_T": _build_operator,
    "lp_bounds": _build_lp_bounds,
}

SUITE_NAMES = tuple(_BUILDERS)


def run_suite(
    name: str,
    *,
    tol: float | None = None,
    seed: int = 42,
    jobs: int = 1,
    options: dict | None = None,
) -> VerificationReport:
    """Run one named suite on its deterministic seeded grid.

    Identical (name, tol, seed, options) produce identical reports apart
    from runtime_ms.  jobs > 1 evaluates cases in a thread pool; the case
    order (and hence the report) is unchanged.
    """
    if name not in _BUILDERS:
        raise DomainError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}"
        )
    tol = DEFAULT_TOLERANCES[name] if tol is None else float(tol)
    opts = options or {}
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    meta, specs = _BUILDERS[name](rng, opts)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            cases = list(pool.map(lambda s: s[1](), specs))
    else:
        cases = [thunk() for _, thunk in specs]
    metric = _metric(name)
    max_abs = max(c["abs_err"] for c in cases)
    max_rel = max(c["rel_err"] for c in cases)
    observed = max_abs if metric == "abs" else max_rel
    runtime_ms = int(round(1000.0 * (time.perf_counter() - start)))
    params = {"metric": metric, **meta}
    return VerificationReport(
        suite=name,
        params=params,
        tolerance=tol,
        seed=seed,
        cases=cases,
        max_abs_err=float(max_abs),
        max_rel_err=float(max_rel),
        passed=bool(observed <= tol),
        runtime_ms=runtime_ms,
    )
