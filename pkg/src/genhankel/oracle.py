"""Independent slow-path oracles: extended-precision series and brute-force
quadrature.  Used by the verification suites for differential testing; never
on the fast path."""
from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .errors import AccuracyError, DomainError

__all__ = ["OracleConfig", "oracle_bessel_j", "oracle_integral"]


@dataclass(frozen=True)
class OracleConfig:
    precision_digits: int = 40
    series_terms: int = 60
    integration_panels: int = 64

    def __post_init__(self):
        if self.precision_digits < 30:
            raise DomainError("precision_digits must be >= 30")
        if self.series_terms < 40:
            raise DomainError("series_terms must be >= 40")
        if self.integration_panels < 1:
            raise DomainError("integration_panels must be >= 1")


def oracle_bessel_j(alpha: float, x: float, cfg: OracleConfig | None = None):
    """Normalized Bessel j_alpha(x) as a truncated power series in extended
    precision, with a certified remainder bound.

    Returns an mpmath.mpf.  Raises AccuracyError if the first omitted term
    (valid as an alternating-tail bound once the terms decrease) cannot be
    driven below 10**-precision relative to the partial sum.
    """
    cfg = cfg or OracleConfig()
    with mpmath.workdps(cfg.precision_digits + 10):
        a = mpmath.mpf(alpha)
        q = mpmath.mpf(x) ** 2 / 4
        term = mpmath.mpf(1)
        total = mpmath.mpf(1)
        n_terms = cfg.series_terms
        for m in range(n_terms):
            term = -term * q / ((m + 1) * (a + m + 1))
            total += term
        ratio = q / ((n_terms + 1) * (a + n_terms + 1))
        omitted = abs(term) * ratio
        if ratio >= 1 or omitted > mpmath.mpf(10) ** (-cfg.precision_digits) * abs(total):
            raise AccuracyError(
                f"series remainder bound not met for alpha={alpha}, x={x}: "
                f"increase series_terms"
            )
        return +total


def oracle_integral(f, a: float, b: float, cfg: OracleConfig | None = None) -> float:
    """Brute-force integral of a bounded f over [a, b]: composite midpoint
    sums on doubling panel counts with Richardson extrapolation.

    The error estimate is the observed change between the last two diagonal
    extrapolants; non-convergence raises AccuracyError.  Singular weights
    must be substituted away by the caller.
    """
    cfg = cfg or OracleConfig()
    if not b > a:
        raise DomainError(f"need b > a, got [{a}, {b}]")
    width = b - a
    table: list[list[float]] = []
    for level in range(14):
        npan = cfg.integration_panels << level
        h = width / npan
        total = 0.0
        comp = 0.0
        for i in range(npan):
            y = f(a + h * (i + 0.5)) * h - comp
            t = total + y
            comp = (t - total) - y
            total = t
        row = [total]
        if table:
            prev = table[-1]
            for k in range(len(prev)):
                factor = 4.0 ** (k + 1)
                row.append((factor * row[k] - prev[k]) / (factor - 1.0))
        table.append(row)
        if level >= 2:
            err = abs(row[-1] - table[-2][-1])
            if err <= 1e-13 * max(1.0, abs(row[-1])):
                return row[-1]
    raise AccuracyError(f"midpoint/Richardson ladder did not converge on [{a}, {b}]")
