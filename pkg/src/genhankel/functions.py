"""Smooth compactly supported test functions with analytic derivatives.

Used by the verification suites and tests as closed-form evaluators, so
interpolation error never enters the identities being checked.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SmoothBump", "BumpSum", "mirrored_bump", "truncated_gaussian"]


@dataclass(frozen=True)
class SmoothBump:
    """C-infinity bump amplitude * exp(1 - 1/(1 - s^2)) with
    s = (x - center)/halfwidth, supported on [center - halfwidth,
    center + halfwidth]."""

    center: float = 0.0
    halfwidth: float = 1.0
    amplitude: float = 1.0

    @property
    def support(self) -> tuple[float, float]:
        return (self.center - self.halfwidth, self.center + self.halfwidth)

    def _s(self, x):
        return (np.asarray(x, dtype=float) - self.center) / self.halfwidth

    def __call__(self, x):
        s = self._s(x)
        scalar = s.ndim == 0
        s = np.atleast_1d(s)
        out = np.zeros_like(s)
        inside = np.abs(s) < 1.0
        si = s[inside]
        out[inside] = self.amplitude * np.exp(1.0 - 1.0 / (1.0 - si * si))
        return float(out[0]) if scalar else out

    def deriv(self, x):
        s = self._s(x)
        scalar = s.ndim == 0
        s = np.atleast_1d(s)
        out = np.zeros_like(s)
        inside = np.abs(s) < 1.0
        si = s[inside]
        g = -2.0 * si / (1.0 - si * si) ** 2
        out[inside] = (
            self.amplitude * np.exp(1.0 - 1.0 / (1.0 - si * si)) * g / self.halfwidth
        )
        return float(out[0]) if scalar else out

    def deriv2(self, x):
        s = self._s(x)
        scalar = s.ndim == 0
        s = np.atleast_1d(s)
        out = np.zeros_like(s)
        inside = np.abs(s) < 1.0
        si = s[inside]
        one = 1.0 - si * si
        g = -2.0 * si / one**2
        gp = -2.0 / one**2 - 8.0 * si * si / one**3
        out[inside] = (
            self.amplitude
            * np.exp(1.0 - 1.0 / one)
            * (g * g + gp)
            / self.halfwidth**2
        )
        return float(out[0]) if scalar else out


@dataclass(frozen=True)
class BumpSum:
    """Linear combination of bumps; support is the convex hull."""

    terms: tuple[tuple[float, SmoothBump], ...]

    @property
    def support(self) -> tuple[float, float]:
        los, his = zip(*(b.support for _, b in self.terms))
        return (min(los), max(his))

    def __call__(self, x):
        return sum(c * b(x) for c, b in self.terms)

    def deriv(self, x):
        return sum(c * b.deriv(x) for c, b in self.terms)

    def deriv2(self, x):
        return sum(c * b.deriv2(x) for c, b in self.terms)


def mirrored_bump(
    center: float, halfwidth: float, amplitude: float = 1.0, parity: int = +1
) -> BumpSum:
    """A bump plus its reflection: even (parity +1) or odd (parity -1)
    about the origin.  With center > halfwidth the result vanishes in a
    neighborhood of 0."""
    b = SmoothBump(center, halfwidth, amplitude)
    m = SmoothBump(-center, halfwidth, amplitude)
    return BumpSum(((1.0, b), (float(parity), m)))


@dataclass(frozen=True)
class _TruncatedGaussian:
    scale: float
    radius: float

    @property
    def support(self) -> tuple[float, float]:
        return (-self.radius, self.radius)

    def __call__(self, x):
        arr = np.asarray(x, dtype=float)
        scalar = arr.ndim == 0
        xs = np.atleast_1d(arr)
        out = np.exp(-((xs / self.scale) ** 2))
        out[np.abs(xs) > self.radius] = 0.0
        return float(out[0]) if scalar else out

    def deriv(self, x):
        arr = np.asarray(x, dtype=float)
        return -2.0 * arr / self.scale**2 * self(arr)

    def deriv2(self, x):
        arr = np.asarray(x, dtype=float)
        return (4.0 * arr**2 / self.scale**4 - 2.0 / self.scale**2) * self(arr)


def truncated_gaussian(scale: float = 1.0, radius: float = 6.0) -> _TruncatedGaussian:
    """exp(-(x/scale)^2) cut off where the tail is below machine epsilon;
    effectively smooth and compactly supported."""
    return _TruncatedGaussian(scale, radius)
