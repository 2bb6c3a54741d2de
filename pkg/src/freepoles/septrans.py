"""Power maps taking a sector between consecutive rays onto the right half-plane."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import OffRay, OutsideSector, ZeroInput
from .geometry import TWO_PI, RaySystem

_ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class SectorMap:
    """``pi(w) = -i (exp(-i theta) w)^{1/alpha}`` on ``theta <= arg w <= theta + pi alpha``."""

    k: int
    theta: float
    alpha: float

    def __post_init__(self):
        if not 0 < self.alpha <= 2:
            raise ValueError(f"opening alpha must lie in (0, 2], got {self.alpha!r}")

    @property
    def opening(self) -> float:
        return math.pi * self.alpha

    def relative_angle(self, w: complex) -> float:
        """Argument of ``exp(-i theta) w`` in ``[0, 2 pi)``."""
        phi = (cmath.phase(w) - self.theta) % TWO_PI
        if TWO_PI - phi < _ANGLE_TOL:
            phi = 0.0
        return phi

    def __call__(self, w):
        return pi_apply(self, w)


def sector_maps(rays: RaySystem) -> list[SectorMap]:
    """One map per sector ``E_k`` of a ray system (angles relative to ``arg a_1``)."""
    return [SectorMap(k, rays.rotation + rays.theta[k], rays.alpha[k])
            for k in range(rays.n)]


def pi_apply(s: SectorMap, w: complex) -> complex:
    w = complex(w)
    if w == 0:
        raise ZeroInput("the power map is not defined at the origin")
    phi = s.relative_angle(w)
    if phi > s.opening + _ANGLE_TOL:
        raise OutsideSector(f"{w!r} lies outside the sector of map {s.k}")
    phi = min(phi, s.opening)
    # -i * exp(i phi / alpha) = exp(i (phi / alpha - pi/2))
    return cmath.rect(abs(w) ** (1.0 / s.alpha), phi / s.alpha - 0.5 * math.pi)


def pi_apply_many(s: SectorMap, w) -> np.ndarray:
    """Vectorized :func:`pi_apply` for points already known to lie in the sector."""
    w = np.asarray(w, dtype=complex)
    phi = np.mod(np.angle(w) - s.theta, TWO_PI)
    phi = np.where(TWO_PI - phi < _ANGLE_TOL, 0.0, phi)
    if np.any(phi > s.opening + _ANGLE_TOL) or np.any(w == 0):
        raise OutsideSector("some points lie outside the sector")
    phi = np.minimum(phi, s.opening)
    return np.abs(w) ** (1.0 / s.alpha) * np.exp(1j * (phi / s.alpha - 0.5 * math.pi))


def _edges_of(s: SectorMap, a: complex, tol: float = 1e-9) -> set:
    """Edges through ``a``: 0 is ``arg = theta``, 1 is ``arg = theta + pi alpha``.

    A full-turn sector has both edges on the same ray.
    """
    if a == 0:
        raise ZeroInput("edge point must be nonzero")
    phi = s.relative_angle(a)
    edges = set()
    if min(phi, TWO_PI - phi) <= tol:
        edges.add(0)
    if min(abs(phi - s.opening), abs(phi + TWO_PI - s.opening)) <= tol:
        edges.add(1)
    if not edges:
        raise OffRay(f"{a!r} is not on an edge of sector {s.k}")
    return edges


def omega_points(s: SectorMap, a_k: complex, a_next: complex):
    """Images of the two marked poles; they land on opposite imaginary semi-axes."""
    if 0 not in _edges_of(s, a_k):
        raise OffRay("a_k must lie on the first edge of the sector")
    if 1 not in _edges_of(s, a_next):
        raise OffRay("a_next must lie on the second edge of the sector")
    p = 1.0 / s.alpha
    w1 = pi_apply(s, a_k)
    if s.relative_angle(a_next) < 0.5 * s.opening:
        # second edge coincides with the first: take the limit from inside
        w2 = cmath.rect(abs(a_next) ** p, s.opening * p - 0.5 * math.pi)
    else:
        w2 = pi_apply(s, a_next)
    m1, m2 = abs(a_k) ** p, abs(a_next) ** p
    tol = 1e-10
    if (abs(abs(w1) - m1) > tol * max(1.0, m1)
            or abs(abs(w2) - m2) > tol * max(1.0, m2)
            or abs(abs(w1 - w2) - (m1 + m2)) > tol * max(1.0, m1 + m2)):
        raise ArithmeticError("marked-point moduli inconsistent with the power law")
    return w1, w2


def distortion_factor(s: SectorMap, a: complex) -> float:
    """``|pi'(a)| = (1/alpha) |a|^{1/alpha - 1}`` at an edge point ``a``."""
    _edges_of(s, a)
    return (1.0 / s.alpha) * abs(a) ** (1.0 / s.alpha - 1.0)


def difference_quotient(s: SectorMap, a: complex, h: float) -> float:
    """``|pi(w) - pi(a)| / |w - a|`` with ``w`` a radial step ``h`` along a's edge."""
    _edges_of(s, a)
    w = a + h * a / abs(a)
    return abs(pi_apply(s, w) - pi_apply(s, a)) / abs(w - a)


def origin_distortion_check(s: SectorMap, samples: int,
                            exponents=(2, 3, 4, 5, 6)) -> float:
    """Max of ``|log|pi(w)| - log|w| / alpha|`` over interior ``w`` near 0.

    ``samples`` interior directions are used for each modulus ``10^-e``.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    frac = (np.arange(samples) + 0.5) / samples
    phis = s.theta + s.opening * frac
    err = 0.0
    for e in exponents:
        r = 10.0 ** (-e)
        w = r * np.exp(1j * phis)
        z = pi_apply_many(s, w)
        err = max(err, float(np.max(np.abs(np.log(np.abs(z)) - math.log(r) / s.alpha))))
    return err
