"""Extremal quadratic differentials ``Q(w) dw^2`` and their horizontal trajectories.

THEOREM1:  Q(w) = -((n^2 - g) w^n + g) / (w^2 (w^n - 1)^2)
THEOREM2:  Q(w) = -(w^{2n} + (2n^2 - 2) w^n + 1) / (w^2 (w^n - 1)^2)
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PoleEvaluation, SeedAtSingularity
from .extremal import PsiKind
from .geometry import INF

_POLE_TOL = 1e-14


@dataclass(frozen=True)
class QuadDiff:
    kind: PsiKind
    n: int
    gamma: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "kind", PsiKind.parse(self.kind))
        if int(self.n) != self.n or self.n < 2:
            raise ValueError("n must be an integer >= 2")
        if self.kind is PsiKind.THEOREM1 and not (0 < self.gamma <= 1 and self.gamma < self.n ** 2):
            raise ValueError("gamma must lie in (0, 1]")

    def numerator(self, w):
        n = self.n
        wn = w ** n
        if self.kind is PsiKind.THEOREM1:
            return (n * n - self.gamma) * wn + self.gamma
        return wn * wn + (2 * n * n - 2) * wn + 1

    def numerator_scale(self, w):
        """Sum of absolute values of the numerator's terms (for relative tests)."""
        n = self.n
        r = abs(w) ** n
        if self.kind is PsiKind.THEOREM1:
            return (n * n - self.gamma) * r + self.gamma
        return r * r + (2 * n * n - 2) * r + 1

    def denominator(self, w):
        return w * w * (w ** self.n - 1) ** 2

    def __call__(self, w):
        return eval_q(self, w)


@dataclass
class CriticalSet:
    """Zeros and poles with multiplicities; the point at infinity appears as ``INF``."""

    zeros: list = field(default_factory=list)   # (point, multiplicity)
    poles: list = field(default_factory=list)   # (point, order)

    def finite_zeros(self) -> np.ndarray:
        return np.array([z for z, _ in self.zeros if z is not INF], dtype=complex)

    def finite_poles(self) -> np.ndarray:
        return np.array([p for p, _ in self.poles if p is not INF], dtype=complex)

    def degree(self) -> int:
        """Zero count minus pole count on the sphere; always -4."""
        return sum(m for _, m in self.zeros) - sum(m for _, m in self.poles)


def eval_q(q: QuadDiff, w: complex) -> complex:
    w = complex(w)
    wn1 = w ** q.n - 1
    if abs(w) <= _POLE_TOL or abs(wn1) <= _POLE_TOL:
        raise PoleEvaluation(f"Q has a pole at {w!r}")
    return -q.numerator(w) / (w * w * wn1 * wn1)


def eval_q_many(q: QuadDiff, w) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    return -q.numerator(w) / q.denominator(w)


def critical_points(q: QuadDiff) -> CriticalSet:
    n = q.n
    args = (math.pi + 2 * math.pi * np.arange(n)) / n
    zeros = []
    if q.kind is PsiKind.THEOREM1:
        rho = (q.gamma / (n * n - q.gamma)) ** (1.0 / n)
        zeros += [(cmath.rect(rho, t), 1) for t in args]
        # at infinity Q dw^2 ~ zeta^{n-2} dzeta^2
        if n > 2:
            zeros.append((INF, n - 2))
        inf_pole = 0
    else:
        m = n * n - 1.0
        big = m + math.sqrt(m * m - 1.0)      # w^n = -big
        small = 1.0 / big                      # w^n = -small, product of branches is 1
        for modulus in (small, big):
            rho = modulus ** (1.0 / n)
            zeros += [(cmath.rect(rho, t), 1) for t in args]
        # at infinity Q dw^2 ~ -dzeta^2 / zeta^2
        inf_pole = 2
    poles = [(0j, 2)] + [(cmath.rect(1.0, 2 * math.pi * j / n), 2) for j in range(n)]
    if inf_pole:
        poles.append((INF, inf_pole))
    return CriticalSet(zeros=zeros, poles=poles)


def _direction(q: QuadDiff, w: complex, prev: complex | None) -> complex:
    """Unit tangent of the horizontal trajectory (``Q dw^2 > 0``) through ``w``.

    The sign is chosen to continue ``prev``.
    """
    d = 1.0 / cmath.sqrt(eval_q(q, w))
    d /= abs(d)
    if prev is not None and (d * prev.conjugate()).real < 0:
        d = -d
    return d


def sample_trajectories(q: QuadDiff, seeds, step: float, max_len: float,
                        bound_radius: float = 10.0, stop_factor: float = 10.0,
                        singular_tol: float = 1e-9) -> list[np.ndarray]:
    """Integrate horizontal trajectories from each seed with fixed-step RK4.

    Arc-length parametrized; each polyline stops after ``max_len``, within
    ``stop_factor * step`` of a finite critical point, or outside the disk
    ``|w| <= bound_radius``.
    """
    if not step > 0:
        raise ValueError("step must be positive")
    crit = critical_points(q)
    singular = np.concatenate([crit.finite_zeros(), crit.finite_poles()])
    stop_dist = stop_factor * step
    out = []
    for seed in seeds:
        w = complex(seed)
        if np.min(np.abs(singular - w)) <= singular_tol:
            raise SeedAtSingularity(f"seed {w!r} sits on a critical point")
        pts = [w]
        d = _direction(q, w, None)
        travelled = 0.0
        while travelled < max_len:
            try:
                k1 = _direction(q, w, d)
                k2 = _direction(q, w + 0.5 * step * k1, k1)
                k3 = _direction(q, w + 0.5 * step * k2, k2)
                k4 = _direction(q, w + step * k3, k3)
            except PoleEvaluation:
                break
            w = w + step * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0
            d = k4
            travelled += step
            pts.append(w)
            if abs(w) > bound_radius or np.min(np.abs(singular - w)) < stop_dist:
                break
        out.append(np.array(pts))
    return out
