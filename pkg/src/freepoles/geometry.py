"""Complex-plane primitives: ray systems, canonical domains, Moebius maps.

Points of the extended plane are plain Python ``complex`` values, with the
point at infinity represented by the singleton :data:`INF`.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence, Union

import numpy as np

from .errors import (
    DegenerateTriple,
    NonMonotoneAngles,
    PoleAt,
    ZeroModulus,
)

TWO_PI = 2.0 * math.pi
_TANGENCY_TOL = 1e-12


class _Infinity:
    """The point at infinity of the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
ExtendedPoint = Union[complex, _Infinity]


def is_inf(z) -> bool:
    return z is INF


# ---------------------------------------------------------------------------
# ray systems

@dataclass(frozen=True)
class RaySystem:
    """Poles ``a_1..a_n`` on rays of strictly increasing argument.

    ``theta`` holds the arguments measured from ``arg a_1`` (so
    ``theta[0] == 0``) and ``alpha[k] = (theta[k+1] - theta[k]) / pi`` with
    cyclic closure, hence ``sum(alpha) == 2``.  ``points`` are kept exactly
    as given; :meth:`canonical` returns the copy rotated to ``arg a_1 = 0``.
    """

    points: tuple
    theta: tuple
    alpha: tuple
    rotation: float = 0.0

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(np.asarray(self.points, dtype=complex))

    def alpha_prev(self, k: int) -> float:
        """``alpha_{k-1}`` with ``alpha_0 := alpha_n`` (0-based ``k``)."""
        return self.alpha[k - 1]

    def canonical(self) -> "RaySystem":
        rot = cmath.exp(-1j * self.rotation)
        return validate_ray_system([p * rot for p in self.points])

    def scaled(self, t: float) -> "RaySystem":
        return RaySystem(tuple(t * p for p in self.points), self.theta,
                         self.alpha, self.rotation)


def validate_ray_system(points: Sequence[complex]) -> RaySystem:
    """Build a :class:`RaySystem`, checking the n-ray conditions."""
    pts = tuple(complex(p) for p in points)
    if len(pts) < 2:
        raise ValueError("a ray system needs at least two points")
    for p in pts:
        if p == 0:
            raise ZeroModulus("pole at the origin")
        if not (math.isfinite(p.real) and math.isfinite(p.imag)):
            raise ValueError("poles must be finite")
    rotation = cmath.phase(pts[0])
    theta = []
    for p in pts:
        t = (cmath.phase(p) - rotation) % TWO_PI
        # rounding can push a value just below 2*pi for points on the first ray
        if TWO_PI - t < 1e-14:
            t = 0.0
        theta.append(t)
    theta[0] = 0.0
    for k in range(1, len(theta)):
        if not theta[k] > theta[k - 1]:
            raise NonMonotoneAngles(
                f"arguments not strictly increasing at index {k}")
    ext = theta + [TWO_PI]
    alpha = tuple((ext[k + 1] - ext[k]) / math.pi for k in range(len(pts)))
    if abs(sum(alpha) - 2.0) > 1e-12:
        raise NonMonotoneAngles("angular gaps do not close up")
    return RaySystem(pts, tuple(theta), alpha, rotation)


# ---------------------------------------------------------------------------
# canonical domains
#
# Every canonical domain is the negative set of a Hermitian form
#     h(z) = A|z|^2 + conj(B) z + B conj(z) + C
# which makes Moebius images a 2x2 congruence.

@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def contains(self, z) -> bool:
        return not is_inf(z) and abs(z - self.center) < self.radius

    def scaled(self, t: float) -> "Disk":
        return Disk(t * self.center, t * self.radius)

    def hermitian(self) -> np.ndarray:
        c = complex(self.center)
        return np.array([[1.0, -c], [-c.conjugate(), abs(c) ** 2 - self.radius ** 2]],
                        dtype=complex)


@dataclass(frozen=True)
class DiskExterior:
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def contains(self, z) -> bool:
        return is_inf(z) or abs(z - self.center) > self.radius

    def scaled(self, t: float) -> "DiskExterior":
        return DiskExterior(t * self.center, t * self.radius)

    def hermitian(self) -> np.ndarray:
        return -Disk(self.center, self.radius).hermitian()


@dataclass(frozen=True)
class HalfPlane:
    """``{z : Re(z * conj(normal)) > offset}``."""

    normal: complex
    offset: float

    def __post_init__(self):
        if abs(abs(self.normal) - 1.0) > 1e-12:
            raise ValueError("normal must have unit modulus")

    def signed_distance(self, z: complex) -> float:
        return (z * complex(self.normal).conjugate()).real - self.offset

    def contains(self, z) -> bool:
        return not is_inf(z) and self.signed_distance(z) > 0

    def scaled(self, t: float) -> "HalfPlane":
        return HalfPlane(self.normal, t * self.offset)

    def hermitian(self) -> np.ndarray:
        nu = complex(self.normal)
        b = -nu / 2
        return np.array([[0.0, b], [b.conjugate(), self.offset]], dtype=complex)


CanonicalDomain = Union[Disk, DiskExterior, HalfPlane]


def domain_from_hermitian(h: np.ndarray, flat_tol: float = 1e-12) -> CanonicalDomain:
    """Recover the canonical domain ``{h(z) < 0}`` from its Hermitian matrix.

    Raises ``ValueError`` when the form does not describe a nonempty open
    disk, disk exterior or half-plane.
    """
    a = h[0, 0].real
    b = h[0, 1]
    c = h[1, 1].real
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0:
        raise ValueError("zero form")
    if abs(a) <= flat_tol * scale:
        # linear form 2 Re(conj(b) z) + c < 0
        nb = abs(b)
        if nb == 0:
            raise ValueError("degenerate linear form")
        normal = -b / nb
        return HalfPlane(complex(normal), float(c / (2 * nb)))
    center = complex(-b / a)
    r2 = abs(center) ** 2 - c / a
    if not r2 > 0:
        raise ValueError("form has empty interior")
    radius = math.sqrt(r2)
    if a > 0:
        return Disk(center, radius)
    return DiskExterior(center, radius)


def domains_disjoint(d1: CanonicalDomain, d2: CanonicalDomain) -> bool:
    """True iff the open domains do not intersect; tangency counts as disjoint."""
    if isinstance(d2, Disk) and not isinstance(d1, Disk):
        d1, d2 = d2, d1
    if isinstance(d1, Disk):
        if isinstance(d2, Disk):
            gap = abs(d1.center - d2.center) - (d1.radius + d2.radius)
            return gap >= -_TANGENCY_TOL * max(1.0, d1.radius + d2.radius)
        if isinstance(d2, DiskExterior):
            gap = d2.radius - (abs(d1.center - d2.center) + d1.radius)
            return gap >= -_TANGENCY_TOL * max(1.0, d2.radius)
        gap = -(d2.signed_distance(d1.center) + d1.radius)
        return gap >= -_TANGENCY_TOL * max(1.0, d1.radius)
    # neither is a disk: exteriors and half-planes
    if isinstance(d1, DiskExterior) or isinstance(d2, DiskExterior):
        return False
    if abs(d1.normal + d2.normal) > 1e-12:
        return False
    # d2 = {Re(z conj(n1)) < -offset2}
    return -d2.offset <= d1.offset + _TANGENCY_TOL * max(1.0, abs(d1.offset))


# ---------------------------------------------------------------------------
# configurations

@dataclass(frozen=True)
class Configuration:
    rays: RaySystem
    pole_domains: tuple
    origin_domain: CanonicalDomain | None = None
    infinity_domain: DiskExterior | None = None

    def domains(self) -> list:
        out = list(self.pole_domains)
        if self.origin_domain is not None:
            out.append(self.origin_domain)
        if self.infinity_domain is not None:
            out.append(self.infinity_domain)
        return out

    def poles(self) -> list:
        out = list(self.rays.points)
        if self.origin_domain is not None:
            out.append(0j)
        if self.infinity_domain is not None:
            out.append(INF)
        return out

    def violations(self) -> list[str]:
        """Human-readable list of broken invariants (empty when valid)."""
        problems = []
        if len(self.pole_domains) != self.rays.n:
            problems.append("one domain per pole required")
        if self.infinity_domain is not None and not isinstance(self.infinity_domain, DiskExterior):
            problems.append("infinity domain must be a disk exterior")
        doms, poles = self.domains(), self.poles()
        for d, p in zip(doms, poles):
            if not d.contains(p):
                problems.append(f"{d!r} does not contain {p!r}")
        for (i, d1), (j, d2) in combinations(enumerate(doms), 2):
            if not domains_disjoint(d1, d2):
                problems.append(f"domains {i} and {j} overlap")
        return problems

    def is_valid(self) -> bool:
        return not self.violations()

    def scaled(self, t: float) -> "Configuration":
        return Configuration(
            self.rays.scaled(t),
            tuple(d.scaled(t) for d in self.pole_domains),
            None if self.origin_domain is None else self.origin_domain.scaled(t),
            None if self.infinity_domain is None else self.infinity_domain.scaled(t),
        )


# ---------------------------------------------------------------------------
# Moebius maps

@dataclass(frozen=True)
class MobiusMap:
    """``z -> (a z + b) / (c z + d)``, stored normalized to ``ad - bc = 1``."""

    a: complex
    b: complex
    c: complex
    d: complex
    _normalized: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if self._normalized:
            return
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        det = a * d - b * c
        scale = max(abs(a), abs(b), abs(c), abs(d)) ** 2
        if scale == 0 or abs(det) <= 1e-14 * scale:
            raise DegenerateTriple("singular Moebius coefficients")
        s = cmath.sqrt(det)
        object.__setattr__(self, "a", a / s)
        object.__setattr__(self, "b", b / s)
        object.__setattr__(self, "c", c / s)
        object.__setattr__(self, "d", d / s)
        object.__setattr__(self, "_normalized", True)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_matrix(cls, m) -> "MobiusMap":
        return cls(m[0][0], m[0][1], m[1][0], m[1][1])

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __call__(self, z):
        return mobius_apply(self, z)

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        """Composition ``self o other``."""
        return MobiusMap.from_matrix(self.matrix() @ other.matrix())

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def derivative(self, z: complex) -> complex:
        return mobius_derivative(self, z)

    def image_domain(self, dom: CanonicalDomain) -> CanonicalDomain:
        """Image of a canonical domain (raises ``ValueError`` if degenerate)."""
        inv = self.inverse().matrix()
        h = inv.conj().T @ dom.hermitian() @ inv
        h = 0.5 * (h + h.conj().T)
        a = abs(h[0, 0].real)
        scale = np.abs(h).max()
        if 1e-12 * scale < a <= 1e-9 * scale:
            # circle through almost-infinity: neither a usable disk nor a line;
            # below 1e-12 it is a line up to rounding
            raise ValueError("image is numerically between a disk and a half-plane")
        return domain_from_hermitian(h)


def mobius_apply(m: MobiusMap, z: ExtendedPoint) -> ExtendedPoint:
    if is_inf(z):
        if m.c == 0:
            return INF
        return m.a / m.c
    z = complex(z)
    den = m.c * z + m.d
    num = m.a * z + m.b
    if den == 0 or abs(den) <= 1e-15 * (abs(m.c * z) + abs(m.d)):
        return INF
    return num / den


def mobius_derivative(m: MobiusMap, z: complex) -> complex:
    if is_inf(z):
        raise PoleAt("derivative at infinity is not defined")
    den = m.c * complex(z) + m.d
    if den == 0:
        raise PoleAt(f"map has a pole at {z!r}")
    return (m.a * m.d - m.b * m.c) / den ** 2


def _to_zero_one_inf(z1, z2, z3) -> np.ndarray:
    """Matrix of the map sending z1, z2, z3 to 0, 1, inf."""
    if is_inf(z1):
        return np.array([[0, z2 - z3], [1, -z3]], dtype=complex)
    if is_inf(z2):
        return np.array([[1, -z1], [1, -z3]], dtype=complex)
    if is_inf(z3):
        return np.array([[1, -z1], [0, z2 - z1]], dtype=complex)
    return np.array([[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]],
                    dtype=complex)


def _check_triple(zs):
    n_inf = sum(is_inf(z) for z in zs)
    if n_inf > 1:
        raise DegenerateTriple("infinity appears more than once")
    finite = [complex(z) for z in zs if not is_inf(z)]
    scale = max([1.0] + [abs(z) for z in finite])
    for u, v in combinations(finite, 2):
        if abs(u - v) <= 1e-14 * scale:
            raise DegenerateTriple(f"coincident points {u!r}, {v!r}")


def mobius_from_three_points(z1, z2, z3, w1, w2, w3) -> MobiusMap:
    """The unique Moebius map with ``z_j -> w_j``."""
    _check_triple((z1, z2, z3))
    _check_triple((w1, w2, w3))
    s = _to_zero_one_inf(z1, z2, z3)
    t = _to_zero_one_inf(w1, w2, w3)
    return MobiusMap.from_matrix(np.linalg.inv(t) @ s)


def chordal_distance(z, w) -> float:
    """Chordal metric on the sphere; handles ``INF``."""
    if is_inf(z) and is_inf(w):
        return 0.0
    if is_inf(z):
        return 2.0 / math.sqrt(1 + abs(w) ** 2)
    if is_inf(w):
        return 2.0 / math.sqrt(1 + abs(z) ** 2)
    return 2.0 * abs(z - w) / math.sqrt((1 + abs(z) ** 2) * (1 + abs(w) ** 2))
