"""Closed-form inner (conformal) radii of canonical domains.

At a finite point ``a`` the inner radius is ``exp(lim (g(z, a) + log|z - a|))``
for the Green function ``g``; at infinity we use the normalization
``g(z, inf) = log|z| + log r + o(1)``, which gives ``r({|z| > rho}, inf) = 1/rho``.
"""
from __future__ import annotations

import math

from .errors import (
    ImageNotCanonical,
    InfinityNotInDomain,
    MismatchBeyondTolerance,
    PoleOutsideDomain,
)
from .geometry import (
    CanonicalDomain,
    Disk,
    DiskExterior,
    HalfPlane,
    MobiusMap,
    is_inf,
    mobius_apply,
    mobius_derivative,
)

RADIUS_TOL = 1e-10


def inner_radius(d: CanonicalDomain, a) -> float:
    if not d.contains(a):
        if is_inf(a):
            raise InfinityNotInDomain(f"{d!r} does not contain infinity")
        raise PoleOutsideDomain(f"{a!r} is not inside {d!r}")
    if is_inf(a):
        return 1.0 / d.radius
    if isinstance(d, Disk):
        return (d.radius ** 2 - abs(a - d.center) ** 2) / d.radius
    if isinstance(d, DiskExterior):
        return (abs(a - d.center) ** 2 - d.radius ** 2) / d.radius
    if isinstance(d, HalfPlane):
        return 2.0 * d.signed_distance(a)
    raise TypeError(f"not a canonical domain: {d!r}")


def transform_inner_radius(d: CanonicalDomain, a: complex, m: MobiusMap) -> float:
    """Inner radius of ``m(d)`` at ``m(a)``, computed and cross-checked two ways.

    The closed form on the image domain must match ``|m'(a)| r(d, a)``
    within ``RADIUS_TOL`` (absolute plus relative).
    """
    if is_inf(a):
        raise ValueError("transform_inner_radius needs a finite point")
    image_point = mobius_apply(m, a)
    if is_inf(image_point):
        raise ValueError("image of the pole is infinite")
    try:
        image = m.image_domain(d)
    except ValueError as exc:
        raise ImageNotCanonical(str(exc)) from exc
    direct = inner_radius(image, image_point)
    pulled = abs(mobius_derivative(m, a)) * inner_radius(d, a)
    if abs(direct - pulled) > RADIUS_TOL * (1.0 + abs(pulled)):
        raise MismatchBeyondTolerance(
            f"image closed form {direct!r} vs transformation law {pulled!r}")
    return direct


def log_inner_radius(d: CanonicalDomain, a) -> float:
    return math.log(inner_radius(d, a))
