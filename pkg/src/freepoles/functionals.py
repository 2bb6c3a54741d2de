"""Objective functionals on pole configurations, all accumulated in log-space."""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (
    CoincidentPoles,
    DisjointnessViolated,
    MissingInfinityDomain,
    MissingOriginDomain,
    NonPositiveInput,
)
from .geometry import INF, Configuration, RaySystem, domains_disjoint, is_inf
from .radii import inner_radius


@dataclass(frozen=True)
class FunctionalValue:
    log_value: float

    @property
    def value(self) -> float:
        # overflow to inf is acceptable; log_value stays exact
        with np.errstate(over="ignore"):
            return float(np.exp(self.log_value))

    def __float__(self):
        return self.value


def chi(t: float) -> float:
    """``(t + 1/t) / 2``."""
    if not t > 0:
        raise NonPositiveInput(f"chi needs t > 0, got {t!r}")
    return 0.5 * (t + 1.0 / t)


def log_chi_exp(s):
    """``log chi(exp(s)) = log cosh(s)``, stable for large ``|s|``."""
    s = np.abs(s)
    return s + np.log1p(np.exp(-2.0 * s)) - math.log(2.0)


def l_gamma(rays: RaySystem, gamma: float) -> FunctionalValue:
    """The normalizing functional of a ray system.

    ``prod chi(|a_k/a_{k+1}|^{1/(2 alpha_k)})^{1 - gamma alpha_k^2 / 2}
    * prod |a_k|^{1 + gamma (alpha_k + alpha_{k-1}) / 4}`` with
    ``a_{n+1} = a_1`` and ``alpha_0 = alpha_n``.
    """
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    logmod = np.log(rays.moduli)
    alpha = np.asarray(rays.alpha)
    alpha_prev = np.roll(alpha, 1)
    s = (logmod - np.roll(logmod, -1)) / (2.0 * alpha)
    chi_part = np.sum((1.0 - 0.5 * gamma * alpha ** 2) * log_chi_exp(s))
    mod_part = np.sum((1.0 + 0.25 * gamma * (alpha + alpha_prev)) * logmod)
    return FunctionalValue(float(chi_part + mod_part))


def _require_disjoint(cfg: Configuration):
    problems = cfg.violations()
    if problems:
        raise DisjointnessViolated("; ".join(problems))


def _log_pole_radii(cfg: Configuration) -> float:
    return math.fsum(math.log(inner_radius(d, a))
                     for d, a in zip(cfg.pole_domains, cfg.rays.points))


def j_gamma(cfg: Configuration, gamma: float) -> FunctionalValue:
    """``r(B_0, 0)^gamma * prod r(B_k, a_k)``."""
    if cfg.origin_domain is None:
        raise MissingOriginDomain("J_gamma needs a domain around the origin")
    if cfg.infinity_domain is not None:
        raise ValueError("J_gamma is defined without a domain at infinity")
    _require_disjoint(cfg)
    log0 = math.log(inner_radius(cfg.origin_domain, 0j))
    return FunctionalValue(gamma * log0 + _log_pole_radii(cfg))


def i_gamma(cfg: Configuration, gamma: float) -> FunctionalValue:
    """``[r(B_0, 0) r(B_inf, inf)]^gamma * prod r(B_k, a_k)``."""
    if cfg.origin_domain is None:
        raise MissingOriginDomain("I_gamma needs a domain around the origin")
    if cfg.infinity_domain is None:
        raise MissingInfinityDomain("I_gamma needs a domain around infinity")
    _require_disjoint(cfg)
    log0 = math.log(inner_radius(cfg.origin_domain, 0j))
    loginf = math.log(inner_radius(cfg.infinity_domain, INF))
    return FunctionalValue(gamma * (log0 + loginf) + _log_pole_radii(cfg))


def j3_invariant(alphas, poles, domains) -> FunctionalValue:
    """Moebius-invariant three-domain functional.

    ``r1^x1 r2^x2 r3^x3 / (|a1-a2|^{x1+x2-x3} |a1-a3|^{x1-x2+x3} |a2-a3|^{-x1+x2+x3})``
    """
    x1, x2, x3 = (float(x) for x in alphas)
    if min(x1, x2, x3) < 0:
        raise ValueError("exponents must be nonnegative")
    a1, a2, a3 = poles
    if any(is_inf(p) for p in poles):
        raise ValueError("poles must be finite")
    for u, v in combinations((a1, a2, a3), 2):
        if u == v:
            raise CoincidentPoles(f"{u!r} appears twice")
    for d, p in zip(domains, poles):
        if not d.contains(p):
            raise DisjointnessViolated(f"{d!r} does not contain {p!r}")
    for d, e in combinations(domains, 2):
        if not domains_disjoint(d, e):
            raise DisjointnessViolated("domains overlap")
    num = math.fsum(x * math.log(inner_radius(d, p))
                    for x, d, p in zip((x1, x2, x3), domains, poles))
    den = ((x1 + x2 - x3) * math.log(abs(a1 - a2))
           + (x1 - x2 + x3) * math.log(abs(a1 - a3))
           + (-x1 + x2 + x3) * math.log(abs(a2 - a3)))
    return FunctionalValue(num - den)
