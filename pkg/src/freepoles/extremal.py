"""Sharp three-domain bounds Psi, their log-derivatives, and the n-fold product problem.

Two variants are provided, keyed by :class:`PsiKind`:

* ``THEOREM1``: ``Psi(b) = 2^{b^2+6} b^{b^2+2} (2-b)^{-(2-b)^2/2} (2+b)^{-(2+b)^2/2}``
  on ``[0, 2]``;
* ``THEOREM2``: ``Psi(b) = 8 b^{2b^2+2} |1-b|^{-(1-b)^2} (1+b)^{-(1+b)^2}``
  on ``(0, sqrt 2]``.

Everything is evaluated through ``log Psi``; ``F = (log Psi)'`` is available in
closed form for both variants.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq
from scipy.special import xlogy

from .errors import BracketFailure, DomainError, NonConvergence
from .functionals import FunctionalValue

LN2 = math.log(2.0)
SQRT2 = math.sqrt(2.0)
INTERIOR_MARGIN = 1e-8


class PsiKind(enum.Enum):
    THEOREM1 = 1
    THEOREM2 = 2

    @classmethod
    def parse(cls, value) -> "PsiKind":
        if isinstance(value, cls):
            return value
        return cls(int(value))

    @property
    def upper(self) -> float:
        return 2.0 if self is PsiKind.THEOREM1 else SQRT2

    @property
    def default_budget(self) -> float:
        return 2.0 if self is PsiKind.THEOREM1 else SQRT2

    def log_psi(self, beta):
        return log_psi1(beta) if self is PsiKind.THEOREM1 else log_psi2(beta)

    def psi(self, beta):
        return psi1(beta) if self is PsiKind.THEOREM1 else psi2(beta)

    def f(self, beta):
        return f1(beta) if self is PsiKind.THEOREM1 else f2(beta)

    @property
    def raw_log_psi(self):
        """Unchecked vectorized ``log Psi`` for inner loops."""
        return _log_psi1 if self is PsiKind.THEOREM1 else _log_psi2

    @property
    def raw_f(self):
        return _f1 if self is PsiKind.THEOREM1 else _f2

    def f_prime(self, beta):
        return f1_prime(beta) if self is PsiKind.THEOREM1 else f2_prime(beta)


def _as_array(beta, lo, hi, lo_open=False, hi_open=False, name="beta"):
    b = np.asarray(beta, dtype=float)
    bad = (b < lo) | (b > hi) | ~np.isfinite(b)
    if lo_open:
        bad |= b == lo
    if hi_open:
        bad |= b == hi
    if np.any(bad):
        raise DomainError(f"{name} outside its domain [{lo}, {hi}]: {beta!r}")
    return b


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


# ---------------------------------------------------------------------------
# Theorem 1 variant

def _log_psi1(b):
    with np.errstate(divide="ignore"):
        return ((b * b + 6.0) * LN2 + xlogy(b * b + 2.0, b)
                - 0.5 * xlogy((2.0 - b) ** 2, 2.0 - b)
                - 0.5 * (2.0 + b) ** 2 * np.log(2.0 + b))


def log_psi1(beta):
    """``log Psi_1``; ``-inf`` at ``beta = 0``."""
    return _out(_log_psi1(_as_array(beta, 0.0, 2.0)))


def psi1(beta):
    return _out(np.exp(_log_psi1(_as_array(beta, 0.0, 2.0))))


def f1(beta):
    """``(log Psi_1)' = 2b log 2b + 2/b + (2-b) log(2-b) - (2+b) log(2+b)``."""
    return _out(_f1(_as_array(beta, 0.0, 2.0, lo_open=True, hi_open=True)))


def _f1(b):
    return (2.0 * b * np.log(2.0 * b) + 2.0 / b
            + xlogy(2.0 - b, 2.0 - b) - (2.0 + b) * np.log(2.0 + b))


def f1_prime(beta):
    b = _as_array(beta, 0.0, 2.0, lo_open=True, hi_open=True)
    return _out(2.0 * np.log(2.0 * b) - 2.0 / b ** 2 - np.log(4.0 - b * b))


def frak_f(beta):
    """``F_1(b) - F_1(2 - b)`` on ``(0, 1]``."""
    b = _as_array(beta, 0.0, 1.0, lo_open=True)
    return _out(np.asarray(f1(b)) - np.asarray(f1(2.0 - b)))


# ---------------------------------------------------------------------------
# Theorem 2 variant

def _log_psi2(b):
    with np.errstate(divide="ignore"):
        return (3.0 * LN2 + xlogy(2.0 * b * b + 2.0, b)
                - xlogy((1.0 - b) ** 2, np.abs(1.0 - b))
                - (1.0 + b) ** 2 * np.log1p(b))


def log_psi2(beta):
    return _out(_log_psi2(_as_array(beta, 0.0, SQRT2, lo_open=True)))


def psi2(beta):
    """``Psi_2``; the factor ``|1-b|^{-(1-b)^2}`` is 1 at ``b = 1``."""
    return _out(np.exp(_log_psi2(_as_array(beta, 0.0, SQRT2, lo_open=True))))


def f2(beta):
    """``(log Psi_2)' = 4b log b + 2/b + 2(1-b) log|1-b| - 2(1+b) log(1+b)``.

    Continuous at ``b = 1`` (value ``2 - 4 log 2``); only ``F_2'`` blows up there.
    """
    return _out(_f2(_as_array(beta, 0.0, SQRT2, lo_open=True, hi_open=True)))


def _f2(b):
    return (4.0 * b * np.log(b) + 2.0 / b
            + 2.0 * xlogy(1.0 - b, np.abs(1.0 - b))
            - 2.0 * (1.0 + b) * np.log1p(b))


def f2_prime(beta):
    b = _as_array(beta, 0.0, SQRT2, lo_open=True, hi_open=True)
    if np.any(b == 1.0):
        raise DomainError("F_2' is singular at beta = 1")
    return _out(4.0 * np.log(b) - 2.0 / b ** 2
                - 2.0 * np.log(np.abs(1.0 - b)) - 2.0 * np.log1p(b))


# ---------------------------------------------------------------------------
# beta_0

def find_beta0(kind, grid_step: float = 1e-3, xtol: float = 1e-13) -> float:
    """Unique minimizer of ``F`` on its open domain.

    Scans ``F'`` on a grid for its single sign change, then refines the
    bracket with Brent's method to width below ``1e-10``.
    """
    kind = PsiKind.parse(kind)
    grid = np.arange(grid_step, kind.upper, grid_step)
    if kind is PsiKind.THEOREM2:
        grid = grid[np.abs(grid - 1.0) > 0.5 * grid_step]
    d = np.asarray(kind.f_prime(grid))
    changes = np.flatnonzero((d[:-1] < 0) & (d[1:] >= 0))
    if len(changes) != 1:
        raise BracketFailure(f"expected one sign change of F', found {len(changes)}")
    i = changes[0]
    lo, hi = grid[i], grid[i + 1]
    if kind is PsiKind.THEOREM2 and lo < 1.0 < hi:
        raise BracketFailure("sign change of F_2' straddles the singular point")
    return float(brentq(kind.f_prime, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps))


# ---------------------------------------------------------------------------
# closed-form bounds

def log_bound_thm1(n: int, gamma: float) -> float:
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    if not 0 < gamma <= 1:
        raise DomainError(f"gamma must lie in (0, 1], got {gamma!r}")
    n = int(n)
    sg = math.sqrt(gamma)
    e = n + gamma / n
    return (e * math.log(4.0) + (gamma / n) * math.log(gamma) + n * math.log(n)
            - e * math.log(n * n - gamma)
            + 2.0 * sg * (math.log1p(-sg / n) - math.log1p(sg / n)))


def bound_thm1(n: int, gamma: float) -> FunctionalValue:
    """``4^{n+g/n} g^{g/n} n^n (n^2-g)^{-(n+g/n)} ((n-sqrt g)/(n+sqrt g))^{2 sqrt g}``."""
    return FunctionalValue(log_bound_thm1(n, gamma))


def log_bound_thm2(n: int) -> float:
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    return ((2 * n + 1.0 / n) * LN2 - (1.0 / n + n / 2.0) * math.log(n * n - 2.0)
            + SQRT2 * (math.log1p(-SQRT2 / n) - math.log1p(SQRT2 / n)))


def bound_thm2(n: int) -> FunctionalValue:
    """``2^{2n+1/n} (n^2-2)^{-(1/n+n/2)} ((n-sqrt 2)/(n+sqrt 2))^{sqrt 2}``."""
    return FunctionalValue(log_bound_thm2(n))


def symmetric_beta(kind, n: int, gamma: float = 1.0) -> float:
    kind = PsiKind.parse(kind)
    if kind is PsiKind.THEOREM1:
        return 2.0 * math.sqrt(gamma) / n
    return SQRT2 / n


def log_factorized_bound(kind, n: int, gamma: float = 1.0) -> float:
    """Log of the bound rebuilt from ``Psi`` at the symmetric point.

    Theorem 1: ``gamma^{-n/2} Psi_1(2 sqrt(g)/n)^{n/2}``, equivalently
    ``(2/n)^n (Psi_1(b)/b^2)^{n/2}``.  Theorem 2: ``Psi_2(sqrt(2)/n)^{n/2}``.
    """
    kind = PsiKind.parse(kind)
    beta = symmetric_beta(kind, n, gamma)
    lp = kind.log_psi(beta)
    if kind is PsiKind.THEOREM1:
        return -0.5 * n * math.log(gamma) + 0.5 * n * lp
    return 0.5 * n * lp


def log_naive_factorization(kind, n: int, gamma: float = 1.0) -> float:
    """``log[(2/n)^n Psi(b)^{n/2}]`` with ``b`` the symmetric point.

    This is the product ``prod alpha_k * prod Psi(b)^{1/2}`` read off literally
    with ``alpha_k = 2/n``; it agrees with the bound only for ``n = 2``
    (and, for Theorem 1, ``gamma = 1``).
    """
    kind = PsiKind.parse(kind)
    beta = symmetric_beta(kind, n, gamma)
    return n * math.log(2.0 / n) + 0.5 * n * kind.log_psi(beta)


def check_symmetric_identity(kind, n: int, gamma: float = 1.0) -> float:
    """Relative gap between the closed-form bound and its Psi factorization."""
    kind = PsiKind.parse(kind)
    if kind is PsiKind.THEOREM1:
        lb = log_bound_thm1(n, gamma)
    else:
        lb = log_bound_thm2(n)
    return abs(math.expm1(log_factorized_bound(kind, n, gamma) - lb))


# ---------------------------------------------------------------------------
# product maximization on the simplex

@dataclass
class ExtremalSolution:
    betas: np.ndarray
    objective_log: float
    lagrange_residual: float
    certified_symmetric: bool
    symmetric_objective_log: float = math.nan
    best_start_excess: float = math.nan
    n_starts: int = 0
    converged: bool = True
    grid_max_log: float | None = None
    grid_argmax: np.ndarray | None = field(default=None, repr=False)


def project_to_simplex(x, budget, lo, hi) -> np.ndarray:
    """Clip to ``[lo, hi]`` and renormalize to sum ``budget``."""
    x = np.clip(np.asarray(x, dtype=float), lo, hi)
    for _ in range(50):
        x = np.clip(x * (budget / x.sum()), lo, hi)
        if abs(x.sum() - budget) <= 1e-14 * budget:
            break
    # absorb leftover rounding in the largest free coordinate
    i = int(np.argmax(np.minimum(x - lo, hi - x)))
    x[i] += budget - x.sum()
    return x


def _pair_update(lp, fp, s, lo, hi, upper, points=33, rounds=6, bisections=60):
    """Row-wise maximize ``lp(u) + lp(s - u)`` over ``u in [lo, hi]``.

    A zooming grid locates the maximizer; bisection on
    ``F(u) - F(s - u)`` then pins the stationary point to rounding level.
    """
    t = np.linspace(0.0, 1.0, points)
    a, b = lo.copy(), hi.copy()
    best_u = 0.5 * (a + b)
    best_v = np.full_like(a, -np.inf)
    rows = np.arange(len(a))
    with np.errstate(divide="ignore", invalid="ignore"):
        for _ in range(rounds):
            u = a[:, None] + (b - a)[:, None] * t[None, :]
            v = lp(u) + lp(np.minimum(s[:, None] - u, upper))
            i = np.argmax(v, axis=1)
            cand_u, cand_v = u[rows, i], v[rows, i]
            better = cand_v >= best_v
            best_u = np.where(better, cand_u, best_u)
            best_v = np.where(better, cand_v, best_v)
            h = (b - a) / (points - 1)
            a = np.maximum(lo, best_u - 2 * h)
            b = np.minimum(hi, best_u + 2 * h)
        ga = fp(a) - fp(s - a)
        gb = fp(b) - fp(s - b)
        ok = (ga > 0) & (gb < 0)
        for _ in range(bisections):
            m = 0.5 * (a + b)
            gm = fp(m) - fp(s - m)
            a = np.where(ok & (gm > 0), m, a)
            b = np.where(ok & (gm <= 0), m, b)
        m = 0.5 * (a + b)
        vm = lp(m) + lp(np.minimum(s - m, upper))
    use = ok & (vm >= best_v - 1e-15 * np.abs(best_v))
    return np.where(use, m, best_u), np.where(use, vm, best_v)


def _coordinate_ascent(kind, x, upper, max_sweeps):
    """Pairwise ascent applied to every row of ``x`` (one row per start)."""
    lp, fp = kind.raw_log_psi, kind.raw_f
    m, n = x.shape
    obj = lp(x).sum(axis=1)
    converged = np.zeros(m, dtype=bool)
    for _ in range(max_sweeps):
        start = obj.copy()
        for i in range(n - 1):
            for j in range(i + 1, n):
                s = x[:, i] + x[:, j]
                lo = np.maximum(INTERIOR_MARGIN, s - upper)
                hi = np.minimum(upper, s - INTERIOR_MARGIN)
                live = hi > lo
                if not np.any(live):
                    continue
                old = lp(x[:, i]) + lp(x[:, j])
                u, v = _pair_update(lp, fp, s, np.where(live, lo, s / 2),
                                    np.where(live, hi, s / 2), upper)
                take = live & (v > old)
                x[:, i] = np.where(take, u, x[:, i])
                x[:, j] = np.where(take, np.minimum(s - u, upper), x[:, j])
        obj = lp(x).sum(axis=1)
        converged = obj - start <= 1e-15 * np.maximum(1.0, np.abs(obj))
        if np.all(converged):
            break
    return x, obj, converged


def _grid_certificate(log_psi, n, budget, upper, step):
    k = np.arange(1, int(math.floor(budget / step)) + 1) * step
    k = k[(k < upper) & (k < budget)]
    lk = log_psi(k)
    if n == 2:
        rest = budget - k
        ok = (rest > 0) & (rest <= upper)
        vals = lk[ok] + log_psi(rest[ok])
        i = int(np.argmax(vals))
        return float(vals[i]), np.array([k[ok][i], rest[ok][i]])
    best_v, best_x = -np.inf, None
    for i, b1 in enumerate(k):
        b2 = k
        b3 = budget - b1 - b2
        ok = (b3 > 0) & (b3 <= upper)
        if not np.any(ok):
            continue
        vals = lk[i] + lk[ok] + log_psi(b3[ok])
        j = int(np.argmax(vals))
        if vals[j] > best_v:
            best_v = float(vals[j])
            best_x = np.array([b1, b2[ok][j], b3[ok][j]])
    return best_v, best_x


def solve_product_max(kind, n: int, budget: float | None = None, *,
                      n_starts: int = 64, seed: int = 0, max_sweeps: int = 200,
                      grid_step: float = 1e-3, grid: bool | None = None) -> ExtremalSolution:
    """Maximize ``sum_k log Psi(beta_k)`` subject to ``sum beta_k = budget``.

    Multistart pairwise coordinate ascent: each move re-optimizes one pair
    ``(beta_i, beta_j)`` with their sum held fixed, so iterates never leave
    the simplex.  Starts are Dirichlet draws from per-start seeds spawned off
    ``seed``; the symmetric point is always included as an extra start.  For
    ``n <= 3`` a dense grid over the simplex is evaluated as an independent
    certificate.
    """
    kind = PsiKind.parse(kind)
    if int(n) != n or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    budget = kind.default_budget if budget is None else float(budget)
    upper = kind.upper
    if not 0 < budget <= n * upper:
        raise DomainError(f"budget {budget!r} infeasible for n = {n}")
    log_psi = kind.log_psi
    lo = INTERIOR_MARGIN
    hi = min(upper, budget - (n - 1) * INTERIOR_MARGIN)

    sym = np.full(n, budget / n)
    sym_obj = float(np.sum(log_psi(sym)))

    children = np.random.SeedSequence(seed).spawn(n_starts)
    x0 = np.array([
        project_to_simplex(np.random.default_rng(c).dirichlet(np.ones(n)) * budget,
                           budget, lo, hi)
        for c in children])
    xs, objs, conv = _coordinate_ascent(kind, x0, upper, max_sweeps)
    all_converged = bool(np.all(conv))
    results = [(float(o), x) for o, x in zip(objs, xs)]
    best_start_excess = max(obj for obj, _ in results) - sym_obj
    results.append((sym_obj, sym.copy()))

    best_obj = max(obj for obj, _ in results)
    tied = [np.sort(x) for obj, x in results
            if obj >= best_obj - 4 * np.finfo(float).eps * max(1.0, abs(best_obj))]
    betas = min(tied, key=lambda v: tuple(v))
    objective = float(np.sum(log_psi(betas)))
    fv = np.asarray(kind.f(betas))
    residual = float(np.max(np.abs(fv - fv[0])))

    if not all_converged:
        warnings.warn(f"coordinate ascent hit the sweep cap for {kind.name}, n={n}",
                      NonConvergence, stacklevel=2)

    certified = bool(np.max(np.abs(betas - sym)) <= 1e-6 and best_start_excess <= 1e-9)
    sol = ExtremalSolution(betas=betas, objective_log=objective,
                           lagrange_residual=residual, certified_symmetric=certified,
                           symmetric_objective_log=sym_obj,
                           best_start_excess=float(best_start_excess),
                           n_starts=n_starts, converged=bool(all_converged))
    if grid is None:
        grid = n <= 3
    if grid and n <= 3:
        gmax, garg = _grid_certificate(log_psi, n, budget, upper, grid_step)
        sol.grid_max_log, sol.grid_argmax = gmax, garg
        if gmax > sym_obj + 1e-9:
            sol.certified_symmetric = False
    return sol
