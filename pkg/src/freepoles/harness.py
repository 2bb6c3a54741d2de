"""Monte-Carlo falsification runs for both product inequalities."""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Iterator

import numpy as np

from .errors import FreePolesError, RetryExhausted
from .extremal import log_bound_thm1, log_bound_thm2
from .functionals import i_gamma, j_gamma, l_gamma
from .geometry import INF, Configuration, Disk, DiskExterior, validate_ray_system
from .radii import inner_radius

MARGIN_SLACK = -1e-9
THEOREM2_GAMMA = 0.5


@dataclass
class SamplingParams:
    min_gap: float = 0.05
    modulus_range: tuple = (0.5, 2.0)
    max_fraction: float = 0.95
    exterior_factor: tuple = (1.05, 3.0)
    max_attempts: int = 100


@dataclass
class TrialReport:
    seed: int
    theorem: str
    n: int
    gamma: float
    points: list
    radii: list
    l_value: float
    functional: float
    bound: float
    margin: float
    ok: bool

    def to_json(self) -> str:
        return json.dumps(asdict(self), allow_nan=True)


@dataclass
class RunSummary:
    trials: int
    violations: int
    min_margin: float
    config_digest: str
    errors: int = 0
    violation_records: list = field(default_factory=list)


def _theorem_tag(theorem) -> int:
    t = str(theorem).upper().lstrip("T")
    if t not in ("1", "2"):
        raise ValueError(f"theorem must be 1 or 2, got {theorem!r}")
    return int(t)


def trial_seed(root_seed: int, index: int) -> int:
    """Per-trial 64-bit seed derived from the root seed and a counter."""
    state = np.random.SeedSequence([int(root_seed), int(index)]).generate_state(2, np.uint32)
    return int(state[0]) | (int(state[1]) << 32)


def generate_configuration(seed: int, n: int, theorem, params: SamplingParams | None = None
                           ) -> Configuration:
    """Random admissible configuration built from disks (plus a disk exterior at infinity)."""
    params = params or SamplingParams()
    if n < 2:
        raise ValueError("n must be >= 2")
    thm = _theorem_tag(theorem)
    rng = np.random.default_rng(seed)
    lo, hi = params.modulus_range
    for _ in range(params.max_attempts):
        theta = np.concatenate([[0.0], np.sort(rng.uniform(0.0, 2 * math.pi, n - 1))])
        gaps = np.diff(np.append(theta, 2 * math.pi))
        if gaps.min() < params.min_gap:
            continue
        moduli = np.exp(rng.uniform(math.log(lo), math.log(hi), n))
        pts = moduli * np.exp(1j * theta)
        break
    else:
        raise RetryExhausted(f"no ray system with minimum gap {params.min_gap} "
                             f"after {params.max_attempts} attempts")
    rays = validate_ray_system(pts)

    dist = np.abs(pts[:, None] - pts[None, :])
    np.fill_diagonal(dist, np.inf)
    safe = 0.5 * np.minimum(dist.min(axis=1), moduli)
    frac = params.max_fraction * (1.0 - rng.random(n))
    radii = frac * safe
    pole_domains = tuple(Disk(complex(p), float(r)) for p, r in zip(pts, radii))
    r0 = params.max_fraction * (1.0 - rng.random()) * 0.5 * moduli.min()
    origin = Disk(0j, float(r0))
    infinity = None
    if thm == 2:
        f_lo, f_hi = params.exterior_factor
        reach = float(np.max(moduli + radii))
        infinity = DiskExterior(0j, rng.uniform(f_lo, f_hi) * reach)
    cfg = Configuration(rays, pole_domains, origin, infinity)
    problems = cfg.violations()
    if problems:
        raise AssertionError("sampler produced an invalid configuration: " + "; ".join(problems))
    return cfg


def constraint_value(cfg: Configuration, theorem, gamma: float) -> float:
    """Log of the normalizing functional used by the given theorem."""
    g = gamma if _theorem_tag(theorem) == 1 else 0.0
    return l_gamma(cfg.rays, g).log_value


def normalize_to_constraint(cfg: Configuration, theorem, gamma: float) -> Configuration:
    """Scale the configuration so that the theorem's normalizing functional is 1."""
    thm = _theorem_tag(theorem)
    n = cfg.rays.n
    log_l = constraint_value(cfg, thm, gamma)
    degree = n + gamma if thm == 1 else n
    t = math.exp(-log_l / degree)
    return cfg.scaled(t)


def evaluate_trial(cfg: Configuration, theorem, gamma: float, seed: int = 0) -> TrialReport:
    thm = _theorem_tag(theorem)
    n = cfg.rays.n
    if thm == 1:
        functional = j_gamma(cfg, gamma).log_value
        log_bound = log_bound_thm1(n, gamma)
        lval = l_gamma(cfg.rays, gamma).log_value
    else:
        gamma = THEOREM2_GAMMA
        functional = i_gamma(cfg, gamma).log_value
        log_bound = log_bound_thm2(n)
        lval = l_gamma(cfg.rays, 0.0).log_value
    radii = [inner_radius(cfg.origin_domain, 0j)]
    radii += [inner_radius(d, a) for d, a in zip(cfg.pole_domains, cfg.rays.points)]
    if cfg.infinity_domain is not None:
        radii.append(inner_radius(cfg.infinity_domain, INF))
    margin = log_bound - functional
    return TrialReport(
        seed=int(seed), theorem=f"T{thm}", n=n, gamma=float(gamma),
        points=[[p.real, p.imag] for p in cfg.rays.points],
        radii=[float(r) for r in radii],
        l_value=math.exp(lval), functional=math.exp(functional),
        bound=math.exp(log_bound), margin=float(margin), ok=bool(margin >= MARGIN_SLACK),
    )


def run_trial(theorem, n: int, gamma: float, seed: int,
              params: SamplingParams | None = None) -> TrialReport:
    cfg = generate_configuration(seed, n, theorem, params)
    cfg = normalize_to_constraint(cfg, theorem, gamma)
    return evaluate_trial(cfg, theorem, gamma, seed)


def config_digest(theorem, n_values, gammas, trials, root_seed, params) -> str:
    payload = json.dumps({
        "theorem": _theorem_tag(theorem), "n": list(map(int, n_values)),
        "gamma": list(map(float, gammas)), "trials": int(trials),
        "seed": int(root_seed), "params": asdict(params),
    }, sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def iter_verification(theorem, n_values, gammas, trials: int, root_seed: int,
                      params: SamplingParams | None = None,
                      summary: RunSummary | None = None) -> Iterator[TrialReport]:
    """Yield one report per trial, in trial order.

    Trial ``i`` uses the ``i mod len(grid)``-th ``(n, gamma)`` pair and the
    seed ``trial_seed(root_seed, i)``.  Failed trials are counted in
    ``summary.errors`` and skipped.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    params = params or SamplingParams()
    thm = _theorem_tag(theorem)
    if thm == 2:
        gammas = [THEOREM2_GAMMA]
    grid = list(product(n_values, gammas))
    for i in range(trials):
        n, g = grid[i % len(grid)]
        seed = trial_seed(root_seed, i)
        try:
            rep = run_trial(thm, n, g, seed, params)
        except (FreePolesError, RetryExhausted, ArithmeticError):
            if summary is not None:
                summary.errors += 1
            continue
        if summary is not None:
            summary.trials += 1
            summary.min_margin = min(summary.min_margin, rep.margin)
            if not rep.ok:
                summary.violations += 1
                summary.violation_records.append(rep)
        yield rep


def run_verification(theorem, n_values, gammas, trials: int, root_seed: int,
                     params: SamplingParams | None = None, sink=None) -> RunSummary:
    """Run the suite; each report is written as one JSON line to ``sink`` if given."""
    params = params or SamplingParams()
    thm = _theorem_tag(theorem)
    gl = [THEOREM2_GAMMA] if thm == 2 else list(gammas)
    summary = RunSummary(0, 0, math.inf, config_digest(thm, n_values, gl, trials, root_seed, params))
    for rep in iter_verification(thm, n_values, gl, trials, root_seed, params, summary):
        if sink is not None:
            sink.write(rep.to_json() + "\n")
    return summary
