"""Extremal products of inner radii for non-overlapping domains with free poles."""
from .errors import FreePolesError
from .extremal import (
    PsiKind,
    bound_thm1,
    bound_thm2,
    find_beta0,
    log_bound_thm1,
    log_bound_thm2,
    psi1,
    psi2,
    solve_product_max,
)
from .functionals import FunctionalValue, i_gamma, j3_invariant, j_gamma, l_gamma
from .geometry import (
    INF,
    Configuration,
    Disk,
    DiskExterior,
    HalfPlane,
    MobiusMap,
    RaySystem,
    validate_ray_system,
)
from .harness import SamplingParams, run_verification
from .quaddiff import QuadDiff, critical_points, sample_trajectories
from .radii import inner_radius, transform_inner_radius
from .septrans import SectorMap, sector_maps

__version__ = "0.1.0"

__all__ = [
    "INF", "Configuration", "Disk", "DiskExterior", "FreePolesError", "FunctionalValue",
    "HalfPlane", "MobiusMap", "PsiKind", "QuadDiff", "RaySystem", "SamplingParams",
    "SectorMap", "bound_thm1", "bound_thm2", "critical_points", "find_beta0", "i_gamma",
    "inner_radius", "j3_invariant", "j_gamma", "l_gamma", "log_bound_thm1",
    "log_bound_thm2", "psi1", "psi2", "run_verification", "sample_trajectories",
    "sector_maps", "solve_product_max", "transform_inner_radius", "validate_ray_system",
]
