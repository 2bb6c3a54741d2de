"""
Separating a ray system into sectors
====================================

Each sector between consecutive rays is opened onto the right half-plane by
a power map.  The two marked points on the edges land on the imaginary
axis, on opposite sides of the origin.
"""
import numpy as np

from freepoles.geometry import validate_ray_system
from freepoles.septrans import difference_quotient, distortion_factor, omega_points, sector_maps

rays = validate_ray_system([1.2, 0.8j, -1.5 + 0.3j, 0.4 - 1.1j])
print("alpha:", np.round(rays.alpha, 4), "sum =", sum(rays.alpha))

for k, s in enumerate(sector_maps(rays)):
    a, b = rays.points[k], rays.points[(k + 1) % rays.n]
    w1, w2 = omega_points(s, a, b)
    print(f"sector {k}: alpha={s.alpha:.4f}  omega1={w1:.4f}  omega2={w2:.4f}")
    exact = distortion_factor(s, a)
    for h in (1e-4, 1e-5, 1e-6):
        print(f"    h={h:g}  |slope - |pi'(a)|| = {abs(difference_quotient(s, a, h) - exact):.2e}")
