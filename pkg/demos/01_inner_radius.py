"""
Inner radius under Moebius maps
===============================

The inner radius of a disk at an interior point has a closed form.  Under a
Moebius map it picks up the factor |m'(a)|, and the image of a disk is again
a disk, a half-plane or a disk exterior.  Both routes should agree.
"""
import numpy as np

from freepoles.geometry import Disk, MobiusMap
from freepoles.radii import inner_radius, transform_inner_radius

d = Disk(0, 2.0)
a = 0.5 + 0.1j
print("r(B, a) =", inner_radius(d, a))

# a map that sends a point on the boundary circle to infinity gives a half-plane
m = MobiusMap(1, 0, 1, -2)
print("image of the disk:", m.image_domain(d))
print("pulled back:", inner_radius(d, a) * abs(m.derivative(a)))
print("direct     :", transform_inner_radius(d, a, m))

# and a batch of random maps
rng = np.random.default_rng(1)
worst = 0.0
for _ in range(1000):
    m = MobiusMap(*(rng.normal(size=4) + 1j * rng.normal(size=4)))
    try:
        r = transform_inner_radius(d, a, m)
    except ValueError:
        continue
    worst = max(worst, abs(r - inner_radius(d, a) * abs(m.derivative(a))) / r)
print(f"max relative disagreement over 1000 maps: {worst:.2e}")
