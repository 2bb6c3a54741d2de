"""
The two Psi functions
=====================

Psi is evaluated in log space, and its log-derivative F has a single
minimum beta0.  We tabulate both and locate beta0 by bracketing the root
of F'.
"""
import math

import numpy as np

from freepoles import extremal as ex

for kind in (ex.PsiKind.THEOREM1, ex.PsiKind.THEOREM2):
    print(kind.name, "on (0, %.4f)" % kind.upper)
    for b in np.linspace(0.2, kind.upper - 0.05, 6):
        print(f"  beta={b:.3f}  psi={kind.psi(b):.6f}  F={kind.f(b):+.6f}")
    b0 = ex.find_beta0(kind)
    print(f"  beta0 = {b0:.8f}, F(beta0) = {kind.f(b0):+.6f}")

# F_2 is finite across beta = 1: the two singular terms cancel
print("F2 near 1:", [round(float(ex.f2(1 + e)), 9) for e in (-1e-6, 0.0, 1e-6)])

# the auxiliary positivity check on (0, 1)
grid = np.arange(1, 1000) * 1e-3
print("min of frak F on the grid:", float(np.min(ex.frak_f(grid))))
print("sign change of F2 on (0.564, sqrt 2):",
      float(ex.f2(0.564)) > 0, float(ex.f2(math.sqrt(2) - 1e-6)) < 0)
