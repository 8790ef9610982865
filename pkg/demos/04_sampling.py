# Sampling solutions in floating point and checking them with finite differences.
import sys

import numpy as np

from hopfcole.numeric import Axis, GridSpec, emit_csv, fd_residual, sample
from hopfcole.ratfunc import phi_solution

u = phi_solution(4, 3)
grid = GridSpec(Axis("x", -5, 5, 400), {"y": 1.0})
table = sample(u, grid)
print("rows:", len(table), " flagged poles:", int(table.pole.sum()))
print("pole x:", table.coords[table.pole, 0])

# the other real root of x^4 + 24xy sits between nodes; the sign flips there
den = u.den.evaluate_float({"x": table.coords[:, 0], "y": 1.0})
flips = np.nonzero(np.diff(np.sign(den)))[0]
print("denominator changes sign after x =", table.coords[flips, 0])

# central differences: the residual of an exact solution falls like h^2
g = GridSpec(Axis("x", 1, 3, 20), {"y": 1.0})
prev = None
for h in (1e-2, 5e-3, 2.5e-3, 1.25e-3):
    r = fd_residual(u, "burgers", g, h, m=3)
    print(f"h={h:<8g} max residual={r:.3e}" + (f"  ratio={prev / r:.3f}" if prev else ""))
    prev = r

# a short CSV on standard output
emit_csv(sample(u, GridSpec(Axis("x", 1, 2, 4), {"y": 0.5})), sys.stdout)
