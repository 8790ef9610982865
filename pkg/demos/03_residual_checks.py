# Every equation in the registry, with and without a deliberate defect.
from hopfcole.pde import EQUATIONS, run_check

params = {
    "burgers": {"n": 5, "m": 3},
    "hierarchical": {"n": 4, "m": 4, "k": 3},
    "laguerre": {"n": 6},
    "laguerre-log": {"n": 6},
    "hybrid": {"n": 6},
    "hybrid-log": {"n": 6},
    "varcoef": {"n": 4},
    "combined": {"n": 4, "alpha": "1/2", "beta": 2, "gamma": -1},
    "combined-linear": {"n": 5, "alpha": "2/3", "beta": -1, "gamma": 4},
    "identity": {"n": 8},
    "heat": {"n": 9, "m": 4},
    "genfun": {"m": 4, "N": 7},
}

print(f"{'equation':18s} {'clean':>6s} {'perturbed':>10s}")
for name in EQUATIONS:
    clean = run_check(name, params[name])
    broken = run_check(name, params[name], perturb=True)
    print(f"{name:18s} {str(clean['residual_zero']):>6s} {str(broken['residual_zero']):>10s}")
