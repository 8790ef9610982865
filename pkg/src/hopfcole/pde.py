"""Linear differential operators and residual builders.

Every builder returns ``LHS - RHS`` of its equation after substituting the
candidate solution.  A candidate solves the equation iff the residual is the
zero polynomial (for polynomial residuals) or has a zero numerator (for
rational ones); both are decided exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Sequence, Union

from .families import (
    XT,
    XY,
    complete_vars,
    exp_series_recurrence,
    hermite2,
    hermite_complete_m,
    hermite_lacunary,
    hybrid_l2,
    laguerre2,
    shifted_hermite3,
)
from .multipoly import MultiPoly, as_fraction
from .ratfunc import RationalFn, hopf_cole, phi_solution, shifted_derivative_power

Operand = Union[MultiPoly, RationalFn]

__all__ = [
    "Derivative",
    "MultiplyByVar",
    "LinearDiffOp",
    "apply_linear_op",
    "verify_linear_pde",
    "burgers_residual",
    "hierarchical_burgers_residual",
    "laguerre_burgers_residual",
    "log_burgers_residual_laguerre",
    "hybrid_log_burgers_residual",
    "variable_coefficient_residual",
    "combined_burgers_residual",
    "verify_combined_linear",
    "hermite_identity_residual",
    "generating_series_check",
    "third_order_expanded_rhs",
    "complete_solution",
    "laguerre_solution",
    "variable_coefficient_solution",
    "combined_solution",
    "combined_operator",
    "hybrid_linear_residual",
    "heat_residual",
    "hermite_identity_terms",
    "generating_series_mismatches",
    "perturb_rational",
    "perturb_poly",
    "EQUATIONS",
    "run_check",
]


@dataclass(frozen=True)
class Derivative:
    var: str


@dataclass(frozen=True)
class MultiplyByVar:
    var: str


Atom = Union[Derivative, MultiplyByVar]


class LinearDiffOp:
    """Linear combination of words in d/dv and multiplication by v.

    Each word is applied right to left as written, so the Laguerre operator
    ``d/dx x d/dx`` is the word ``(Derivative('x'), MultiplyByVar('x'),
    Derivative('x'))``.  Ops compose with ``@`` and add with ``+``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[object, Sequence[Atom]]] = ()):
        merged: dict[tuple[Atom, ...], Fraction] = {}
        for c, atoms in terms:
            atoms = tuple(atoms)
            merged[atoms] = merged.get(atoms, 0) + as_fraction(c)
        object.__setattr__(self, "terms", tuple((c, a) for a, c in merged.items() if c))

    def __setattr__(self, name, value):
        raise AttributeError("LinearDiffOp is immutable")

    @classmethod
    def identity(cls) -> "LinearDiffOp":
        return cls([(1, ())])

    @classmethod
    def d(cls, var: str, order: int = 1) -> "LinearDiffOp":
        return cls([(1, (Derivative(var),) * order)])

    @classmethod
    def mulvar(cls, var: str) -> "LinearDiffOp":
        return cls([(1, (MultiplyByVar(var),))])

    @classmethod
    def laguerre(cls, var: str) -> "LinearDiffOp":
        """d/dvar var d/dvar."""
        return cls.d(var) @ cls.mulvar(var) @ cls.d(var)

    def __add__(self, other: "LinearDiffOp") -> "LinearDiffOp":
        return LinearDiffOp(self.terms + other.terms)

    def __neg__(self) -> "LinearDiffOp":
        return LinearDiffOp((-c, a) for c, a in self.terms)

    def __sub__(self, other: "LinearDiffOp") -> "LinearDiffOp":
        return self + (-other)

    def __rmul__(self, c) -> "LinearDiffOp":
        c = as_fraction(c)
        return LinearDiffOp((c * k, a) for k, a in self.terms)

    def __matmul__(self, other: "LinearDiffOp") -> "LinearDiffOp":
        return LinearDiffOp((c1 * c2, a1 + a2) for c1, a1 in self.terms for c2, a2 in other.terms)

    def variables(self) -> set[str]:
        return {atom.var for _, atoms in self.terms for atom in atoms}

    def __call__(self, p: Operand) -> Operand:
        return apply_linear_op(self, p)

    def __repr__(self) -> str:
        def word(atoms):
            return " ".join(f"d{a.var}" if isinstance(a, Derivative) else a.var for a in atoms) or "1"

        return "LinearDiffOp(" + " + ".join(f"{c}*[{word(a)}]" for c, a in self.terms) + ")"


def _apply_atom(atom: Atom, p: Operand) -> Operand:
    if isinstance(atom, Derivative):
        if isinstance(p, MultiPoly):
            return p.partial_derivative(atom.var)
        return p.derivative(atom.var)
    ctx = p.variables if atom.var in p.variables else p.variables + (atom.var,)
    return p * MultiPoly.var(atom.var, ctx)


def apply_linear_op(op: LinearDiffOp, p: Operand) -> Operand:
    """Image of a MultiPoly or RationalFn under ``op``."""
    missing = op.variables() - set(p.variables)
    if missing:
        raise ValueError(f"operator variables {sorted(missing)} not in context {p.variables}")
    out = p * 0
    for c, atoms in op.terms:
        q = p
        for atom in reversed(atoms):
            q = _apply_atom(atom, q)
        out = out + q * c
    return out


def verify_linear_pde(
    Z: MultiPoly,
    time_var: str,
    op: LinearDiffOp,
    lhs_op: LinearDiffOp | None = None,
) -> MultiPoly:
    """``lhs_op(Z) - op(Z)``; ``lhs_op`` defaults to d/d(time_var)."""
    if time_var not in Z.variables:
        raise ValueError(f"{time_var!r} not in context {Z.variables}")
    lhs = lhs_op if lhs_op is not None else LinearDiffOp.d(time_var)
    return apply_linear_op(lhs, Z) - apply_linear_op(op, Z)


def burgers_residual(u: RationalFn, m: int, time_var: str = "y", space_var: str = "x") -> RationalFn:
    """u_t - d/dx (d/dx + u)^(m-1) u."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    rhs = shifted_derivative_power(u, m - 1, space_var).derivative(space_var)
    return u.derivative(time_var) - rhs


def _check_pos(n: int, low: int = 1) -> None:
    if n < low:
        raise ValueError(f"n must be >= {low}, got {n}")


def complete_solution(n: int, m: int) -> RationalFn:
    """n H_{n-1}(x1..xm) / H_n(x1..xm) for the complete m-th order family."""
    _check_pos(n)
    return RationalFn(hermite_complete_m(n - 1, m) * n, hermite_complete_m(n, m))


def hierarchical_burgers_residual(n: int, m: int, k: int, *, perturb: bool = False) -> RationalFn:
    """d u/d x_k - d/dx1 (d/dx1 + u)^(k-1) u, u built from the complete family."""
    if not 1 < k <= m:
        raise ValueError(f"k must satisfy 1 < k <= m, got k={k}, m={m}")
    u = complete_solution(n, m)
    if perturb:
        u = perturb_rational(u)
    return burgers_residual(u, k, time_var=f"x{k}", space_var="x1")


def laguerre_solution(n: int) -> RationalFn:
    _check_pos(n)
    return hopf_cole(laguerre2(n), "x")


def laguerre_burgers_residual(n: int, *, perturb: bool = False) -> RationalFn:
    """u_t - [d/dx x u_x + u_x + u^2 + x d/dx(u^2)] with u = L_n'/L_n."""
    u = laguerre_solution(n)
    if perturb:
        u = perturb_rational(u)
    u2 = u * u
    rhs = LinearDiffOp.laguerre("x")(u) + u.derivative("x") + u2 + LinearDiffOp.mulvar("x")(u2.derivative("x"))
    return u.derivative("t") - rhs


# The two logarithmic equations are checked in substituted form.  With
# u = ln h, every derivative of u is rational:
#   u_t = h_t/h,  u_x = h_x/h,  u_xx + u_x^2 = h_xx/h,
#   d/dx(x u_x) + x u_x^2 = (d/dx x d/dx h)/h,
#   d/dy(y u_y) + y u_y^2 = (d/dy y d/dy h)/h.
# So residual(u) = (lhs_op h - rhs_op h) / h exactly.  The unreduced route
# (reduced=False) assembles the same residual from the log-derivatives.


def _log_laguerre_unreduced(h: MultiPoly) -> RationalFn:
    ux = hopf_cole(h, "x")
    ut = hopf_cole(h, "t")
    x = MultiPoly.var("x", h.variables)
    return ut - ((ux * x).derivative("x") + ux * ux * x)


def log_burgers_residual_laguerre(n: int, *, reduced: bool = True, perturb: bool = False) -> RationalFn:
    """Residual of u_t = d/dx x u_x + x u_x^2 for u = ln L_n(x, t)."""
    _check_pos(n, 0)
    h = laguerre2(n)
    if perturb:
        h = perturb_poly(h)
    if not reduced:
        return _log_laguerre_unreduced(h)
    return RationalFn(verify_linear_pde(h, "t", LinearDiffOp.laguerre("x")), h)


def _log_hybrid_unreduced(psi: MultiPoly) -> RationalFn:
    uy = hopf_cole(psi, "y")
    ux = hopf_cole(psi, "x")
    y = MultiPoly.var("y", psi.variables)
    lhs = (uy * y).derivative("y") + uy * uy * y
    rhs = ux.derivative("x") + ux * ux
    return lhs - rhs


def hybrid_linear_residual(n: int, *, perturb: bool = False) -> MultiPoly:
    """d/dy y d/dy Psi - Psi_xx with Psi = 2L_n(x, y)."""
    _check_pos(n, 0)
    psi = hybrid_l2(n)
    if perturb:
        psi = perturb_poly(psi)
    return verify_linear_pde(psi, "y", LinearDiffOp.d("x", 2), lhs_op=LinearDiffOp.laguerre("y"))


def hybrid_log_burgers_residual(n: int, *, reduced: bool = True, perturb: bool = False) -> RationalFn:
    """Residual of d/dy(y u_y) + y u_y^2 = u_xx + u_x^2 for u = ln 2L_n."""
    _check_pos(n, 0)
    psi = hybrid_l2(n)
    if perturb:
        psi = perturb_poly(psi)
    if not reduced:
        return _log_hybrid_unreduced(psi)
    res = verify_linear_pde(psi, "y", LinearDiffOp.d("x", 2), lhs_op=LinearDiffOp.laguerre("y"))
    return RationalFn(res, psi)


def variable_coefficient_solution(n: int) -> tuple[RationalFn, MultiPoly]:
    """u = -H_n(y, t) n H_{n-1}(x, t) / H_n(x, t) over (x, y, t), and F = H_n(y, t)."""
    _check_pos(n)
    ctx = ("x", "y", "t")
    F = hermite2(n).rename({"x": "y", "y": "t"}).with_context(ctx)
    phi = hopf_cole(hermite2(n).rename({"y": "t"}).with_context(ctx), "x")
    return -(phi * F), F


def variable_coefficient_residual(n: int, *, perturb: bool = False) -> RationalFn:
    """u_t + (2/F) u u_x - u_xx - u_yy."""
    u, F = variable_coefficient_solution(n)
    if perturb:
        u = perturb_rational(u)
    adv = RationalFn(MultiPoly.constant(2, F.variables), F) * u * u.derivative("x")
    return u.derivative("t") + adv - u.diff("x", 2) - u.diff("y", 2)


def combined_solution(n: int, alpha, beta, gamma) -> RationalFn:
    _check_pos(n)
    return RationalFn(shifted_hermite3(n - 1, alpha, beta, gamma) * n, shifted_hermite3(n, alpha, beta, gamma))


def combined_burgers_residual(n: int, alpha, beta, gamma, *, perturb: bool = False) -> RationalFn:
    """u_y - d/dx [alpha + beta (d/dx + u) + gamma (d/dx + u)^2] u."""
    alpha, beta, gamma = (as_fraction(v) for v in (alpha, beta, gamma))
    u = combined_solution(n, alpha, beta, gamma)
    if perturb:
        u = perturb_rational(u)
    w1 = shifted_derivative_power(u, 1, "x")
    w2 = w1.derivative("x") + u * w1
    bracket = u * alpha + w1 * beta + w2 * gamma
    return u.derivative("y") - bracket.derivative("x")


def combined_operator(alpha, beta, gamma) -> LinearDiffOp:
    return (
        as_fraction(alpha) * LinearDiffOp.d("x")
        + as_fraction(beta) * LinearDiffOp.d("x", 2)
        + as_fraction(gamma) * LinearDiffOp.d("x", 3)
    )


def verify_combined_linear(n: int, alpha, beta, gamma, *, perturb: bool = False) -> MultiPoly:
    """Psi_y - (alpha d + beta d^2 + gamma d^3) Psi for the shifted Hermite Psi."""
    psi = shifted_hermite3(n, alpha, beta, gamma)
    if perturb:
        psi = perturb_poly(psi)
    return verify_linear_pde(psi, "y", combined_operator(alpha, beta, gamma))


def heat_residual(n: int, m: int, *, perturb: bool = False) -> MultiPoly:
    """Z_y - d^m Z/dx^m for Z = H_n^(m)(x, y)."""
    Z = hermite_lacunary(n, m)
    if perturb:
        Z = perturb_poly(Z)
    return verify_linear_pde(Z, "y", LinearDiffOp.d("x", m))


def hermite_identity_terms(n: int) -> tuple[RationalFn, RationalFn]:
    """F_n = (n-1) H_{n-2}/H_{n-1} and S_n = (n-1)(n-2) H_{n-3}/H_{n-1}."""
    if n < 3:
        raise ValueError(f"the identity needs n >= 3, got {n}")
    den = hermite2(n - 1)
    F = RationalFn(hermite2(n - 2) * (n - 1), den)
    S = RationalFn(hermite2(n - 3) * ((n - 1) * (n - 2)), den)
    return F, S


def hermite_identity_residual(n: int, *, perturb: bool = False) -> RationalFn:
    """(d/dx + F_n) F_n - S_n."""
    F, S = hermite_identity_terms(n)
    if perturb:
        F = perturb_rational(F)
    return shifted_derivative_power(F, 1, "x") - S


def generating_series_mismatches(m: int, N: int, *, perturb: bool = False) -> list[int]:
    """Degrees n <= N where n! [t^n] exp(sum x_k t^k) differs from hermite_complete_m."""
    if m < 2 or N < 0:
        raise ValueError(f"need m >= 2 and N >= 0, got m={m}, N={N}")
    series = exp_series_recurrence(m, N)
    if perturb:
        series[N] = series[N] + 1
    return [n for n in range(N + 1) if series[n] * factorial(n) != hermite_complete_m(n, m)]


def generating_series_check(m: int, N: int) -> bool:
    return not generating_series_mismatches(m, N)


def third_order_expanded_rhs(u: RationalFn, var: str = "x") -> RationalFn:
    """(u^3)_x + 3 u_x^2 + 3 u u_xx + u_xxx, the expanded third-order Burgers flux."""
    ux = u.derivative(var)
    uxx = ux.derivative(var)
    return (u * u * u).derivative(var) + ux * ux * 3 + u * uxx * 3 + uxx.derivative(var)


# ---- negative controls -------------------------------------------------


def perturb_rational(u: RationalFn) -> RationalFn:
    """Add 1 to the numerator, keeping the denominator."""
    return RationalFn.from_factored(u.num + 1, u.factors)


def perturb_poly(p: MultiPoly) -> MultiPoly:
    """Add the product of the first two context variables.

    A constant would not do: constants solve every equation checked here.
    """
    a, b = p.variables[:2]
    return p + MultiPoly.var(a, p.variables) * MultiPoly.var(b, p.variables)


# ---- check registry ----------------------------------------------------


def _burgers(n, m, perturb=False):
    u = phi_solution(n, m)
    if perturb:
        u = perturb_rational(u)
    return burgers_residual(u, m)


def _rat(v) -> Fraction:
    return as_fraction(v)


@dataclass(frozen=True)
class Equation:
    params: tuple[str, ...]
    build: Callable
    description: str


EQUATIONS: dict[str, Equation] = {
    "burgers": Equation(("n", "m"), _burgers, "u_y = d/dx (d/dx + u)^(m-1) u with u = Phi_n^(m)"),
    "hierarchical": Equation(("n", "m", "k"), hierarchical_burgers_residual, "complete-family Burgers hierarchy"),
    "laguerre": Equation(("n",), laguerre_burgers_residual, "Laguerre reaction-diffusion Burgers"),
    "laguerre-log": Equation(("n",), log_burgers_residual_laguerre, "u_t = d/dx x u_x + x u_x^2, u = ln L_n"),
    "hybrid": Equation(("n",), hybrid_linear_residual, "d/dy y d/dy Psi = Psi_xx, Psi = 2L_n"),
    "hybrid-log": Equation(("n",), hybrid_log_burgers_residual, "hybrid log-Burgers, u = ln 2L_n"),
    "varcoef": Equation(("n",), variable_coefficient_residual, "variable-coefficient 2D Burgers"),
    "combined": Equation(("n", "alpha", "beta", "gamma"), combined_burgers_residual, "combined-order Burgers"),
    "combined-linear": Equation(("n", "alpha", "beta", "gamma"), verify_combined_linear, "Psi_y = (a d + b d^2 + c d^3) Psi"),
    "identity": Equation(("n",), hermite_identity_residual, "(d/dx + F_n) F_n = S_n"),
    "heat": Equation(("n", "m"), heat_residual, "Z_y = d^m Z/dx^m, Z = H_n^(m)"),
    "genfun": Equation(("m", "N"), generating_series_mismatches, "generating-function coefficients"),
}

_RATIONAL_PARAMS = {"alpha", "beta", "gamma"}


def _coerce_params(equation: str, params: dict) -> dict:
    spec = EQUATIONS[equation]
    missing = [p for p in spec.params if p not in params]
    if missing:
        raise ValueError(f"{equation} needs parameters {missing}")
    extra = set(params) - set(spec.params)
    if extra:
        raise ValueError(f"{equation} does not take parameters {sorted(extra)}")
    out = {}
    for name in spec.params:
        v = params[name]
        out[name] = _rat(v) if name in _RATIONAL_PARAMS else int(v)
    return out


def residual_size(residual) -> int:
    if isinstance(residual, RationalFn):
        return len(residual.num)
    if isinstance(residual, MultiPoly):
        return len(residual)
    return len(residual)


def run_check(equation: str, params: dict, *, perturb: bool = False) -> dict:
    """Build one residual and summarize it as a verification report dict."""
    if equation not in EQUATIONS:
        raise KeyError(f"unknown equation {equation!r}; expected one of {sorted(EQUATIONS)}")
    kwargs = _coerce_params(equation, params)
    start = time.perf_counter()
    residual = EQUATIONS[equation].build(**kwargs, perturb=perturb)
    elapsed = time.perf_counter() - start
    size = residual_size(residual)
    shown = {k: (f"{v.numerator}/{v.denominator}" if isinstance(v, Fraction) else v) for k, v in kwargs.items()}
    if perturb:
        shown["perturb"] = True
    return {
        "equation": equation,
        "params": shown,
        "residual_zero": size == 0,
        "residual_num_terms": size,
        "elapsed_ms": int(elapsed * 1000),
    }
