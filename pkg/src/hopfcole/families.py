"""Constructors for the special polynomial families.

Variable naming is fixed per family:

* ``(x, y)``          two-variable Hermite, lacunary Hermite, hybrid 2L_n, shifted Hermite
* ``(x, t)``          two-variable Laguerre
* ``(x1, ..., xm)``   complete higher-order Hermite
* ``(z,)``            truncated Bessel-like C0 series

Every coefficient is produced with exact integer factorials.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .multipoly import MultiPoly, as_fraction

XY = ("x", "y")
XT = ("x", "t")

__all__ = [
    "FamilySpec",
    "hermite2",
    "hermite_lacunary",
    "hermite3_complete",
    "hermite_complete_m",
    "laguerre2",
    "hybrid_l2",
    "bessel_c0_truncated",
    "apply_c0_operator",
    "shifted_hermite3",
    "c0_eigen_residual",
    "complete_vars",
    "exp_series_product",
    "exp_series_recurrence",
]


def _check_n(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"{name} must be an integer, got {n!r}")
    if n < 0:
        raise ValueError(f"{name} must be >= 0, got {n}")


def _check_m(m: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool):
        raise TypeError(f"m must be an integer, got {m!r}")
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")


def complete_vars(m: int) -> tuple[str, ...]:
    return tuple(f"x{k}" for k in range(1, m + 1))


def hermite_lacunary(n: int, m: int) -> MultiPoly:
    """H_n^(m)(x, y) = n! sum_r y^r x^(n-mr) / ((n-mr)! r!), over (x, y)."""
    _check_n(n)
    _check_m(m)
    nf = factorial(n)
    terms = {}
    for r in range(n // m + 1):
        terms[(n - m * r, r)] = Fraction(nf, factorial(n - m * r) * factorial(r))
    return MultiPoly(XY, terms)


def hermite2(n: int) -> MultiPoly:
    """Two-variable (heat) Hermite polynomial H_n(x, y)."""
    return hermite_lacunary(n, 2)


def hermite3_complete(n: int) -> MultiPoly:
    """Complete third-order Hermite H_n(x1, x2, x3) from its closed form.

    Built as n! sum_r H_{n-3r}(x1, x2) x3^r / ((n-3r)! r!).
    """
    _check_n(n)
    ctx = complete_vars(3)
    nf = factorial(n)
    x3 = MultiPoly.var("x3", ctx)
    out = MultiPoly.zero(ctx)
    for r in range(n // 3 + 1):
        inner = hermite2(n - 3 * r).rename({"x": "x1", "y": "x2"}).with_context(ctx)
        c = Fraction(nf, factorial(n - 3 * r) * factorial(r))
        out = out + inner * (x3 ** r) * c
    return out


def exp_series_product(m: int, order: int) -> list[MultiPoly]:
    """Coefficients c_0..c_order of prod_k exp(x_k t^k), truncated at t^order.

    Each factor exp(x_k t^k) is expanded to sum_j x_k^j t^(kj) / j! and the
    truncated series are multiplied with MultiPoly coefficients.
    """
    ctx = complete_vars(m)
    one = MultiPoly.constant(1, ctx)
    series = [one] + [MultiPoly.zero(ctx)] * order
    for k in range(1, m + 1):
        xk = MultiPoly.var(f"x{k}", ctx)
        factor = [MultiPoly.zero(ctx)] * (order + 1)
        j = 0
        while k * j <= order:
            factor[k * j] = (xk ** j) * Fraction(1, factorial(j))
            j += 1
        product = [MultiPoly.zero(ctx)] * (order + 1)
        for i, a in enumerate(series):
            if a.is_zero():
                continue
            for d in range(0, order + 1 - i, k):
                if not factor[d].is_zero():
                    product[i + d] = product[i + d] + a * factor[d]
        series = product
    return series


def exp_series_recurrence(m: int, order: int) -> list[MultiPoly]:
    """Coefficients of exp(S(t)), S = sum_k x_k t^k, via n e_n = sum_k k s_k e_(n-k).

    This follows from E' = S' E and shares no code path with
    :func:`exp_series_product`.
    """
    ctx = complete_vars(m)
    s = [MultiPoly.var(f"x{k}", ctx) for k in range(1, m + 1)]
    e = [MultiPoly.constant(1, ctx)]
    for n in range(1, order + 1):
        acc = MultiPoly.zero(ctx)
        for k in range(1, min(m, n) + 1):
            acc = acc + s[k - 1] * e[n - k] * k
        e.append(acc * Fraction(1, n))
    return e


def hermite_complete_m(n: int, m: int) -> MultiPoly:
    """Complete m-th order Hermite H_n(x1..xm) = n! [t^n] exp(sum_k x_k t^k)."""
    _check_n(n)
    _check_m(m)
    return exp_series_product(m, n)[n] * factorial(n)


def laguerre2(n: int) -> MultiPoly:
    """Two-variable Laguerre L_n(x, t) = n! sum_r t^(n-r) x^r / ((n-r)! (r!)^2)."""
    _check_n(n)
    nf = factorial(n)
    terms = {(r, n - r): Fraction(nf, factorial(n - r) * factorial(r) ** 2) for r in range(n + 1)}
    return MultiPoly(XT, terms)


def hybrid_l2(n: int) -> MultiPoly:
    """Hybrid Hermite-Laguerre polynomial 2L_n(x, y) with (r!)^2 weights."""
    _check_n(n)
    nf = factorial(n)
    terms = {(n - 2 * r, r): Fraction(nf, factorial(n - 2 * r) * factorial(r) ** 2) for r in range(n // 2 + 1)}
    return MultiPoly(XY, terms)


def bessel_c0_truncated(N: int) -> MultiPoly:
    """Partial sum of C0(z) = sum_r z^r / (r!)^2 up to r = N."""
    _check_n(N, "N")
    return MultiPoly(("z",), {(r,): Fraction(1, factorial(r) ** 2) for r in range(N + 1)})


def apply_c0_operator(n: int) -> MultiPoly:
    """C0(y d^2/dx^2) x^n computed by repeated differentiation.

    The series terminates because d^(2r)/dx^(2r) kills x^n once 2r > n.
    """
    _check_n(n)
    y = MultiPoly.var("y", XY)
    xn = MultiPoly.monomial(XY, {"x": n})
    out = MultiPoly.zero(XY)
    d = xn
    r = 0
    while not d.is_zero():
        out = out + (y ** r) * d * Fraction(1, factorial(r) ** 2)
        d = d.diff("x", 2)
        r += 1
    return out


def c0_eigen_residual(N: int) -> MultiPoly:
    """d/dz z d/dz C0_N(lam z) - lam C0_N(lam z), over (z, lam).

    For the full series this vanishes; the truncation leaves exactly
    -lam^(N+1) z^N / (N!)^2.
    """
    _check_n(N, "N")
    ctx = ("z", "lam")
    c0 = bessel_c0_truncated(N).with_context(ctx)
    lam = MultiPoly.var("lam", ctx)
    z = MultiPoly.var("z", ctx)
    scaled = c0.substitute("z", lam * z)
    lhs = (z * scaled.partial_derivative("z")).partial_derivative("z")
    return lhs - lam * scaled


def shifted_hermite3(n: int, alpha, beta, gamma) -> MultiPoly:
    """H_n(x + alpha y, beta y, gamma y) over (x, y)."""
    _check_n(n)
    alpha, beta, gamma = (as_fraction(v) for v in (alpha, beta, gamma))
    x = MultiPoly.var("x", XY)
    y = MultiPoly.var("y", XY)
    p = hermite3_complete(n).with_context(("x1", "x2", "x3", "x", "y"))
    p = p.substitute("x1", x + y * alpha)
    p = p.substitute("x2", y * beta)
    p = p.substitute("x3", y * gamma)
    return p.with_context(XY)


_KINDS = (
    "Hermite2",
    "HermiteLacunary",
    "Hermite3Complete",
    "HermiteCompleteM",
    "Laguerre2",
    "HybridL2",
    "BesselC0",
    "ShiftedHermite3",
)

# CLI-friendly aliases
KIND_ALIASES = {k.lower(): k for k in _KINDS}
KIND_ALIASES.update(
    {
        "lacunary": "HermiteLacunary",
        "hermite3": "Hermite3Complete",
        "complete": "HermiteCompleteM",
        "laguerre": "Laguerre2",
        "hybrid": "HybridL2",
        "c0": "BesselC0",
        "shifted": "ShiftedHermite3",
    }
)


@dataclass(frozen=True)
class FamilySpec:
    """Which family to build, with its parameters."""

    kind: str
    n: int = 0
    m: int | None = None
    alpha: Fraction | None = None
    beta: Fraction | None = None
    gamma: Fraction | None = None
    N: int | None = None

    def __post_init__(self):
        kind = KIND_ALIASES.get(str(self.kind).lower())
        if kind is None:
            raise ValueError(f"unknown family kind {self.kind!r}; expected one of {', '.join(_KINDS)}")
        object.__setattr__(self, "kind", kind)
        if kind == "BesselC0":
            if self.N is None:
                raise ValueError("BesselC0 needs N")
            _check_n(self.N, "N")
        else:
            _check_n(self.n)
        if kind in ("HermiteLacunary", "HermiteCompleteM"):
            if self.m is None:
                raise ValueError(f"{kind} needs m")
            _check_m(self.m)
        if kind == "ShiftedHermite3":
            for name in ("alpha", "beta", "gamma"):
                v = getattr(self, name)
                object.__setattr__(self, name, as_fraction(0 if v is None else v))

    def build(self) -> MultiPoly:
        k = self.kind
        if k == "Hermite2":
            return hermite2(self.n)
        if k == "HermiteLacunary":
            return hermite_lacunary(self.n, self.m)
        if k == "Hermite3Complete":
            return hermite3_complete(self.n)
        if k == "HermiteCompleteM":
            return hermite_complete_m(self.n, self.m)
        if k == "Laguerre2":
            return laguerre2(self.n)
        if k == "HybridL2":
            return hybrid_l2(self.n)
        if k == "BesselC0":
            return bessel_c0_truncated(self.N)
        return shifted_hermite3(self.n, self.alpha, self.beta, self.gamma)

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.kind == "BesselC0":
            d["N"] = self.N
            return d
        d["n"] = self.n
        if self.kind in ("HermiteLacunary", "HermiteCompleteM"):
            d["m"] = self.m
        if self.kind == "ShiftedHermite3":
            for name in ("alpha", "beta", "gamma"):
                v = getattr(self, name)
                d[name] = f"{v.numerator}/{v.denominator}"
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "FamilySpec":
        allowed = {"kind", "n", "m", "alpha", "beta", "gamma", "N"}
        extra = set(data) - allowed
        if extra:
            raise ValueError(f"unexpected FamilySpec fields {sorted(extra)}")
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "FamilySpec":
        return cls.from_dict(json.loads(text))


def rename_complete(p: MultiPoly, names: Sequence[str]) -> MultiPoly:
    """Rename x1, x2, ... of a complete-family polynomial to ``names``."""
    return p.rename({f"x{i + 1}": v for i, v in enumerate(names)})
