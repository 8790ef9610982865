"""Exact rational functions, the Hopf-Cole transform and (d/dx + u)^k powers.

A :class:`RationalFn` is a numerator polynomial over a denominator that is kept
as a product of powers of monic polynomials, ``prod f_i^e_i``.  No polynomial
GCD is ever taken.  Keeping the denominator factored only means that the
quotient rule on ``N / f^e`` produces ``(N' f - e N f') / f^(e+1)`` rather than
squaring the whole denominator, and that sums use the common multiple of
structurally identical factors.  Values are unchanged by this bookkeeping.

Equality is by cross-multiplication: ``a/b == c/d`` iff ``a*d - c*b`` is the
zero polynomial.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping

from .families import hermite_lacunary
from .multipoly import MultiPoly, as_fraction, merge_contexts

__all__ = [
    "RationalFn",
    "hopf_cole",
    "phi_solution",
    "derivative",
    "shifted_derivative_power",
    "equals_zero",
    "normalize_content",
]


def _monic(p: MultiPoly) -> tuple[Fraction, MultiPoly]:
    lc = p.leading_coefficient()
    if lc == 1:
        return Fraction(1), p
    return lc, p.scale(1 / lc)


class RationalFn:
    """Immutable exact quotient of polynomials with a factored denominator."""

    __slots__ = ("_num", "_factors", "_vars", "_den")

    def __init__(self, num, den=1):
        if not isinstance(num, MultiPoly):
            num = MultiPoly.constant(as_fraction(num))
        if not isinstance(den, MultiPoly):
            den = MultiPoly.constant(as_fraction(den), num.variables)
        if den.is_zero():
            raise ZeroDivisionError("denominator is the zero polynomial")
        ctx = merge_contexts(num.variables, den.variables)
        num = num.with_context(ctx)
        factors: dict[MultiPoly, int] = {}
        if den.is_constant():
            num = num.scale(1 / den.constant_value())
        else:
            lc, f = _monic(den.with_context(ctx))
            num = num.scale(1 / lc)
            factors[f] = 1
        self._set(num, factors, ctx)

    def _set(self, num, factors, ctx):
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_factors", factors)
        object.__setattr__(self, "_vars", ctx)
        object.__setattr__(self, "_den", None)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    @classmethod
    def _make(cls, num: MultiPoly, factors: dict[MultiPoly, int]) -> "RationalFn":
        obj = cls.__new__(cls)
        ctx = num.variables
        for f in factors:
            ctx = merge_contexts(ctx, f.variables)
        obj._set(num.with_context(ctx), {f.with_context(ctx): e for f, e in factors.items() if e}, ctx)
        return obj

    @classmethod
    def from_factored(cls, num: MultiPoly, factors: Mapping[MultiPoly, int]) -> "RationalFn":
        """Build ``num / prod f^e``; factors are normalized to monic form."""
        scalar = Fraction(1)
        clean: dict[MultiPoly, int] = {}
        for f, e in factors.items():
            if e < 0:
                raise ValueError("factor exponents must be nonnegative")
            if f.is_zero():
                raise ZeroDivisionError("zero factor in denominator")
            if not e:
                continue
            if f.is_constant():
                scalar *= f.constant_value() ** e
                continue
            lc, g = _monic(f)
            scalar *= lc ** e
            clean[g] = clean.get(g, 0) + e
        return cls._make(num.scale(1 / scalar), clean)

    # ---- accessors ----------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def num(self) -> MultiPoly:
        return self._num

    @property
    def factors(self) -> dict[MultiPoly, int]:
        return dict(self._factors)

    @property
    def den(self) -> MultiPoly:
        """Expanded denominator (monic under graded-lex order)."""
        if self._den is None:
            d = MultiPoly.constant(1, self._vars)
            for f, e in self._factors.items():
                d = d * f ** e
            object.__setattr__(self, "_den", d)
        return self._den

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def _coerce(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, MultiPoly):
            return RationalFn(other)
        return RationalFn(MultiPoly.constant(as_fraction(other), self._vars))

    # ---- field arithmetic ---------------------------------------------

    @staticmethod
    def _lcm(a: dict, b: dict) -> dict:
        out = dict(a)
        for f, e in b.items():
            out[f] = max(out.get(f, 0), e)
        return out

    @staticmethod
    def _cofactor(total: dict, part: dict, ctx) -> MultiPoly:
        p = MultiPoly.constant(1, ctx)
        for f, e in total.items():
            k = e - part.get(f, 0)
            if k:
                p = p * f ** k
        return p

    def _over(self, factors: dict, ctx) -> MultiPoly:
        """Numerator re-expressed over the (larger) denominator ``factors``."""
        return self._num.with_context(ctx) * self._cofactor(factors, self._factors, ctx)

    def __add__(self, other) -> "RationalFn":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if other._num.is_zero():
            return self
        if self._num.is_zero():
            return other
        ctx = merge_contexts(self._vars, other._vars)
        lcm = self._lcm(self._factors, other._factors)
        lcm = {f.with_context(ctx): e for f, e in lcm.items()}
        num = self._over(lcm, ctx) + other._over(lcm, ctx)
        return RationalFn._make(num, lcm)

    __radd__ = __add__

    def __neg__(self) -> "RationalFn":
        return RationalFn._make(-self._num, self._factors)

    def __sub__(self, other) -> "RationalFn":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RationalFn":
        return (-self) + other

    def __mul__(self, other) -> "RationalFn":
        if isinstance(other, (int, Fraction, str)) and not isinstance(other, bool):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        factors = dict(self._factors)
        for f, e in other._factors.items():
            factors[f] = factors.get(f, 0) + e
        ctx = merge_contexts(self._vars, other._vars)
        return RationalFn._make(self._num.with_context(ctx) * other._num.with_context(ctx), factors)

    __rmul__ = __mul__

    def scale(self, c) -> "RationalFn":
        return RationalFn._make(self._num.scale(as_fraction(c)), self._factors)

    def reciprocal(self) -> "RationalFn":
        if self._num.is_zero():
            raise ZeroDivisionError("reciprocal of the zero rational function")
        return RationalFn.from_factored(self.den, {self._num: 1})

    def __truediv__(self, other) -> "RationalFn":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "RationalFn":
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, k: int) -> "RationalFn":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        return RationalFn._make(self._num ** k, {f: e * k for f, e in self._factors.items()})

    # ---- calculus -----------------------------------------------------

    def derivative(self, var: str) -> "RationalFn":
        """Quotient rule, one extra power of each factor, no cancellation."""
        ctx = self._vars
        if var not in ctx:
            raise ValueError(f"{var!r} not in context {ctx}")
        involved = {f: e for f, e in self._factors.items() if f.degree(var) > 0}
        if not involved:
            return RationalFn._make(self._num.partial_derivative(var), self._factors)
        # d(N / prod f^e) = (N' prod f - N sum e f' prod_{g != f} g) / prod f^(e+1)
        fs = list(involved)
        prod_all = MultiPoly.constant(1, ctx)
        for f in fs:
            prod_all = prod_all * f
        num = self._num.partial_derivative(var) * prod_all
        for i, f in enumerate(fs):
            others = MultiPoly.constant(1, ctx)
            for j, g in enumerate(fs):
                if j != i:
                    others = others * g
            num = num - self._num * f.partial_derivative(var) * others * involved[f]
        factors = dict(self._factors)
        for f in fs:
            factors[f] += 1
        return RationalFn._make(num, factors)

    def diff(self, var: str, order: int = 1) -> "RationalFn":
        u = self
        for _ in range(order):
            u = u.derivative(var)
        return u

    # ---- evaluation ---------------------------------------------------

    def evaluate_exact(self, point: Mapping) -> Fraction:
        d = Fraction(1)
        for f, e in self._factors.items():
            d *= f.evaluate_exact(point) ** e
        if not d:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self._num.evaluate_exact(point) / d

    def evaluate_float(self, point: Mapping):
        d = 1.0
        for f, e in self._factors.items():
            d = d * f.evaluate_float(point) ** e
        return self._num.evaluate_float(point) / d

    def den_float(self, point: Mapping):
        d = 1.0
        for f, e in self._factors.items():
            d = d * f.evaluate_float(point) ** e
        return d

    # ---- equality, display, serialization ------------------------------

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # equality is not structural

    def __repr__(self) -> str:
        return f"RationalFn(({self._num}) / ({self.den}))"

    def to_dict(self) -> dict:
        return {"num": self._num.to_dict(), "den": self.den.to_dict()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: Mapping) -> "RationalFn":
        return cls(MultiPoly.from_dict(data["num"]), MultiPoly.from_dict(data["den"]))

    @classmethod
    def from_json(cls, text: str) -> "RationalFn":
        return cls.from_dict(json.loads(text))


def hopf_cole(Z: MultiPoly, var: str) -> RationalFn:
    """u = dZ/dvar / Z, the logarithmic derivative of Z."""
    if Z.is_zero():
        raise ValueError("Hopf-Cole transform of the zero polynomial is undefined")
    return RationalFn(Z.partial_derivative(var), Z)


def phi_solution(n: int, m: int) -> RationalFn:
    """Rational Burgers-hierarchy solution n H_{n-1}^(m) / H_n^(m) over (x, y)."""
    if n < 1:
        raise ValueError(f"phi_solution needs n >= 1, got {n}")
    return RationalFn(hermite_lacunary(n - 1, m) * n, hermite_lacunary(n, m))


def derivative(u: RationalFn, var: str) -> RationalFn:
    return u.derivative(var)


def shifted_derivative_power(u: RationalFn, k: int, var: str) -> RationalFn:
    """(d/dvar + u)^k applied to u, iterating w -> w' + u w from w = u."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    w = u
    for _ in range(k):
        w = w.derivative(var) + u * w
    return w


def equals_zero(u: RationalFn) -> bool:
    return u.is_zero()


def normalize_content(u: RationalFn) -> RationalFn:
    """Same value as ``u`` with a single expanded, monic denominator."""
    if u.num.is_zero():
        raise ValueError("normalize_content needs a nonzero numerator")
    return RationalFn(u.num, u.den)
