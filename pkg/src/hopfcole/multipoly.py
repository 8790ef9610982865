"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`MultiPoly` lives over an ordered tuple of variable names (its
context).  Terms are stored as ``{exponent tuple: Fraction}`` with the
exponents given in context order.  Zero coefficients are never stored, so two
polynomials are equal exactly when their canonical term maps agree.

Operations between polynomials over different contexts merge the contexts by
name union (left operand's order first).
"""

from __future__ import annotations

import ast
import json
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence, Union

Coefficient = Union[int, Fraction]

__all__ = ["MultiPoly", "as_fraction", "merge_contexts", "parse_poly"]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact Fraction.

    Floats are refused on purpose; every coefficient in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def merge_contexts(a: Sequence[str], b: Sequence[str]) -> tuple[str, ...]:
    if tuple(a) == tuple(b):
        return tuple(a)
    seen = list(a)
    seen.extend(v for v in b if v not in a)
    return tuple(seen)


def _grlex_key(exps: tuple[int, ...]):
    # sorted() ascending on this key yields descending graded-lex order
    return (-sum(exps), tuple(-e for e in exps))


class MultiPoly:
    """Immutable exact polynomial over named variables."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple[int, ...], Coefficient] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(variables):
                raise ValueError(f"exponent tuple {exps} does not match context {variables}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = as_fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        object.__setattr__(self, "_vars", variables)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[tuple[int, ...], Fraction]) -> "MultiPoly":
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        object.__setattr__(obj, "_vars", variables)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables: Iterable[str] = ()) -> "MultiPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, c: Coefficient, variables: Iterable[str] = ()) -> "MultiPoly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables: Iterable[str] | None = None) -> "MultiPoly":
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            raise ValueError(f"{name!r} not in context {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, variables: Iterable[str], powers: Mapping[str, int], coeff: Coefficient = 1) -> "MultiPoly":
        variables = tuple(variables)
        unknown = set(powers) - set(variables)
        if unknown:
            raise ValueError(f"variables {sorted(unknown)} not in context {variables}")
        return cls(variables, {tuple(powers.get(v, 0) for v in variables): coeff})

    # ---- basic accessors ----------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        """Copy of the term map, keyed by exponent tuples in context order."""
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self._terms.values()), Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def leading_term(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return min(self._terms.items(), key=lambda kv: _grlex_key(kv[0]))

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree(self, var: str) -> int:
        if not self._terms:
            return -1
        if var not in self._vars:
            return 0
        i = self._vars.index(var)
        return max(e[i] for e in self._terms)

    def used_variables(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self._vars) if any(e[i] for e in self._terms))

    # ---- context handling ---------------------------------------------

    def with_context(self, variables: Iterable[str]) -> "MultiPoly":
        """Re-express over ``variables``, which must include every used variable."""
        variables = tuple(variables)
        if variables == self._vars:
            return self
        missing = set(self.used_variables()) - set(variables)
        if missing:
            raise ValueError(f"context {variables} drops used variables {sorted(missing)}")
        idx = [self._vars.index(v) if v in self._vars else None for v in variables]
        terms = {tuple(e[i] if i is not None else 0 for i in idx): c for e, c in self._terms.items()}
        return MultiPoly._raw(variables, terms)

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        new_vars = tuple(mapping.get(v, v) for v in self._vars)
        if len(set(new_vars)) != len(new_vars):
            raise ValueError(f"renaming {dict(mapping)} collides in {new_vars}")
        return MultiPoly._raw(new_vars, dict(self._terms))

    def _aligned(self, other: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        if self._vars == other._vars:
            return self, other
        ctx = merge_contexts(self._vars, other._vars)
        return self.with_context(ctx), other.with_context(ctx)

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.constant(as_fraction(other), self._vars)

    # ---- ring operations ----------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._aligned(other)
        terms = dict(a._terms)
        for e, c in b._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly._raw(a._vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def scale(self, c: Coefficient) -> "MultiPoly":
        c = as_fraction(c)
        if not c:
            return MultiPoly._raw(self._vars, {})
        return MultiPoly._raw(self._vars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._aligned(other)
        terms: dict[tuple[int, ...], Fraction] = {}
        get = terms.get
        for ea, ca in a._terms.items():
            for eb, cb in b._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                terms[e] = get(e, 0) + ca * cb
        return MultiPoly._raw(a._vars, {e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = MultiPoly.constant(1, self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # ---- calculus and evaluation --------------------------------------

    def partial_derivative(self, var: str) -> "MultiPoly":
        if var not in self._vars:
            raise ValueError(f"{var!r} not in context {self._vars}")
        i = self._vars.index(var)
        terms = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                terms[e[:i] + (k - 1,) + e[i + 1:]] = c * k
        return MultiPoly._raw(self._vars, terms)

    def diff(self, var: str, order: int = 1) -> "MultiPoly":
        p = self
        for _ in range(order):
            p = p.partial_derivative(var)
        return p

    def _check_point(self, point: Mapping[str, object]) -> None:
        missing = [v for v in self._vars if v not in point]
        if missing:
            raise ValueError(f"point does not assign {missing}")

    def evaluate_exact(self, point: Mapping[str, Coefficient]) -> Fraction:
        self._check_point(point)
        vals = [as_fraction(point[v]) for v in self._vars]
        total = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v ** k
            total += t
        return total

    def evaluate_float(self, point: Mapping[str, object]):
        """Approximate value: each coefficient is rounded to binary64 first.

        Point values may be floats or numpy arrays (broadcast elementwise).
        """
        self._check_point(point)
        vals = [point[v] for v in self._vars]
        total = 0.0
        for e, c in self._terms.items():
            t = float(c)
            for v, k in zip(vals, e):
                if k:
                    t = t * v ** k
            total = total + t
        return total

    def substitute(self, var: str, replacement: "MultiPoly") -> "MultiPoly":
        """Compose: replace ``var`` by ``replacement`` (any degree)."""
        if var not in self._vars:
            raise ValueError(f"{var!r} not in context {self._vars}")
        replacement = self._coerce(replacement)
        i = self._vars.index(var)
        # group terms by power of var, then sum coeff * replacement**k
        by_power: dict[int, dict[tuple[int, ...], Fraction]] = {}
        for e, c in self._terms.items():
            by_power.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        ctx = merge_contexts(self._vars, replacement._vars)
        result = MultiPoly.zero(ctx)
        power = MultiPoly.constant(1, ctx)
        for k in range(max(by_power, default=-1) + 1):
            if k:
                power = power * replacement
            if k in by_power:
                result = result + MultiPoly._raw(self._vars, by_power[k]) * power
        return result

    def substitute_affine(self, var: str, replacement: "MultiPoly") -> "MultiPoly":
        """Substitution intended for affine replacements (total degree <= 1).

        Higher-degree replacements are still composed exactly; use
        :meth:`substitute` to make that intent explicit.
        """
        return self.substitute(var, replacement)

    # ---- equality, hashing, display -----------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        if self._vars == other._vars:
            return self._terms == other._terms
        return self._sparse_key() == other._sparse_key()

    def _sparse_key(self) -> frozenset:
        # context-independent identity: monomials as (name, exp) pairs
        return frozenset(
            (tuple((v, k) for v, k in zip(self._vars, e) if k), c) for e, c in self._terms.items()
        )

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self._sparse_key()))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({self._vars!r}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self._vars, e) if k)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # ---- serialization ------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vars": list(self._vars),
            "terms": [
                {"exps": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "MultiPoly":
        variables = tuple(data["vars"])
        terms = {}
        for t in data["terms"]:
            e = tuple(t["exps"])
            if e in terms:
                raise ValueError(f"duplicate monomial {e} in serialized polynomial")
            terms[e] = Fraction(int(t["num"]), int(t["den"]))
        return cls(variables, terms)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        return cls.from_dict(json.loads(text))


_BINOPS = {ast.Add: "__add__", ast.Sub: "__sub__", ast.Mult: "__mul__"}


def parse_poly(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse a polynomial written like ``x^4/4 + 6*x*y - 3.024*10^3*y``.

    Decimal literals are read exactly; division is only allowed by constants.
    """
    variables = tuple(variables)
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node) -> MultiPoly:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            literal = ast.get_source_segment(src, node) or repr(node.value)
            return MultiPoly.constant(Fraction(literal), variables)
        if isinstance(node, ast.Name):
            if node.id not in variables:
                raise ValueError(f"unknown variable {node.id!r}; context is {variables}")
            return MultiPoly.var(node.id, variables)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left, right = ev(node.left), ev(node.right)
            if type(node.op) in _BINOPS:
                return getattr(left, _BINOPS[type(node.op)])(right)
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or right.is_zero():
                    raise ValueError("division is only allowed by nonzero constants")
                return left.scale(1 / right.constant_value())
            if isinstance(node.op, ast.Pow):
                if not right.is_constant() or right.constant_value().denominator != 1:
                    raise ValueError("exponents must be integer constants")
                return left ** int(right.constant_value())
        raise ValueError(f"unsupported syntax in polynomial: {ast.dump(node)}")

    src = text.replace("^", "**")
    return ev(tree)


# module-level spellings of the core operations
def add(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a + b


def mul(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return a * b


def partial_derivative(p: MultiPoly, var: str) -> MultiPoly:
    return p.partial_derivative(var)


def evaluate_exact(p: MultiPoly, point: Mapping[str, Coefficient]) -> Fraction:
    return p.evaluate_exact(point)


def evaluate_float(p: MultiPoly, point: Mapping[str, object]):
    return p.evaluate_float(point)


def substitute_affine(p: MultiPoly, var: str, replacement: MultiPoly) -> MultiPoly:
    return p.substitute_affine(var, replacement)


__all__ += ["add", "mul", "partial_derivative", "evaluate_exact", "evaluate_float", "substitute_affine"]
