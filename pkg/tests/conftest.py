from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import strategies as st

from hopfcole.multipoly import MultiPoly
from hopfcole.ratfunc import RationalFn

XY = ("x", "y")


def to_sympy(p):
    """MultiPoly or RationalFn -> sympy expression (test oracle bridge)."""
    if isinstance(p, RationalFn):
        return to_sympy(p.num) / to_sympy(p.den)
    syms = [sp.Symbol(v) for v in p.variables]
    expr = sp.Integer(0)
    for exps, c in p.terms.items():
        term = sp.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, exps):
            term *= s**e
        expr += term
    return sp.expand(expr)


def from_sympy(expr, variables):
    poly = sp.Poly(sp.expand(expr), *[sp.Symbol(v) for v in variables])
    return MultiPoly(variables, {m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polys(draw, variables=XY, max_exp=3, max_terms=5):
    n = len(variables)
    exps = st.tuples(*[st.integers(0, max_exp)] * n)
    terms = draw(st.dictionaries(exps, coefficients, max_size=max_terms))
    return MultiPoly(variables, terms)


@st.composite
def nonzero_polys(draw, variables=XY, max_exp=2, max_terms=3):
    p = draw(polys(variables, max_exp, max_terms))
    if p.is_zero():
        p = p + 1
    return p


@st.composite
def ratfuncs(draw):
    return RationalFn(draw(polys(max_exp=2, max_terms=3)), draw(nonzero_polys()))


@pytest.fixture
def x():
    return MultiPoly.var("x", XY)


@pytest.fixture
def y():
    return MultiPoly.var("y", XY)
