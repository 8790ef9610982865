"""Family constructors, checked against sympy series expansions and hand values."""

from fractions import Fraction
from math import factorial

import pytest
import sympy as sp

from hopfcole.families import (
    FamilySpec,
    apply_c0_operator,
    bessel_c0_truncated,
    c0_eigen_residual,
    complete_vars,
    exp_series_product,
    exp_series_recurrence,
    hermite2,
    hermite3_complete,
    hermite_complete_m,
    hermite_lacunary,
    hybrid_l2,
    laguerre2,
    shifted_hermite3,
)
from hopfcole.multipoly import MultiPoly, parse_poly

from conftest import XY, from_sympy

X, Y, T = sp.symbols("x y t")


def sympy_lacunary(n, m):
    """n! [t^n] exp(x t + y t^m), computed by sympy's series expansion."""
    s = sp.series(sp.exp(X * T + Y * T**m), T, 0, n + 1).removeO()
    return sp.expand(sp.factorial(n) * s.coeff(T, n))


def sympy_complete(n, m):
    xs = sp.symbols(" ".join(complete_vars(m)))
    s = sp.series(sp.exp(sum(xk * T ** (k + 1) for k, xk in enumerate(xs))), T, 0, n + 1).removeO()
    return sp.expand(sp.factorial(n) * s.coeff(T, n))


class TestHermite:
    @pytest.mark.parametrize(
        "n, text", [(0, "1"), (2, "x^2 + 2*y"), (4, "x^4 + 12*x^2*y + 12*y^2")]
    )
    def test_hermite2_values(self, n, text):
        assert hermite2(n) == parse_poly(text, XY)

    @pytest.mark.parametrize(
        "n, m, text",
        [
            (3, 3, "x^3 + 6*y"),
            (9, 3, "x^9 + 504*x^6*y + 30240*x^3*y^2 + 60480*y^3"),
            (4, 5, "x^4"),
        ],
    )
    def test_lacunary_values(self, n, m, text):
        assert hermite_lacunary(n, m) == parse_poly(text, XY)

    def test_m2_is_hermite2(self):
        for n in range(10):
            assert hermite_lacunary(n, 2) == hermite2(n)

    @pytest.mark.parametrize("m", [2, 3, 5])
    @pytest.mark.parametrize("n", [0, 1, 4, 7])
    def test_lacunary_matches_generating_function(self, n, m):
        assert hermite_lacunary(n, m) == from_sympy(sympy_lacunary(n, m), XY)

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            hermite2(-1)
        with pytest.raises(ValueError):
            hermite_lacunary(3, 1)

    def test_derivative_recurrence(self):
        for m in range(2, 8):
            for n in range(1, 13):
                assert hermite_lacunary(n, m).partial_derivative("x") == hermite_lacunary(n - 1, m) * n

    def test_lacunary_solves_mth_heat_equation(self):
        for m in range(2, 8):
            for n in range(13):
                p = hermite_lacunary(n, m)
                assert p.partial_derivative("y") == p.diff("x", m)


class TestComplete:
    C3 = ("x1", "x2", "x3")

    def test_values(self):
        assert hermite3_complete(2) == parse_poly("x1^2 + 2*x2", self.C3)
        assert hermite_complete_m(1, 5) == MultiPoly.var("x1", complete_vars(5))
        assert hermite_complete_m(3, 3) == parse_poly("x1^3 + 6*x1*x2 + 6*x3", self.C3)
        assert hermite_complete_m(2, 4) == parse_poly("x1^2 + 2*x2", complete_vars(4))

    def test_reductions(self):
        zero = MultiPoly.zero(self.C3)
        for n in range(11):
            h = hermite3_complete(n)
            lac = hermite_lacunary(n, 3).rename({"x": "x1", "y": "x3"})
            assert h.substitute("x2", zero) == lac
            assert h.substitute("x3", zero) == hermite2(n).rename({"x": "x1", "y": "x2"})

    def test_reduction_examples(self):
        zero = MultiPoly.zero(self.C3)
        assert hermite3_complete(3).substitute("x2", zero) == parse_poly("x1^3 + 6*x3", self.C3)
        assert hermite3_complete(3).substitute("x3", zero) == parse_poly("x1^3 + 6*x1*x2", self.C3)

    def test_recurrences(self):
        for n in range(1, 11):
            h = hermite3_complete(n)
            assert h.partial_derivative("x1") == hermite3_complete(n - 1) * n
            assert h.partial_derivative("x2") == h.diff("x1", 2)
            assert h.partial_derivative("x3") == h.diff("x1", 3)

    def test_series_definition_matches_closed_form(self):
        for n in range(9):
            assert hermite_complete_m(n, 3) == hermite3_complete(n)

    @pytest.mark.parametrize("n, m", [(4, 4), (6, 5), (5, 7)])
    def test_matches_sympy(self, n, m):
        assert hermite_complete_m(n, m) == from_sympy(sympy_complete(n, m), complete_vars(m))

    def test_two_series_routes_agree(self):
        for m in (2, 3, 6):
            assert exp_series_product(m, 7) == exp_series_recurrence(m, 7)


class TestLaguerreAndHybrid:
    XT = ("x", "t")

    def test_laguerre_values(self):
        assert laguerre2(0) == MultiPoly.constant(1, self.XT)
        assert laguerre2(1) == parse_poly("t + x", self.XT)
        assert laguerre2(3) == parse_poly("t^3 + 3*t^2*x + 3/2*t*x^2 + 1/6*x^3", self.XT)

    def test_laguerre_solves_diffusion(self):
        for n in range(11):
            L = laguerre2(n)
            assert L.partial_derivative("t") == (MultiPoly.var("x", self.XT) * L.partial_derivative("x")).partial_derivative("x")

    def test_hybrid_values(self):
        assert hybrid_l2(2) == parse_poly("x^2 + 2*y", XY)
        assert hybrid_l2(4) == parse_poly("x^4 + 12*x^2*y + 6*y^2", XY)
        assert hybrid_l2(1) == parse_poly("x", XY)

    def test_c0_truncations(self):
        z = ("z",)
        assert bessel_c0_truncated(0) == MultiPoly.constant(1, z)
        assert bessel_c0_truncated(2) == parse_poly("1 + z + z^2/4", z)
        assert bessel_c0_truncated(3) == parse_poly("1 + z + z^2/4 + z^3/36", z)

    def test_c0_operator(self):
        assert apply_c0_operator(1) == parse_poly("x", XY)
        assert apply_c0_operator(2) == parse_poly("x^2 + 2*y", XY)
        assert apply_c0_operator(4) == parse_poly("x^4 + 12*x^2*y + 6*y^2", XY)
        for n in range(11):
            assert apply_c0_operator(n) == hybrid_l2(n)

    @pytest.mark.parametrize("N", range(7))
    def test_c0_eigen_residual_is_the_tail(self, N):
        expected = MultiPoly.monomial(("z", "lam"), {"z": N, "lam": N + 1}, Fraction(-1, factorial(N) ** 2))
        assert c0_eigen_residual(N) == expected

    def test_boundary_conditions(self):
        C3 = ("x1", "x2", "x3")
        for n in range(9):
            xn = MultiPoly.monomial(XY, {"x": n})
            zero = MultiPoly.zero(XY)
            for p in (hermite2(n), hermite_lacunary(n, 4), hybrid_l2(n)):
                assert p.substitute("y", zero) == xn
            c = hermite3_complete(n).substitute("x2", MultiPoly.zero(C3)).substitute("x3", MultiPoly.zero(C3))
            assert c == MultiPoly.monomial(C3, {"x1": n})

    def test_laguerre_edges(self):
        # the (r!)^2 weights leave x^n/n! on the t = 0 edge and t^n on x = 0
        for n in range(9):
            L = laguerre2(n)
            assert L.substitute("t", MultiPoly.zero(self.XT)) == MultiPoly.monomial(self.XT, {"x": n}, Fraction(1, factorial(n)))
            assert L.substitute("x", MultiPoly.zero(self.XT)) == MultiPoly.monomial(self.XT, {"t": n})


class TestShifted:
    def test_zero_shift_is_monomial(self):
        for n in range(7):
            assert shifted_hermite3(n, 0, 0, 0) == MultiPoly.monomial(XY, {"x": n})

    def test_degree_one(self):
        assert shifted_hermite3(1, Fraction(2, 3), 5, -1) == parse_poly("x + 2/3*y", XY)

    def test_n2(self):
        assert shifted_hermite3(2, 1, 1, 0) == parse_poly("x^2 + 2*x*y + y^2 + 2*y", XY)


class TestFamilySpec:
    def test_json_round_trip_omits_unused(self):
        spec = FamilySpec(kind="ShiftedHermite3", n=3, alpha=Fraction(1, 2), beta=2, gamma=Fraction(-1))
        d = spec.to_dict()
        assert d == {"kind": "ShiftedHermite3", "n": 3, "alpha": "1/2", "beta": "2/1", "gamma": "-1/1"}
        assert FamilySpec.from_json(spec.to_json()) == spec
        assert FamilySpec(kind="Hermite2", n=4).to_dict() == {"kind": "Hermite2", "n": 4}
        assert FamilySpec(kind="BesselC0", N=3).to_dict() == {"kind": "BesselC0", "N": 3}

    def test_build(self):
        assert FamilySpec(kind="hermite2", n=4).build() == hermite2(4)
        assert FamilySpec(kind="HermiteLacunary", n=9, m=3).build() == hermite_lacunary(9, 3)
        assert FamilySpec(kind="laguerre2", n=2).build() == laguerre2(2)

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(kind="Hermite2", n=-1),
            dict(kind="HermiteLacunary", n=3, m=1),
            dict(kind="HermiteLacunary", n=3),
            dict(kind="BesselC0"),
            dict(kind="Legendre", n=2),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            FamilySpec(**kwargs)
