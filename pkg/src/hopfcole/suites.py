"""Named verification suites: published fixtures, residual sweeps, FD cross-checks.

Each suite yields :class:`Item` results; the CLI ``report`` command prints
them and exits 0 only if every item passed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator

from .families import XT, XY, hybrid_l2
from .multipoly import parse_poly
from .numeric import Axis, GridSpec, fd_residual
from .pde import (
    burgers_residual,
    combined_burgers_residual,
    combined_solution,
    hermite_identity_residual,
    hierarchical_burgers_residual,
    hybrid_linear_residual,
    hybrid_log_burgers_residual,
    laguerre_burgers_residual,
    laguerre_solution,
    log_burgers_residual_laguerre,
    variable_coefficient_residual,
    variable_coefficient_solution,
    verify_combined_linear,
)
from .ratfunc import RationalFn, normalize_content, phi_solution

__all__ = ["Item", "Fixture", "FIXTURES", "SUITES", "run_suite", "COMBINED_TRIPLES", "FD_STEPS"]


@dataclass
class Item:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


@dataclass(frozen=True)
class Fixture:
    """A published closed form transcribed as text, with how to compare it."""

    name: str
    num: str
    den: str
    variables: tuple[str, ...]
    build: Callable[[], RationalFn]
    verbatim: bool  # True: structural match after normalization; False: cross-multiplication
    note: str = ""

    def display(self) -> RationalFn:
        return RationalFn(parse_poly(self.num, self.variables), parse_poly(self.den, self.variables))

    def check(self) -> bool:
        ours = self.build()
        theirs = self.display()
        if self.verbatim:
            a, b = normalize_content(ours), normalize_content(theirs)
            return a.num == b.num and a.den == b.den
        return ours == theirs


# The Laguerre displays are printed in (x, y); they are transcribed here with
# y written as t, the family's own time variable.

FIXTURES = (
    Fixture("Phi_2^(2)", "2*x", "2*y + x^2", XY, lambda: phi_solution(2, 2), True),
    Fixture(
        "Phi_4^(2)", "4*x^3 + 24*x*y", "x^4 + 12*x^2*y + 12*y^2", XY, lambda: phi_solution(4, 2), True
    ),
    Fixture(
        "Phi_4^(3) vs display labelled Phi_4^(4)",
        "6*y + x^3",
        "6*x*y + x^4/4",
        XY,
        lambda: phi_solution(4, 3),
        False,
        note="display matches order 3, not 4",
    ),
    Fixture(
        "Phi_9^(3) vs display labelled Phi_9^(4)",
        "9.072*10^4*x^2*y^2 + 3.024*10^3*x^5*y + 9*x^8",
        "6.048*10^4*y^3 + 3.024*10^4*x^3*y^2 + 504*x^6*y + x^9",
        XY,
        lambda: phi_solution(9, 3),
        False,
        note="display matches order 3; the y factors of the x^5 and x^6 terms are restored",
    ),
    Fixture(
        "Laguerre u_3",
        "x^2/12 + x*t/2 + t^2/2",
        "x^3/36 + x^2*t/4 + x*t^2/2 + t^3/6",
        XT,
        lambda: laguerre_solution(3),
        False,
    ),
    Fixture(
        "Laguerre u_7",
        "x^6/3628800 + x^5*t/86400 + x^4*t^2/5760 + x^3*t^3/864 + x^2*t^4/288 + x*t^5/240 + t^6/720",
        "x^7/25401600 + x^6*t/518400 + x^5*t^2/28800 + x^4*t^3/3456 + x^3*t^4/864"
        " + x^2*t^5/480 + x*t^6/720 + t^7/5040",
        XT,
        lambda: laguerre_solution(7),
        False,
    ),
)

# literal transcription of the order-9 display, kept to document that it is not a solution
PHI9_LITERAL = (
    "9.072*10^4*x^2*y^2 + 3.024*10^3*x^5 + 9*x^8",
    "6.048*10^4*y^3 + 3.024*10^4*x^3*y^2 + 504*x^6 + x^9",
)

COMBINED_TRIPLES = (
    (Fraction(1), Fraction(1), Fraction(1)),
    (Fraction(1, 2), Fraction(2), Fraction(-1)),
    (Fraction(0), Fraction(1), Fraction(0)),
    (Fraction(-3, 4), Fraction(0), Fraction(5, 3)),
    (Fraction(2), Fraction(-1, 3), Fraction(0)),
    (Fraction(0), Fraction(0), Fraction(1)),
)

FD_STEPS = (1e-2, 5e-3, 2.5e-3)


def published_fixtures() -> Iterator[Item]:
    for fx in FIXTURES:
        yield Item(fx.name, fx.check(), fx.note)


def _sweep(name: str, cases, build) -> Item:
    failed = [c for c in cases if not build(*c).is_zero()]
    detail = f"{len(cases)} cases" + (f", nonzero at {failed[:5]}" if failed else "")
    return Item(name, not failed, detail)


def residual_sweep() -> Iterator[Item]:
    yield _sweep(
        "burgers Phi_n^(m), 1<=n<=10, 2<=m<=7",
        [(n, m) for n in range(1, 11) for m in range(2, 8)],
        lambda n, m: burgers_residual(phi_solution(n, m), m),
    )
    yield _sweep("laguerre Burgers, 1<=n<=10", [(n,) for n in range(1, 11)], laguerre_burgers_residual)
    yield _sweep("laguerre log-Burgers, 1<=n<=10", [(n,) for n in range(1, 11)], log_burgers_residual_laguerre)
    yield _sweep(
        "laguerre log-Burgers unreduced, 1<=n<=10",
        [(n,) for n in range(1, 11)],
        lambda n: log_burgers_residual_laguerre(n, reduced=False),
    )
    yield _sweep("hybrid linear PDE, 0<=n<=10", [(n,) for n in range(11)], hybrid_linear_residual)
    yield _sweep("hybrid log-Burgers, 0<=n<=10", [(n,) for n in range(11)], hybrid_log_burgers_residual)
    yield _sweep(
        "hybrid log-Burgers unreduced, 0<=n<=10",
        [(n,) for n in range(11)],
        lambda n: hybrid_log_burgers_residual(n, reduced=False),
    )
    yield _sweep(
        "hierarchical, 1<=n<=6, 2<=m<=5, 1<k<=m",
        [(n, m, k) for n in range(1, 7) for m in range(2, 6) for k in range(2, m + 1)],
        hierarchical_burgers_residual,
    )
    cases = [(n, *abc) for n in range(1, 7) for abc in COMBINED_TRIPLES]
    yield _sweep(f"combined Burgers, 1<=n<=6, {len(COMBINED_TRIPLES)} triples", cases, combined_burgers_residual)
    yield _sweep(f"combined linear, 1<=n<=6, {len(COMBINED_TRIPLES)} triples", cases, verify_combined_linear)
    yield _sweep("variable coefficient, 1<=n<=6", [(n,) for n in range(1, 7)], variable_coefficient_residual)
    yield _sweep("Hermite identity, 3<=n<=12", [(n,) for n in range(3, 13)], hermite_identity_residual)


def fd_cases():
    """Six verified solutions with pole-free grids for the h^2 ratio test."""
    u_var, F = variable_coefficient_solution(2)
    return [
        ("burgers Phi_2^(2)", phi_solution(2, 2), "burgers", GridSpec(Axis("x", 1, 3, 20), {"y": 1.0}), {"m": 2}),
        ("burgers Phi_4^(3)", phi_solution(4, 3), "burgers", GridSpec(Axis("x", 1, 3, 20), {"y": 1.0}), {"m": 3}),
        ("laguerre u_3", laguerre_solution(3), "laguerre", GridSpec(Axis("x", 0.5, 3, 20), {"t": 1.0}), {}),
        ("hybrid log 2L_4", hybrid_l2(4), "hybrid-log", GridSpec(Axis("x", 0.5, 3, 20), {"y": 1.0}), {}),
        ("variable coefficient n=2", u_var, "varcoef", GridSpec(Axis("x", 1, 3, 20), {"y": 1.0, "t": 0.5}), {"F": F}),
        (
            "combined n=3 (1/2, 2, -1)",
            combined_solution(3, Fraction(1, 2), 2, -1),
            "combined",
            GridSpec(Axis("x", 1, 3, 20), {"y": 0.5}),
            {"alpha": 0.5, "beta": 2.0, "gamma": -1.0},
        ),
    ]


def fd_crosscheck() -> Iterator[Item]:
    for name, u, eq, grid, params in fd_cases():
        res = [fd_residual(u, eq, grid, h, **params) for h in FD_STEPS]
        ratios = [res[i] / res[i + 1] for i in range(len(res) - 1)]
        ok = all(3.5 <= r <= 4.5 for r in ratios)
        yield Item(name, ok, "ratios " + ", ".join(f"{r:.3f}" for r in ratios))


SUITES = {
    "paper-fixtures": published_fixtures,
    "residual-sweep": residual_sweep,
    "fd-crosscheck": fd_crosscheck,
}


def run_suite(name: str) -> list[Item]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    return list(SUITES[name]())
