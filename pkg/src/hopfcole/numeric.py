"""Float sampling of rational solutions and finite-difference residual checks.

Nothing here feeds back into the exact engine.  The finite-difference
residuals evaluate the candidate only through binary64 point values and
central differences, so they are an independent check of the symbolic
cancellation.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence, TextIO, Union

import numpy as np

from .multipoly import MultiPoly
from .ratfunc import RationalFn

__all__ = [
    "Axis",
    "GridSpec",
    "SampleTable",
    "POLE_THRESHOLD",
    "sample",
    "concat_tables",
    "fd_residual",
    "emit_csv",
    "read_csv",
    "FD_EQUATIONS",
]

POLE_THRESHOLD = 1e-9

Function = Union[RationalFn, MultiPoly]


@dataclass(frozen=True)
class Axis:
    var: str
    min: float
    max: float
    steps: int

    def __post_init__(self):
        if not (self.min < self.max):
            raise ValueError(f"axis {self.var}: need min < max, got [{self.min}, {self.max}]")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError(f"axis {self.var}: steps must be an integer >= 2, got {self.steps}")

    @property
    def step(self) -> float:
        return (self.max - self.min) / self.steps

    def nodes(self) -> np.ndarray:
        """``steps + 1`` equally spaced nodes including both ends."""
        return np.linspace(self.min, self.max, int(self.steps) + 1)

    @classmethod
    def parse(cls, var: str, text: str) -> "Axis":
        """Parse ``min:max:steps``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"axis {var}: expected min:max:steps, got {text!r}")
        lo, hi, steps = float(parts[0]), float(parts[1]), parts[2]
        if not steps.isdigit():
            raise ValueError(f"axis {var}: steps must be a positive integer, got {steps!r}")
        return cls(var, lo, hi, int(steps))


@dataclass(frozen=True)
class GridSpec:
    """Sampling geometry: one or two axes plus fixed values for the rest."""

    axis: Axis
    fixed: Mapping[str, float] = field(default_factory=dict)
    second_axis: Axis | None = None

    def __post_init__(self):
        names = [self.axis.var] + ([self.second_axis.var] if self.second_axis else [])
        if len(set(names)) != len(names):
            raise ValueError("the two axes must use different variables")
        clash = set(names) & set(self.fixed)
        if clash:
            raise ValueError(f"variables {sorted(clash)} are both an axis and fixed")

    @property
    def axes(self) -> tuple[Axis, ...]:
        return (self.axis,) + ((self.second_axis,) if self.second_axis else ())

    @property
    def columns(self) -> tuple[str, ...]:
        return tuple(a.var for a in self.axes) + tuple(self.fixed)

    def covers(self, variables: Sequence[str]) -> bool:
        return set(variables) <= set(self.columns)

    def points(self) -> dict[str, np.ndarray]:
        """Flattened node coordinates, first axis slowest (axis-major)."""
        grids = np.meshgrid(*[a.nodes() for a in self.axes], indexing="ij")
        pts = {a.var: g.ravel() for a, g in zip(self.axes, grids)}
        size = grids[0].size
        for v, val in self.fixed.items():
            pts[v] = np.full(size, float(val))
        return pts


@dataclass
class SampleTable:
    columns: tuple[str, ...]
    coords: np.ndarray  # shape (rows, len(columns))
    values: np.ndarray
    pole: np.ndarray  # bool

    def __len__(self) -> int:
        return len(self.values)

    def rows(self):
        for c, v, p in zip(self.coords, self.values, self.pole):
            yield tuple(float(x) for x in c), float(v), bool(p)


def _as_rational(u: Function) -> RationalFn:
    return u if isinstance(u, RationalFn) else RationalFn(u)


def _broadcast(value, size: int) -> np.ndarray:
    return np.broadcast_to(np.asarray(value, dtype=float), (size,)).copy()


def sample(u: Function, grid: GridSpec) -> SampleTable:
    """Evaluate ``u`` at every grid node in binary64, flagging near-poles.

    A row is flagged when |den| < 1e-9 (1 + |num|).  Its value is still
    reported but should not be trusted.
    """
    u = _as_rational(u)
    if not grid.covers(u.variables):
        missing = sorted(set(u.variables) - set(grid.columns))
        raise ValueError(f"grid does not assign {missing}")
    pts = grid.points()
    size = len(next(iter(pts.values())))
    num = _broadcast(u.num.evaluate_float(pts), size)
    den = _broadcast(u.den_float(pts), size)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = num / den
    pole = np.abs(den) < POLE_THRESHOLD * (1.0 + np.abs(num))
    coords = np.column_stack([pts[c] for c in grid.columns])
    return SampleTable(grid.columns, coords, values, pole)


def concat_tables(tables: Sequence[SampleTable]) -> SampleTable:
    """Stack tables sharing the same columns, preserving order."""
    cols = tables[0].columns
    if any(t.columns != cols for t in tables):
        raise ValueError("tables have different columns")
    return SampleTable(
        cols,
        np.vstack([t.coords for t in tables]),
        np.concatenate([t.values for t in tables]),
        np.concatenate([t.pole for t in tables]),
    )


# ---- finite differences --------------------------------------------------

Field = Callable[[dict], np.ndarray]


def _field(u: Function, log: bool = False) -> Field:
    u = _as_rational(u)

    def f(pt):
        size = len(next(iter(pt.values())))
        val = _broadcast(u.evaluate_float(pt), size)
        return np.log(np.abs(val)) if log else val

    return f


def _shift(pt: dict, var: str, delta: float) -> dict:
    out = dict(pt)
    out[var] = pt[var] + delta
    return out


def _D(g: Field, var: str, h: float) -> Field:
    """Second-order central difference in ``var``."""

    def dg(pt):
        return (g(_shift(pt, var, h)) - g(_shift(pt, var, -h))) / (2.0 * h)

    return dg


def _coord(var: str) -> Field:
    return lambda pt: pt[var]


def _mul(*fs: Field) -> Field:
    def g(pt):
        out = fs[0](pt)
        for f in fs[1:]:
            out = out * f(pt)
        return out

    return g


def _lin(*pairs) -> Field:
    def g(pt):
        return sum(c * f(pt) for c, f in pairs)

    return g


def _shifted_power(u: Field, k: int, var: str, h: float) -> Field:
    w = u
    for _ in range(k):
        w = _lin((1.0, _D(w, var, h)), (1.0, _mul(u, w)))
    return w


def _fd_burgers(u, h, m, time_var="y", space_var="x"):
    f = _field(u)
    w = _shifted_power(f, m - 1, space_var, h)
    return _lin((1.0, _D(f, time_var, h)), (-1.0, _D(w, space_var, h))), (time_var, space_var), m + 1


def _fd_laguerre(u, h):
    f = _field(u)
    fx = _D(f, "x", h)
    f2 = _mul(f, f)
    x = _coord("x")
    rhs = _lin((1.0, _D(_mul(x, fx), "x", h)), (1.0, fx), (1.0, f2), (1.0, _mul(x, _D(f2, "x", h))))
    return _lin((1.0, _D(f, "t", h)), (-1.0, rhs)), ("x", "t"), 2


def _fd_laguerre_log(h_poly, h):
    g = _field(h_poly, log=True)
    gx = _D(g, "x", h)
    x = _coord("x")
    rhs = _lin((1.0, _D(_mul(x, gx), "x", h)), (1.0, _mul(x, gx, gx)))
    return _lin((1.0, _D(g, "t", h)), (-1.0, rhs)), ("x", "t"), 2


def _fd_hybrid_log(psi, h):
    g = _field(psi, log=True)
    gy = _D(g, "y", h)
    gx = _D(g, "x", h)
    y = _coord("y")
    lhs = _lin((1.0, _D(_mul(y, gy), "y", h)), (1.0, _mul(y, gy, gy)))
    rhs = _lin((1.0, _D(gx, "x", h)), (1.0, _mul(gx, gx)))
    return _lin((1.0, lhs), (-1.0, rhs)), ("x", "y"), 2


def _fd_varcoef(u, h, F):
    f = _field(u)
    coef = _field(F)
    adv = _mul(lambda pt: 2.0 / coef(pt), f, _D(f, "x", h))
    res = _lin(
        (1.0, _D(f, "t", h)),
        (1.0, adv),
        (-1.0, _D(_D(f, "x", h), "x", h)),
        (-1.0, _D(_D(f, "y", h), "y", h)),
    )
    return res, ("x", "y", "t"), 2


def _fd_combined(u, h, alpha, beta, gamma):
    f = _field(u)
    w1 = _shifted_power(f, 1, "x", h)
    w2 = _shifted_power(f, 2, "x", h)
    bracket = _lin((float(alpha), f), (float(beta), w1), (float(gamma), w2))
    return _lin((1.0, _D(f, "y", h)), (-1.0, _D(bracket, "x", h))), ("x", "y"), 3


def _fd_hierarchical(u, h, k):
    return _fd_burgers(u, h, k, time_var=f"x{k}", space_var="x1")


FD_EQUATIONS = {
    "burgers": _fd_burgers,
    "hierarchical": _fd_hierarchical,
    "laguerre": _fd_laguerre,
    "laguerre-log": _fd_laguerre_log,
    "hybrid-log": _fd_hybrid_log,
    "varcoef": _fd_varcoef,
    "combined": _fd_combined,
}


def _pole_adjacent(u: RationalFn, pts: dict, dvars: Sequence[str], reach: float) -> np.ndarray:
    """Nodes whose stencil neighbourhood may touch a pole of ``u``.

    The denominator is probed on a fine lattice out to ``reach`` along each
    differentiated variable; a sign change or a near-zero marks the node.
    """
    size = len(next(iter(pts.values())))
    base = _broadcast(u.den_float(pts), size)
    num0 = np.abs(_broadcast(u.num.evaluate_float(pts), size))
    bad = np.abs(base) < POLE_THRESHOLD * (1.0 + num0)
    offsets = np.linspace(-reach, reach, 41)
    for var in dvars:
        for d in offsets:
            den = _broadcast(u.den_float(_shift(pts, var, d)), size)
            bad |= np.sign(den) != np.sign(base)
            bad |= np.abs(den) < POLE_THRESHOLD
    return bad


def fd_residual(u: Function, equation: str, grid: GridSpec, h: float, **params) -> float:
    """Max |central-difference residual| of ``equation`` over the grid.

    For ``laguerre-log`` and ``hybrid-log`` pass the polynomial whose
    logarithm is the solution.  ``varcoef`` needs ``F=`` (the y,t factor).
    For an exact solution the result shrinks like h^2.
    """
    if h <= 0:
        raise ValueError(f"h must be positive, got {h}")
    if equation not in FD_EQUATIONS:
        raise KeyError(f"no finite-difference form for {equation!r}; expected one of {sorted(FD_EQUATIONS)}")
    u = _as_rational(u)
    if not grid.covers(u.variables):
        raise ValueError(f"grid does not assign {sorted(set(u.variables) - set(grid.columns))}")
    residual, dvars, depth = FD_EQUATIONS[equation](u, h, **params)
    pts = grid.points()
    for v in dvars:
        if v not in pts:
            size = len(next(iter(pts.values())))
            pts[v] = np.zeros(size)
    # the singular set: zeros of the denominator, of h under a logarithm, or of F
    if equation.endswith("-log"):
        probe = RationalFn(1, u.num)
    elif equation == "varcoef":
        probe = RationalFn(1, u.den * _as_rational(params["F"]).num)
    else:
        probe = u
    bad = _pole_adjacent(probe, pts, [v for v in dvars if v in probe.variables], 2.0 * depth * h)
    if bad.all():
        raise ValueError("every grid node is adjacent to a pole")
    keep = {k: v[~bad] for k, v in pts.items()}
    return float(np.max(np.abs(residual(keep))))


# ---- CSV -----------------------------------------------------------------


def _fmt(v: float) -> str:
    # repr gives the shortest decimal that round-trips in binary64
    return repr(float(v))


def emit_csv(table: SampleTable, destination: Union[str, os.PathLike, TextIO, None] = None) -> bytes:
    """Write ``table`` as CSV and return the bytes written.

    ``destination`` may be a path, an open text stream, or None (bytes only).
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(table.columns) + ["value", "pole"])
    for coords, value, pole in table.rows():
        writer.writerow([_fmt(c) for c in coords] + [_fmt(value), "1" if pole else "0"])
    text = buf.getvalue()
    if destination is None:
        pass
    elif hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text.encode("utf-8")


def read_csv(source: Union[str, os.PathLike, TextIO]) -> SampleTable:
    if hasattr(source, "read"):
        rows = list(csv.reader(source))
    else:
        with open(source, encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    ncoord = len(header) - 2
    coords = np.array([[float(r[i]) for i in range(ncoord)] for r in body]).reshape(len(body), ncoord)
    values = np.array([float(r[ncoord]) for r in body])
    pole = np.array([r[ncoord + 1] == "1" for r in body], dtype=bool)
    return SampleTable(tuple(header[:ncoord]), coords, values, pole)
