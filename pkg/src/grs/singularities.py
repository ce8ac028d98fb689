"""Accessible singular points, local indices and the alpha-test.

An accessible singular point sits on the boundary divisor (the locus where
the extended field has its order-one pole).  In a divisor chart the field
takes the shape

    ds/dt = F1(s, d) / d,      dd/dt = F2(s, d)

with d the local divisor equation.  A point (s0, 0) is accessible when
F1(s0, 0) = 0; its multiplicity is the vanishing order of F1(s, 0) at s0.
The linear-approximation matrix is the Jacobian of (d * ds/dt, d * dd/dt)
at the point, with the chain-rule correction -s0'(t) entering the entry
(along-divisor row, divisor column) whenever the location moves with t.
That correction is what pins the overall normalization of recovered
systems with a singular point at X = t.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

from .algebra import Context, MRat, Mat2, Sym
from .surface import PlaneVectorField, chart_transform


class SingularityError(Exception):
    pass


class NotAccessible(SingularityError):
    pass


class UnresolvedFactor(SingularityError):
    """A numerator factor of degree >= 2 has no root in the candidate set."""

    def __init__(self, factor):
        self.factor = factor
        super().__init__(f"unresolved factor: {factor}")


class ZeroLeadingEigenvalue(SingularityError):
    pass


# ---------------------------------------------------------------------------
# Local fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalField:
    """A field in local coordinates with divisor = {d-symbol = 0}.

    ``divisor`` names which of the two context symbols ("x" or "y") cuts out
    the divisor; the other symbol runs along it.
    """

    fx: MRat
    fy: MRat
    divisor: str

    @property
    def ctx(self) -> Context:
        return self.fx.ctx

    @property
    def along(self) -> str:
        return "y" if self.divisor == "x" else "x"

    def component(self, name: str) -> MRat:
        return self.fx if name == "x" else self.fy


def divisor_chart_local(vf: PlaneVectorField, chart: str) -> LocalField:
    """The field in a divisor chart (U2 or U3), divisor = second coordinate."""
    if chart not in ("U2", "U3"):
        raise SingularityError("divisor charts are U2 and U3")
    w = chart_transform(vf, chart)
    return LocalField(w.dxdt, w.dydt, divisor="y")


def restricted_numerator(local: LocalField) -> list[MRat]:
    """Coefficients of F1(s, 0), the pole numerator restricted to the divisor.

    Returned as a univariate coefficient list in the along-divisor variable
    with coefficients in Q(t, params).
    """
    ctx = local.ctx
    d = ctx.var(local.divisor)
    cleared = local.component(local.along) * d
    if not cleared.is_polynomial_in(("x", "y")):
        raise SingularityError(
            f"{local.along}-component has a pole of order > 1 along the divisor: {cleared}")
    num = cleared.num
    den = MRat.from_poly(cleared.den)
    base = num.coefficient(local.divisor, 0)
    univ = base.as_univariate(local.along)
    top = max(univ, default=0)
    return [MRat.from_poly(univ.get(k, ctx.poly(0))) / den for k in range(top + 1)]


# ---------------------------------------------------------------------------
# Root finding over Q(t, params) by candidate trial and deflation
# ---------------------------------------------------------------------------


def _eval_coeffs(coeffs: list[MRat], value: MRat) -> MRat:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * value + c
    return acc


def _deflate(coeffs: list[MRat], root: MRat) -> list[MRat]:
    """Synthetic division by (var - root); the division must be exact."""
    out: list[MRat] = [None] * (len(coeffs) - 1)
    carry = coeffs[-1]
    for k in range(len(coeffs) - 2, -1, -1):
        out[k] = carry
        carry = coeffs[k] + carry * root
    if not carry.is_zero():
        raise SingularityError("deflation by a non-root")
    return out


def _trim(coeffs: list[MRat]) -> list[MRat]:
    while len(coeffs) > 1 and coeffs[-1].is_zero():
        coeffs = coeffs[:-1]
    return coeffs


def find_divisor_roots(coefficients: Sequence[MRat],
                       candidates: Sequence[MRat]) -> list[tuple[MRat, int]]:
    """All roots of a univariate polynomial over Q(t, params), with multiplicity.

    Tries the candidate set, then deflates; a linear residual factor is
    solved directly, a residual of degree >= 2 raises UnresolvedFactor.
    """
    coeffs = _trim(list(coefficients))
    if len(coeffs) == 1:
        if coeffs[0].is_zero():
            raise SingularityError("numerator vanishes identically on the divisor")
        return []
    roots: list[tuple[MRat, int]] = []
    for cand in candidates:
        mult = 0
        while len(coeffs) > 1 and _eval_coeffs(coeffs, cand).is_zero():
            coeffs = _trim(_deflate(coeffs, cand))
            mult += 1
        if mult:
            roots.append((cand, mult))
    while len(coeffs) == 2:
        root = -(coeffs[0] / coeffs[1])
        coeffs = [coeffs[1]]
        for i, (r, m) in enumerate(roots):
            if r == root:
                roots[i] = (r, m + 1)
                break
        else:
            roots.append((root, 1))
    if len(coeffs) > 2:
        residual = " + ".join(f"({c})*X^{k}" for k, c in enumerate(coeffs) if not c.is_zero())
        raise UnresolvedFactor(residual)
    return roots


def default_candidates(ctx: Context) -> list[MRat]:
    cands = [ctx.rat(0), ctx.rat(1)]
    if "t" in ctx:
        cands.append(ctx.var("t"))
    env = os.environ.get("GRS_CANDIDATE_ROOTS", "")
    for chunk in env.split(","):
        chunk = chunk.strip()
        if chunk:
            cands.append(ctx.parse(chunk))
    return cands


# ---------------------------------------------------------------------------
# Accessible points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AccessiblePoint:
    """A divisor point (location, 0) where solutions may enter the interior."""

    chart: str
    location: MRat
    multiplicity: int
    at_infinity: bool = False

    @property
    def label(self) -> str:
        return "inf" if self.at_infinity else str(self.location)

    def coordinates(self) -> tuple[MRat, MRat]:
        return self.location, self.location.ctx.rat(0)

    def __str__(self):
        mult = f" ({self.multiplicity})" if self.multiplicity > 1 else ""
        return f"X={self.label}{mult}"


def accessible_points(vf: PlaneVectorField,
                      extra_candidates: Sequence[MRat] = ()) -> list[AccessiblePoint]:
    """All accessible singular points on the boundary divisor.

    Finite locations are found in chart U2, the point at infinity in U3
    (always by moving to the chart, never by projective limits).
    """
    ctx = vf.ctx
    candidates = default_candidates(ctx) + list(extra_candidates)
    u2 = divisor_chart_local(vf, "U2")
    f1 = restricted_numerator(u2)
    points = [AccessiblePoint("U2", root, mult)
              for root, mult in find_divisor_roots(f1, candidates)]
    u3 = divisor_chart_local(vf, "U3")
    f1_inf = restricted_numerator(u3)
    zero = ctx.rat(0)
    coeffs = _trim(list(f1_inf))
    mult = 0
    while len(coeffs) > 1 and _eval_coeffs(coeffs, zero).is_zero():
        coeffs = _trim(_deflate(coeffs, zero))
        mult += 1
    if mult:
        points.append(AccessiblePoint("U3", zero, mult, at_infinity=True))
    return points


def is_accessible(vf: PlaneVectorField, location: MRat | None) -> bool:
    """Whether the divisor point X=location (None for infinity) is accessible."""
    if location is None:
        local = divisor_chart_local(vf, "U3")
        location = vf.ctx.rat(0)
    else:
        local = divisor_chart_local(vf, "U2")
    return _eval_coeffs(restricted_numerator(local), location).is_zero()


# ---------------------------------------------------------------------------
# Linearization / local index
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalIndex:
    """Linear approximation data at an accessible point.

    The matrix is stored exactly as extracted, rows and columns in the local
    chart's (x, y) order.  ``eigenvalues`` is the ordered pair (divisor
    eigenvalue, along-divisor eigenvalue); ``ratio`` is along/divisor, the
    quantity that must be an integer for the Painleve property.
    """

    matrix: Mat2
    divisor: str
    eigenvalues: tuple[MRat, MRat]
    ratio: MRat

    def scale_relative_to(self, reference: MRat) -> Mat2:
        return self.matrix.scale(reference.inverse())


def linearization_matrix(local: LocalField, along_location: MRat,
                         time: str = "t") -> tuple[Mat2, MRat]:
    """Matrix of linear approximation and the accessibility value F1(p).

    No accessibility check is performed here; callers either verify the
    returned value is zero or emit it as a constraint equation.
    """
    ctx = local.ctx
    d_name, s_name = local.divisor, local.along
    d = ctx.var(d_name)
    point = {s_name: along_location, d_name: ctx.rat(0)}
    rows = {}
    for name in ("x", "y"):
        cleared = local.component(name) * d
        rows[name] = cleared
    access_value = rows[s_name].subs(point)
    moving = along_location.derivative(time) if time in ctx else ctx.rat(0)
    entries = [[None, None], [None, None]]
    order = ("x", "y")
    for i, row_name in enumerate(order):
        for j, col_name in enumerate(order):
            entries[i][j] = rows[row_name].derivative(col_name).subs(point)
    if not moving.is_zero():
        i = order.index(s_name)
        j = order.index(d_name)
        entries[i][j] = entries[i][j] - moving
    return Mat2(entries), access_value


def local_index_from_matrix(matrix: Mat2, divisor: str) -> LocalIndex:
    kind = matrix.triangular_kind()
    if kind is None:
        raise SingularityError(f"linearization matrix is not triangular: {matrix}")
    order = ("x", "y")
    di = order.index(divisor)
    si = 1 - di
    a11 = matrix[di, di]
    a22 = matrix[si, si]
    if a11.is_zero():
        raise ZeroLeadingEigenvalue(f"divisor eigenvalue vanishes in {matrix}")
    return LocalIndex(matrix, divisor, (a11, a22), a22 / a11)


def linearization(vf: PlaneVectorField, point: AccessiblePoint) -> LocalIndex:
    """Local index of vf at an accessible point (charts U2/U3)."""
    local = divisor_chart_local(vf, point.chart)
    matrix, access = linearization_matrix(local, point.location)
    if not access.is_zero():
        raise NotAccessible(f"numerator {access} does not vanish at {point}")
    return local_index_from_matrix(matrix, local.divisor)


# ---------------------------------------------------------------------------
# Alpha test
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaTestResult:
    """Outcome of the scaling test at a simple accessible point.

    reduced is the constant-coefficient matrix at t = t0 (the limit system
    d(S,D)/dT = (1/D) * reduced * (S,D) in the scaled variables); the closed
    form follows the two explicit solution shapes, a power law with exponent
    ratio for distinct eigenvalues or a logarithm multiplied by the coupling
    entry in the resonant case.
    """

    reduced: Mat2
    divisor: str
    closed_form: str
    single_valued: bool
    reason: str
    ratio: MRat


def alpha_test(vf: PlaneVectorField, point: AccessiblePoint,
               t0_name: str = "t0") -> AlphaTestResult:
    if point.multiplicity != 1:
        raise SingularityError("alpha test applies to simple points")
    index = linearization(vf, point)
    ctx = index.matrix[0, 0].ctx
    if t0_name not in ctx:
        ctx = ctx.extend([Sym(t0_name, "parameter")])
    t0 = ctx.var(t0_name)
    fix = {"t": t0}

    def at_t0(r: MRat) -> MRat:
        return r.lift(ctx).subs(fix)

    reduced = Mat2([[at_t0(index.matrix[i, j]) for j in range(2)] for i in range(2)])
    order = ("x", "y")
    di = order.index(index.divisor)
    si = 1 - di
    a11 = reduced[di, di]
    a22 = reduced[si, si]
    # the along-divisor equation couples to the divisor variable through the
    # single off-diagonal entry of the triangular matrix
    coupling = reduced[si, di]
    if a11.is_zero():
        raise ZeroLeadingEigenvalue("a11(t0) = 0: ratio undefined")
    dname = "W" if index.divisor == "y" else "U"
    sname = "Z" if index.divisor == "y" else "V"
    first = f"{dname}(T) = ({a11})*T + C1"
    if a11 == a22:
        log_coeff = coupling / a11
        closed = (f"{first}; {sname}(T) = C2*(({a11})*T + C1) + "
                  f"({log_coeff})*(({a11})*T + C1)*Log(({a11})*T + C1)")
        if coupling.is_zero():
            return AlphaTestResult(reduced, index.divisor, closed, True,
                                   "integer-ratio", ctx.rat(1))
        return AlphaTestResult(reduced, index.divisor, closed, False,
                               "resonant-requires-zero", ctx.rat(1))
    ratio = a22 / a11
    tail = coupling / (a11 - a22)
    closed = (f"{first}; {sname}(T) = C2*(({a11})*T + C1)^({ratio}) + "
              f"({tail})*(({a11})*T + C1)")
    if ratio.is_integer():
        return AlphaTestResult(reduced, index.divisor, closed, True, "integer-ratio", ratio)
    return AlphaTestResult(reduced, index.divisor, closed, False, "branching", ratio)


# ---------------------------------------------------------------------------
# Branch point screen
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScreenReport:
    passes: bool
    ratios: tuple[MRat, ...]
    non_integer: tuple[MRat, ...]

    def __bool__(self):
        return self.passes


def branch_point_screen(ratios: Sequence[MRat]) -> ScreenReport:
    """Necessary single-valuedness condition: every local-index ratio in Z."""
    bad = tuple(r for r in ratios if not r.is_integer())
    return ScreenReport(not bad, tuple(ratios), bad)


def screen_vector_field(vf: PlaneVectorField,
                        extra_candidates: Sequence[MRat] = ()) -> ScreenReport:
    ratios = []
    for p in accessible_points(vf, extra_candidates):
        if p.multiplicity == 1:
            ratios.append(linearization(vf, p).ratio)
    return branch_point_screen(ratios)
