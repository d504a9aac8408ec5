"""Everything measured about a curve: rational points, singular points,
tangent lines, intersection multiplicities, the line spectrum a_i, and the
Frobenius classicality verdict.

Counting is available through two independent strategies (full point
iteration and an affine line sweep whose per-line root counts come from
gcds with t^q - t); the test suite insists they agree.  The spectrum is
likewise computed both from the rational point list and from per-line
restrictions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import locus, plane, unipoly
from .curve import PlaneCurve, frobenius_form, divides, has_linear_component


class _Infinite:
    """Sentinel for the intersection multiplicity of a contained line."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


@dataclass(frozen=True)
class CountReport:
    """Exact rational-point data for one curve."""

    q: int
    d: int
    N: int
    points: tuple
    rational_singular: tuple
    linear_component: Optional[tuple]

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "d": self.d,
            "N": self.N,
            "points": [plane.point_to_string(p) for p in self.points],
            "singular_rational": [plane.point_to_string(p) for p in self.rational_singular],
            "linear_component": (
                plane.point_to_string(self.linear_component)
                if self.linear_component
                else None
            ),
        }


def rational_points(curve: PlaneCurve) -> tuple:
    """Normalized rational points of the curve, in enumeration order."""
    return tuple(
        p for p in plane.enumerate_points(curve.ctx) if curve.evaluate(p) == 0
    )


def count_points(curve: PlaneCurve) -> CountReport:
    """Point count plus the classification data the bounds need."""
    pts = rational_points(curve)
    return CountReport(
        q=curve.ctx.q,
        d=curve.degree,
        N=len(pts),
        points=pts,
        rational_singular=singular_rational_points(curve),
        linear_component=has_linear_component(curve),
    )


def count_by_line_sweep(curve: PlaneCurve) -> int:
    """Independent counter: sweep the affine lines x = const, then Z = 0.

    Root counts per line come from deg gcd(f, t^q - t), not from point
    evaluation, so the two counters share no code path.
    """
    ctx = curve.ctx
    q = ctx.q
    total = 0
    for alpha in range(q):
        # the affine line X = alpha (points (alpha : t : 1))
        f = _substituted_unipoly(curve, alpha)
        if not f:
            total += q
        else:
            total += unipoly.root_count_in_field(ctx, f)
    # the line Z = 0: points (1 : t : 0) and (0 : 1 : 0)
    g = [0] * (curve.degree + 1)
    for (i, j, k), c in curve.terms.items():
        if k == 0:
            g[j] = ctx.add(g[j], c)
    gl = unipoly.trim(list(g))
    if not gl:
        total += q + 1
    else:
        total += unipoly.root_count_in_field(ctx, gl)
        if unipoly.deg(gl) < curve.degree:
            total += 1  # (0 : 1 : 0) is a root of the binary form at infinity
    return total


def _substituted_unipoly(curve: PlaneCurve, alpha: int) -> list[int]:
    """F(alpha, t, 1) as a univariate polynomial in t."""
    ctx = curve.ctx
    apow = ctx.powers(alpha, curve.degree)
    out = [0] * (curve.degree + 1)
    for (i, j, _k), c in curve.terms.items():
        out[j] = ctx.add(out[j], ctx.mul(c, apow[i]))
    return unipoly.trim(out)


def singular_rational_points(curve: PlaneCurve) -> tuple:
    """Rational points where F and all three partials vanish.

    The F(P) = 0 test is mandatory: when the characteristic divides the
    degree, vanishing partials do not imply membership.
    """
    parts = [p for p in curve.partials() if p is not None]
    out = []
    for point in plane.enumerate_points(curve.ctx):
        if curve.evaluate(point) != 0:
            continue
        if all(p.evaluate(point) == 0 for p in parts):
            out.append(point)
    return tuple(out)


@dataclass(frozen=True)
class NonsingularityVerdict:
    """Outcome of the geometric nonsingularity check."""

    status: str  # "nonsingular" | "singular" | "inconclusive"
    certified: bool
    m_budget: int
    witness_degree: Optional[int] = None
    witness_point: Optional[tuple] = None

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "certified": self.certified,
            "m_budget": self.m_budget,
            "witness_degree": self.witness_degree,
            "witness_point": (
                plane.point_to_string(self.witness_point) if self.witness_point else None
            ),
        }


def certificate_budget(d: int) -> int:
    """Singular points of a degree-d curve live in degree <= (d-1)^2."""
    return max(1, (d - 1) ** 2)


def is_geometrically_nonsingular(
    curve: PlaneCurve, m_budget: int, enum_cap: int = 10 ** 6
) -> NonsingularityVerdict:
    """Nonsingularity over the algebraic closure, reported against a budget.

    The verdict is "nonsingular" (with a completeness certificate) when the
    locus is empty and m_budget >= (d-1)^2, "singular" with the witness
    extension degree when one exists within the budget, and "inconclusive"
    otherwise.
    """
    if m_budget < 1:
        raise ValueError("m_budget must be >= 1")
    result = locus.decide_singular_locus(curve, enum_cap=enum_cap)
    needed = certificate_budget(curve.degree)
    if result.empty:
        if m_budget >= needed:
            return NonsingularityVerdict("nonsingular", True, m_budget)
        return NonsingularityVerdict("inconclusive", False, m_budget)
    if result.min_degree is not None and result.min_degree <= m_budget:
        return NonsingularityVerdict(
            "singular",
            True,
            m_budget,
            witness_degree=result.min_degree,
            witness_point=result.witness_rational,
        )
    return NonsingularityVerdict("inconclusive", False, m_budget)


def tangent_line(curve: PlaneCurve, point) -> tuple:
    """The embedded tangent (F_X(P), F_Y(P), F_Z(P)) at a nonsingular point."""
    ctx = curve.ctx
    point = plane.normalize(ctx, point)
    if curve.evaluate(point) != 0:
        raise ValueError(f"{point} is not on the curve")
    fx, fy, fz = curve.partials()
    coeffs = tuple(
        p.evaluate(point) if p is not None else 0 for p in (fx, fy, fz)
    )
    if coeffs == (0, 0, 0):
        raise ValueError(f"{point} is a singular point; no tangent line")
    return plane.normalize(ctx, coeffs)


def intersection_multiplicity(curve: PlaneCurve, line, point):
    """Order of vanishing of the restriction at the point, or INFINITE.

    The line is parameterized as s*P + t*Q for any second point Q on it;
    the result does not depend on that choice.
    """
    ctx = curve.ctx
    point = plane.normalize(ctx, point)
    line = plane.normalize(ctx, line)
    if not plane.incident(ctx, point, line):
        raise ValueError("the point must lie on the line")
    other = next(
        p
        for p in plane.get_plane(ctx).points_on_line(line)
        if p != point
    )
    form = curve.restrict(point, other)
    order = form.vanishing_order_at_origin()
    if order is None:
        return INFINITE
    return order


@dataclass(frozen=True)
class LineSpectrum:
    """The counts a_i = #{lines meeting C(F_q) in exactly i points}, with
    per-line intersection and tangency detail."""

    q: int
    d: int
    N: int
    a: dict
    per_line: tuple  # (line, i, s_l) triples in line-enumeration order

    def sum_a(self) -> int:
        return sum(self.a.values())

    def sum_ia(self) -> int:
        return sum(i * c for i, c in self.a.items())

    def sum_pairs(self) -> int:
        return sum(i * (i - 1) // 2 * c for i, c in self.a.items())

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "d": self.d,
            "N": self.N,
            "a": {str(i): c for i, c in sorted(self.a.items())},
        }


def line_spectrum(curve: PlaneCurve) -> LineSpectrum:
    """Exact spectrum from the rational point list and the incidence cache.

    s_l counts only nonsingular rational points whose unique tangent is l,
    matching the convention that singular points carry no tangency count.
    """
    ctx = curve.ctx
    pl = plane.get_plane(ctx)
    member = [curve.evaluate(p) == 0 for p in pl.points]
    singular = set(singular_rational_points(curve))
    parts = curve.partials()
    tangents: dict[int, int] = {}
    for pi, point in enumerate(pl.points):
        if member[pi] and point not in singular:
            coeffs = tuple(
                p.evaluate(point) if p is not None else 0 for p in parts
            )
            li = pl.line_index[plane.normalize(ctx, coeffs)]
            tangents[pi] = li
    a: dict[int, int] = {}
    per_line = []
    for li, line in enumerate(pl.lines):
        i_count = sum(1 for pi in pl.points_on[li] if member[pi])
        s_l = sum(
            1 for pi in pl.points_on[li] if member[pi] and tangents.get(pi) == li
        )
        a[i_count] = a.get(i_count, 0) + 1
        per_line.append((line, i_count, s_l))
    a = {i: c for i, c in a.items() if c}
    return LineSpectrum(
        q=ctx.q,
        d=curve.degree,
        N=sum(1 for m in member if m),
        a=a,
        per_line=tuple(per_line),
    )


def line_spectrum_by_restriction(curve: PlaneCurve) -> dict:
    """Independent spectrum: per-line counts from restriction root counting.

    Each line is restricted to a binary form whose rational projective
    roots are counted; a vanishing restriction contributes a_(q+1).
    """
    ctx = curve.ctx
    pl = plane.get_plane(ctx)
    a: dict[int, int] = {}
    for li in range(len(pl.lines)):
        pts = pl.points_on[li]
        p_pt, q_pt = pl.points[pts[0]], pl.points[pts[1]]
        form = curve.restrict(p_pt, q_pt)
        if form.is_zero():
            i_count = ctx.q + 1
        else:
            i_count = len(form.rational_roots())
        a[i_count] = a.get(i_count, 0) + 1
    return a


def is_frobenius_nonclassical(curve: PlaneCurve) -> bool:
    """True iff F divides X^q F_X + Y^q F_Y + Z^q F_Z.

    This is the generic-tangency condition: the q-power Frobenius image of
    a general curve point lies on the tangent line there.  The zero form
    counts as divisible.
    """
    form = frobenius_form(curve)
    if form is None:
        return True
    return divides(curve, form)
