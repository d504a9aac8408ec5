"""Exact location of singular points over the algebraic closure.

The singular locus of a curve F is the common zero set of F and its three
partial derivatives.  decide_singular_locus answers, exactly:

  * is the locus empty over every extension field, and if not,
  * what is the smallest extension degree carrying a singular point?

The decision works by recursive decomposition of the polynomial system
into (a) one-dimensional branches, where the locus contains a whole curve
and witnesses come from line restrictions or small-field scans, and
(b) zero-dimensional branches, where a coprime pair is eliminated down to
a single variable by an interpolated resultant and surviving candidates
are confirmed with gcds over quotient rings GF(q)[y]/(u).  Quotient
moduli may be products of same-degree irreducibles; any zero divisor met
along the way splits the modulus and the affected piece is redone
(dynamic evaluation), so no equal-degree factorization is ever needed.

Plain point enumeration over GF(q^m) is also provided; it is the oracle
the exact path is tested against at small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import plane, unipoly
from .curve import PlaneCurve, exact_divide, lift_curve
from .field import ExtensionField


@dataclass(frozen=True)
class LocusResult:
    """Outcome of the singular-locus decision.

    empty            -- no singular point over any extension field
    min_degree       -- least extension degree with a singular point
    exact_min        -- min_degree is the true minimum (False only on the
                        capped fallback path for one-dimensional loci)
    witness_rational -- a rational singular point if min_degree == 1
    """

    empty: bool
    min_degree: Optional[int] = None
    exact_min: bool = True
    witness_rational: Optional[tuple[int, int, int]] = None


class _Split(Exception):
    """A zero divisor was found; carries a proper monic factor of the modulus."""

    def __init__(self, factor):
        super().__init__("modulus split")
        self.factor = factor


class _QuotRing:
    """GF(q)[y] / (modulus) with inversion that reports zero divisors."""

    def __init__(self, F, modulus):
        self.F = F
        self.modulus = list(modulus)
        self.deg = unipoly.deg(modulus)

    def reduce(self, poly):
        return unipoly.mod(self.F, poly, self.modulus)

    def add(self, a, b):
        return unipoly.add(self.F, a, b)

    def sub(self, a, b):
        return unipoly.sub(self.F, a, b)

    def neg(self, a):
        return unipoly.neg(self.F, a)

    def mul(self, a, b):
        return self.reduce(unipoly.mul(self.F, a, b))

    def try_inv(self, a):
        d, u, _ = unipoly.xgcd(self.F, a, self.modulus)
        if unipoly.deg(d) == 0:
            return self.reduce(unipoly.scale(self.F, self.F.inv(d[0]), u))
        if unipoly.deg(d) >= self.deg:
            raise ZeroDivisionError("inverse of zero in quotient ring")
        raise _Split(d)


# polynomials over a quotient ring: lists of ring elements, low degree first


def _rz_trim(poly):
    while poly and not poly[-1]:
        poly.pop()
    return poly


def _rz_sub(ring, f, g):
    out = [list(c) for c in f] + [[] for _ in range(max(0, len(g) - len(f)))]
    for i, c in enumerate(g):
        out[i] = ring.sub(out[i], c)
    return _rz_trim(out)


def _rz_monic(ring, f):
    if not f:
        return f
    lead_inv = ring.try_inv(f[-1])
    return [ring.mul(lead_inv, c) for c in f[:-1]] + [[1]]


def _rz_mod(ring, f, g):
    """Remainder of f by g; g must have invertible leading coefficient."""
    g = _rz_monic(ring, g)
    f = [list(c) for c in f]
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1]
        shift = len(f) - 1 - dg
        for i, b in enumerate(g):
            if b:
                f[shift + i] = ring.sub(f[shift + i], ring.mul(c, b))
        _rz_trim(f)
    return f


def _rz_gcd(ring, f, g):
    f, g = [list(c) for c in f], [list(c) for c in g]
    while g:
        f, g = g, _rz_mod(ring, f, g)
    return _rz_monic(ring, f)


def _rz_mul(ring, f, g):
    if not f or not g:
        return []
    out = [[] for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = ring.add(out[i + j], ring.mul(a, b))
    return _rz_trim(out)


def _rz_pow_mod(ring, f, e, m):
    result = [[1]]
    f = _rz_mod(ring, f, m)
    while e:
        if e & 1:
            result = _rz_mod(ring, _rz_mul(ring, result, f), m)
        f = _rz_mod(ring, _rz_mul(ring, f, f), m)
        e >>= 1
    return result


# trivariate helpers on sparse term dicts ---------------------------------


def _tri_strip_z(terms):
    a = min(k for (_, _, k) in terms)
    if a == 0:
        return 0, terms
    return a, {(i, j, k - a): c for (i, j, k), c in terms.items()}


def _tri_to_bivariate(ctx, terms):
    """Z-stripped homogeneous terms -> polynomial in y with GF[x] coefficients."""
    ydeg = max(j for (_, j, _) in terms)
    coeffs = [[] for _ in range(ydeg + 1)]
    for (i, j, _k), c in terms.items():
        poly = coeffs[j]
        while len(poly) <= i:
            poly.append(0)
        poly[i] = ctx.add(poly[i], c)
    return [unipoly.trim(p) for p in coeffs]


def _bivariate_to_tri(ctx, coeffs):
    """Homogenize a primitive bivariate gcd back to trivariate terms."""
    total = 0
    for j, poly in enumerate(coeffs):
        if poly:
            total = max(total, j + unipoly.deg(poly))
    terms = {}
    for j, poly in enumerate(coeffs):
        for i, c in enumerate(poly):
            if c:
                terms[(i, j, total - i - j)] = c
    return terms


def _bi_content(ctx, coeffs):
    cont: list[int] = []
    for poly in coeffs:
        if poly:
            cont = unipoly.gcd(ctx, cont, poly) if cont else unipoly.monic(ctx, poly)
    return cont


def _bi_divide_content(ctx, coeffs, cont):
    out = []
    for poly in coeffs:
        if not poly:
            out.append([])
        else:
            quo, rem = unipoly.divmod_(ctx, poly, cont)
            if rem:
                raise RuntimeError("content division must be exact")
            out.append(quo)
    return out


def _bi_primitive(ctx, coeffs):
    cont = _bi_content(ctx, coeffs)
    if unipoly.deg(cont) == 0:
        return [list(p) for p in coeffs]
    return _bi_divide_content(ctx, coeffs, cont)


def _bi_pseudo_rem(ctx, f, g):
    """Pseudo remainder of f by g in (GF[x])[y]."""
    f = [list(p) for p in f]
    dg = len(g) - 1
    lead = g[-1]
    while len(f) - 1 >= dg and any(f):
        if not f[-1]:
            f.pop()
            continue
        top = f[-1]
        shift = len(f) - 1 - dg
        f = [unipoly.mul(ctx, p, lead) for p in f]
        for i, b in enumerate(g):
            f[shift + i] = unipoly.sub(ctx, f[shift + i], unipoly.mul(ctx, top, b))
        while f and not f[-1]:
            f.pop()
    return f


def _bi_gcd(ctx, f, g):
    """Primitive-part Euclidean gcd in (GF[x])[y]."""
    f = [list(p) for p in f]
    g = [list(p) for p in g]
    while f and not f[-1]:
        f.pop()
    while g and not g[-1]:
        g.pop()
    if not f:
        return g
    if not g:
        return f
    cf, cg = _bi_content(ctx, f), _bi_content(ctx, g)
    f, g = _bi_primitive(ctx, f), _bi_primitive(ctx, g)
    while True:
        if len(g) == 1:
            # gcd of primitive parts is a content-level question now
            pp = [[1]] if any(g) else f
            break
        r = _bi_pseudo_rem(ctx, f, g)
        if not any(r):
            pp = g
            break
        f, g = g, _bi_primitive(ctx, r)
    cont = unipoly.gcd(ctx, cf, cg) if cf and cg else []
    if unipoly.deg(cont) >= 1:
        return [unipoly.mul(ctx, p, cont) for p in pp]
    return pp


def tri_gcd(ctx, terms_a, terms_b):
    """Gcd of two homogeneous trivariate polynomials (dict form, monic-ish)."""
    za, sa = _tri_strip_z(terms_a)
    zb, sb = _tri_strip_z(terms_b)
    ba = _tri_to_bivariate(ctx, sa)
    bb = _tri_to_bivariate(ctx, sb)
    g = _bi_gcd(ctx, ba, bb)
    terms = _bivariate_to_tri(ctx, g)
    zshift = min(za, zb)
    if zshift:
        terms = {(i, j, k + zshift): c for (i, j, k), c in terms.items()}
    return terms


def _tri_degree(terms):
    for (i, j, k) in terms:
        return i + j + k
    return -1


def _is_constant(terms):
    return _tri_degree(terms) == 0


# the decision procedure ----------------------------------------------------


class _Tracker:
    def __init__(self):
        self.best: Optional[int] = None

    def record(self, degree: int):
        if self.best is None or degree < self.best:
            self.best = degree


def _points_on_line(ctx, line):
    """Two distinct points spanning a line given by its coefficient triple."""
    a, b, c = line
    cands = [
        (0, c, ctx.neg(b)),
        (c, 0, ctx.neg(a)),
        (b, ctx.neg(a), 0),
    ]
    pts = []
    for t in cands:
        if t != (0, 0, 0):
            t = plane.normalize(ctx, t)
            if t not in pts:
                pts.append(t)
        if len(pts) == 2:
            return pts
    raise RuntimeError("degenerate line coefficients")


def _restrict_line_case(ctx, system, line, tracker):
    """Candidates of the system restricted to one rational line."""
    p_pt, q_pt = _points_on_line(ctx, line)
    dehoms = []
    infinity_root = True  # does (s:t) = (0:1) satisfy every member?
    all_zero = True
    for terms in system:
        cur = PlaneCurve(ctx, _tri_degree(terms), terms)
        form = cur.restrict(p_pt, q_pt)
        if form.is_zero():
            continue
        all_zero = False
        if form.coeffs[form.degree] != 0:
            infinity_root = False
        dehoms.append(form.dehomogenized())
    if all_zero:
        # the whole line lies in the locus; rational points abound
        tracker.record(1)
        return
    if infinity_root:
        tracker.record(1)
    g: list[int] = []
    for poly in dehoms:
        g = unipoly.gcd(ctx, g, poly) if g else unipoly.monic(ctx, poly)
        if unipoly.deg(g) == 0:
            return
    if unipoly.deg(g) >= 1:
        pieces, _ = unipoly.distinct_degree_pieces(ctx, g)
        for e in pieces:
            tracker.record(e)


def _chart_polys(ctx, terms):
    """S(1, y, z) as a list over z-degree of y-unipolys."""
    zdeg = max(k for (_, _, k) in terms)
    out: list[list[int]] = [[] for _ in range(zdeg + 1)]
    for (_i, j, k), c in terms.items():
        poly = out[k]
        while len(poly) <= j:
            poly.append(0)
        poly[j] = ctx.add(poly[j], c)
    return [unipoly.trim(p) for p in out]


def _interp_field(ctx, npoints: int):
    """ctx or the smallest tower extension with at least npoints elements."""
    if ctx.q >= npoints:
        return ctx
    m = 2
    while ctx.q ** m < npoints:
        m += 1
    return ExtensionField(ctx, m)


def _eliminate_pair(ctx, terms_a, terms_b):
    """Nonzero r(y) over ctx whose roots cover the y-coordinates of
    V(A, B) in the chart X = 1, for a coprime pair A, B."""
    za_polys = _chart_polys(ctx, terms_a)
    zb_polys = _chart_polys(ctx, terms_b)
    za, zb = len(za_polys) - 1, len(zb_polys) - 1
    if za == 0:
        return list(za_polys[0])
    if zb == 0:
        return list(zb_polys[0])
    da = _tri_degree(terms_a)
    db = _tri_degree(terms_b)
    nsamples = za * db + zb * da + 1
    lead_a, lead_b = za_polys[za], zb_polys[zb]
    bad_bound = unipoly.deg(lead_a) + unipoly.deg(lead_b)
    field = _interp_field(ctx, nsamples + bad_bound + 1)
    xs, ys = [], []
    for y0 in range(field.q):
        if unipoly.eval_at(field, lead_a, y0) == 0:
            continue
        if unipoly.eval_at(field, lead_b, y0) == 0:
            continue
        fa = unipoly.trim([unipoly.eval_at(field, p, y0) for p in za_polys])
        fb = unipoly.trim([unipoly.eval_at(field, p, y0) for p in zb_polys])
        xs.append(y0)
        ys.append(unipoly.resultant(field, fa, fb))
        if len(xs) == nsamples:
            break
    if len(xs) < nsamples:
        raise RuntimeError("not enough interpolation points (field too small)")
    r_ext = unipoly.interpolate(field, xs, ys)
    r = []
    for c in r_ext:
        if c >= ctx.q:
            raise RuntimeError("resultant did not descend to the base field")
        r.append(c)
    return unipoly.trim(r)


def _chart_candidates(ctx, system, terms_a, terms_b, tracker):
    """Record degrees of V(system) points in the chart X = 1."""
    r = _eliminate_pair(ctx, terms_a, terms_b)
    if not r:
        raise RuntimeError("coprime pair eliminated to the zero polynomial")
    if unipoly.deg(r) == 0:
        return
    pieces, _ = unipoly.distinct_degree_pieces(ctx, r)
    chart_all = [_chart_polys(ctx, terms) for terms in system]
    for e, piece in pieces.items():
        worklist = [piece]
        while worklist:
            u = worklist.pop()
            try:
                _ring_candidates(ctx, chart_all, u, e, tracker)
            except _Split as sp:
                quo, rem = unipoly.divmod_(ctx, u, sp.factor)
                if rem:
                    raise RuntimeError("split factor must divide the modulus")
                worklist.append(sp.factor)
                worklist.append(quo)


def _ring_candidates(ctx, chart_all, u, e, tracker):
    ring = _QuotRing(ctx, u)
    zpolys = []
    for chart in chart_all:
        spec = [ring.reduce(p) for p in chart]
        spec = _rz_trim([list(c) for c in spec])
        if spec:
            zpolys.append(spec)
    if not zpolys:
        raise RuntimeError("entire system vanished on a candidate modulus")
    g: list = []
    for zp in zpolys:
        g = _rz_gcd(ring, g, zp) if g else _rz_monic(ring, zp)
        if len(g) == 1:
            return
    if not g:
        raise RuntimeError("gcd collapsed to zero on a candidate modulus")
    # distinct-degree scan of g over the residue fields GF(q^e)
    Q = ctx.q ** e
    gg = [list(c) for c in g]
    zpow = _rz_mod(ring, [[], [1]], gg)
    for f in range(1, len(gg)):
        zpow = _rz_pow_mod(ring, zpow, Q, gg)
        h = _rz_gcd(ring, gg, _rz_sub(ring, zpow, [[], [1]]))
        if len(h) > 1:
            tracker.record(e * f)
            quo = _rz_quotient(ring, gg, h)
            gg = quo
            if len(gg) == 1:
                return
            zpow = _rz_mod(ring, zpow, gg)
    if len(gg) > 1:
        # whatever remains is irreducible of degree len(gg)-1 in each component
        tracker.record(e * (len(gg) - 1))


def _rz_quotient(ring, f, g):
    """Exact quotient of f by monic g over the ring."""
    g = _rz_monic(ring, g)
    f = [list(c) for c in f]
    dg = len(g) - 1
    quo = [[] for _ in range(len(f) - dg)]
    while len(f) - 1 >= dg and f:
        c = f[-1]
        shift = len(f) - 1 - dg
        quo[shift] = c
        for i, b in enumerate(g):
            if b:
                f[shift + i] = ring.sub(f[shift + i], ring.mul(c, b))
        _rz_trim(f)
    if f:
        raise RuntimeError("quotient was not exact")
    return _rz_trim(quo)


def _curve_min_degree(ctx, terms, tracker, enum_cap):
    """Witness degrees for a one-dimensional branch: every point of the
    curve V(terms) is in the locus."""
    cur = PlaneCurve(ctx, _tri_degree(terms), terms)
    for point in plane.enumerate_points(ctx):
        if cur.evaluate(point) == 0:
            tracker.record(1)
            return True
    m = 2
    while (ctx.q ** m) ** 2 <= enum_cap:
        ext = ExtensionField(ctx, m)
        lifted = lift_curve(cur, ext)
        for point in plane.enumerate_points(ext):
            if lifted.evaluate(point) == 0:
                tracker.record(m)
                return True
        m += 1
    # capped: exhibit a point class on a coordinate-line slice
    best = None
    for line in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        p_pt, q_pt = _points_on_line(ctx, line)
        form = cur.restrict(p_pt, q_pt)
        if form.is_zero():
            tracker.record(1)
            return True
        pieces, _ = unipoly.distinct_degree_pieces(ctx, form.dehomogenized())
        if form.coeffs[form.degree] == 0:
            pieces.setdefault(1, [0, 1])
        if pieces:
            e = min(pieces)
            best = e if best is None else min(best, e)
    if best is None:
        raise RuntimeError("a positive-degree curve must meet a coordinate line")
    tracker.record(best)
    return False  # witness degree recorded, but possibly not the minimum


def _decompose(ctx, system, tracker, enum_cap, exact_flag):
    """Union the witness degrees of V(system) into the tracker."""
    system = [t for t in system if t]
    if any(_is_constant(t) for t in system):
        return
    if not system:
        raise RuntimeError("empty system does not arise for plane curves")
    if len(system) == 1:
        if not _curve_min_degree(ctx, system[0], tracker, enum_cap):
            exact_flag.append(False)
        return
    linear = next((t for t in system if _tri_degree(t) == 1), None)
    if linear is not None:
        line = _linear_to_triple(ctx, linear)
        rest = [t for t in system if t is not linear]
        _restrict_line_case(ctx, rest, line, tracker)
        return
    ordered = sorted(system, key=_tri_degree)
    a, b = ordered[0], ordered[1]
    rest = [t for t in system if t is not a and t is not b]
    d = tri_gcd(ctx, a, b)
    if _tri_degree(d) >= 1:
        _decompose(ctx, [d] + rest, tracker, enum_cap, exact_flag)
        da = _tri_exact_divide(ctx, a, d)
        db = _tri_exact_divide(ctx, b, d)
        _decompose(ctx, [da, db] + rest, tracker, enum_cap, exact_flag)
        return
    # coprime pair: finitely many common zeros
    _restrict_line_case(ctx, system, (1, 0, 0), tracker)
    _chart_candidates(ctx, system, a, b, tracker)


def _linear_to_triple(ctx, terms):
    a = terms.get((1, 0, 0), 0)
    b = terms.get((0, 1, 0), 0)
    c = terms.get((0, 0, 1), 0)
    return plane.normalize(ctx, (a, b, c))


def _tri_exact_divide(ctx, terms_num, terms_den):
    num = PlaneCurve(ctx, _tri_degree(terms_num), terms_num)
    den = PlaneCurve(ctx, _tri_degree(terms_den), terms_den)
    return exact_divide(num, den).terms


def _rational_singular_scan(curve: PlaneCurve, parts):
    for point in plane.enumerate_points(curve.ctx):
        if curve.evaluate(point) == 0 and all(p.evaluate(point) == 0 for p in parts):
            return point
    return None


def decide_singular_locus(curve: PlaneCurve, enum_cap: int = 10 ** 6) -> LocusResult:
    """Exact emptiness / minimal-degree decision for the singular locus."""
    ctx = curve.ctx
    parts = [p for p in curve.partials() if p is not None]
    system = [curve.terms] + [p.terms for p in parts]
    # cheap first: rational singular points double as degree-1 witnesses
    witness = _rational_singular_scan(curve, parts)
    if witness is not None:
        return LocusResult(False, 1, True, witness)
    tracker = _Tracker()
    exact_flag: list[bool] = []
    _decompose(ctx, system, tracker, enum_cap, exact_flag)
    if tracker.best is None:
        return LocusResult(True)
    if tracker.best == 1:
        # the decomposition claims a rational witness the scan should have seen
        raise RuntimeError("inconsistent rational-witness bookkeeping")
    return LocusResult(False, tracker.best, len(exact_flag) == 0)


def singular_points_over_extension(curve: PlaneCurve, m: int):
    """All singular points of the curve with coordinates in GF(q^m), found
    by plain enumeration; the test oracle for the exact path."""
    ctx = curve.ctx
    field = ctx if m == 1 else ExtensionField(ctx, m)
    cur = curve if m == 1 else lift_curve(curve, field)
    parts = [p for p in cur.partials() if p is not None]
    found = []
    for point in plane.enumerate_points(field):
        if cur.evaluate(point) == 0 and all(p.evaluate(point) == 0 for p in parts):
            found.append(point)
    return found, field
