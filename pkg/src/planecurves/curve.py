"""Homogeneous trivariate polynomials over a finite field.

A PlaneCurve holds a sparse term map {(i, j, k): coeff} with i+j+k equal
to the degree and all coefficients nonzero.  A BinaryForm is the
restriction of a curve to a parameterized line, stored densely.  The zero
polynomial is represented by None wherever an operation can collapse
(partials, frobenius_form); PlaneCurve itself always has a nonzero term.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from . import linalg, plane
from .field import ExtensionField, FiniteField

Exponents = tuple[int, int, int]


@lru_cache(maxsize=None)
def monomials(d: int) -> tuple[Exponents, ...]:
    """All exponent triples of total degree d, ascending lexicographic."""
    out = []
    for i in range(d + 1):
        for j in range(d + 1 - i):
            out.append((i, j, d - i - j))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _pascal(p: int, rows: int) -> tuple[tuple[int, ...], ...]:
    tri = [(1,)]
    for n in range(1, rows + 1):
        prev = tri[-1]
        row = [1]
        for m in range(1, n):
            row.append((prev[m - 1] + prev[m]) % p)
        row.append(1)
        tri.append(tuple(row))
    return tuple(tri)


class PlaneCurve:
    """A plane projective curve F(X, Y, Z) = 0 of degree d >= 1."""

    def __init__(self, ctx, degree: int, terms: dict):
        # degree 0 (a nonzero constant) is allowed so that partial
        # derivatives of lines stay representable; the parsers reject it
        if degree < 0:
            raise ValueError("curve degree must be >= 1")
        clean: dict[Exponents, int] = {}
        for exps, coeff in terms.items():
            i, j, k = exps
            if i < 0 or j < 0 or k < 0 or i + j + k != degree:
                raise ValueError(
                    f"inhomogeneous term X^{i} Y^{j} Z^{k}: exponents sum to "
                    f"{i + j + k}, expected {degree}"
                )
            ctx.check(coeff)
            if coeff:
                clean[(i, j, k)] = coeff
        if not clean:
            raise ValueError("a curve needs at least one nonzero term")
        self.ctx = ctx
        self.degree = degree
        self.terms = clean

    # construction helpers -------------------------------------------------

    @classmethod
    def from_terms(cls, ctx, terms: dict) -> "PlaneCurve":
        degree = None
        for (i, j, k) in terms:
            degree = i + j + k
            break
        if degree is None:
            raise ValueError("a curve needs at least one nonzero term")
        if degree < 1:
            raise ValueError("curve degree must be >= 1")
        return cls(ctx, degree, terms)

    def sorted_terms(self) -> list[tuple[Exponents, int]]:
        return sorted(self.terms.items())

    def canonical(self) -> "PlaneCurve":
        """Scale so the lexicographically first term has coefficient 1."""
        _, lead = self.sorted_terms()[0]
        if lead == 1:
            return self
        s = self.ctx.inv(lead)
        return PlaneCurve(
            self.ctx, self.degree,
            {e: self.ctx.mul(s, c) for e, c in self.terms.items()},
        )

    def scalar_equal(self, other: "PlaneCurve") -> bool:
        return (
            self.ctx == other.ctx
            and self.degree == other.degree
            and self.canonical().terms == other.canonical().terms
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PlaneCurve)
            and self.ctx == other.ctx
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.ctx, self.degree, tuple(self.sorted_terms())))

    def __repr__(self) -> str:
        body = " + ".join(
            f"{c}*X^{i}Y^{j}Z^{k}" for (i, j, k), c in self.sorted_terms()
        )
        return f"PlaneCurve({self.ctx!r}, {body})"

    # evaluation ------------------------------------------------------------

    def evaluate(self, point) -> int:
        """F at a coordinate triple; zero/nonzero is representative-free."""
        ctx = self.ctx
        x, y, z = (ctx.check(c) for c in point)
        d = self.degree
        xs = ctx.powers(x, d)
        ys = ctx.powers(y, d)
        zs = ctx.powers(z, d)
        acc = 0
        for (i, j, k), c in self.terms.items():
            acc = ctx.add(acc, ctx.mul(c, ctx.mul(xs[i], ctx.mul(ys[j], zs[k]))))
        return acc

    # calculus ----------------------------------------------------------------

    def partials(self) -> tuple[Optional["PlaneCurve"], ...]:
        """(F_X, F_Y, F_Z); identically-zero derivatives come back as None."""
        ctx = self.ctx
        p = ctx.char
        outs = []
        for axis in range(3):
            terms: dict[Exponents, int] = {}
            for exps, c in self.terms.items():
                e = exps[axis]
                mult = e % p
                if mult == 0:
                    continue
                scaled = 0
                for _ in range(mult):
                    scaled = ctx.add(scaled, c)
                if scaled == 0:
                    continue
                new = list(exps)
                new[axis] = e - 1
                key = tuple(new)
                acc = ctx.add(terms.get(key, 0), scaled)
                if acc:
                    terms[key] = acc
                else:
                    terms.pop(key, None)
            outs.append(
                PlaneCurve(ctx, self.degree - 1, terms) if terms else None
            )
        return tuple(outs)

    def restrict(self, p_point, q_point) -> "BinaryForm":
        """The binary form g(s, t) = F(s*P + t*Q) on the line through P, Q."""
        ctx = self.ctx
        if plane.normalize(ctx, p_point) == plane.normalize(ctx, q_point):
            raise ValueError("restriction needs two distinct points")
        d = self.degree
        tri = _pascal(ctx.char, d)
        coeffs = [0] * (d + 1)
        for (i, j, k), c in self.terms.items():
            part = [c]
            for e, (a, b) in zip((i, j, k), zip(p_point, q_point)):
                if e == 0:
                    continue
                apow = ctx.powers(a, e)
                bpow = ctx.powers(b, e)
                lin = []
                row = tri[e]
                for m in range(e + 1):
                    binom = row[m] % ctx.char
                    term = ctx.mul(apow[e - m], bpow[m])
                    scaled = 0
                    for _ in range(binom):
                        scaled = ctx.add(scaled, term)
                    lin.append(scaled)
                new = [0] * (len(part) + e)
                for a_i, a_c in enumerate(part):
                    if a_c:
                        for b_i, b_c in enumerate(lin):
                            if b_c:
                                new[a_i + b_i] = ctx.add(
                                    new[a_i + b_i], ctx.mul(a_c, b_c)
                                )
                part = new
            for t_deg, c2 in enumerate(part):
                if c2:
                    coeffs[t_deg] = ctx.add(coeffs[t_deg], c2)
        return BinaryForm(ctx, d, coeffs)

    def transform(self, matrix) -> "PlaneCurve":
        """F composed with an invertible matrix: result(P) = F(M . P)."""
        ctx = self.ctx
        if linalg.mat_inv(ctx, matrix) is None:
            raise ValueError("transform needs an invertible matrix")
        rows = [tuple(row) for row in matrix]
        d = self.degree
        pows: list[list[dict]] = []
        for row in rows:
            lin = {
                (1 if a == 0 else 0, 1 if a == 1 else 0, 1 if a == 2 else 0): c
                for a, c in enumerate(row)
                if c
            }
            cache = [{(0, 0, 0): 1}, lin]
            pows.append(cache)
        def row_power(axis: int, e: int) -> dict:
            cache = pows[axis]
            while len(cache) <= e:
                cache.append(_term_mul(ctx, cache[-1], cache[1]))
            return cache[e]
        acc: dict[Exponents, int] = {}
        for (i, j, k), c in self.terms.items():
            prod = {(0, 0, 0): c}
            for axis, e in enumerate((i, j, k)):
                if e:
                    prod = _term_mul(ctx, prod, row_power(axis, e))
            for exps, val in prod.items():
                cur = ctx.add(acc.get(exps, 0), val)
                if cur:
                    acc[exps] = cur
                else:
                    acc.pop(exps, None)
        if not acc:
            raise ValueError("transform produced zero (matrix not invertible?)")
        return PlaneCurve(ctx, d, acc)

    # serialization -----------------------------------------------------------

    def to_text(self) -> str:
        if isinstance(self.ctx, FiniteField):
            header = self.ctx.spec_string()
        else:
            raise ValueError("only curves over FiniteField contexts serialize")
        lines = [header, f"d={self.degree}"]
        lines += [f"{i} {j} {k} {c}" for (i, j, k), c in self.sorted_terms()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PlaneCurve":
        ctx = None
        degree = None
        terms: dict[Exponents, int] = {}
        for ln, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if ctx is None:
                try:
                    ctx = FiniteField.from_spec(line)
                except ValueError as exc:
                    raise ValueError(f"line {ln}: {exc}") from exc
                continue
            if degree is None:
                if not line.startswith("d="):
                    raise ValueError(f"line {ln}: expected 'd=<degree>', got {line!r}")
                try:
                    degree = int(line[2:])
                except ValueError as exc:
                    raise ValueError(f"line {ln}: bad degree {line[2:]!r}") from exc
                if degree < 1:
                    raise ValueError(f"line {ln}: curve degree must be >= 1")
                continue
            parts = line.split()
            if len(parts) != 4:
                raise ValueError(
                    f"line {ln}: expected '<i> <j> <k> <coeff>', got {line!r}"
                )
            try:
                i, j, k, c = (int(x) for x in parts)
            except ValueError as exc:
                raise ValueError(f"line {ln}: non-integer field in {line!r}") from exc
            if i + j + k != degree:
                raise ValueError(
                    f"line {ln}: exponents {i} {j} {k} sum to {i + j + k}, "
                    f"declared degree is {degree}"
                )
            if (i, j, k) in terms:
                raise ValueError(f"line {ln}: duplicate term ({i}, {j}, {k})")
            terms[(i, j, k)] = c
        if ctx is None or degree is None:
            raise ValueError("curve file needs a field line and a degree line")
        return cls(ctx, degree, terms)

    @classmethod
    def from_file(cls, path) -> "PlaneCurve":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    @classmethod
    def parse_inline(cls, ctx, text: str) -> "PlaneCurve":
        """Parse "<i> <j> <k> <coeff>;<i> <j> <k> <coeff>;..." over ctx."""
        terms: dict[Exponents, int] = {}
        for piece in text.split(";"):
            piece = piece.strip()
            if not piece:
                continue
            parts = piece.split()
            if len(parts) != 4:
                raise ValueError(f"bad inline term {piece!r}")
            i, j, k, c = (int(x) for x in parts)
            terms[(i, j, k)] = c
        return cls.from_terms(ctx, terms)


class BinaryForm:
    """A homogeneous form g(s, t) of fixed degree; may be identically zero.

    coeffs[i] is the coefficient of s^(d-i) t^i.
    """

    def __init__(self, ctx, degree: int, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != degree + 1:
            raise ValueError("coefficient list must have length degree+1")
        for c in coeffs:
            ctx.check(c)
        self.ctx = ctx
        self.degree = degree
        self.coeffs = tuple(coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def evaluate(self, s: int, t: int) -> int:
        ctx = self.ctx
        spow = ctx.powers(s, self.degree)
        tpow = ctx.powers(t, self.degree)
        acc = 0
        for i, c in enumerate(self.coeffs):
            if c:
                acc = ctx.add(acc, ctx.mul(c, ctx.mul(spow[self.degree - i], tpow[i])))
        return acc

    def vanishing_order_at_origin(self) -> Optional[int]:
        """Order of vanishing at (s:t) = (1:0); None for the zero form."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def dehomogenized(self) -> list[int]:
        """g(1, t) as a unipoly coefficient list."""
        out = list(self.coeffs)
        while out and out[-1] == 0:
            out.pop()
        return out

    def rational_roots(self) -> list[tuple[int, int]]:
        """Distinct (s:t) roots with coordinates in the base field."""
        ctx = self.ctx
        out = []
        for t in range(ctx.q):
            if self.evaluate(1, t) == 0:
                out.append((1, t))
        if self.coeffs[self.degree] == 0:
            out.append((0, 1))
        return out

    def __repr__(self) -> str:
        return f"BinaryForm({self.ctx!r}, deg={self.degree}, {list(self.coeffs)})"


def _term_mul(ctx, a: dict, b: dict) -> dict:
    out: dict[Exponents, int] = {}
    for (i1, j1, k1), c1 in a.items():
        for (i2, j2, k2), c2 in b.items():
            key = (i1 + i2, j1 + j2, k1 + k2)
            cur = ctx.add(out.get(key, 0), ctx.mul(c1, c2))
            if cur:
                out[key] = cur
            else:
                out.pop(key, None)
    return out


def curve_mul(f: PlaneCurve, g: PlaneCurve) -> PlaneCurve:
    if f.ctx != g.ctx:
        raise ValueError("context mismatch in curve product")
    return PlaneCurve(f.ctx, f.degree + g.degree, _term_mul(f.ctx, f.terms, g.terms))


def lift_curve(f: PlaneCurve, ext: ExtensionField) -> PlaneCurve:
    """Reinterpret a curve over a tower extension of its context."""
    if ext.base != f.ctx:
        raise ValueError("extension must be a tower over the curve's field")
    return PlaneCurve(ext, f.degree, dict(f.terms))


def _monicizing_transform(f: PlaneCurve):
    """A matrix M (possibly over a tower extension) making f monic in Z.

    Searches rational points first, then points over GF(q^m) for
    m = 2, 3, ... for a point where f does not vanish; deterministic.
    Returns (curve_over_that_field, M, field).
    """
    ctx = f.ctx
    m = 1
    while True:
        field = ctx if m == 1 else ExtensionField(ctx, m)
        cur = f if m == 1 else lift_curve(f, field)
        for point in plane.enumerate_points(field):
            if cur.evaluate(point) != 0:
                mat = _basis_with_third_column(field, point)
                return cur, mat, field
        m += 1


def _basis_with_third_column(ctx, point):
    """An invertible matrix whose third column is the given point."""
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            cols = [[0, 0, 0], [0, 0, 0], list(point)]
            cols[0][i] = 1
            cols[1][j] = 1
            mat = tuple(tuple(cols[c][r] for c in range(3)) for r in range(3))
            if linalg.mat_inv(ctx, mat) is not None:
                return mat
    raise RuntimeError("unreachable: point cannot be extended to a basis")


def _z_divmod(ctx, num: dict, den: dict, den_zdeg: int, lead_inv: int):
    """Sparse division by a polynomial monic in Z (unit leading Z-coeff)."""
    rem = dict(num)
    quo: dict[Exponents, int] = {}
    while True:
        cand = None
        for exps in rem:
            if exps[2] >= den_zdeg and (cand is None or exps[2] > cand[2]):
                cand = exps
        if cand is None:
            break
        c = ctx.mul(rem[cand], lead_inv)
        qexp = (cand[0], cand[1], cand[2] - den_zdeg)
        quo[qexp] = c
        for dexp, dc in den.items():
            key = (qexp[0] + dexp[0], qexp[1] + dexp[1], qexp[2] + dexp[2])
            cur = ctx.sub(rem.get(key, 0), ctx.mul(c, dc))
            if cur:
                rem[key] = cur
            else:
                rem.pop(key, None)
    return quo, rem


def divides(f: PlaneCurve, g: PlaneCurve) -> bool:
    """True iff f divides g in the trivariate polynomial ring.

    Works by a projective change of coordinates that makes f monic in Z
    (divisibility is invariant under equivalence and stable under field
    extension), followed by univariate-in-Z remainder over the bivariate
    coefficient ring.
    """
    if f.ctx != g.ctx:
        raise ValueError("context mismatch in divides")
    if g.degree < f.degree:
        return False
    fm, mat, field = _monicizing_transform(f)
    gm = g if field is g.ctx else lift_curve(g, field)
    ft = fm.transform(mat)
    gt = gm.transform(mat)
    lead = ft.terms[(0, 0, f.degree)]
    _, rem = _z_divmod(field, gt.terms, ft.terms, f.degree, field.inv(lead))
    return not rem


def exact_divide(g: PlaneCurve, f: PlaneCurve) -> PlaneCurve:
    """The quotient g / f; raises ValueError if f does not divide g."""
    if f.ctx != g.ctx:
        raise ValueError("context mismatch in exact_divide")
    fm, mat, field = _monicizing_transform(f)
    gm = g if field is g.ctx else lift_curve(g, field)
    ft = fm.transform(mat)
    gt = gm.transform(mat)
    lead = ft.terms[(0, 0, f.degree)]
    quo, rem = _z_divmod(field, gt.terms, ft.terms, f.degree, field.inv(lead))
    if rem or not quo:
        raise ValueError("exact_divide: not divisible")
    quo_curve = PlaneCurve(field, g.degree - f.degree, quo)
    inv_mat = linalg.mat_inv(field, mat)
    back = quo_curve.transform(inv_mat)
    if field is g.ctx:
        return back
    terms = {}
    for exps, c in back.terms.items():
        if c >= g.ctx.q:
            raise RuntimeError("quotient did not descend to the base field")
        terms[exps] = c
    return PlaneCurve(g.ctx, g.degree - f.degree, terms)


def has_linear_component(f: PlaneCurve):
    """A witness F_q-line dividing f, or None.

    Implemented as restriction to every line of the plane, testing for the
    identically-zero form.
    """
    pl = plane.get_plane(f.ctx)
    for li, line in enumerate(pl.lines):
        pts = pl.points_on[li]
        p_pt = pl.points[pts[0]]
        q_pt = pl.points[pts[1]]
        if f.restrict(p_pt, q_pt).is_zero():
            return line
    return None


def frobenius_form(f: PlaneCurve) -> Optional[PlaneCurve]:
    """X^q F_X + Y^q F_Y + Z^q F_Z, or None when identically zero.

    A curve divides this form exactly when the q-power Frobenius image of
    a generic curve point lies on the tangent line there.
    """
    ctx = f.ctx
    q = ctx.q
    parts = f.partials()
    acc: dict[Exponents, int] = {}
    for axis, part in enumerate(parts):
        if part is None:
            continue
        shift = [0, 0, 0]
        shift[axis] = q
        for (i, j, k), c in part.terms.items():
            key = (i + shift[0], j + shift[1], k + shift[2])
            cur = ctx.add(acc.get(key, 0), c)
            if cur:
                acc[key] = cur
            else:
                acc.pop(key, None)
    if not acc:
        return None
    return PlaneCurve(ctx, q + f.degree - 1, acc)


def restriction_map(f_ctx, d: int, line, pl=None):
    """Rows mapping degree-d coefficient vectors to line-restriction coeffs.

    Returns a list of n_monomials rows, each of length d+1: restricting
    sum(c_m * monomial_m) to the line gives binary coefficients
    sum_m c_m * row_m.
    """
    if pl is None:
        pl = plane.get_plane(f_ctx)
    pts = pl.points_on[pl.line_index[line]]
    p_pt, q_pt = pl.points[pts[0]], pl.points[pts[1]]
    rows = []
    for mono in monomials(d):
        single = PlaneCurve(f_ctx, d, {mono: 1})
        rows.append(single.restrict(p_pt, q_pt).coeffs)
    return rows
