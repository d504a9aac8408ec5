"""Univariate polynomial helpers over an arbitrary field context.

Polynomials are lists of element codes, low degree first, normalized so
the last entry is nonzero; [] is the zero polynomial.  Every function
takes the field context as its first argument, so the same code serves
GF(p), GF(p^k) and tower extensions.
"""

from __future__ import annotations

from typing import Sequence


def trim(cs: list[int]) -> list[int]:
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def deg(f: Sequence[int]) -> int:
    return len(f) - 1


def add(F, f, g):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = F.add(out[i], c)
    return trim(out)


def neg(F, f):
    return [F.neg(c) for c in f]


def sub(F, f, g):
    return add(F, f, neg(F, g))


def scale(F, c, f):
    if c == 0:
        return []
    return trim([F.mul(c, x) for x in f])


def mul(F, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
    return trim(out)


def divmod_(F, f, g):
    """Quotient and remainder of f by nonzero g."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    dg = deg(g)
    lead_inv = F.inv(g[-1])
    quo = [0] * max(0, len(f) - dg)
    while deg(f) >= dg and f:
        c = F.mul(f[-1], lead_inv)
        shift = deg(f) - dg
        quo[shift] = c
        for i, b in enumerate(g):
            if b:
                f[shift + i] = F.sub(f[shift + i], F.mul(c, b))
        trim(f)
    return trim(quo), f


def mod(F, f, g):
    return divmod_(F, f, g)[1]


def monic(F, f):
    if not f:
        return []
    if f[-1] == 1:
        return list(f)
    return scale(F, F.inv(f[-1]), f)


def gcd(F, f, g):
    """Monic greatest common divisor."""
    f, g = list(f), list(g)
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def xgcd(F, f, g):
    """Extended gcd: returns (d, u, v) with u*f + v*g = d, d monic."""
    r0, r1 = list(f), list(g)
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, sub(F, u0, mul(F, q, u1))
        v0, v1 = v1, sub(F, v0, mul(F, q, v1))
    if not r0:
        return [], u0, v0
    c = F.inv(r0[-1])
    return scale(F, c, r0), scale(F, c, u0), scale(F, c, v0)


def eval_at(F, f, x):
    acc = 0
    for c in reversed(f):
        acc = F.add(F.mul(acc, x), c)
    return acc


def pow_mod(F, f, e: int, m):
    """f**e modulo m, e >= 0."""
    result = [1]
    f = mod(F, f, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, f), m)
        f = mod(F, mul(F, f, f), m)
        e >>= 1
    return result


def derivative(F, f):
    out = []
    for i in range(1, len(f)):
        c = f[i]
        r = i % F.char
        acc = 0
        for _ in range(r):
            acc = F.add(acc, c)
        out.append(acc)
    return trim(out)


def interpolate(F, xs, ys):
    """Lagrange interpolation through distinct xs (quadratic time)."""
    master = [1]
    for xi in xs:
        master = mul(F, master, [F.neg(xi), 1])
    result: list[int] = []
    for xi, yi in zip(xs, ys):
        num, rem = divmod_(F, master, [F.neg(xi), 1])
        if rem:
            raise RuntimeError("interpolation nodes must be roots of the master")
        denom = eval_at(F, num, xi)
        result = add(F, result, scale(F, F.mul(yi, F.inv(denom)), num))
    return result


def resultant(F, f, g):
    """Resultant of f and g via the Euclidean remainder sequence."""
    if not f or not g:
        return 0
    res = 1
    while True:
        if deg(g) == 0:
            return F.mul(res, F.pow(g[0], deg(f)))
        r = mod(F, f, g)
        if not r:
            return 0
        # res(f, g) = (-1)^(deg f * deg g) * lc(g)^(deg f - deg r) * res(g, r)
        sign_flips = deg(f) * deg(g)
        factor = F.pow(g[-1], deg(f) - deg(r))
        if sign_flips % 2 == 1:
            factor = F.neg(factor)
        res = F.mul(res, factor)
        f, g = g, r


def is_irreducible(F, f) -> bool:
    """Trial division by all monic polynomials of degree <= deg(f)/2."""
    d = deg(f)
    if d < 1:
        return False
    if d == 1:
        return True
    q = F.q
    for dd in range(1, d // 2 + 1):
        for code in range(q ** dd):
            div = _decode(F, code, dd) + [1]
            if not mod(F, f, div):
                return False
    return True


def _decode(F, code: int, length: int) -> list[int]:
    out = [0] * length
    for i in range(length):
        code, out[i] = code // F.q, code % F.q
    return out


def find_irreducible(F, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over F.

    Coefficients are compared low-degree first, matching the deterministic
    default-modulus rule.
    """
    if m == 1:
        return (0, 1)
    for code in range(F.q ** m):
        cand = _decode(F, code, m) + [1]
        if is_irreducible(F, cand):
            return tuple(cand)
    raise RuntimeError("no irreducible polynomial found (impossible)")


def root_count_in_field(F, f) -> int:
    """Number of distinct roots of f in F, via gcd with x^q - x."""
    if not f:
        raise ValueError("zero polynomial has every root")
    if deg(f) == 0:
        return 0
    xq = pow_mod(F, [0, 1], F.q, f)
    g = gcd(F, sub(F, xq, [0, 1]), f)
    return deg(g)


def roots_in_field(F, f) -> list[int]:
    """All distinct roots of nonzero f in F, by scanning the field."""
    if not f:
        raise ValueError("zero polynomial has every root")
    return [x for x in range(F.q) if eval_at(F, f, x) == 0]


def distinct_degree_pieces(F, f, max_e: int | None = None):
    """Split the distinct irreducible factors of f by degree.

    Returns (pieces, leftover_degree) where pieces maps e to the monic
    product of the distinct irreducible factors of f of degree exactly e,
    for e up to max_e (default deg f).  leftover_degree > 0 means factors
    of degree beyond max_e remain.  Repeated factors are deliberately
    collapsed: gcd(f, x^(q^e) - x) is squarefree.
    """
    f = monic(F, f)
    d = deg(f)
    if d < 1:
        return {}, 0
    if max_e is None:
        max_e = d
    pieces: dict[int, list[int]] = {}
    xpow = [0, 1]
    for e in range(1, min(max_e, d) + 1):
        xpow = pow_mod(F, xpow, F.q, f)
        g = gcd(F, sub(F, xpow, [0, 1]), f)
        # remove factors of degree properly dividing e, already collected
        for ee, piece in pieces.items():
            if e % ee == 0:
                g = divmod_(F, g, gcd(F, g, piece))[0]
        if deg(g) >= 1:
            pieces[e] = g
    leftover = 0
    if max_e < d:
        probe = f
        for piece in pieces.values():
            g = gcd(F, probe, piece)
            while deg(g) >= 1:
                probe = divmod_(F, probe, g)[0]
                g = gcd(F, probe, piece)
        leftover = deg(probe)
    return pieces, leftover
