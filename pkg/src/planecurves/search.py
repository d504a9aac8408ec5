"""Exhaustive and seeded-random exploration of curve coefficient space.

Coefficient vectors follow the canonical monomial order (ascending lex on
exponent triples); the scalar redundancy is killed by fixing the first
nonzero coefficient to 1 in exhaustive mode.  Counting is vectorized with
numpy over exact small-integer tables (a float64 matmul for prime fields,
table gathers otherwise); every reported witness is re-verified through
the exact element-wise path before it enters a record.

Records carry the seed, the generator identifier and the full parameters,
so a run can be replayed bit for bit.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import analysis, linalg, plane
from .curve import PlaneCurve, has_linear_component, monomials, restriction_map

GENERATOR_ID = "numpy-pcg64"
_CHUNK = 1 << 14


@dataclass(frozen=True)
class SearchTask:
    """One search over curves of fixed degree above a fixed field."""

    ctx: object
    degree: int
    mode: str  # "exhaustive" | "random" | "constrained_random"
    seed: Optional[int] = None
    n_samples: Optional[int] = None
    require_no_linear_component: bool = False
    singular_at: Optional[tuple] = None  # constrained_random only
    budget: int = 10 ** 7
    witness_cap: int = 64

    def n_monomials(self) -> int:
        return (self.degree + 1) * (self.degree + 2) // 2

    def canonical_count(self) -> int:
        q = self.ctx.q
        return (q ** self.n_monomials() - 1) // (q - 1)


@dataclass
class SearchRecord:
    """Outcome of a search; reproducible from (parameters, seed)."""

    q: int
    degree: int
    mode: str
    seed: Optional[int]
    generator: str
    engine: str
    curves_examined: int = 0
    discarded_linear: int = 0
    discarded_zero: int = 0
    histogram: dict = field(default_factory=dict)
    best_N: Optional[int] = None
    witnesses: list = field(default_factory=list)
    witness_cap: int = 64
    params: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "degree": self.degree,
            "mode": self.mode,
            "seed": self.seed,
            "generator": self.generator,
            "engine": self.engine,
            "curves_examined": self.curves_examined,
            "discarded_linear": self.discarded_linear,
            "discarded_zero": self.discarded_zero,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "best_N": self.best_N,
            "witnesses": [sorted(w.terms.items()) for w in self.witnesses],
            "witness_cap": self.witness_cap,
            "params": self.params,
        }


class _Engine:
    """Vectorized exact point counting for batches of coefficient vectors."""

    def __init__(self, ctx, degree: int, with_linear_flags: bool):
        self.ctx = ctx
        self.degree = degree
        self.monos = monomials(degree)
        pl = plane.get_plane(ctx)
        self.pl = pl
        vals = np.zeros((len(self.monos), len(pl.points)), dtype=np.uint8)
        for mi, (i, j, k) in enumerate(self.monos):
            single = PlaneCurve(ctx, degree, {(i, j, k): 1})
            for pi, point in enumerate(pl.points):
                vals[mi, pi] = single.evaluate(point)
        self.prime = getattr(ctx, "k", 0) == 1
        if self.prime:
            self.vals_f = vals.astype(np.float64)
            self.engine_id = "numpy-float64-matmul"
        else:
            self.mul_t = np.zeros((ctx.q, ctx.q), dtype=np.uint8)
            self.add_t = np.zeros((ctx.q, ctx.q), dtype=np.uint8)
            for a in range(ctx.q):
                for b in range(ctx.q):
                    self.mul_t[a, b] = ctx.mul(a, b)
                    self.add_t[a, b] = ctx.add(a, b)
            self.vals = vals
            self.engine_id = "numpy-table-gather"
        self.rest_maps = None
        if with_linear_flags:
            self.rest_maps = [
                np.array(restriction_map(ctx, degree, line, pl), dtype=np.uint8)
                for line in pl.lines
            ]

    def counts(self, coeffs: np.ndarray) -> np.ndarray:
        """Rational point count for each coefficient row."""
        if self.prime:
            prod = (coeffs.astype(np.float64) @ self.vals_f) % self.ctx.char
            return (prod == 0).sum(axis=1).astype(np.int64)
        acc = np.zeros((coeffs.shape[0], self.vals.shape[1]), dtype=np.uint8)
        for mi in range(len(self.monos)):
            col = coeffs[:, mi]
            if not col.any():
                continue
            term = self.mul_t[col[:, None], self.vals[mi][None, :]]
            acc = self.add_t[acc, term]
        return (acc == 0).sum(axis=1).astype(np.int64)

    def linear_flags(self, coeffs: np.ndarray) -> np.ndarray:
        """True where the curve has an F_q-linear component."""
        flags = np.zeros(coeffs.shape[0], dtype=bool)
        if self.prime:
            cf = coeffs.astype(np.float64)
            for rmap in self.rest_maps:
                res = (cf @ rmap.astype(np.float64)) % self.ctx.char
                flags |= ~res.any(axis=1)
            return flags
        for rmap in self.rest_maps:
            res = np.zeros((coeffs.shape[0], rmap.shape[1]), dtype=np.uint8)
            for mi in range(rmap.shape[0]):
                col = coeffs[:, mi]
                if not col.any():
                    continue
                row = rmap[mi]
                for ci in np.nonzero(row)[0]:
                    term = self.mul_t[col, row[ci]]
                    res[:, ci] = self.add_t[res[:, ci], term]
            flags |= ~res.any(axis=1)
        return flags


def count_exact(ctx, degree: int, coeff_row) -> int:
    """Element-wise counter used to re-verify engine results."""
    terms = {m: int(c) for m, c in zip(monomials(degree), coeff_row) if c}
    cur = PlaneCurve(ctx, degree, terms)
    return len(analysis.rational_points(cur))


def _exhaustive_chunks(q: int, n_monos: int, chunk: int):
    """Canonical coefficient vectors in lexicographic blocks.

    Yields (lead_index, start, stop) descriptors; the vectors of a block
    share the leading-one position and enumerate the free suffix digits
    in ascending mixed-radix order.
    """
    for lead in range(n_monos):
        free = n_monos - 1 - lead
        total = q ** free
        start = 0
        while start < total:
            stop = min(start + chunk, total)
            yield lead, start, stop
            start = stop


def _materialize_block(q: int, n_monos: int, lead: int, start: int, stop: int):
    free = n_monos - 1 - lead
    block = np.zeros((stop - start, n_monos), dtype=np.uint8)
    block[:, lead] = 1
    codes = np.arange(start, stop, dtype=np.int64)
    for pos in range(free):
        block[:, n_monos - 1 - pos] = codes % q
        codes //= q
    return block


def run_search(task: SearchTask, workers: int = 1) -> SearchRecord:
    """Execute a search task; results are worker-count independent."""
    ctx = task.ctx
    q = ctx.q
    n_monos = task.n_monomials()
    engine = _Engine(ctx, task.degree, task.require_no_linear_component)
    record = SearchRecord(
        q=q,
        degree=task.degree,
        mode=task.mode,
        seed=task.seed,
        generator=GENERATOR_ID if task.mode != "exhaustive" else "exhaustive-lex",
        engine=engine.engine_id,
        witness_cap=task.witness_cap,
        params={
            "n_samples": task.n_samples,
            "require_no_linear_component": task.require_no_linear_component,
            "singular_at": (
                plane.point_to_string(task.singular_at) if task.singular_at else None
            ),
            "budget": task.budget,
        },
    )

    if task.mode == "exhaustive":
        total = task.canonical_count()
        if total > task.budget:
            raise ValueError(
                f"exhaustive search needs {total} canonical forms, over the "
                f"budget {task.budget}"
            )
        blocks = list(_exhaustive_chunks(q, n_monos, _CHUNK))

        def produce(block):
            lead, start, stop = block
            return _materialize_block(q, n_monos, lead, start, stop)

    elif task.mode in ("random", "constrained_random"):
        if task.seed is None or task.n_samples is None:
            raise ValueError("random modes need a seed and a sample count")
        if task.n_samples > task.budget:
            raise ValueError("sample count exceeds the budget")
        nullbasis = None
        if task.mode == "constrained_random":
            if task.singular_at is None:
                raise ValueError("constrained_random needs the singular point")
            nullbasis = singular_constraint_basis(ctx, task.degree, task.singular_at)
        rng = np.random.default_rng(task.seed)
        blocks = []
        remaining = task.n_samples
        index = 0
        while remaining > 0:
            take = min(_CHUNK, remaining)
            blocks.append((index, take))
            index += 1
            remaining -= take
        chunk_draws = []
        for _, take in blocks:
            if nullbasis is None:
                chunk_draws.append(
                    rng.integers(0, q, size=(take, n_monos), dtype=np.int64).astype(np.uint8)
                )
            else:
                combo = rng.integers(0, q, size=(take, len(nullbasis)), dtype=np.int64)
                chunk_draws.append(_combine_basis(ctx, nullbasis, combo))

        def produce(block):
            index, _ = block
            return chunk_draws[index]

    else:
        raise ValueError(f"unknown search mode {task.mode!r}")

    def process(block):
        coeffs = produce(block)
        nonzero = coeffs.any(axis=1)
        zero_dropped = int((~nonzero).sum())
        coeffs = coeffs[nonzero]
        lin_dropped = 0
        if task.require_no_linear_component and coeffs.shape[0]:
            flags = engine.linear_flags(coeffs)
            lin_dropped = int(flags.sum())
            coeffs = coeffs[~flags]
        if coeffs.shape[0] == 0:
            return zero_dropped, lin_dropped, {}, None, []
        counts = engine.counts(coeffs)
        hist: dict[int, int] = {}
        for value, times in zip(*np.unique(counts, return_counts=True)):
            hist[int(value)] = int(times)
        best = int(counts.max())
        rows = [coeffs[i].copy() for i in np.nonzero(counts == best)[0]]
        return zero_dropped, lin_dropped, hist, best, rows

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(process, blocks))
    else:
        results = [process(b) for b in blocks]

    best_rows: list = []
    for zero_dropped, lin_dropped, hist, best, rows in results:
        record.discarded_zero += zero_dropped
        record.discarded_linear += lin_dropped
        for value, times in hist.items():
            record.histogram[value] = record.histogram.get(value, 0) + times
        record.curves_examined += sum(hist.values())
        if best is None:
            continue
        if record.best_N is None or best > record.best_N:
            record.best_N = best
            best_rows = list(rows[: task.witness_cap])
        elif best == record.best_N and len(best_rows) < task.witness_cap:
            best_rows.extend(rows[: task.witness_cap - len(best_rows)])

    for row in best_rows[: task.witness_cap]:
        verified = count_exact(ctx, task.degree, row)
        if verified != record.best_N:
            raise RuntimeError(
                f"witness re-verification failed: engine said {record.best_N}, "
                f"exact count is {verified}"
            )
        terms = {m: int(c) for m, c in zip(monomials(task.degree), row) if c}
        record.witnesses.append(PlaneCurve(ctx, task.degree, terms))
    return record


def singular_constraint_basis(ctx, degree: int, point) -> list:
    """Basis of coefficient vectors of curves with F and all partials
    vanishing at the given rational point (four linear conditions)."""
    point = plane.normalize(ctx, point)
    monos = monomials(degree)
    p = ctx.char
    x, y, z = point
    xs = ctx.powers(x, degree)
    ys = ctx.powers(y, degree)
    zs = ctx.powers(z, degree)

    def monomial_value(i, j, k):
        return ctx.mul(xs[i], ctx.mul(ys[j], zs[k]))

    rows = []
    rows.append([monomial_value(i, j, k) for (i, j, k) in monos])
    for axis in range(3):
        row = []
        for (i, j, k) in monos:
            exps = [i, j, k]
            e = exps[axis]
            mult = e % p
            if e == 0 or mult == 0:
                row.append(0)
                continue
            exps[axis] = e - 1
            base = monomial_value(*exps)
            acc = 0
            for _ in range(mult):
                acc = ctx.add(acc, base)
            row.append(acc)
        rows.append(row)
    return linalg.nullspace(ctx, rows, len(monos))


def _combine_basis(ctx, basis, combo: np.ndarray) -> np.ndarray:
    out = np.zeros((combo.shape[0], len(basis[0])), dtype=np.uint8)
    for r in range(combo.shape[0]):
        vec = [0] * len(basis[0])
        for b, c in zip(basis, combo[r]):
            c = int(c)
            if c:
                for idx, bv in enumerate(b):
                    if bv:
                        vec[idx] = ctx.add(vec[idx], ctx.mul(c, bv))
        out[r] = vec
    return out


def random_singular_instances(
    ctx, degree: int, point, n: int, seed: int
) -> list[PlaneCurve]:
    """n seeded random curves singular at the given rational point, with
    linear-component carriers discarded."""
    if degree < 2:
        raise ValueError("forced singular curves need degree >= 2")
    basis = singular_constraint_basis(ctx, degree, point)
    rng = np.random.default_rng(seed)
    monos = monomials(degree)
    out: list[PlaneCurve] = []
    while len(out) < n:
        combo = rng.integers(0, ctx.q, size=(1, len(basis)), dtype=np.int64)
        vec = _combine_basis(ctx, basis, combo)[0]
        terms = {m: int(c) for m, c in zip(monos, vec) if c}
        if not terms:
            continue
        cur = PlaneCurve(ctx, degree, terms)
        if has_linear_component(cur) is not None:
            continue
        out.append(cur)
    return out
