"""Sampling experiments: TS' density by word length, decay fits, the linear-time
benchmark, and the filling cross-check against splitting witnesses.

Densities are estimated per sphere (words of length exactly n). Ball densities
follow by weighting rows with ``sphere_size``. Randomness is derived from the
master seed per (row, chunk) task, so output does not depend on the number of
worker processes.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from . import kernels
from .automorphisms import enumerate_type1, enumerate_type2, whitehead_minimize
from .genericity import epsilon_bound, in_L_epsilon, in_TS_prime, ts_checker
from .splittings import find_nonfilling_witness, small_splittings
from .words import (
    conjugate,
    cyclic_core,
    iter_cyclic_words,
    iter_sphere,
    power,
    random_reduced_word,
    sphere_size,
)

SET_IDS = ("TS'", "L(eps)", "L'(eps)")
CHUNK = 1000
Z95 = 1.959963984540054


def membership(set_id: str, rank: int, epsilon=None) -> Callable:
    if set_id in ("TS'", "TS"):
        return lambda w: in_TS_prime(w, rank)
    eps = Fraction(epsilon) if epsilon is not None else epsilon_bound(rank) / 2
    if set_id == "L(eps)":
        # L(eps) lives inside the cyclically reduced words
        return lambda w: bool(w) and cyclic_core(w) == w and in_L_epsilon(w, eps, rank)
    if set_id == "L'(eps)":
        def test(w):
            core = cyclic_core(w)
            return bool(core) and in_L_epsilon(core, eps, rank)

        return test
    raise ValueError(f"unknown set {set_id!r}; expected one of {SET_IDS}")


def wilson_interval(hits: int, n: int, z: float = Z95) -> tuple[float, float]:
    if n == 0:
        return 0.0, 1.0
    p = hits / n
    denom = 1 + z * z / n
    centre = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    lo = 0.0 if hits == 0 else max(0.0, centre - half)
    hi = 1.0 if hits == n else min(1.0, centre + half)
    return lo, hi


@dataclass(frozen=True)
class DensityRow:
    set_id: str
    rank: int
    n: int
    samples: int
    hits: int
    density: float
    ci_low: float
    ci_high: float
    seed: int

    @property
    def ci_width(self) -> float:
        return self.ci_high - self.ci_low


CSV_COLUMNS = ["set_id", "N", "n", "samples", "hits", "density", "ci_low", "ci_high", "seed"]


def rows_to_csv(rows: Sequence[DensityRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        writer.writerow(
            [r.set_id, r.rank, r.n, r.samples, r.hits, f"{r.density:.6f}", f"{r.ci_low:.6f}", f"{r.ci_high:.6f}", r.seed]
        )
    return buf.getvalue()


def _count_chunk(task) -> int:
    set_id, rank, epsilon, n, count, seed, row, chunk = task
    rng = np.random.default_rng([seed, row, chunk])
    test = membership(set_id, rank, epsilon)
    return sum(1 for _ in range(count) if test(random_reduced_word(n, rank, rng)))


def estimate_density(
    set_id: str,
    lengths: Sequence[int],
    samples_per_length: int,
    rank: int = 2,
    epsilon=None,
    seed: int = 0,
    workers: int = 1,
) -> list[DensityRow]:
    if list(lengths) != sorted(lengths):
        raise ValueError("lengths must be sorted ascending")
    if samples_per_length < 100:
        raise ValueError("need at least 100 samples per length")
    membership(set_id, rank, epsilon)  # validate early
    eps = None if epsilon is None else str(Fraction(epsilon))
    tasks = []
    for row, n in enumerate(lengths):
        for chunk, start in enumerate(range(0, samples_per_length, CHUNK)):
            count = min(CHUNK, samples_per_length - start)
            tasks.append((set_id, rank, eps, n, count, seed, row, chunk))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(_count_chunk, tasks))
    else:
        counts = [_count_chunk(t) for t in tasks]
    hits = [0] * len(lengths)
    for t, c in zip(tasks, counts):
        hits[t[6]] += c
    rows = []
    for row, n in enumerate(lengths):
        lo, hi = wilson_interval(hits[row], samples_per_length)
        rows.append(
            DensityRow(set_id, rank, n, samples_per_length, hits[row], hits[row] / samples_per_length, lo, hi, seed)
        )
    return rows


def ball_density(rows: Sequence[DensityRow], rank: int) -> float:
    """Density over the union of the sampled spheres, weighted by sphere size."""
    total = sum(sphere_size(r.n, rank) for r in rows)
    return sum(Fraction(sphere_size(r.n, rank)) * Fraction(r.hits, r.samples) for r in rows) / total


@dataclass(frozen=True)
class DecayFit:
    alpha: float
    beta: float
    r_squared: float
    rows_used: int

    def describe(self) -> str:
        return f"alpha={self.alpha:.6g} beta={self.beta:.6g} r_squared={self.r_squared:.6f} rows_used={self.rows_used}"


def fit_decay(rows: Sequence) -> DecayFit:
    """Least squares for ``log(1 - density) = alpha - beta * n`` over rows with 0 < density < 1.

    ``rows`` holds DensityRow objects or ``(n, density)`` pairs.
    """
    pts = []
    for r in rows:
        n, d = (r.n, r.density) if isinstance(r, DensityRow) else r
        if 0 < d < 1:
            pts.append((float(n), math.log1p(-d)))
    if len(pts) < 3:
        raise ValueError(f"need at least 3 rows with 0 < density < 1, got {len(pts)}")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (intercept + slope * x)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return DecayFit(float(intercept), float(-slope), r2, len(pts))


def monotone_violations(rows: Sequence[DensityRow], slack_widths: float = 2.0) -> list[tuple[int, int]]:
    """Pairs of consecutive lengths where density drops by more than the CI slack."""
    bad = []
    for a, b in zip(rows, rows[1:]):
        slack = slack_widths * max(a.ci_width, b.ci_width)
        if b.density < a.density - slack:
            bad.append((a.n, b.n))
    return bad


# exact counts


def sphere_count(n: int, rank: int, test: Callable) -> int:
    """Members of the sphere of radius ``n``, by enumerating every reduced word."""
    return sum(1 for w in iter_sphere(n, rank) if test(w))


def ts_class_census(max_length: int, rank: int) -> dict[int, int]:
    """Number of cyclic words (conjugacy classes) of each length that lie in TS."""
    checker = ts_checker(rank)
    return {m: sum(1 for w in iter_cyclic_words(m, rank) if checker.contains(w)) for m in range(max_length + 1)}


def exact_ts_prime_sphere_count(n: int, rank: int, census: dict[int, int]) -> int:
    """Members of TS' among reduced words of length ``n``, from the class census.

    TS words are not proper powers, so a class of length m has m distinct
    rotations; a core of length m >= 1 extends to (2N-2)(2N-1)^(k-1) words of
    length m + 2k.
    """
    q = 2 * rank - 1
    total = 0
    for k in range(n // 2 + 1):
        m = n - 2 * k
        if m < 1 or census.get(m, 0) == 0:
            continue
        words = m * census[m]
        total += words if k == 0 else words * (2 * rank - 2) * q ** (k - 1)
    return total


# benchmark


@dataclass(frozen=True)
class BenchRow:
    n: int
    median_ns: float
    ns_per_letter: float


@dataclass
class BenchTable:
    implementation: str
    rows: list = field(default_factory=list)
    ratios: dict = field(default_factory=dict)  # n -> median(2n)/median(n)

    def row(self, n: int) -> BenchRow:
        return next(r for r in self.rows if r.n == n)

    def ns_per_letter_cv(self, ns: Sequence[int]) -> float:
        vals = [self.row(n).ns_per_letter for n in ns]
        return statistics.pstdev(vals) / statistics.mean(vals)

    def describe(self) -> str:
        lines = [f"# kernels={self.implementation}", "n,median_ns,ns_per_letter"]
        lines += [f"{r.n},{r.median_ns:.0f},{r.ns_per_letter:.3f}" for r in self.rows]
        lines += [f"ratio median({2 * n})/median({n}) = {v:.3f}" for n, v in sorted(self.ratios.items())]
        return "\n".join(lines)


def bench_linear_membership(
    lengths: Sequence[int], reps: int = 5, seed: int = 0, rank: int = 2, repeats: int = 3
) -> BenchTable:
    """Median wall-clock of ``in_TS_prime`` on ``reps`` random words of length n and 2n.

    Every word is timed ``repeats`` times and its fastest run kept. The rounds
    sweep all sizes in turn, so a burst of outside load cannot inflate one size
    alone.
    """
    rng = np.random.default_rng(seed)
    ts_checker(rank)  # build tables outside the timed region
    sizes = sorted(set(lengths) | {2 * n for n in lengths})
    words = {n: [random_reduced_word(n, rank, rng) for _ in range(reps)] for n in sizes}
    best = {n: [math.inf] * reps for n in sizes}
    for _ in range(max(1, repeats)):
        for n in sizes:
            for i, w in enumerate(words[n]):
                t0 = time.perf_counter_ns()
                in_TS_prime(w, rank)
                best[n][i] = min(best[n][i], time.perf_counter_ns() - t0)
    table = BenchTable(kernels.IMPLEMENTATION)
    medians = {n: float(statistics.median(best[n])) for n in sizes}
    for n in sizes:
        table.rows.append(BenchRow(n, medians[n], medians[n] / n if n else 0.0))
    for n in lengths:
        if n > 0 and medians.get(n):
            table.ratios[n] = medians[2 * n] / medians[n]
    return table


# cross validation


def random_whitehead_automorphisms(rank: int, count: int, rng: np.random.Generator) -> list:
    pool = enumerate_type1(rank) + enumerate_type2(rank)
    return [pool[int(i)] for i in rng.integers(len(pool), size=count)]


def random_primitive(rank: int, max_steps: int, rng: np.random.Generator) -> tuple:
    """Image of a random basis letter under a random product of Whitehead automorphisms."""
    g = int(rng.integers(1, rank + 1)) * (1 if rng.random() < 0.5 else -1)
    w = (g,)
    steps = int(rng.integers(1, max_steps + 1))
    for phi in random_whitehead_automorphisms(rank, steps, rng):
        w = phi(w)
    return w


def random_proper_power(rank: int, rng: np.random.Generator, max_root: int = 20, max_exp: int = 5) -> tuple:
    while True:
        z = random_reduced_word(int(rng.integers(1, max_root + 1)), rank, rng)
        w = power(z, int(rng.integers(2, max_exp + 1)))
        g = random_reduced_word(int(rng.integers(0, 6)), rank, rng)
        w = conjugate(w, g)
        if w:
            return w


def random_vertex_group_element(rank: int, bound: int, max_length: int, rng: np.random.Generator):
    """(spec, vertex index, element) with a nontrivial element of that vertex group, length <= max_length."""
    specs = small_splittings(rank, bound)
    while True:
        spec = specs[int(rng.integers(len(specs)))]
        groups = spec.vertex_generators()
        vi = int(rng.integers(len(groups)))
        gens = groups[vi]
        factors = int(rng.integers(1, 12))
        out: list[int] = []
        for _ in range(factors):
            g = gens[int(rng.integers(len(gens)))]
            if rng.random() < 0.5:
                g = tuple(-a for a in reversed(g))
            out.extend(g)
        w = kernels.free_reduce(out)
        if w and len(w) <= max_length:
            return spec, vi, w


@dataclass
class CrossValidationReport:
    rank: int
    length: int
    bound: int
    seed: int
    ts_samples: int = 0
    ts_attempts: int = 0
    ts_with_witness: int = 0
    vertex_samples: int = 0
    vertex_in_ts: int = 0
    primitive_samples: int = 0
    primitive_in_ts: int = 0
    primitive_not_minimized: int = 0
    examples: list = field(default_factory=list)

    @property
    def violations(self) -> int:
        return self.ts_with_witness + self.vertex_in_ts + self.primitive_in_ts + self.primitive_not_minimized

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def describe(self) -> str:
        d = asdict(self)
        d.pop("examples")
        d["violations"] = self.violations
        return "\n".join(f"{k}={v}" for k, v in d.items())


def cross_validate_filling(
    sample_count: int,
    length: int,
    bound: int,
    seed: int,
    rank: int = 2,
    vertex_max_length: int = 40,
    primitive_steps: int = 20,
) -> CrossValidationReport:
    """TS' samples must have no splitting witness; elliptic and primitive samples must miss TS'."""
    rng = np.random.default_rng([seed, rank, length, bound])
    rep = CrossValidationReport(rank, length, bound, seed)
    max_attempts = 1000 * sample_count
    while rep.ts_samples < sample_count and rep.ts_attempts < max_attempts:
        w = random_reduced_word(length, rank, rng)
        rep.ts_attempts += 1
        if not in_TS_prime(w, rank):
            continue
        rep.ts_samples += 1
        found = find_nonfilling_witness(w, rank, bound)
        if found.found:
            rep.ts_with_witness += 1
            rep.examples.append(("TS' element with witness", w, found))
    for _ in range(sample_count):
        spec, vi, w = random_vertex_group_element(rank, bound, vertex_max_length, rng)
        rep.vertex_samples += 1
        if in_TS_prime(w, rank):
            rep.vertex_in_ts += 1
            rep.examples.append(("elliptic element in TS'", w, spec))
    for _ in range(sample_count):
        w = random_primitive(rank, primitive_steps, rng)
        rep.primitive_samples += 1
        if in_TS_prime(w, rank):
            rep.primitive_in_ts += 1
            rep.examples.append(("primitive element in TS'", w, None))
        if len(whitehead_minimize(w, rank)[0]) != 1:
            rep.primitive_not_minimized += 1
    return rep
