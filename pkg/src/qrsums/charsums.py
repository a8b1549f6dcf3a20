"""Complete character sums S_k(a;p) = sum_x chi((x+a_1)...(x+a_k)) and
their empirical statistics.

Everything upstream of the histograms is exact integer arithmetic: sums
are evaluated directly over F_p (O(p) per tuple, vectorized over tuple
blocks with numpy), and the Weil / Wan bound checks compare squared
integers so boundary values are never misclassified by rounding.

Enumeration and sampling are block-parallel; blocks are merged in block
order with integer reductions (bin counts, maxima), so results are
bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    BudgetExceededError,
    OddTupleError,
    TupleNotDistinctError,
)
from .field import FpSet, Prime, as_prime, legendre_table

DEFAULT_BUDGET = 10**8  # exhaustive tuple evaluations, overridable per call

_EVAL_BLOCK = 2048  # tuple rows per numpy evaluation block


@dataclass(frozen=True)
class KTuple:
    """A k-tuple of F_p elements (k >= 2), with its distinctness cached."""

    coords: tuple[int, ...]
    distinct: bool

    @classmethod
    def make(cls, coords: Sequence[int], p: int | Prime) -> "KTuple":
        pv = int(as_prime(p))
        reduced = tuple(c % pv for c in coords)
        if len(reduced) < 2:
            raise ValueError("tuple length must be at least 2")
        return cls(reduced, len(set(reduced)) == len(reduced))

    @property
    def k(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class CharSumRecord:
    """One evaluated character sum with its normalizations and bound flags.

    weil_ok / wan_ok are None when the corresponding bound does not apply
    (repeated coordinates; wan additionally needs even k).
    """

    tuple: KTuple
    p: int
    value: int
    normalized: float
    shifted_normalized: float
    weil_ok: bool | None
    wan_ok: bool | None


@lru_cache(maxsize=128)
def _chi(p: int) -> np.ndarray:
    return legendre_table(p)


def _as_ktuple(a, p) -> KTuple:
    return a if isinstance(a, KTuple) else KTuple.make(a, p)


def char_sum(a: Sequence[int] | KTuple, p: int | Prime) -> CharSumRecord:
    """Evaluate S_k(a;p) exactly and attach Weil/Wan verdicts."""
    pv = int(as_prime(p))
    kt = _as_ktuple(a, pv)
    chi = _chi(pv)
    value = 0
    for x in range(pv):
        prod = 1
        for c in kt.coords:
            prod *= chi[(x + c) % pv]
            if prod == 0:
                break
        value += int(prod)
    sqrt_p = math.sqrt(pv)
    weil = _weil_holds(value, kt.k, pv) if kt.distinct else None
    wan = None
    if kt.distinct and kt.k % 2 == 0:
        wan = _wan_holds(value, kt.k, pv)
    return CharSumRecord(
        tuple=kt,
        p=pv,
        value=value,
        normalized=value / sqrt_p,
        shifted_normalized=(value + 1) / sqrt_p,
        weil_ok=weil,
        wan_ok=wan,
    )


def shift_reduced_sum(a: Sequence[int] | KTuple, p: int | Prime) -> int:
    """The reduced form of S_k after the shift x -> x - a_1 and the
    reciprocal substitution x -> 1/x; always equals S_k + 1.

    The substitution turns each factor chi(x + d_i) into chi(1 + d_i x)
    at the cost of a chi(x)^k twist, so the sum is

        1 + sum_{x != 0} chi(x)^k prod_{i>=2} chi(1 + (a_i - a_1) x).

    For even k the twist is invisible and this is the plain complete sum
    sum_x chi(prod (1 + (a_i - a_1) x)); for odd k the twist must be
    kept or the identity breaks.
    """
    pv = int(as_prime(p))
    kt = _as_ktuple(a, pv)
    if not kt.distinct:
        raise TupleNotDistinctError(f"coordinates {kt.coords} repeat mod {pv}")
    chi = _chi(pv)
    diffs = [(c - kt.coords[0]) % pv for c in kt.coords[1:]]
    odd = kt.k % 2 == 1
    total = 0
    for x in range(1, pv):
        prod = int(chi[x]) if odd else 1
        for d in diffs:
            prod *= chi[(1 + d * x) % pv]
            if prod == 0:
                break
        total += int(prod)
    return total + 1


def _weil_holds(value: int, k: int, p: int) -> bool:
    # |S| <= (k-1) sqrt(p), compared as squares
    return value * value <= (k - 1) * (k - 1) * p


def _wan_holds(value: int, k: int, p: int) -> bool:
    # S <= (k-2) sqrt(p) - 1; trivially true when S + 1 <= 0
    s = value + 1
    if s <= 0:
        return True
    return s * s <= (k - 2) * (k - 2) * p


def check_weil(record: CharSumRecord, p: int | Prime) -> bool:
    """|S_k| <= (k-1) sqrt(p) for pairwise-distinct coordinates."""
    pv = int(as_prime(p))
    if not record.tuple.distinct:
        raise TupleNotDistinctError("Weil bound needs distinct coordinates")
    return _weil_holds(record.value, record.tuple.k, pv)


def check_wan(record: CharSumRecord, p: int | Prime) -> bool:
    """One-sided bound S_k <= (k-2) sqrt(p) - 1 for even k, distinct coords."""
    pv = int(as_prime(p))
    if record.tuple.k % 2 != 0:
        raise OddTupleError("the one-sided bound applies to even k only")
    if not record.tuple.distinct:
        raise TupleNotDistinctError("bound needs distinct coordinates")
    return _wan_holds(record.value, record.tuple.k, pv)


# ---------------------------------------------------------------------------
# block enumeration / sampling machinery


def _eval_block(chi: np.ndarray, p: int, block: np.ndarray) -> np.ndarray:
    """S_k for each row of a (m, k) tuple block, as int64."""
    x = np.arange(p, dtype=np.int32)
    idx = (block[:, None, :].astype(np.int32) + x[None, :, None]) % p
    factors = chi[idx]
    return factors.prod(axis=2, dtype=np.int64).sum(axis=1)


def _combo_blocks(p: int, k: int, fix_first: bool) -> Iterator[np.ndarray]:
    """Pairwise-distinct tuples as sorted combinations, in numpy blocks.

    With fix_first the first coordinate is pinned to 0 (every translation
    orbit has a representative containing 0, and S_k is invariant under
    both translation and coordinate order).
    """
    if fix_first:
        gen: Iterable = ((0,) + c for c in combinations(range(1, p), k - 1))
    else:
        gen = combinations(range(p), k)
    buf: list[tuple[int, ...]] = []
    for combo in gen:
        buf.append(combo)
        if len(buf) == _EVAL_BLOCK:
            yield np.array(buf, dtype=np.int32)
            buf = []
    if buf:
        yield np.array(buf, dtype=np.int32)


def _sample_blocks(p: int, k: int, n: int, seed: int) -> Iterator[np.ndarray]:
    """n uniform pairwise-distinct ordered tuples, by rejection.

    The accepted stream is a pure function of the seed; worker counts
    downstream never touch it.
    """
    rng = np.random.default_rng(seed)
    produced = 0
    while produced < n:
        want = min(_EVAL_BLOCK, n - produced)
        rows = rng.integers(0, p, size=(2 * want + 16, k), dtype=np.int32)
        srt = np.sort(rows, axis=1)
        ok = (np.diff(srt, axis=1) != 0).all(axis=1)
        rows = rows[ok][:want]
        if len(rows) == 0:
            continue
        produced += len(rows)
        yield rows


def _falling_factorial(p: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= p - i
    return out


def _check_budget(p: int, k: int, budget: int) -> None:
    nominal = _falling_factorial(p, k)
    if nominal > budget:
        raise BudgetExceededError(
            f"exhaustive scan of {nominal} distinct {k}-tuples mod {p} "
            f"exceeds budget {budget}"
        )


def _map_blocks(fn, blocks, workers: int) -> list:
    """Apply fn to blocks, in order, optionally on a thread pool.

    Results come back in block order regardless of worker count, so any
    order-sensitive caller still sees a deterministic sequence.
    """
    if workers <= 1:
        return [fn(b) for b in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, blocks))


# ---------------------------------------------------------------------------
# empirical c_k


@dataclass(frozen=True)
class CkResult:
    """Outcome of a c_k scan: the exact integer maximum and its witness."""

    k: int
    p: int
    mode: str
    max_value: int
    argmax: tuple[int, ...]
    ck: float
    tuples_scanned: int


def ck_scan(
    k: int,
    p: int | Prime,
    mode: str = "exhaustive",
    n: int = 0,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> CkResult:
    """Scan S_k over distinct tuples; max_value/sqrt(p) estimates c_k(p).

    Exhaustive mode enumerates one representative per translation orbit
    (first coordinate 0) and is exact: the returned value IS c_k(p).
    """
    pv = int(as_prime(p))
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > pv:
        raise ValueError(f"no pairwise-distinct {k}-tuples exist mod {pv}")
    chi = _chi(pv)
    if mode == "exhaustive":
        _check_budget(pv, k, budget)
        blocks = list(_combo_blocks(pv, k, fix_first=True))
    elif mode == "sampled":
        if n < 1:
            raise ValueError("sampled mode needs n >= 1")
        blocks = list(_sample_blocks(pv, k, n, seed))
    else:
        raise ValueError(f"unknown mode {mode!r}")

    def best_of(block: np.ndarray) -> tuple[int, tuple[int, ...], int]:
        vals = _eval_block(chi, pv, block)
        j = int(np.argmax(vals))
        return int(vals[j]), tuple(int(c) for c in block[j]), len(block)

    results = _map_blocks(best_of, blocks, workers)
    best_val, best_arg, scanned = results[0]
    total = 0
    for val, arg, m in results:
        total += m
        if val > best_val:
            best_val, best_arg = val, arg
    return CkResult(
        k=k,
        p=pv,
        mode=mode,
        max_value=best_val,
        argmax=best_arg,
        ck=best_val / math.sqrt(pv),
        tuples_scanned=total,
    )


def ck_empirical(
    k: int,
    p: int | Prime,
    mode: str = "exhaustive",
    n: int = 0,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> float:
    """max S_k/sqrt(p) over enumerated or sampled distinct tuples."""
    return ck_scan(k, p, mode, n=n, seed=seed, budget=budget, workers=workers).ck


# ---------------------------------------------------------------------------
# histograms


@dataclass(frozen=True)
class Histogram:
    """Binned view of a statistic plus its exact sample moments.

    statistic_mean/statistic_variance are computed from the raw values
    (never from bin centers).  reference_density, present for k=4, holds
    the semicircle density at bin centers.
    """

    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]
    total: int
    statistic_mean: float
    statistic_variance: float
    reference_density: tuple[float, ...] | None = None

    def __post_init__(self):
        if len(self.counts) != len(self.bin_edges) - 1:
            raise ValueError("need exactly one more edge than bins")
        if sum(self.counts) != self.total:
            raise ValueError("bin counts do not add up to the total")


def semicircle_density(t: float) -> float:
    """Semicircle density sqrt(4 - t^2)/(2 pi) on [-2, 2], 0 outside."""
    if t <= -2.0 or t >= 2.0:
        return 0.0
    return math.sqrt(4.0 - t * t) / (2.0 * math.pi)


def semicircle_cdf(t: float) -> float:
    """CDF of the semicircle density."""
    if t <= -2.0:
        return 0.0
    if t >= 2.0:
        return 1.0
    return 0.5 + t * math.sqrt(4.0 - t * t) / (4.0 * math.pi) + math.asin(t / 2.0) / math.pi


def semicircle_discrepancy(values: Sequence[float]) -> float:
    """Sup-norm (Kolmogorov) distance between the empirical CDF and the
    semicircle CDF."""
    xs = sorted(values)
    n = len(xs)
    if n == 0:
        raise ValueError("no values")
    worst = 0.0
    for i, x in enumerate(xs):
        f = semicircle_cdf(x)
        worst = max(worst, abs(f - i / n), abs((i + 1) / n - f))
    return worst


def vertical_histogram(
    k: int,
    p: int | Prime,
    bins: int,
    mode: str = "exhaustive",
    n: int = 0,
    seed: int = 0,
    fix_first: bool = True,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> Histogram:
    """Histogram of (S_k(a;p)+1)/sqrt(p) over pairwise-distinct tuples.

    The shifted normalization matches the family sum_x chi(prod (1+c_i x))
    exactly, whose values lie in [(2-k) sqrt(p), (k-2) sqrt(p)], so the
    bins span [2-k, k-2] and every sample lands inside them.
    """
    pv = int(as_prime(p))
    if k % 2 != 0 or k < 4:
        raise OddTupleError("histogram statistic is defined for even k >= 4")
    if bins < 2:
        raise ValueError("need at least 2 bins")
    if k > pv:
        raise ValueError(f"no pairwise-distinct {k}-tuples exist mod {pv}")
    chi = _chi(pv)
    if mode == "exhaustive":
        _check_budget(pv, k, budget)
        blocks = list(_combo_blocks(pv, k, fix_first))
    elif mode == "sampled":
        if n < 1:
            raise ValueError("sampled mode needs n >= 1")
        blocks = list(_sample_blocks(pv, k, n, seed))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    edges = np.linspace(2 - k, k - 2, bins + 1)
    sqrt_p = math.sqrt(pv)

    def reduce_block(block: np.ndarray) -> tuple[np.ndarray, int, int, int]:
        shifted = _eval_block(chi, pv, block) + 1  # exact ints
        counts, _ = np.histogram(shifted / sqrt_p, bins=edges)
        return counts, int(shifted.sum()), int((shifted * shifted).sum()), len(block)

    partials = _map_blocks(reduce_block, blocks, workers)
    counts = np.zeros(bins, dtype=np.int64)
    sum_s = sum_s2 = total = 0
    for c, s1, s2, m in partials:
        counts += c
        sum_s += s1
        sum_s2 += s2
        total += m
    mean = sum_s / (total * sqrt_p)
    variance = sum_s2 / (total * pv) - mean * mean
    density = None
    if k == 4:
        centers = (edges[:-1] + edges[1:]) / 2.0
        density = tuple(semicircle_density(float(t)) for t in centers)
    return Histogram(
        bin_edges=tuple(float(e) for e in edges),
        counts=tuple(int(c) for c in counts),
        total=total,
        statistic_mean=mean,
        statistic_variance=variance,
        reference_density=density,
    )


@dataclass(frozen=True)
class SweepResult:
    """Fixed-tuple sweep over a prime range: histogram plus raw points.

    points holds (p, (S_4+1)/sqrt(p)) per surviving prime; skipped lists
    the primes where two coordinates of a collided mod p.
    """

    histogram: Histogram
    points: tuple[tuple[int, float], ...]
    skipped: tuple[int, ...]


def horizontal_sweep(
    a: Sequence[int],
    prime_lo: int,
    prime_hi: int,
    bins: int = 20,
) -> SweepResult:
    """(S_4(a mod p; p)+1)/sqrt(p) as p runs over odd primes in range."""
    coords = tuple(a)
    if len(coords) != 4:
        raise ValueError("the sweep is defined for integer 4-tuples")
    if len(set(coords)) != 4:
        raise TupleNotDistinctError(f"coordinates {coords} repeat")
    if bins < 2:
        raise ValueError("need at least 2 bins")
    from .field import primes_in_range

    points: list[tuple[int, float]] = []
    skipped: list[int] = []
    values: list[float] = []
    for p in primes_in_range(max(prime_lo, 3), prime_hi):
        if p == 2:
            continue
        reduced = tuple(c % p for c in coords)
        if len(set(reduced)) != 4:
            skipped.append(p)
            continue
        rec = char_sum(reduced, p)
        t = rec.shifted_normalized
        points.append((p, t))
        values.append(t)
    edges = np.linspace(-2.0, 2.0, bins + 1)
    counts, _ = np.histogram(values, bins=edges)
    total = len(values)
    if total:
        mean = math.fsum(values) / total
        variance = math.fsum(v * v for v in values) / total - mean * mean
    else:
        mean = variance = 0.0
    centers = (edges[:-1] + edges[1:]) / 2.0
    hist = Histogram(
        bin_edges=tuple(float(e) for e in edges),
        counts=tuple(int(c) for c in counts),
        total=total,
        statistic_mean=mean,
        statistic_variance=variance,
        reference_density=tuple(semicircle_density(float(t)) for t in centers),
    )
    return SweepResult(histogram=hist, points=tuple(points), skipped=tuple(skipped))


def shifted_samples(
    k: int,
    p: int | Prime,
    mode: str = "exhaustive",
    n: int = 0,
    seed: int = 0,
    fix_first: bool = True,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> list[float]:
    """Raw (S_k+1)/sqrt(p) stream, identical to the histogram's input.

    Exposed so sup-norm CDF discrepancies can be taken over the exact
    sample values rather than bin counts; same seed, same stream.
    """
    pv = int(as_prime(p))
    if k < 2:
        raise ValueError("k must be at least 2")
    if k > pv:
        raise ValueError(f"no pairwise-distinct {k}-tuples exist mod {pv}")
    chi = _chi(pv)
    if mode == "exhaustive":
        _check_budget(pv, k, budget)
        blocks = list(_combo_blocks(pv, k, fix_first))
    elif mode == "sampled":
        if n < 1:
            raise ValueError("sampled mode needs n >= 1")
        blocks = list(_sample_blocks(pv, k, n, seed))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    root = math.sqrt(pv)
    out: list[float] = []
    for vals in _map_blocks(lambda b: _eval_block(chi, pv, b), blocks, workers):
        out.extend(float(int(v) + 1) / root for v in vals)
    return out


# ---------------------------------------------------------------------------
# additive characters


def additive_char_power(S: FpSet) -> list[float]:
    """|sum_{s in S} e^(2 pi i psi s / p)|^2 for psi = 0..p-1.

    Computed with a dense DFT of the indicator vector; Parseval gives
    sum over psi = p |S|.
    """
    p = S.p
    indicator = np.zeros(p, dtype=np.float64)
    for e in S:
        indicator[e] = 1.0
    spectrum = np.fft.fft(indicator)
    return [float(v) for v in (spectrum.real**2 + spectrum.imag**2)]
