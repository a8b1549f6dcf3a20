"""Conditional inequalities on pairs with A+B inside the residue set, and
the size windows any exact decomposition of R_p would have to satisfy.

Two groups live here:

- per-pair certificates: given A, B with every a+b a quadratic residue,
  verify the cardinality and product inequalities that are theorems
  under that hypothesis;
- closed-form evaluators: the admissible size window for a true
  decomposition, the guaranteed count of uniquely-representable sums,
  the energy/size bounds under a sparsity parameter eta, the size
  bounds under the ratio parameter delta, and the logarithmic
  inequality swept over primes.

Comparisons against c*sqrt(p) are done by squaring integers, never by
rounding; remaining real comparisons use 1e-9 relative tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    HypothesisViolatedError,
    ModulusMismatchError,
    ParameterRangeError,
)
from .field import FpSet, Prime, as_prime, legendre_table, primes_in_range, residue_set


@dataclass(frozen=True)
class CertificateEntry:
    """One named inequality: display values plus the exact verdict."""

    name: str
    lhs: float
    rhs: float
    passed: bool


@dataclass(frozen=True)
class BoundsCertificate:
    p: int
    checks: tuple[CertificateEntry, ...]
    all_passed: bool

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "checks": [
                {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "passed": c.passed}
                for c in self.checks
            ],
            "all_passed": self.all_passed,
        }


def check_subset_residues(A: FpSet, B: FpSet) -> bool:
    """True iff every a + b is a quadratic residue (never 0)."""
    if A.p != B.p:
        raise ModulusMismatchError(f"moduli differ: {A.p} vs {B.p}")
    chi = legendre_table(A.p)
    return all(chi[(a + b) % A.p] == 1 for a in A for b in B)


def _require_hypothesis(A: FpSet, B: FpSet) -> None:
    if not check_subset_residues(A, B):
        raise HypothesisViolatedError("A+B is not contained in the residue set")


def check_cardinality_bound(A: FpSet, B: FpSet) -> CertificateEntry:
    """|B||A|(|A|+2)^2 <= 2 sqrt(p)(|A|^2-1)(|A|-2) - |A|^3 + 11|A| - 15
    + p(3|A|+2), given A+B inside R_p.

    The comparison moves every integer term to the left and squares, so
    the sqrt(p) coefficient never meets floating point.
    """
    _require_hypothesis(A, B)
    p, na, nb = A.p, len(A), len(B)
    lhs = nb * na * (na + 2) ** 2
    w = (na * na - 1) * (na - 2)  # >= 0 for na >= 1
    rest = -(na**3) + 11 * na - 15 + p * (3 * na + 2)
    d = lhs - rest  # need d <= 2 sqrt(p) w
    if d <= 0:
        passed = True
    elif w <= 0:
        passed = False
    else:
        passed = d * d <= 4 * p * w * w
    return CertificateEntry(
        name="cardinality-bound",
        lhs=float(lhs),
        rhs=2.0 * math.sqrt(p) * w + rest,
        passed=passed,
    )


def check_product_bound(A: FpSet, B: FpSet) -> CertificateEntry:
    """p|A||B| <= (p - |A|)(p - |B|), given A+B inside R_p."""
    _require_hypothesis(A, B)
    p, na, nb = A.p, len(A), len(B)
    lhs = p * na * nb
    rhs = (p - na) * (p - nb)
    return CertificateEntry(
        name="product-bound", lhs=float(lhs), rhs=float(rhs), passed=lhs <= rhs
    )


def evaluate_certificate(A: FpSet, B: FpSet) -> BoundsCertificate:
    """All conditional inequalities on one pair, both orientations."""
    _require_hypothesis(A, B)
    swapped = check_cardinality_bound(B, A)
    entries = (
        check_cardinality_bound(A, B),
        CertificateEntry(
            name="cardinality-bound-swapped",
            lhs=swapped.lhs,
            rhs=swapped.rhs,
            passed=swapped.passed,
        ),
        check_product_bound(A, B),
    )
    return BoundsCertificate(
        p=A.p, checks=entries, all_passed=all(e.passed for e in entries)
    )


def generate_residue_instance(
    p: int | Prime, target_sizes: tuple[int, int], seed: int
) -> tuple[FpSet, FpSet] | None:
    """Random (A, B) with A+B inside R_p, or None when construction dies.

    Grows A one element at a time, keeping the candidate pool
    C = intersection of (R_p - a) large enough to still fit B; B is then
    a uniform nb-subset of the final pool.  Deterministic per seed.
    """
    pv = int(as_prime(p))
    na, nb = target_sizes
    if na < 1 or nb < 1:
        raise ValueError("target sizes must be at least 1")
    rng = np.random.default_rng(seed)
    r_elems = frozenset(residue_set(pv))
    pool = set(range(pv))  # C for empty A: no constraint yet
    a_elems: list[int] = []
    for _ in range(na):
        placed = False
        for cand in rng.permutation(pv):
            cand = int(cand)
            if cand in a_elems:
                continue
            new_pool = {b for b in pool if (cand + b) % pv in r_elems}
            if len(new_pool) >= nb:
                a_elems.append(cand)
                pool = new_pool
                placed = True
                break
        if not placed:
            return None
    b_elems = rng.choice(sorted(pool), size=nb, replace=False)
    return FpSet(a_elems, pv), FpSet(b_elems.tolist(), pv)


# ---------------------------------------------------------------------------
# size windows


@dataclass(frozen=True)
class SizeRange:
    """Constraints on (|A|, |B|) for an exact decomposition A+B = R_p."""

    lower_A: int
    upper_A: int
    product_min: int
    product_max: int
    feasible: bool


def quadratic_size_ok(p: int, na: int, nb: int) -> bool:
    """The product constraint p|A||B| <= (p-|A|)(p-|B|) on a size pair."""
    return p * na * nb <= (p - na) * (p - nb)


def feasible_size_pairs(
    p: int,
    a_range: tuple[int, int],
    b_range: tuple[int, int],
    product_min: int,
    product_max: int,
) -> list[tuple[int, int]]:
    """Lattice points surviving the product window and the quadratic
    constraint; the search engine prunes against this set."""
    out = []
    for na in range(a_range[0], a_range[1] + 1):
        for nb in range(b_range[0], b_range[1] + 1):
            if product_min <= na * nb <= product_max and quadratic_size_ok(p, na, nb):
                out.append((na, nb))
    return out


def admissible_size_range(p: int | Prime) -> SizeRange:
    """Size window for a decomposition with |A|, |B| >= 2.

    lower = max(5, ceil(sqrt(p)/4 + 1/8)), upper = largest integer
    strictly below 2 sqrt(p) - 1, products in [(p-1)/2, p-1]; both
    cutoffs via exact integer square comparisons.
    """
    pv = int(as_prime(p))
    # smallest L with (8L - 1)^2 >= 4p, i.e. L >= sqrt(p)/4 + 1/8
    s_min = math.isqrt(4 * pv) + 1  # 4p is never a perfect square
    lower = max(5, (s_min + 8) // 8)
    # largest U with (U + 1)^2 < 4p, i.e. U < 2 sqrt(p) - 1
    upper = math.isqrt(4 * pv - 1) - 1
    product_min = (pv - 1) // 2
    product_max = pv - 1
    feasible = (
        lower <= upper
        and product_min <= product_max
        and bool(
            feasible_size_pairs(
                pv, (lower, upper), (lower, upper), product_min, product_max
            )
        )
    )
    return SizeRange(
        lower_A=lower,
        upper_A=upper,
        product_min=product_min,
        product_max=product_max,
        feasible=feasible,
    )


# ---------------------------------------------------------------------------
# closed-form evaluators


def unique_rep_lower_bound(p: int | Prime) -> float:
    """Guaranteed number of uniquely-representable sums for a true
    decomposition: sqrt(p)/log 2 - 1.6."""
    return math.sqrt(int(as_prime(p))) / math.log(2) - 1.6


def energy_size_lower_bounds(eta: float, p: int | Prime) -> tuple[float, float]:
    """(energy_min, size_min) under the sparsity parameter eta in [0, 1/2).

    energy_min = (1/2 + (2^(2-4n) - 2^(3-2n) n + 4n - 1)/(2-4n)) (p-1),
    size_min = sqrt(p) / (2 * 4^n).
    """
    if not 0 <= eta < 0.5:
        raise ParameterRangeError(f"eta must lie in [0, 1/2), got {eta}")
    pv = int(as_prime(p))
    numer = 2 ** (2 - 4 * eta) - 2 ** (3 - 2 * eta) * eta + 4 * eta - 1
    energy_min = (0.5 + numer / (2 - 4 * eta)) * (pv - 1)
    size_min = math.sqrt(pv) / (2 * 4**eta)
    return energy_min, size_min


def ratio_size_bounds(
    delta: float, p: int | Prime
) -> tuple[float, float, float, float]:
    """(lower_A, upper_A, lower_B, upper_B) under |A| = delta |B|-type
    balance, for delta in (1/8, 1]."""
    if not 1 / 8 < delta <= 1:
        raise ParameterRangeError(f"delta must lie in (1/8, 1], got {delta}")
    pv = int(as_prime(p))
    root = math.sqrt(pv - 1)
    lower_a = math.sqrt(delta * (pv - 1) / 2)
    upper_a = min(2 * delta, math.sqrt(delta)) * root
    lower_b = math.sqrt((pv - 1) / (2 * delta))
    upper_b = min(2.0, 1 / math.sqrt(delta)) * root
    return lower_a, upper_a, lower_b, upper_b


@dataclass(frozen=True)
class LogInequalityScan:
    """Outcome of the prime sweep of the logarithmic step inequality."""

    p_max: int
    holds: bool
    primes_checked: int
    smallest_passing_prime: int
    failures: tuple[int, ...]
    min_margin: float
    argmin_prime: int


def scan_log_inequality(p_max: int) -> LogInequalityScan:
    """Check (1/2)log(p-1) + log(sqrt(p)+1) - log p >= sqrt(p)/(p-1)
    - 1.6 log(2)/(p-1) for every prime 37 <= p <= p_max.

    Swept in float64 (margins are ~0.1/p, far above rounding); any
    margin below 1e-9 is re-evaluated in 80-bit extended precision
    before being called a failure.
    """
    if p_max < 37:
        raise ValueError("the inequality is asserted for p >= 37")
    ps = np.array([q for q in primes_in_range(37, p_max)], dtype=np.float64)
    sq = np.sqrt(ps)
    lhs = 0.5 * np.log(ps - 1) + np.log(sq + 1) - np.log(ps)
    rhs = sq / (ps - 1) - 1.6 * math.log(2) / (ps - 1)
    margin = lhs - rhs
    suspect = np.nonzero(margin < 1e-9)[0]
    failures = []
    for i in suspect:
        q = np.longdouble(ps[i])
        s = np.sqrt(q)
        m = 0.5 * np.log(q - 1) + np.log(s + 1) - np.log(q) - (
            s / (q - 1) - np.longdouble(1.6) * np.log(np.longdouble(2)) / (q - 1)
        )
        if m < 0:
            failures.append(int(ps[i]))
    passing = [int(q) for q in ps if int(q) not in set(failures)]
    j = int(np.argmin(margin))
    return LogInequalityScan(
        p_max=p_max,
        holds=not failures,
        primes_checked=len(ps),
        smallest_passing_prime=passing[0] if passing else 0,
        failures=tuple(failures),
        min_margin=float(margin.min()),
        argmin_prime=int(ps[j]),
    )


def verify_log_inequality(p_max: int) -> bool:
    """True iff the step inequality holds at every prime in [37, p_max]."""
    return scan_log_inequality(p_max).holds
