"""Sumsets A+B, the representation function r, its moments, and the
unconditional moment inequalities.

r is stored dense (length p) since p is desk-scale and the search engine
reuses profiles for re-verification.  The moments M_0 = |A+B|,
M_1 = |A||B|, M_2 = E(A,B) and the unique-representation count are all
exact integers; inequality checks take an exact-integer route whenever
the exponent allows and otherwise compare floats at 1e-9 relative
tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptySetError, ModulusMismatchError
from .field import FpSet

REL_TOL = 1e-9


def leq_tol(lhs: float, rhs: float, rel: float = REL_TOL) -> bool:
    """lhs <= rhs up to relative slack, so boundary equalities pass."""
    return lhs <= rhs + rel * max(abs(lhs), abs(rhs), 1.0)


@dataclass(frozen=True)
class RepProfile:
    """Representation function of one pair (A, B) and its statistics.

    rep_counts[x] = #{(a, b) : a + b = x}; support is the sumset A+B.
    Invariant chain: 0 <= unique_count <= m0 <= m1 <= energy.
    """

    p: int
    a: FpSet
    b: FpSet
    support: FpSet
    rep_counts: tuple[int, ...]
    m0: int
    m1: int
    energy: int
    unique_count: int


def build_profile(A: FpSet, B: FpSet) -> RepProfile:
    """Exact representation counts for A+B, via bincount over all pairs."""
    if len(A) == 0 or len(B) == 0:
        raise EmptySetError("both sets must be nonempty")
    if A.p != B.p:
        raise ModulusMismatchError(f"moduli differ: {A.p} vs {B.p}")
    p = A.p
    av = np.fromiter(A, dtype=np.int64, count=len(A))
    bv = np.fromiter(B, dtype=np.int64, count=len(B))
    sums = (av[:, None] + bv[None, :]).ravel() % p
    counts = np.bincount(sums, minlength=p)
    support = FpSet(np.nonzero(counts)[0].tolist(), p)
    return RepProfile(
        p=p,
        a=A,
        b=B,
        support=support,
        rep_counts=tuple(int(c) for c in counts),
        m0=int((counts > 0).sum()),
        m1=len(A) * len(B),
        energy=int((counts * counts).sum()),
        unique_count=int((counts == 1).sum()),
    )


def moment(profile: RepProfile, theta: float) -> float:
    """M_theta = sum over the support of r(x)^theta.

    Exact integers come back for theta in {0, 1, 2}; other exponents are
    evaluated in floating point (negative theta is fine, r >= 1 on the
    support).
    """
    if theta == 0:
        return profile.m0
    if theta == 1:
        return profile.m1
    if theta == 2:
        return profile.energy
    return math.fsum(r**theta for r in profile.rep_counts if r > 0)


def check_holder(profile: RepProfile, theta: float) -> bool:
    """Hoelder: M_0 <= M_1^(t/(t+1)) * M_{-t}^(1/(t+1)) for t > 0."""
    if theta <= 0:
        raise ValueError("theta must be positive")
    rhs = profile.m1 ** (theta / (theta + 1)) * moment(profile, -theta) ** (
        1 / (theta + 1)
    )
    return leq_tol(profile.m0, rhs)


def check_moment_bound(profile: RepProfile, theta: float) -> bool:
    """2^t M_0^(t+1) <= M_1^t (M_0 + (2^t - 1) U) with U the unique count.

    Positive integer t gets an exact integer comparison; other t falls
    back to floats with relative tolerance.
    """
    if theta <= 0:
        raise ValueError("theta must be positive")
    m0, m1, u = profile.m0, profile.m1, profile.unique_count
    if float(theta).is_integer():
        t = int(theta)
        return 2**t * m0 ** (t + 1) <= m1**t * (m0 + (2**t - 1) * u)
    lhs = 2**theta * m0 ** (theta + 1)
    rhs = m1**theta * (m0 + (2**theta - 1) * u)
    return leq_tol(lhs, rhs)


def check_energy_bound(profile: RepProfile) -> bool:
    """M_1 <= U + sqrt((E - U)(M_0 - U)), compared in exact integers.

    Squaring is safe: M_1 - U >= 0 always (U counts sums with exactly
    one representation, each remaining element of the support absorbs at
    least two of the M_1 pairs).
    """
    m0, m1, e, u = profile.m0, profile.m1, profile.energy, profile.unique_count
    return (m1 - u) ** 2 <= (e - u) * (m0 - u)


def check_doubling_bound(profile: RepProfile) -> bool:
    """M_1 >= 2^(1 - U/M_0) * M_0 (the theta -> 0+ limit in closed form)."""
    tau = profile.unique_count / profile.m0
    return leq_tol(2 ** (1 - tau) * profile.m0, profile.m1)


def energy_brute_force(A: FpSet, B: FpSet) -> int:
    """Quadruple count of a1 + b1 = a2 + b2 by four nested loops.

    Deliberately naive; used as the oracle for RepProfile.energy.
    """
    p = A.p
    count = 0
    for a1 in A:
        for a2 in A:
            for b1 in B:
                for b2 in B:
                    if (a1 + b1) % p == (a2 + b2) % p:
                        count += 1
    return count


def random_subset_pair(p: int, rng: np.random.Generator) -> tuple[FpSet, FpSet]:
    """Seeded random pair with cardinalities uniform in [2, min(p-1, 40)]."""
    hi = min(p - 1, 40)
    na = int(rng.integers(2, hi + 1))
    nb = int(rng.integers(2, hi + 1))
    a = rng.choice(p, size=na, replace=False)
    b = rng.choice(p, size=nb, replace=False)
    return FpSet(a.tolist(), p), FpSet(b.tolist(), p)


def profile_dict(profile: RepProfile) -> dict:
    """JSON-ready dump: sets as sorted arrays, r restricted to its support."""
    return {
        "p": profile.p,
        "A": list(profile.a.elements),
        "B": list(profile.b.elements),
        "support": list(profile.support.elements),
        "r_nonzero": [[x, r] for x, r in enumerate(profile.rep_counts) if r > 0],
        "M0": profile.m0,
        "M1": profile.m1,
        "E": profile.energy,
        "unique": profile.unique_count,
    }
