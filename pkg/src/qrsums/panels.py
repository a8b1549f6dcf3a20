"""Batch verification panels shared by the service and the test suite.

Each panel runs a family of theorem checks over seeded random inputs
and returns (count_checked, failures).  A nonempty failure list means
either an implementation bug or a genuinely false inequality; the
checks themselves are proved statements, so the expected count is zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .certificates import (
    check_cardinality_bound,
    check_product_bound,
    check_subset_residues,
    generate_residue_instance,
)
from .field import FpSet
from .sumsets import (
    build_profile,
    check_doubling_bound,
    check_energy_bound,
    check_holder,
    check_moment_bound,
    energy_brute_force,
    random_subset_pair,
)

HOLDER_THETAS = (0.5, 1.0, 2.0)
MOMENT_THETAS = (0.5, 1.0, 2.0)


@dataclass(frozen=True)
class PanelFailure:
    p: int
    check: str
    detail: str


def check_random_pairs(
    p: int,
    count: int,
    seed: int,
    energy_check_max_size: int = 12,
) -> tuple[int, list[PanelFailure]]:
    """Moment/energy/doubling inequalities on seeded random subset pairs.

    Pairs with both sides at most energy_check_max_size additionally get
    their additive energy recomputed by the quadruple-counting oracle.
    """
    rng = np.random.default_rng(seed)
    failures: list[PanelFailure] = []

    def note(check: str, a: FpSet, b: FpSet) -> None:
        failures.append(
            PanelFailure(p=p, check=check, detail=f"A={a.elements} B={b.elements}")
        )

    for _ in range(count):
        a, b = random_subset_pair(p, rng)
        profile = build_profile(a, b)
        for theta in HOLDER_THETAS:
            if not check_holder(profile, theta):
                note(f"holder-theta-{theta}", a, b)
        for theta in MOMENT_THETAS:
            if not check_moment_bound(profile, theta):
                note(f"moment-bound-theta-{theta}", a, b)
        if not check_energy_bound(profile):
            note("energy-bound", a, b)
        if not check_doubling_bound(profile):
            note("doubling-bound", a, b)
        if (
            len(a) <= energy_check_max_size
            and len(b) <= energy_check_max_size
            and profile.energy != energy_brute_force(a, b)
        ):
            note("energy-oracle-mismatch", a, b)
    return count, failures


def check_residue_instances(
    p: int,
    count: int,
    seed: int,
) -> tuple[int, list[PanelFailure]]:
    """Conditional bounds on generated pairs with A+B inside the residues."""
    rng = np.random.default_rng(seed)
    failures: list[PanelFailure] = []
    made = 0
    attempts = 0
    limit = max(50 * count, 100)
    while made < count and attempts < limit:
        attempts += 1
        na = int(rng.integers(3, 5))
        nb = int(rng.integers(1, 4))
        inst = generate_residue_instance(p, (na, nb), seed=int(rng.integers(0, 2**31)))
        if inst is None:
            continue
        a, b = inst
        made += 1
        if not check_subset_residues(a, b):
            failures.append(
                PanelFailure(p=p, check="generated-pair-not-in-residues",
                             detail=f"A={a.elements} B={b.elements}")
            )
            continue
        if not check_cardinality_bound(a, b).passed:
            failures.append(
                PanelFailure(p=p, check="cardinality-bound",
                             detail=f"A={a.elements} B={b.elements}")
            )
        if not check_product_bound(a, b).passed:
            failures.append(
                PanelFailure(p=p, check="product-bound",
                             detail=f"A={a.elements} B={b.elements}")
            )
    if made < count:
        failures.append(
            PanelFailure(p=p, check="instance-generation-exhausted",
                         detail=f"made {made} of {count} in {attempts} attempts")
        )
    return made, failures
