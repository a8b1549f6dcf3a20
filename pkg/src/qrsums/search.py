"""Exhaustive branch-and-bound search for decompositions A+B = R_p.

The engine enumerates ordered partial sets A = {a1 < a2 < ...} depth
first.  Alongside each partial A it maintains the candidate pool
C = intersection of (R_p - a) over a in A as a bit-vector (Python ints,
wordwise AND); any completing B must be a subset of C.  At every node
with |A| inside the configured window it enumerates B subsets of C with
running coverage bit-vectors, recording pairs whose sumset is exactly
R_p.  Every find is re-verified through the sumset profile code before
it is reported.

Pruning.  Four rules, tallied under fixed reason names:

- candidate-set-too-small: |C| dropped below the minimum size of B;
- coverage-impossible: the largest reachable |A| times |C| cannot cover
  the (p-1)/2 residues, or a B branch cannot cover the residue deficit;
- size-cap: |A| hit the configured/derived upper cap;
- product-cap: no feasible (|A|, |B|) lattice point remains (product
  window [ (p-1)/2, p-1 ] plus the quadratic constraint
  p|A||B| <= (p-|A|)(p-|B|), both valid whenever A+B stays inside R_p).

The optional flags add the theorem-backed windows (sizes in
[ceil(sqrt(p)/4 + 1/8), 2 sqrt(p) - 1) and the floor min(|A|,|B|) >= 5),
which are only applied when both minimum sizes are at least 2, since
that is the hypothesis they were proved under.  Singleton decompositions
(|A| = 1) therefore survive a min-size-1 search unharmed.

Node accounting (fixed so counts are comparable across runs): +1 for
every partial A created by appending one element, +1 for every element
appended to a partial B during leaf enumeration.  Prevented extensions
are tallied in prune_counts, not in nodes_explored.

Parallelism and determinism.  Top-level prefixes of A (singletons and
ordered first pairs) form a canonical task list; workers run whole
tasks and results are merged in task order, so reports are identical
for any worker count.  The node budget is enforced at task boundaries:
once the cumulative count reaches node_limit no further task is merged
and the report says exhaustive = false.
"""

from __future__ import annotations

import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import combinations
from math import isqrt
from typing import Iterable

from .certificates import feasible_size_pairs
from .field import FpSet, as_prime, mask_to_elements, residue_set, rotate_mask
from .sumsets import build_profile

PRUNE_REASONS = (
    "candidate-set-too-small",
    "coverage-impossible",
    "size-cap",
    "product-cap",
)


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for one decomposition search over a fixed odd prime."""

    p: int
    min_size_a: int = 2
    min_size_b: int = 2
    use_size_window_pruning: bool = True
    use_min_five_pruning: bool = True
    symmetric_only: bool = False
    node_limit: int = 10**9
    worker_count: int = 1
    max_size_a: int | None = None
    max_size_b: int | None = None

    def __post_init__(self):
        as_prime(self.p)
        if self.min_size_a < 1 or self.min_size_b < 1:
            raise ValueError("minimum sizes must be at least 1")
        if self.node_limit <= 0:
            raise ValueError("node_limit must be positive")


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one search; found pairs are sorted element tuples."""

    config: SearchConfig
    decompositions_found: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    nodes_explored: int
    prune_counts: dict[str, int]
    exhaustive: bool
    infeasible_by_size_range: bool = False

    def to_dict(self) -> dict:
        cfg = self.config
        return {
            "p": cfg.p,
            "min_size_a": cfg.min_size_a,
            "min_size_b": cfg.min_size_b,
            "use_size_window_pruning": cfg.use_size_window_pruning,
            "use_min_five_pruning": cfg.use_min_five_pruning,
            "symmetric_only": cfg.symmetric_only,
            "node_limit": cfg.node_limit,
            "worker_count": cfg.worker_count,
            "decompositions_found": [
                {"A": list(a), "B": list(b)} for a, b in self.decompositions_found
            ],
            "nodes_explored": self.nodes_explored,
            "prune_counts": dict(self.prune_counts),
            "exhaustive": self.exhaustive,
            "infeasible_by_size_range": self.infeasible_by_size_range,
        }


# ---------------------------------------------------------------------------
# per-process immutable state, cached by modulus


@dataclass(frozen=True)
class _FieldState:
    p: int
    half: int
    r_mask: int
    r_minus: tuple[int, ...]  # r_minus[x] = bitmask of R_p - x
    doubles: int  # bitmask of {y : 2y in R_p}


_STATE: dict[int, _FieldState] = {}


def _state(p: int) -> _FieldState:
    st = _STATE.get(p)
    if st is None:
        r = residue_set(p)
        r_mask = r.mask
        r_minus = tuple(rotate_mask(r_mask, (p - x) % p, p) for x in range(p))
        doubles = 0
        for y in range(p):
            if (r_mask >> (2 * y % p)) & 1:
                doubles |= 1 << y
        st = _FieldState(p=p, half=(p - 1) // 2, r_mask=r_mask, r_minus=r_minus, doubles=doubles)
        _STATE[p] = st
    return st


@dataclass(frozen=True)
class _Windows:
    """Resolved size windows and the surviving (|A|, |B|) lattice."""

    lo_a: int
    hi_a: int
    lo_b: int
    hi_b: int
    pairs: tuple[tuple[int, int], ...]
    # pairs_by_a[s] = sorted B sizes allowed when |A| = s
    pairs_by_a: dict[int, tuple[int, ...]]


def _theorem_window(p: int) -> tuple[int, int]:
    """[ceil(sqrt(p)/4 + 1/8), largest int strictly below 2 sqrt(p) - 1]."""
    s_min = isqrt(4 * p) + 1
    return (s_min + 8) // 8, isqrt(4 * p - 1) - 1


def _resolve_windows(cfg: SearchConfig) -> _Windows:
    p = cfg.p
    lo_a, lo_b = cfg.min_size_a, cfg.min_size_b
    hi_a = cfg.max_size_a if cfg.max_size_a is not None else p
    hi_b = cfg.max_size_b if cfg.max_size_b is not None else p
    theorems_apply = cfg.min_size_a >= 2 and cfg.min_size_b >= 2
    if theorems_apply and cfg.use_min_five_pruning:
        lo_a, lo_b = max(lo_a, 5), max(lo_b, 5)
    if theorems_apply and cfg.use_size_window_pruning:
        t_lo, t_hi = _theorem_window(p)
        lo_a, hi_a = max(lo_a, t_lo), min(hi_a, t_hi)
        lo_b, hi_b = max(lo_b, t_lo), min(hi_b, t_hi)
    pairs = tuple(
        feasible_size_pairs(p, (lo_a, hi_a), (lo_b, hi_b), (p - 1) // 2, p - 1)
    ) if lo_a <= hi_a and lo_b <= hi_b else ()
    by_a: dict[int, tuple[int, ...]] = {}
    for sa, sb in pairs:
        by_a.setdefault(sa, ())
    for sa in by_a:
        by_a[sa] = tuple(sorted(sb for a, sb in pairs if a == sa))
    return _Windows(lo_a=lo_a, hi_a=hi_a, lo_b=lo_b, hi_b=hi_b, pairs=pairs, pairs_by_a=by_a)


# ---------------------------------------------------------------------------
# task execution


@dataclass
class _TaskResult:
    nodes: int = 0
    prunes: Counter = field(default_factory=Counter)
    found: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)


def _verify_pair(p: int, a_elems: Iterable[int], b_elems: Iterable[int]) -> None:
    """Independent exactness check through the profile code."""
    profile = build_profile(FpSet(a_elems, p), FpSet(b_elems, p))
    if profile.support != residue_set(p):
        raise RuntimeError(
            f"search engine produced a non-decomposition mod {p}: "
            f"A={tuple(a_elems)} B={tuple(b_elems)}"
        )


def _enumerate_b(
    st: _FieldState,
    win: _Windows,
    a_list: list[int],
    a_mask: int,
    c_mask: int,
    res: _TaskResult,
) -> None:
    """All B inside the pool whose translate union is exactly R_p."""
    allowed = win.pairs_by_a.get(len(a_list))
    if not allowed:
        return
    c_size = c_mask.bit_count()
    allowed = tuple(sb for sb in allowed if sb <= c_size)
    if not allowed:
        res.prunes["product-cap"] += 1
        return
    cands = mask_to_elements(c_mask)
    shifts = [rotate_mask(a_mask, b, st.p) for b in cands]
    # suffix[i] = union of shifts i.. ; suffix[len] = 0
    suffix = [0] * (len(cands) + 1)
    for i in range(len(cands) - 1, -1, -1):
        suffix[i] = suffix[i + 1] | shifts[i]
    target = st.r_mask
    max_sb = allowed[-1]
    allowed_set = frozenset(allowed)
    b_stack: list[int] = []

    def rec(i: int, covered: int) -> None:
        if covered == target and len(b_stack) in allowed_set:
            _verify_pair(st.p, a_list, b_stack)
            res.found.append((tuple(a_list), tuple(b_stack)))
        if len(b_stack) == max_sb:
            return
        if covered | suffix[i] != target:
            res.prunes["coverage-impossible"] += 1
            return
        for j in range(i, len(cands)):
            res.nodes += 1
            b_stack.append(cands[j])
            rec(j + 1, covered | shifts[j])
            b_stack.pop()

    rec(0, 0)


def _dfs(
    st: _FieldState,
    win: _Windows,
    a_list: list[int],
    a_mask: int,
    c_mask: int,
    res: _TaskResult,
) -> None:
    p = st.p
    res.nodes += 1
    s = len(a_list)
    c_size = c_mask.bit_count()
    if c_size < win.lo_b:
        res.prunes["candidate-set-too-small"] += 1
        return
    a_last = a_list[-1]
    max_a = min(win.hi_a, s + (p - 1 - a_last))
    if max_a * c_size < st.half:
        res.prunes["coverage-impossible"] += 1
        return
    cap = min(c_size, win.hi_b)
    if not any(
        s <= sa <= max_a and sbs[0] <= cap
        for sa, sbs in win.pairs_by_a.items()
    ):
        res.prunes["product-cap"] += 1
        return
    if s >= win.lo_a:
        _enumerate_b(st, win, a_list, a_mask, c_mask, res)
    if s + 1 > win.hi_a:
        res.prunes["size-cap"] += 1
        return
    for x in range(a_last + 1, p):
        a_list.append(x)
        _dfs(st, win, a_list, a_mask | (1 << x), c_mask & st.r_minus[x], res)
        a_list.pop()


def _run_task(args: tuple[int, tuple[int, ...], _Windows]) -> _TaskResult:
    p, prefix, win = args
    st = _state(p)
    res = _TaskResult()
    a_list = list(prefix)
    a_mask = 0
    c_mask = (1 << p) - 1
    for a in prefix:
        a_mask |= 1 << a
        c_mask &= st.r_minus[a]
    if len(prefix) == 1:
        # singleton leaf: B-enumeration only; extensions belong to pair tasks
        res.nodes += 1
        c_size = c_mask.bit_count()
        if c_size < win.lo_b:
            res.prunes["candidate-set-too-small"] += 1
        elif win.lo_a <= 1:
            _enumerate_b(st, win, a_list, a_mask, c_mask, res)
        return res
    _dfs(st, win, a_list, a_mask, c_mask, res)
    return res


def _consume_tasks(
    runner, task_args: list, workers: int, node_limit: int
) -> tuple[list[_TaskResult], int, bool]:
    """Run tasks in canonical order; stop merging once the budget is hit."""
    results: list[_TaskResult] = []
    total = 0
    truncated = False
    if workers <= 1:
        for args in task_args:
            if total >= node_limit:
                truncated = True
                break
            r = runner(args)
            results.append(r)
            total += r.nodes
        return results, total, truncated
    ex = ProcessPoolExecutor(max_workers=workers)
    try:
        chunk = max(1, len(task_args) // (workers * 8))
        for r in ex.map(runner, task_args, chunksize=chunk):
            if total >= node_limit:
                truncated = True
                break
            results.append(r)
            total += r.nodes
    finally:
        ex.shutdown(cancel_futures=True)
    return results, total, truncated


def search(config: SearchConfig) -> SearchReport:
    """Find every A+B = R_p within the configured size windows.

    Exhaustive unless the node budget interrupts; an empty feasible size
    lattice short-circuits to a zero-node exhaustive verdict.
    """
    if config.symmetric_only:
        return search_symmetric(
            config.p,
            min_size=max(config.min_size_a, config.min_size_b),
            use_size_window_pruning=config.use_size_window_pruning,
            use_min_five_pruning=config.use_min_five_pruning,
            node_limit=config.node_limit,
            worker_count=config.worker_count,
        )
    p = config.p
    win = _resolve_windows(config)
    if not win.pairs:
        return SearchReport(
            config=config,
            decompositions_found=(),
            nodes_explored=0,
            prune_counts={},
            exhaustive=True,
            infeasible_by_size_range=True,
        )
    tasks: list[tuple[int, tuple[int, ...], _Windows]] = []
    if win.lo_a <= 1:
        tasks.extend((p, (a1,), win) for a1 in range(p))
    if win.hi_a >= 2:
        tasks.extend(
            (p, (a1, a2), win) for a1 in range(p) for a2 in range(a1 + 1, p)
        )
    results, total, truncated = _consume_tasks(
        _run_task, tasks, config.worker_count, config.node_limit
    )
    prunes: Counter = Counter()
    found: dict[tuple, None] = {}
    for r in results:
        prunes.update(r.prunes)
        for pair in r.found:
            found[pair] = None
    return SearchReport(
        config=config,
        decompositions_found=tuple(found),
        nodes_explored=total,
        prune_counts=dict(prunes),
        exhaustive=not truncated,
    )


# ---------------------------------------------------------------------------
# symmetric case B = A


def _symmetric_allowed_sizes(p: int, cfg: SearchConfig) -> tuple[int, ...]:
    lo = cfg.min_size_a
    hi = cfg.max_size_a if cfg.max_size_a is not None else p
    theorems_apply = lo >= 2
    if theorems_apply and cfg.use_min_five_pruning:
        lo = max(lo, 5)
    if theorems_apply and cfg.use_size_window_pruning:
        t_lo, t_hi = _theorem_window(p)
        lo, hi = max(lo, t_lo), min(hi, t_hi)
    half = (p - 1) // 2
    return tuple(
        s
        for s in range(lo, hi + 1)
        if half <= s * s <= p - 1 and p * s * s <= (p - s) * (p - s)
    )


def _sym_dfs(
    st: _FieldState,
    sizes: tuple[int, ...],
    a_list: list[int],
    a_mask: int,
    pool_mask: int,
    covered: int,
    res: _TaskResult,
) -> None:
    """pool_mask = elements usable as further members (pairwise-compatible
    with all current members and with themselves); covered = A+A so far."""
    p = st.p
    res.nodes += 1
    s = len(a_list)
    if s in sizes and covered == st.r_mask:
        _verify_pair(p, a_list, a_list)
        res.found.append((tuple(a_list), tuple(a_list)))
    if s >= sizes[-1]:
        res.prunes["size-cap"] += 1
        return
    a_last = a_list[-1]
    ext_mask = pool_mask >> (a_last + 1)
    ext_count = ext_mask.bit_count()
    max_s = min(sizes[-1], s + ext_count)
    if max_s < sizes[0] or (s + ext_count) < sizes[0]:
        res.prunes["candidate-set-too-small"] += 1
        return
    if max_s * (max_s + 1) // 2 < st.half:
        res.prunes["coverage-impossible"] += 1
        return
    # union bound: even using every remaining candidate, A+A must reach R_p
    reach_mask = a_mask | (ext_mask << (a_last + 1))
    reach = covered
    m = reach_mask
    while m:
        low = m & -m
        e = low.bit_length() - 1
        reach |= rotate_mask(reach_mask, e, p)
        m ^= low
    if reach != st.r_mask:
        res.prunes["coverage-impossible"] += 1
        return
    for x in mask_to_elements(ext_mask << (a_last + 1)):
        new_mask = a_mask | (1 << x)
        a_list.append(x)
        _sym_dfs(
            st,
            sizes,
            a_list,
            new_mask,
            pool_mask & st.r_minus[x],
            covered | rotate_mask(new_mask, x, p),
            res,
        )
        a_list.pop()


def _run_symmetric_task(args: tuple[int, tuple[int, ...], tuple[int, ...]]) -> _TaskResult:
    p, prefix, sizes = args
    st = _state(p)
    res = _TaskResult()
    a1 = prefix[0]
    pool = st.doubles & st.r_minus[a1]
    a_mask = 1 << a1
    covered = rotate_mask(a_mask, a1, p)
    if len(prefix) == 1:
        res.nodes += 1
        if 1 in sizes and covered == st.r_mask:
            _verify_pair(p, [a1], [a1])
            res.found.append(((a1,), (a1,)))
        return res
    a2 = prefix[1]
    if not ((pool >> a2) & 1):
        return res  # prefix violates pairwise residue compatibility
    a_mask |= 1 << a2
    covered |= rotate_mask(a_mask, a2, p)
    _sym_dfs(st, sizes, [a1, a2], a_mask, pool & st.r_minus[a2], covered, res)
    return res


def search_symmetric(
    p: int,
    min_size: int = 2,
    use_size_window_pruning: bool = True,
    use_min_five_pruning: bool = True,
    node_limit: int = 10**9,
    worker_count: int = 1,
) -> SearchReport:
    """Search for A+A = R_p; provably empty for min_size >= 2."""
    cfg = SearchConfig(
        p=p,
        min_size_a=min_size,
        min_size_b=min_size,
        use_size_window_pruning=use_size_window_pruning,
        use_min_five_pruning=use_min_five_pruning,
        symmetric_only=True,
        node_limit=node_limit,
        worker_count=worker_count,
    )
    st = _state(p)
    sizes = _symmetric_allowed_sizes(p, cfg)
    if not sizes:
        return SearchReport(
            config=cfg,
            decompositions_found=(),
            nodes_explored=0,
            prune_counts={},
            exhaustive=True,
            infeasible_by_size_range=True,
        )
    # members must pair with themselves: 2a in R_p
    firsts = [a for a in range(p) if (st.doubles >> a) & 1]
    tasks: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = []
    if sizes[0] <= 1:
        tasks.extend((p, (a1,), sizes) for a1 in firsts)
    if sizes[-1] >= 2:
        tasks.extend(
            (p, (a1, a2), sizes)
            for a1 in firsts
            for a2 in range(a1 + 1, p)
            if (st.doubles >> a2) & 1
        )
    results, total, truncated = _consume_tasks(
        _run_symmetric_task, tasks, worker_count, node_limit
    ) if tasks else ([], 0, False)
    prunes: Counter = Counter()
    found: dict[tuple, None] = {}
    for r in results:
        prunes.update(r.prunes)
        for pair in r.found:
            found[pair] = None
    return SearchReport(
        config=cfg,
        decompositions_found=tuple(found),
        nodes_explored=total,
        prune_counts=dict(prunes),
        exhaustive=not truncated,
    )


# ---------------------------------------------------------------------------
# brute force reference + range driver


def brute_force_search(
    p: int, size_range_a: tuple[int, int], size_range_b: tuple[int, int]
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Direct double subset enumeration with no pruning whatsoever.

    Reference oracle for the pruned engine; only usable at tiny scales.
    """
    st = _state(int(as_prime(p)))
    out = []
    universe = range(p)
    for na in range(size_range_a[0], size_range_a[1] + 1):
        for a in combinations(universe, na):
            for nb in range(size_range_b[0], size_range_b[1] + 1):
                for b in combinations(universe, nb):
                    sums = 0
                    for ai in a:
                        for bi in b:
                            sums |= 1 << ((ai + bi) % p)
                    if sums == st.r_mask:
                        out.append((a, b))
    return out


@dataclass(frozen=True)
class RangeRow:
    p: int
    verdict: str  # no-decomposition | FOUND | inconclusive
    nodes: int
    seconds: float
    witnesses: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = ()


def verify_conjecture_range(
    p_min: int,
    p_max: int,
    template: SearchConfig | None = None,
) -> list[RangeRow]:
    """Run the (2,2)-search over every odd prime in [p_min, p_max]."""
    from .field import primes_in_range

    rows = []
    for p in primes_in_range(max(p_min, 3), p_max):
        if p == 2:
            continue
        if template is None:
            cfg = SearchConfig(p=p)
        else:
            cfg = replace(template, p=p)
        t0 = time.perf_counter()
        report = search(cfg)
        dt = time.perf_counter() - t0
        if not report.exhaustive:
            verdict = "inconclusive"
        elif report.decompositions_found:
            verdict = "FOUND"
        else:
            verdict = "no-decomposition"
        rows.append(
            RangeRow(
                p=p,
                verdict=verdict,
                nodes=report.nodes_explored,
                seconds=dt,
                witnesses=report.decompositions_found,
            )
        )
    return rows
