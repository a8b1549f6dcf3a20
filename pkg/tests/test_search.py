import dataclasses

import pytest

from qrsums.errors import CompositeInputError
from qrsums.search import (
    PRUNE_REASONS,
    SearchConfig,
    brute_force_search,
    search,
    search_symmetric,
    verify_conjecture_range,
)


def _pairs(report):
    return set(report.decompositions_found)


def test_config_validation():
    with pytest.raises(CompositeInputError):
        SearchConfig(p=8)
    with pytest.raises(ValueError):
        SearchConfig(p=7, min_size_a=0)
    with pytest.raises(ValueError):
        SearchConfig(p=7, node_limit=0)


def test_prune_reason_vocabulary():
    assert PRUNE_REASONS == (
        "candidate-set-too-small",
        "coverage-impossible",
        "size-cap",
        "product-cap",
    )


def test_singleton_search_matches_brute_force_p7():
    # with |A| = 1 allowed, translates of R_p itself appear
    cfg = SearchConfig(
        p=7, min_size_a=1, min_size_b=1,
        use_size_window_pruning=False, use_min_five_pruning=False,
    )
    rep = search(cfg)
    brute = set(brute_force_search(7, (1, 6), (1, 6)))
    assert _pairs(rep) == brute
    assert len(brute) == 14
    assert ((1,), (0, 1, 3)) in brute  # R_7 shifted: {1,2,4} - 1
    assert rep.exhaustive
    assert rep.nodes_explored == 119


def test_singleton_search_p11_counts():
    cfg = SearchConfig(
        p=11, min_size_a=1, min_size_b=1,
        use_size_window_pruning=False, use_min_five_pruning=False,
    )
    rep = search(cfg)
    assert len(_pairs(rep)) == 22
    assert rep.nodes_explored == 688


@pytest.mark.parametrize("p", [7, 11, 13])
def test_two_by_two_windows_agree_with_brute_force(p):
    cfg = SearchConfig(
        p=p, min_size_a=2, min_size_b=2, max_size_a=4, max_size_b=4,
        use_size_window_pruning=False, use_min_five_pruning=False,
    )
    rep = search(cfg)
    brute = set(brute_force_search(p, (2, 4), (2, 4)))
    assert _pairs(rep) == brute == set()
    assert rep.exhaustive


def test_small_split_sizes_match_brute_force():
    cfg = SearchConfig(
        p=5, min_size_a=1, min_size_b=1, max_size_a=2, max_size_b=2,
        use_size_window_pruning=False, use_min_five_pruning=False,
    )
    rep = search(cfg)
    brute = set(brute_force_search(5, (1, 2), (1, 2)))
    assert _pairs(rep) == brute
    for a, b in brute:
        assert sorted({(x + y) % 5 for x in a for y in b}) == [1, 4]


def test_pruning_preserves_verdict_and_saves_nodes():
    for p in (37, 41):
        pruned = search(SearchConfig(p=p))
        free = search(
            SearchConfig(
                p=p, use_size_window_pruning=False, use_min_five_pruning=False
            )
        )
        assert _pairs(pruned) == _pairs(free) == set()
        assert pruned.nodes_explored <= free.nodes_explored
        assert pruned.exhaustive and free.exhaustive


def test_window_infeasibility_short_circuits_small_primes():
    for p in (3, 5, 7, 11, 13, 17, 19, 23):
        rep = search(SearchConfig(p=p))
        assert rep.nodes_explored == 0
        assert rep.infeasible_by_size_range
        assert rep.exhaustive and not rep.decompositions_found


def test_worker_counts_do_not_change_reports():
    base = search(SearchConfig(p=37, worker_count=1))
    multi = search(SearchConfig(p=37, worker_count=3))
    assert base.to_dict() | {"worker_count": 3} == multi.to_dict() | {
        "worker_count": 3
    }


def test_node_limit_truncation_is_deterministic():
    one = search(SearchConfig(p=41, node_limit=500, worker_count=1))
    three = search(SearchConfig(p=41, node_limit=500, worker_count=3))
    assert not one.exhaustive and not three.exhaustive
    assert one.nodes_explored == three.nodes_explored
    assert one.nodes_explored >= 500


def test_symmetric_anchors():
    rep7 = search_symmetric(7, min_size=1)
    assert not rep7.decompositions_found and rep7.nodes_explored == 0

    rep3 = search_symmetric(3, min_size=1)
    assert _pairs(rep3) == {((2,), (2,))}

    rep61 = search_symmetric(61)
    assert not rep61.decompositions_found
    assert rep61.exhaustive and rep61.nodes_explored == 210


def test_symmetric_matches_general_engine():
    # restrict the general engine to A = B by intersecting its finds
    for p in (13, 17, 29):
        sym = search_symmetric(p, min_size=1)
        diag = {
            (a, b)
            for a, b in brute_force_search(p, (1, 3), (1, 3))
            if a == b
        }
        sym_small = {pair for pair in _pairs(sym) if len(pair[0]) <= 3}
        assert sym_small == diag


def test_verify_range_rows():
    rows = verify_conjecture_range(3, 31)
    assert [r.p for r in rows] == [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
    assert all(r.verdict == "no-decomposition" for r in rows)
    assert all(r.nodes == 0 for r in rows if r.p < 26)
    assert all(r.witnesses == () for r in rows)
    assert all(r.seconds >= 0 for r in rows)


def test_verify_range_reports_findings():
    template = SearchConfig(
        p=3, min_size_a=1, min_size_b=1,
        use_size_window_pruning=False, use_min_five_pruning=False,
    )
    rows = verify_conjecture_range(7, 7, template=template)
    assert rows[0].verdict == "FOUND"
    assert ((1,), (0, 1, 3)) in rows[0].witnesses


def test_node_limited_range_is_inconclusive():
    template = SearchConfig(p=3, node_limit=1)
    rows = verify_conjecture_range(41, 41, template=template)
    assert rows[0].verdict == "inconclusive"


def test_every_reported_find_is_a_decomposition():
    cfg = SearchConfig(
        p=11, min_size_a=1, min_size_b=1,
        use_size_window_pruning=False, use_min_five_pruning=False,
    )
    rep = search(cfg)
    residues = {1, 3, 4, 5, 9}
    for a, b in rep.decompositions_found:
        sums = {(x + y) % 11 for x in a for y in b}
        assert sums == residues


def test_config_replace_keeps_validation():
    cfg = SearchConfig(p=7)
    with pytest.raises(CompositeInputError):
        dataclasses.replace(cfg, p=9)
