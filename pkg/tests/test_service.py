import math

import pytest
from fastapi.testclient import TestClient

from qrsums.service import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def test_healthz(client):
    r = client.get("/healthz")
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "ok" and body["version"]


def test_charsum_anchor(client):
    r = client.post("/charsum", json={"p": 7, "tuple": [0, 1, 2, 3]})
    assert r.status_code == 200
    body = r.json()
    assert body["value"] == -1
    assert body["weil_ok"] is True and body["wan_ok"] is True
    assert body["normalized"] == pytest.approx(-1 / math.sqrt(7))
    assert body["shifted_normalized"] == pytest.approx(0.0)


def test_charsum_repeated_coordinates(client):
    r = client.post("/charsum", json={"p": 13, "tuple": [1, 1]})
    assert r.status_code == 200
    body = r.json()
    assert body["value"] == 12
    assert body["weil_ok"] is None and body["wan_ok"] is None


def test_charsum_rejects_bad_input(client):
    assert client.post("/charsum", json={"p": 9, "tuple": [0, 1]}).status_code == 422
    assert client.post("/charsum", json={"p": 7, "tuple": [3]}).status_code == 422
    assert client.post("/charsum", json={"p": 7}).status_code == 422


def test_ck_exhaustive(client):
    r = client.post("/ck", json={"k": 2, "p": 13})
    assert r.status_code == 200
    body = r.json()
    assert body["c_k"] == pytest.approx(-1 / math.sqrt(13))
    assert body["max_value"] == -1
    assert body["tuples_scanned"] == 12


def test_histogram_totals_and_discrepancy(client):
    r = client.post("/histogram", json={"k": 4, "p": 13, "bins": 8})
    assert r.status_code == 200
    body = r.json()
    assert body["total"] == math.comb(12, 3)
    assert sum(body["counts"]) == body["total"]
    assert len(body["bin_edges"]) == 9
    assert len(body["reference_density"]) == 8
    assert 0 < body["discrepancy"] < 1


def test_histogram_without_reference(client):
    # the semicircle reference and its discrepancy are quadruple-only
    r = client.post("/histogram", json={"k": 6, "p": 11, "bins": 6})
    assert r.status_code == 200
    body = r.json()
    assert body["reference_density"] is None
    assert body["discrepancy"] is None


def test_histogram_rejects_odd_k(client):
    assert client.post("/histogram", json={"k": 3, "p": 13}).status_code == 422


def test_sweep_skips_collision_primes(client):
    r = client.post(
        "/sweep",
        json={"tuple": [0, 1, 2, 9], "p_min": 5, "p_max": 40, "bins": 4},
    )
    assert r.status_code == 200
    body = r.json()
    assert 7 in body["skipped_primes"]
    assert body["total"] == sum(body["counts"])


def test_sumset_checks(client):
    r = client.post("/sumset", json={"p": 23, "a": [1, 3, 4], "b": [0, 2]})
    assert r.status_code == 200
    body = r.json()
    prof = body["profile"]
    assert prof["M0"] == 5 and prof["M1"] == 6
    assert prof["E"] == 8 and prof["unique"] == 4
    assert set(body["checks"]) == {
        "holder-theta-0.5",
        "holder-theta-1",
        "holder-theta-2",
        "moment-bound-theta-0.5",
        "moment-bound-theta-1",
        "moment-bound-theta-2",
        "energy-bound",
        "doubling-bound",
    }
    assert all(body["checks"].values())
    assert body["moments"]["1"] == pytest.approx(6.0)


def test_sumset_rejects_empty_side(client):
    r = client.post("/sumset", json={"p": 23, "a": [], "b": [0]})
    assert r.status_code == 422


def test_bounds_p43(client):
    r = client.post("/bounds", json={"p": 43})
    assert r.status_code == 200
    body = r.json()
    assert body["size_range"]["lower_A"] == 5
    assert body["size_range"]["upper_A"] == 12
    assert body["feasible_pairs"] == [[5, 5], [5, 6], [6, 5]]
    assert body["unique_rep_lower_bound"] == pytest.approx(
        math.sqrt(43) / math.log(2) - 1.6
    )
    assert body["energy_lower_bound_eta0"] == 2 * 42
    assert body["size_lower_bound_eta0"] == pytest.approx(math.sqrt(43) / 2)


def test_search_endpoint_verdicts(client):
    clear = client.post("/search", json={"p": 11}).json()
    assert clear["verdict"] == "no-decomposition"
    assert clear["report"]["nodes_explored"] == 0

    found = client.post(
        "/search",
        json={
            "p": 7,
            "min_size_a": 1,
            "min_size_b": 1,
            "use_size_window_pruning": False,
            "use_min_five_pruning": False,
        },
    ).json()
    assert found["verdict"] == "FOUND"
    assert {"A": [1], "B": [0, 1, 3]} in found["report"]["decompositions_found"]

    stopped = client.post("/search", json={"p": 41, "node_limit": 1}).json()
    assert stopped["verdict"] == "inconclusive"


def test_verify_range_endpoint(client):
    r = client.post("/verify-range", json={"p_min": 3, "p_max": 23})
    assert r.status_code == 200
    body = r.json()
    assert body["all_clear"] is True
    assert [row["p"] for row in body["rows"]] == [3, 5, 7, 11, 13, 17, 19, 23]
    assert all(row["verdict"] == "no-decomposition" for row in body["rows"])


def test_verify_lemmas_small_panel(client):
    r = client.post(
        "/verify-lemmas",
        json={
            "primes": [11, 31],
            "pairs_per_prime": 20,
            "conditional_primes": [31],
            "instances_per_prime": 10,
            "seed": 7,
        },
    )
    assert r.status_code == 200
    body = r.json()
    assert body["passed"] is True
    assert body["failures"] == []
    assert body["pairs_checked"] == 40
    assert body["instances_checked"] == 10
