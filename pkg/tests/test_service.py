"""HTTP service routes."""

import pytest
from starlette.testclient import TestClient

from sp6kit.service import create_app


@pytest.fixture(scope="module")
def client(cache_dir):
    return TestClient(create_app(cache_dir))


@pytest.fixture(scope="module")
def empty_client(tmp_path_factory):
    return TestClient(create_app(str(tmp_path_factory.mktemp("empty-cache"))))


def test_healthz(client):
    r = client.get("/healthz")
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "ok" and "version" in body


def test_ideal_gen_counts(client):
    for g, count in ((1, 1), (2, 6), (3, 15)):
        r = client.post("/ideal/gen", json={"g": g})
        assert r.status_code == 200
        data = r.json()
        assert data["count"] == count
        assert len(data["generators"]) == count
    r = client.post("/ideal/gen", json={"g": 5})
    assert r.status_code == 422


def test_groebner_route(client):
    r = client.post("/groebner", json={"group": "sp4", "spair_sample": 12})
    assert r.status_code == 200
    data = r.json()
    assert data["status"] == "ok"
    assert data["size"] == 16
    assert len(data["elements"]) == 16
    assert data["spair_checked"] == 12 and data["spair_failures"] == 0

    r = client.post("/groebner", json={"group": "sp6", "include_elements": False})
    data = r.json()
    assert data["status"] == "ok" and data["size"] == 180
    assert data["elements"] == []

    r = client.post("/groebner", json={"group": "sp8"})
    assert r.status_code == 422


def test_groebner_missing_cache(empty_client):
    r = empty_client.post("/groebner", json={"group": "sp6", "no_compute": True})
    assert r.status_code == 200
    assert r.json()["status"] == "missing-cache"


def test_groebner_budget(empty_client):
    r = empty_client.post(
        "/groebner",
        json={"group": "sp6", "budget_seconds": 0.01, "use_cache": False},
    )
    assert r.json()["status"] == "budget-exceeded"


def test_reduce_route(client):
    r = client.post("/reduce", json={
        "polynomial": "X11*X12*X21 - X11^2*X22 + X11",
        "group": "sp2",
    })
    data = r.json()
    assert data["status"] == "ok"
    assert data["is_member"] is True
    assert data["remainder"] == "0"

    r = client.post("/reduce", json={"polynomial": "X11 + 1", "group": "sp2"})
    data = r.json()
    assert data["is_member"] is False
    assert data["remainder"] == "X11 + 1"

    r = client.post("/reduce", json={"polynomial": "X11 + $$", "group": "sp2"})
    assert r.status_code == 422
    r = client.post("/reduce", json={"polynomial": "   ", "group": "sp2"})
    assert r.status_code == 422


def test_verify_props_identity_mode(client):
    r = client.post("/verify-props", json={"prop": "all"})
    data = r.json()
    assert data["status"] == "ok"
    assert data["mode"] == "identity"
    assert len(data["checks"]) == 22
    assert all(c["passed"] for c in data["checks"])
    assert all(data["structure"].values())
    assert data["remainder_terms"] == {"arch": 61, "ssing": 221, "ord1": 217}

    r = client.post("/verify-props", json={"prop": "ord"})
    data = r.json()
    assert len(data["checks"]) == 9
    assert {c["prop"] for c in data["checks"]} == {"ord1"}

    r = client.post("/verify-props", json={"prop": "arch"})
    assert len(r.json()["checks"]) == 3

    r = client.post("/verify-props", json={"prop": "ssing"})
    assert len(r.json()["checks"]) == 10


def test_verify_props_explicit_cache_file(client, cache_dir):
    import os

    files = [f for f in os.listdir(cache_dir) if f.startswith("sp6-")]
    assert files
    path = os.path.join(cache_dir, files[0])
    r = client.post("/verify-props", json={"prop": "arch", "cache_file": path})
    data = r.json()
    assert data["status"] == "ok" and len(data["checks"]) == 3

    r = client.post("/verify-props",
                    json={"prop": "arch", "cache_file": "/no/such/file.gb"})
    assert r.json()["status"] == "missing-cache"


def test_verify_props_budget_evidence(empty_client):
    r = empty_client.post("/verify-props", json={
        "prop": "all",
        "use_cache": False,
        "budget_seconds": 0.01,
        "evidence_trials": 4,
        "control_samples": 25,
    })
    data = r.json()
    assert data["status"] == "budget-exceeded"
    assert data["mode"] == "evidence"
    ev = data["evidence"]
    assert ev["trials"] == 4
    assert ev["all_relations_nonzero"] is True
    assert ev["control_nonzero"] == 0


def test_census_route(client):
    r = client.post("/lt-census", json={
        "curve1": [1, 0], "curve2": [0, 1], "x_max": 500, "checkpoints": 5,
    })
    data = r.json()
    assert data["status"] == "ok"
    assert len(data["checkpoints"]) == 5
    assert data["checkpoints"][-1] == 500
    assert data["csv"].startswith("x,pi_E1,pi_E2,pi_pair")
    assert data["pair_count_total"] >= 6
    assert data["exclusions"]

    r = client.post("/lt-census", json={
        "curve1": [0, 0], "curve2": [0, 1], "x_max": 100,
    })
    assert r.status_code == 422


def test_census_validation(client):
    r = client.post("/lt-census", json={
        "curve1": [1, 0], "curve2": [0, 1], "x_max": 2,
    })
    assert r.status_code == 422


def test_shared_store_reuses_basis(client):
    import time

    t0 = time.monotonic()
    r = client.post("/groebner", json={"group": "sp6", "include_elements": False})
    assert r.json()["status"] == "ok"
    assert time.monotonic() - t0 < 5.0
