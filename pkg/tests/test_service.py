"""Service endpoints over in-process HTTP: the published session, error
status codes, dataset/train/analyze round trips."""

import json

import pytest
from fastapi.testclient import TestClient

from adlvlab.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_parse_endpoint(client):
    resp = client.post("/element/parse", json={"n": 3, "w": "affine_Weyl([1,1,-2],[2,1])"})
    body = resp.json()
    assert resp.status_code == 200
    assert body["length"] == 4
    assert body["newton_point"] == "[0, 0, 0]"
    assert body["eta_length"] == 2


def test_list_published_session(client):
    resp = client.post("/adlv/list", json={"n": 3, "w": "affine_Weyl([1,1,-2],[2,1])"})
    assert resp.json()["lines"] == [
        "Newton point = [1/2, 1/2, -1], dim = 1, irr = 1",
        "Newton point = [0, 0, 0], dim = 3, irr = 1",
    ]


def test_query_published_session(client):
    resp = client.post(
        "/adlv/query",
        json={
            "n": 3,
            "w": "affine_Weyl([1,1,-2],[2,1])",
            "nus": ["0,0,0", "1/2,1/2,-1", "1,0,-1", "2,0,-2"],
            "prints": ["dim", "irr", "dim", "irr"],
        },
    )
    assert resp.json()["line"] == "3 1 empty 0"


def test_parse_error_is_422(client):
    resp = client.post("/element/parse", json={"n": 3, "w": "garbage"})
    assert resp.status_code == 422
    resp = client.post("/adlv/query", json={"n": 3, "w": "exp([])", "nus": ["1/3,1/3,-2/3"], "prints": ["dim"]})
    assert resp.status_code == 422


def test_budget_is_409(client):
    from adlvlab import adlv

    adlv.clear_cache()  # budget counts fresh nodes; memo hits are free
    resp = client.post(
        "/adlv/list", json={"n": 3, "w": "affine_Weyl([3,1,-4],[1,2])", "budget": 2}
    )
    assert resp.status_code == 409


def test_verify_bound_endpoint(client):
    resp = client.post("/qbg/verify-bound", json={"n": 3, "max_len": 8})
    body = resp.json()
    assert body["bound"] == 1 and body["witness_ok"]
    assert set(body) >= {
        "n", "max_len", "bound", "observed_max", "witness_length", "witness_delta", "elapsed",
    }


def test_dataset_train_analyze_round_trip(client, tmp_path):
    data_path = str(tmp_path / "pairs.csv")
    resp = client.post(
        "/dataset/enumerate",
        json={
            "n": 3, "max_len": 7, "filter": "NONEMPTY", "schema_name": "SEC5_46",
            "label": "DIM", "out": data_path,
        },
    )
    assert resp.status_code == 200
    rows = resp.json()["rows"]
    assert rows > 5
    model_path = str(tmp_path / "model.json")
    resp = client.post(
        "/ml/train",
        json={"in_path": data_path, "model": "linreg", "out": model_path, "reg": 0.01},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["rows_train"] + body["rows_test"] == rows
    assert body["test"]["mean_error"] < 2.0
    assert body["coefficients"]
    meta = json.load(open(model_path))
    assert meta["meta"]["invocation"]["model"] == "linreg"

    resp = client.post("/ml/analyze", json={"model_path": model_path, "data_path": data_path})
    assert resp.status_code == 200
    # SEC5_46 has 3 C(3,2) + 3n + 1 = 19 columns at n = 3
    assert len(resp.json()["saliency"]) == 19


def test_sample_endpoint(client, tmp_path):
    out = str(tmp_path / "ds1.csv")
    resp = client.post(
        "/dataset/sample",
        json={"dataset_id": 1, "count": 6, "seed": 1, "n": 3, "schema_name": "EXP1",
              "label": "DIM", "out": out},
    )
    assert resp.status_code == 200 and resp.json()["rows"] == 6
    first = open(out).readline()
    assert first.startswith("# meta: ")
    assert json.loads(first[len("# meta: "):])["invocation"]["seed"] == 1


def test_stats_endpoint(client):
    resp = client.post("/dataset/stats", json={"n": 3, "max_len": 5})
    body = resp.json()
    assert sum(body["delta_histogram"].values()) == body["pair_total"]


def test_selftest_endpoint(client):
    resp = client.post("/selftest", json={})
    assert resp.status_code == 200
    assert resp.json()["ok"] and len(resp.json()["checks"]) == 3
