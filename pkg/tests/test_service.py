import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from signedkron.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_enumerate(client):
    resp = client.post("/enumerate", json={"k": 0, "l": 4, "cls": "P_2"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["count"] == 3
    assert body["cls"] == "p2"
    assert len(body["partitions"]) == 3
    assert {"k": 0, "l": 4, "blocks": [["d1", "d2"], ["d3", "d4"]]} in \
        body["partitions"]


def test_enumerate_count_only(client):
    resp = client.post("/enumerate", json={"k": 0, "l": 6, "cls": "nc2",
                                           "count_only": True})
    body = resp.json()
    assert body["count"] == 5
    assert "partitions" not in body


def test_enumerate_bad_class(client):
    resp = client.post("/enumerate", json={"k": 0, "l": 2, "cls": "wat"})
    assert resp.status_code == 422


def test_delta(client):
    resp = client.post("/delta", json={
        "partition": {"k": 1, "l": 3, "blocks": [["u1", "d1", "d2", "d3"]]},
        "space": {"p": 1, "q": 0, "eps": -1},
        "upper": [1], "lower": [1, 2, 1]})
    assert resp.json() == {"value": -1}


def test_build_t_symplectic_form(client):
    resp = client.post("/build-t", json={
        "partition": {"k": 0, "l": 2, "blocks": [["d1", "d2"]]},
        "space": {"p": 1, "q": 0, "eps": -1}})
    body = resp.json()
    assert body["nnz"] == 2
    assert body["entries"] == [
        {"out": [1, 2], "in": [], "val": -1},
        {"out": [2, 1], "in": [], "val": 1}]


def test_build_t_rejects_odd_blocks(client):
    resp = client.post("/build-t", json={
        "partition": {"k": 1, "l": 1, "blocks": [["u1"], ["d1"]]},
        "space": {"p": 1, "q": 0, "eps": -1}})
    assert resp.status_code == 422
    assert "OddBlock" in resp.json()["detail"]


def test_space_validation(client):
    resp = client.post("/build-t", json={
        "partition": {"k": 1, "l": 1, "blocks": [["u1", "d1"]]},
        "space": {"p": 2, "q": 1, "eps": -1}})
    assert resp.status_code == 422
    assert "InvalidSignature" in resp.json()["detail"]


def test_laws(client):
    resp = client.post("/laws", json={"space": {"p": 1, "q": 0, "eps": -1},
                                      "max_points": 4,
                                      "include_rows": True})
    body = resp.json()
    assert body["identity_ok"] and body["tensor_ok"] and body["adjoint_ok"]
    counts = body["composition_counts"]
    assert counts["scalar"] == 28
    assert counts["not_proportional"] == 2
    assert len(body["rows"]) == sum(counts.values())


def test_closure_compare(client):
    resp = client.post("/closure", json={
        "named_generators": ["onethreeblock"], "bound": 4,
        "compare": "NC_even"})
    body = resp.json()
    assert body["verdict"] == "equal"
    assert body["missing"] == 0 and body["extra"] == 0


def test_sample_metadata(client):
    resp = client.post("/sample", json={
        "family": "hbar", "space": {"p": 2, "q": 1, "eps": 1},
        "seed": 9, "count": 3})
    body = resp.json()
    assert body["max_residual"] <= 1e-10
    assert len(body["elements"]) == 3


def test_sample_unsupported(client):
    resp = client.post("/sample", json={
        "family": "bbar", "space": {"p": 1, "q": 0, "eps": -1}, "seed": 1})
    assert resp.status_code == 422


def test_liedim(client):
    resp = client.post("/liedim", json={
        "family": "obar", "space": {"p": 2, "q": 0, "eps": -1}})
    assert resp.json()["dimension"] == 10


def test_enum_sbar(client):
    resp = client.post("/enum-sbar", json={
        "space": {"p": 2, "q": 0, "eps": 1}, "include_matrices": True})
    body = resp.json()
    assert body["count"] == body["expected"] == 8
    assert len(body["matrices"]) == 8


def test_gamma_endpoint(client):
    resp = client.post("/gamma", json={"space": {"p": 2, "q": 1, "eps": 1}})
    body = resp.json()
    assert body["residual_gamma_unitary"] <= 1e-12
    assert body["residual_gamma_k_gamma_t"] <= 1e-12
    assert body["residual_c_j_c_t"] <= 1e-12


def test_gamma_wrong_sign(client):
    resp = client.post("/gamma", json={"space": {"p": 1, "q": 0, "eps": -1}})
    assert resp.status_code == 422


def test_homreport(client):
    resp = client.post("/homreport", json={
        "family": "obar", "cls": "p2", "k": 0, "l": 4,
        "space": {"p": 1, "q": 0, "eps": -1}, "samples": 16, "seed": 7})
    body = resp.json()
    assert body["span_rank"] == 2
    assert body["commutant_dim"] == 2
    assert body["verdict"] == "equal"
    # config echoed back
    assert body["seed"] == 7 and body["samples"] == 16


def test_homreport_rejects_unsupported_pairing(client):
    resp = client.post("/homreport", json={
        "family": "obar", "cls": "peven", "k": 1, "l": 1,
        "space": {"p": 1, "q": 0, "eps": -1}})
    assert resp.status_code == 422


def test_identical_requests_identical_responses(client):
    payload = {"family": "obar", "cls": "p2", "k": 2, "l": 2,
               "space": {"p": 1, "q": 0, "eps": -1}, "samples": 16,
               "seed": 3}
    a = client.post("/homreport", json=payload)
    b = client.post("/homreport", json=payload)
    assert a.content == b.content


def test_suite_quick(client):
    resp = client.post("/suite", json={"seed": 0, "quick": True})
    body = resp.json()
    assert body["passed"] is True
    names = [c["name"] for c in body["checks"]]
    assert "composition-scalar-law" in names
    assert "homspace-equality" in names
    assert body["config"]["quick"] is True


def test_space_info(client):
    resp = client.post("/space", json={"space": {"p": 1, "q": 1, "eps": 1},
                                       "include_j": True})
    body = resp.json()
    assert body["n"] == 3
    assert body["bar"] == [2, 1, 3]
    assert body["eps_of"] == [1, 1, 1]
    assert body["j"] == [[0, 1, 0], [1, 0, 0], [0, 0, 1]]


def test_space_info_without_j(client):
    resp = client.post("/space", json={"space": {"p": 1, "q": 0, "eps": -1}})
    body = resp.json()
    assert body["eps_of"] == [-1, 1]
    assert "j" not in body


def test_suite_scope_caps(client):
    resp = client.post("/suite", json={"seed": 0, "quick": True,
                                       "max_n": 2, "max_points": 4})
    body = resp.json()
    assert body["passed"] is True
    assert body["config"]["max_n"] == 2
