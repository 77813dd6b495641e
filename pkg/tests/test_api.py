import pytest
from fastapi.testclient import TestClient

from app.main import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as test_client:
        yield test_client


def test_health(client):
    assert client.get("/health").json() == {"status": "healthy"}
    assert client.get("/").json()["status"] == "running"


def test_get_tableau(client):
    response = client.get("/api/tableau/1,2,1")
    assert response.status_code == 200
    body = response.json()
    assert body["tableau"] == [[1], [2, 3], [4]]
    assert body["precedence"] == [4, 2, 3, 1]
    assert body["extras"] == [{"entry": 2, "row": 2, "col": 3}]
    assert body["stops"]["3"]["kind"] == "BlockedCell"


@pytest.mark.parametrize("composition", ["1,0", "x", "1,-1"])
def test_malformed_composition(client, composition):
    response = client.get(f"/api/tableau/{composition}")
    assert response.status_code == 400


def test_get_section(client):
    response = client.get("/api/section/1,2,4,3,2,3,4,1,1,2")
    assert response.status_code == 200
    body = response.json()
    assert body["section"]["evs_extras"] == [[9, 14], [9, 18], [20, 22]]
    assert {"i": 9, "j": 14, "label": "1vs"} in body["matrix"]
    assert body["blocks"] == [1, 2, 4, 3, 2, 3, 4, 1, 1, 2]


def test_get_section_without_vs(client):
    body = client.get("/api/section/1,2,4,3,2,3,4,1,1,2", params={"include_vs": False}).json()
    assert all(cell["label"] != "1vs" for cell in body["matrix"])


def test_get_report(client):
    body = client.get("/api/section/2,2,1,1/report").json()
    assert body["schema"] == 1
    assert body["composition"] == [2, 2, 1, 1]


def test_verify(client):
    response = client.post("/api/verify", json={"composition": "1,1,1", "trials": 1})
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] is True
    assert body["checks"][-1]["status"] == "pass"


def test_verify_rejects_bad_prime(client):
    response = client.post("/api/verify", json={"composition": "1,1,1", "prime": 9})
    assert response.status_code == 400


def test_verify_rejects_malformed_composition(client):
    response = client.post("/api/verify", json={"composition": "0"})
    assert response.status_code == 400


def test_verify_skips_rank_for_large_matrix(client, mocker):
    mocker.patch("app.services.verification.settings.rank_max_cells", 10)
    response = client.post("/api/verify", json={"composition": "2,1,3"})
    assert response.status_code == 200
    rank = response.json()["checks"][-1]
    assert rank["status"] == "skipped"
    assert rank["details"]["dim_p"] == 22


def test_oracle(client):
    body = client.get("/api/verify/1,2,4,3,2,3,4,1,1,2/oracle").json()
    assert body["composition_map"] == [22, 23, 20, 19, 9]
    assert body["consistent"] is True
    assert [s["columns"] for s in body["staircases"]] == [[5, 6, 7], [8], [9, 10]]
