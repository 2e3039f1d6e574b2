import pytest
from fastapi.testclient import TestClient

from citenv import ingest, write_pajek
from citenv.pipeline import build_map_document, handle_environment
from citenv.service.app import create_app
from citenv.service.schemas import EnvironmentRequest
from oracles import TOY4_EDGES


@pytest.fixture(scope="module")
def client():
    dataset = ingest(TOY4_EDGES, year_tag="toy4")
    return TestClient(create_app(dataset))


def test_journal_search(client):
    body = client.get("/api/journals", params={"q": "b"}).json()
    assert [j["id"] for j in body] == ["B"]
    everything = client.get("/api/journals").json()
    assert [j["id"] for j in everything] == ["A", "B", "C", "D"]
    assert everything[1]["total_cited"] == 28


def test_stats_endpoint(client):
    body = client.get("/api/stats").json()
    assert body["n_source_journals"] == 4
    assert body["n_unique_relations"] == 10
    assert body["within_journal_total"] == 68
    assert body["density_percent"] == pytest.approx(62.5)
    assert body["year_tag"] == "toy4"
    assert body["totals_derived"] is True


def test_environment_endpoint_matches_pipeline(client):
    response = client.get("/api/environment", params={"seed": "B", "direction": "cited"})
    assert response.status_code == 200
    body = response.json()
    dataset = ingest(TOY4_EDGES, year_tag="toy4")
    expected = handle_environment(dataset, EnvironmentRequest(seed="B", direction="cited"))
    assert body == expected.model_dump()


def test_environment_endpoint_repeatable(client):
    params = {"seed": "B", "direction": "cited", "rng_seed": 3}
    first = client.get("/api/environment", params=params)
    second = client.get("/api/environment", params=params)
    assert first.content == second.content


def test_unknown_seed_is_404(client):
    response = client.get("/api/environment", params={"seed": "XYZ"})
    assert response.status_code == 404
    assert "unknown journal" in response.json()["detail"]


def test_invalid_parameters_are_422(client):
    response = client.get(
        "/api/environment", params={"seed": "B", "threshold_fraction": "1.5"}
    )
    assert response.status_code == 422
    response = client.get("/api/environment", params={"seed": "B", "cell_floor": "0"})
    assert response.status_code == 422


def test_unprocessable_environment_is_422():
    dataset = ingest([("S", "S", 1), ("T", "S", 1)])
    with TestClient(create_app(dataset)) as local:
        response = local.get("/api/environment", params={"seed": "S", "direction": "cited"})
        assert response.status_code == 422
        assert "empty environment matrix" in response.json()["detail"]


def test_net_download_matches_writer(client):
    params = {"seed": "B", "direction": "cited", "want_layout": "false"}
    response = client.get("/api/environment.net", params=params)
    assert response.status_code == 200
    dataset = ingest(TOY4_EDGES, year_tag="toy4")
    doc, _ = build_map_document(
        dataset, EnvironmentRequest(seed="B", direction="cited", want_layout=False)
    )
    assert response.text == write_pajek(doc)
    assert 'filename="B_cited.net"' in response.headers["content-disposition"]


def test_dl_download(client):
    response = client.get("/api/environment.dl", params={"seed": "B"})
    assert response.status_code == 200
    assert response.text.startswith("dl n=3 format=fullmatrix\n")


def test_svg_download(client):
    response = client.get("/api/environment.svg", params={"seed": "B", "rng_seed": 7})
    assert response.status_code == 200
    assert response.headers["content-type"].startswith("image/svg+xml")
    assert "<ellipse" in response.text


def test_factors_endpoint(client):
    response = client.get("/api/factors", params={"seed": "B", "direction": "cited"})
    assert response.status_code == 200
    body = response.json()
    assert body["variables"] == ["A", "B", "C"]
    assert "Extraction" in body["report"]


def test_factors_too_small_is_422():
    dataset = ingest([("A", "B", 5), ("B", "A", 4)])
    with TestClient(create_app(dataset)) as local:
        response = local.get("/api/factors", params={"seed": "A", "direction": "cited"})
        assert response.status_code == 422
        assert "insufficient variables" in response.json()["detail"]


def test_frontend_mount(tmp_path):
    (tmp_path / "index.html").write_text("<html><body>explorer</body></html>")
    dataset = ingest(TOY4_EDGES)
    with TestClient(create_app(dataset, frontend_dir=tmp_path)) as local:
        response = local.get("/")
        assert response.status_code == 200
        assert "explorer" in response.text
        # the API stays reachable alongside the static mount
        assert local.get("/api/stats").status_code == 200
