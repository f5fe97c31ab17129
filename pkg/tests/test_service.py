import concurrent.futures
import warnings

import pytest

warnings.filterwarnings("ignore", message="Using `httpx`")

from fastapi.testclient import TestClient

from dnabricks.canvas import CanvasSpec, VoxelCoord
from dnabricks.pipeline import analysis_histogram, export_bytes
from dnabricks.project import Project, export_project, import_project
from dnabricks.service import create_app


@pytest.fixture
def client():
    return TestClient(create_app())


def make_cube(client, width=8, height=8, depth=64, **extra):
    body = {"canvas": {"width_helices": width, "height_helices": height,
                       "depth_bp": depth}}
    body.update(extra)
    response = client.post("/projects", json=body)
    assert response.status_code == 201
    return response.json()


class TestCreateAndState:
    def test_create_cube_stats(self, client):
        doc = make_cube(client)
        assert doc["revision"] == 0
        stats = doc["stats"]
        assert stats["voxels_selected"] == 512
        assert stats["domain_count"] == 1024
        assert stats["total_nt"] == 8192
        assert stats["strand_count"] == 288

    def test_get_state_round_trip(self, client):
        doc = make_cube(client, width=2, height=2, depth=16)
        got = client.get(f"/projects/{doc['project_id']}")
        assert got.status_code == 200
        assert got.json()["canvas"] == {"width_helices": 2, "height_helices": 2,
                                        "depth_bp": 16}
        assert "stats" in got.json()

    def test_invalid_dimensions(self, client):
        r = client.post("/projects", json={"canvas": {
            "width_helices": 8, "height_helices": 8, "depth_bp": 24}})
        assert r.status_code == 422

    def test_malformed_body(self, client):
        r = client.post("/projects", content=b"{oops",
                        headers={"content-type": "application/json"})
        assert r.status_code == 400

    def test_unknown_project(self, client):
        assert client.get("/projects/missing").status_code == 404


class TestMutations:
    def test_toggle_updates_stats(self, client):
        doc = make_cube(client)
        pid = doc["project_id"]
        r = client.post(f"/projects/{pid}/voxels",
                        json={"changes": [{"x": 0, "y": 0, "k": 0}]})
        assert r.status_code == 200
        body = r.json()
        assert body["revision"] == 1
        assert body["stats"]["domain_count"] == 1024 - 2
        assert body["stats"]["total_nt"] == 8192 - 16

    def test_toggle_back_restores(self, client):
        doc = make_cube(client, width=2, height=2, depth=16)
        pid = doc["project_id"]
        client.post(f"/projects/{pid}/voxels",
                    json={"changes": [{"x": 0, "y": 0, "k": 0}]})
        r = client.post(f"/projects/{pid}/voxels",
                        json={"changes": [{"x": 0, "y": 0, "k": 0,
                                           "present": True}]})
        assert r.json()["stats"]["voxels_selected"] == 8
        assert r.json()["revision"] == 2

    def test_stale_revision_conflict(self, client):
        pid = make_cube(client)["project_id"]
        client.post(f"/projects/{pid}/voxels",
                    json={"changes": [{"x": 0, "y": 0, "k": 0}]})
        r = client.post(f"/projects/{pid}/voxels",
                        json={"changes": [{"x": 1, "y": 0, "k": 0}],
                              "expected_revision": 0})
        assert r.status_code == 409

    def test_out_of_range_voxel(self, client):
        pid = make_cube(client, width=2, height=2, depth=16)["project_id"]
        r = client.post(f"/projects/{pid}/voxels",
                        json={"changes": [{"x": 9, "y": 0, "k": 0}]})
        assert r.status_code == 422

    def test_remove_box(self, client):
        pid = make_cube(client)["project_id"]
        r = client.post(f"/projects/{pid}/remove-box",
                        json={"lo": [1, 1, 1], "hi": [6, 6, 6]})
        assert r.status_code == 200
        assert r.json()["stats"]["voxels_selected"] == 296

    def test_set_generation(self, client):
        pid = make_cube(client, width=2, height=2, depth=16)["project_id"]
        r = client.put(f"/projects/{pid}/generation",
                       json={"seed": 42, "options": {"boundary_merge": True}})
        assert r.status_code == 200
        assert r.json()["generation"]["seed"] == 42
        assert r.json()["options"]["boundary_merge"] is True
        assert r.json()["revision"] == 1

    def test_concurrent_toggles_serialize(self, client):
        """Parallel single-voxel removals of distinct voxels all land."""
        pid = make_cube(client)["project_id"]
        coords = [(x, y, 0) for x in range(4) for y in range(4)]

        def toggle(coord):
            x, y, k = coord
            return client.post(
                f"/projects/{pid}/voxels",
                json={"changes": [{"x": x, "y": y, "k": k}]},
            ).status_code

        with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
            codes = list(pool.map(toggle, coords))
        assert codes == [200] * len(coords)
        state = client.get(f"/projects/{pid}").json()
        assert state["revision"] == len(coords)
        assert state["stats"]["voxels_selected"] == 512 - len(coords)


class TestReads:
    def test_strand_pagination(self, client):
        pid = make_cube(client)["project_id"]
        first = client.get(f"/projects/{pid}/strands", params={"limit": 100}).json()
        assert first["total"] == 288
        assert len(first["strands"]) == 100
        rest = client.get(f"/projects/{pid}/strands",
                          params={"offset": 280, "limit": 100}).json()
        assert len(rest["strands"]) == 8
        ids = {s["strand_id"] for s in first["strands"]}
        assert not ids & {s["strand_id"] for s in rest["strands"]}

    def test_analysis_matches_library(self, client):
        pid = make_cube(client, width=2, height=2, depth=16, seed=42)["project_id"]
        got = client.get(f"/projects/{pid}/analysis").json()["histogram"]
        want = analysis_histogram(Project(spec=CanvasSpec(2, 2, 16), seed=42))
        assert got["pairs_8"] == want.pairs_8
        assert got["pairs_7"] == want.pairs_7
        assert got["pairs_6"] == want.pairs_6
        assert got["total_domains"] == want.total_domains == 16

    def test_cost_endpoint(self, client):
        pid = make_cube(client)["project_id"]
        body = client.get(f"/projects/{pid}/cost").json()
        assert body["total_nt"] == 8192
        assert body["total_usd"] == "32.77"
        body = client.get(f"/projects/{pid}/cost", params={"rate": 0.01}).json()
        assert body["total_usd"] == "81.92"


class TestExportImport:
    def test_export_matches_cli_bytes(self, client):
        """The HTTP download equals the library/CLI export for the same state."""
        pid = make_cube(client, width=2, height=2, depth=16, seed=42)["project_id"]
        client.post(f"/projects/{pid}/voxels",
                    json={"changes": [{"x": 0, "y": 0, "k": 0}]})
        state = client.get(f"/projects/{pid}").json()
        project = import_project(
            client.get(f"/projects/{pid}/export", params={"format": "3dna"}).content
        )
        for fmt in ("csv", "tex", "3dna", "txt"):
            r = client.get(f"/projects/{pid}/export", params={"format": fmt})
            assert r.status_code == 200
            assert "attachment" in r.headers["content-disposition"]
            assert r.content == export_bytes(project, fmt)

    def test_unknown_format(self, client):
        pid = make_cube(client, width=2, height=2, depth=16)["project_id"]
        r = client.get(f"/projects/{pid}/export", params={"format": "pdf"})
        assert r.status_code == 422

    def test_import_round_trip(self, client):
        project = Project(spec=CanvasSpec(4, 4, 32),
                          removed_voxels=frozenset({VoxelCoord(1, 2, 3)}),
                          seed=7)
        r = client.post("/projects/import", content=export_project(project))
        assert r.status_code == 201
        doc = r.json()
        assert doc["removed_voxels"] == [[1, 2, 3]]
        assert doc["generation"]["seed"] == 7
        exported = client.get(
            f"/projects/{doc['project_id']}/export", params={"format": "3dna"}
        ).content
        assert exported == export_project(project)

    def test_import_malformed(self, client):
        r = client.post("/projects/import", content=b"junk")
        assert r.status_code == 400


class TestAuth:
    def test_token_required_when_configured(self):
        client = TestClient(create_app(token="sesame"))
        r = client.post("/projects", json={"canvas": {
            "width_helices": 2, "height_helices": 2, "depth_bp": 16}})
        assert r.status_code == 401
        r = client.post("/projects",
                        headers={"Authorization": "Bearer wrong"},
                        json={"canvas": {"width_helices": 2, "height_helices": 2,
                                         "depth_bp": 16}})
        assert r.status_code == 401
        r = client.post("/projects",
                        headers={"Authorization": "Bearer sesame"},
                        json={"canvas": {"width_helices": 2, "height_helices": 2,
                                         "depth_bp": 16}})
        assert r.status_code == 201
