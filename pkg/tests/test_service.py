import pytest
from fastapi.testclient import TestClient

from knotcol.service import app

GEN_LIBRARY = {"dihedral_prime_max": 7, "affine_max": 6, "groups": ["s3"]}
TREFOIL = {"gauss": "O1+ U2+ O3+ U1+ O2+ U3+", "name": "trefoil"}


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


class TestHealth:
    def test_ok(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok"}


class TestColor:
    def test_decide_sat(self, client):
        resp = client.post("/color", json={"knot": TREFOIL, "quandle": "dihedral:3"})
        assert resp.status_code == 200
        body = resp.json()
        assert body["colorable"] is True
        assert body["status"] == "ok"
        assert body["schema_version"] == "1"
        assert body["knot"] == "trefoil"

    def test_count_backtrack(self, client):
        resp = client.post("/color", json={
            "knot": {"braid": "3: 1 -2 1 -2"}, "quandle": "dihedral:5",
            "engine": "backtrack", "count": True})
        assert resp.status_code == 200
        assert resp.json()["count"] == 20

    def test_braid_engine_on_torus(self, client):
        resp = client.post("/color", json={
            "knot": {"torus": "2,11"}, "quandle": "dihedral:11",
            "engine": "braid"})
        assert resp.status_code == 200
        assert resp.json()["colorable"] is True

    def test_budget_exceeded_status(self, client):
        resp = client.post("/color", json={
            "knot": TREFOIL, "quandle": "dihedral:5", "engine": "brute",
            "budget": {"max_assignments": 3}})
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "budget-exceeded"
        assert body.get("colorable") is None

    def test_two_knot_inputs_rejected(self, client):
        resp = client.post("/color", json={
            "knot": {"gauss": "UNKNOT", "braid": "2: 1"}, "quandle": "dihedral:3"})
        assert resp.status_code == 422

    def test_bad_gauss_code_422(self, client):
        resp = client.post("/color", json={
            "knot": {"gauss": "O1+ U2+"}, "quandle": "dihedral:3"})
        assert resp.status_code == 422

    def test_bad_quandle_spec_422(self, client):
        resp = client.post("/color", json={"knot": TREFOIL, "quandle": "weird:3"})
        assert resp.status_code == 422

    def test_braid_engine_needs_braid_input(self, client):
        resp = client.post("/color", json={
            "knot": TREFOIL, "quandle": "dihedral:3", "engine": "braid"})
        assert resp.status_code == 422


class TestEncode:
    def test_trefoil_dimacs(self, client):
        resp = client.post("/encode", json={"knot": TREFOIL, "quandle": "dihedral:3"})
        assert resp.status_code == 200
        body = resp.json()
        assert body["num_vars"] == 9
        assert body["num_clauses"] == 43
        assert body["dimacs"].startswith("p cnf 9 43\n")

    def test_toggle_symmetry_break(self, client):
        resp = client.post("/encode", json={
            "knot": TREFOIL, "quandle": "dihedral:3", "symmetry_break": False})
        assert resp.json()["num_clauses"] == 42


class TestCertify:
    def test_fig8_dt_certificate(self, client):
        resp = client.post("/certify", json={
            "knot": {"dt": "4 6 8 2", "name": "fig8"},
            "library": GEN_LIBRARY})
        assert resp.status_code == 200
        body = resp.json()
        assert body["verdict"] == "certificate"
        assert body["detail"]["quandle"]["size"] == 5

    def test_unknot_exhausted(self, client):
        resp = client.post("/certify", json={
            "knot": {"gauss": "O1+ U1+", "name": "kink"},
            "library": GEN_LIBRARY, "prefilter": True})
        assert resp.status_code == 200
        assert resp.json()["verdict"] == "exhausted"

    def test_library_path_and_recipe_rejected(self, client):
        resp = client.post("/certify", json={
            "knot": TREFOIL,
            "library": {"path": "/tmp/x", "dihedral_prime_max": 3}})
        assert resp.status_code == 422


class TestDistinguish:
    def test_trefoil_vs_fig8(self, client):
        resp = client.post("/distinguish", json={
            "knot1": {"torus": "2,3"}, "knot2": {"braid": "3: 1 -2 1 -2"},
            "library": GEN_LIBRARY})
        assert resp.status_code == 200
        body = resp.json()
        assert body["verdict"] == "witness"
        assert body["detail"]["kind"] == "alexander_mismatch"

    def test_same_knot(self, client):
        resp = client.post("/distinguish", json={
            "knot1": {"torus": "2,3"}, "knot2": {"gauss": TREFOIL["gauss"]},
            "library": GEN_LIBRARY, "count": True})
        assert resp.json()["verdict"] == "indistinguishable"


class TestBench:
    def test_matrix_rows(self, client):
        resp = client.post("/bench", json={
            "knots": [{"torus": "2,3"}, {"torus": "2,5"}],
            "library": {"dihedral_prime_max": 5},
            "engine": "backtrack"})
        assert resp.status_code == 200
        rows = resp.json()["rows"]
        assert len(rows) == 4  # 2 knots x 2 quandles
        verdicts = {(r["knot"], r["quandle"]): r["verdict"] for r in rows}
        assert verdicts[("torus(2,3)", "dihedral(3)")] == "colorable"
        assert verdicts[("torus(2,3)", "dihedral(5)")] == "uncolorable"
        assert verdicts[("torus(2,5)", "dihedral(5)")] == "colorable"

    def test_parallel_jobs_preserve_order(self, client):
        payload = {
            "knots": [{"torus": "2,3"}, {"torus": "2,5"}, {"torus": "2,7"}],
            "library": {"dihedral_prime_max": 7},
            "engine": "sat"}
        serial = client.post("/bench", json=payload).json()["rows"]
        parallel = client.post("/bench", json=dict(payload, jobs=4)).json()["rows"]
        strip = lambda rows: [{k: v for k, v in r.items() if k != "millis"}
                              for r in rows]
        assert strip(serial) == strip(parallel)
