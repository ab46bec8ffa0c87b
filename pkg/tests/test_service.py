"""HTTP service: endpoint contracts, wire identity, statelessness, privacy."""

from __future__ import annotations

import json
import logging

import pytest
from fastapi.testclient import TestClient

from conftest import TOY_FIRST_YEAR, TOY_LAST_YEAR
from policy_lab import __version__
from policy_lab.service import create_app


@pytest.fixture()
def client(toy_baseline):
    app = create_app({"default": toy_baseline})
    with TestClient(app) as c:
        yield c


def empty_scenario_doc():
    return {"levers": [], "values": {}, "years": [TOY_FIRST_YEAR, TOY_LAST_YEAR]}


def lever_scenario_doc(script, lever_id="lever", inputs=None):
    return {
        "levers": [
            {
                "id": lever_id,
                "display_name": lever_id,
                "inputs": inputs or {},
                "inline_script": script,
            }
        ],
        "values": {},
        "years": [TOY_FIRST_YEAR, TOY_LAST_YEAR],
    }


class TestHealth:
    def test_health(self, client):
        body = client.get("/health").json()
        assert body == {"status": "ok", "engine_version": __version__}


class TestVocabulary:
    def test_regions_attributes_lifetimes(self, client, toy_vocabulary):
        body = client.get("/api/vocabulary").json()
        assert [r["id"] for r in body["regions"]] == list(toy_vocabulary.region_ids)
        assert [a["id"] for a in body["attributes"]] == list(
            toy_vocabulary.attribute_ids
        )
        assert body["lifetimes"] == toy_vocabulary.lifetimes


class TestBaseline:
    def test_cells_total_and_canonical_order(self, client, toy_baseline):
        body = client.get("/api/baseline").json()
        vocabulary = toy_baseline.vocabulary
        expected_count = (
            len(vocabulary.regions)
            * len(toy_baseline.years)
            * len(vocabulary.attributes)
        )
        assert len(body["cells"]) == expected_count
        first = body["cells"][0]
        assert first["region"] == vocabulary.region_ids[0]
        assert first["year"] == toy_baseline.first_year

    def test_unknown_baseline_404(self, client):
        assert client.get("/api/baseline", params={"id": "nope"}).status_code == 404


class TestCheck:
    def test_violation_is_200_with_details(self, client):
        response = client.post(
            "/api/check", json={"script": "out.alpha.bogusMT = 1;"}
        )
        assert response.status_code == 200
        (violation,) = response.json()["violations"]
        assert violation["code"] == "UnknownAttribute"
        assert violation["line"] == 1

    def test_parse_error_reported_with_position(self, client):
        response = client.post("/api/check", json={"script": "var x = ;"})
        assert response.status_code == 200
        (violation,) = response.json()["violations"]
        assert violation["code"] == "ParseError"
        assert (violation["line"], violation["column"]) == (1, 9)

    def test_clean_script_no_violations(self, client):
        response = client.post(
            "/api/check", json={"script": "out.alpha.eolRecyclingMT = 1;"}
        )
        assert response.json() == {"violations": []}

    def test_inputs_list_honored(self, client):
        body = {"script": "out.alpha.importWasteMT = in.knob;", "inputs": []}
        (violation,) = client.post("/api/check", json=body).json()["violations"]
        assert violation["code"] == "UnknownInput"

    def test_oversized_script_400(self, client):
        huge = "# pad\n" * 20000  # > 64 KiB
        assert (
            client.post("/api/check", json={"script": huge}).status_code == 400
        )


class TestSimulate:
    def test_empty_scenario_equals_baseline_cells(self, client):
        simulated = client.post(
            "/api/simulate", json={"scenario": empty_scenario_doc()}
        ).json()
        baseline = client.get("/api/baseline").json()
        assert simulated["cells"] == baseline["cells"]
        assert simulated["engine_version"] == __version__

    def test_cell_count_invariant(self, client, toy_baseline):
        body = client.post(
            "/api/simulate", json={"scenario": empty_scenario_doc()}
        ).json()
        vocabulary = toy_baseline.vocabulary
        assert len(body["cells"]) == (
            len(vocabulary.regions)
            * len(toy_baseline.years)
            * len(vocabulary.attributes)
        )

    def test_statelessness_identical_bodies(self, client):
        doc = lever_scenario_doc(
            "distribute 2 across [out.alpha.eolRecyclingMT, out.alpha.eolLandfillMT];"
        )
        first = client.post("/api/simulate", json={"scenario": doc})
        second = client.post("/api/simulate", json={"scenario": doc})
        assert first.content == second.content

    def test_unknown_baseline_404(self, client):
        response = client.post(
            "/api/simulate",
            json={"scenario": empty_scenario_doc(), "baseline_id": "nope"},
        )
        assert response.status_code == 404

    def test_bad_scenario_400(self, client):
        response = client.post(
            "/api/simulate", json={"scenario": {"levers": [], "years": "bad"}}
        )
        assert response.status_code == 400

    def test_check_violation_400(self, client):
        response = client.post(
            "/api/simulate",
            json={"scenario": lever_scenario_doc("out.alpha.bogusMT = 1;")},
        )
        assert response.status_code == 400

    def test_script_runtime_error_422_with_context(self, client):
        doc = lever_scenario_doc(
            "var gap = out.alpha.consumptionPackagingMT - 54;\n"
            "out.alpha.importWasteMT = 1 / gap;",
            lever_id="timebomb",
        )
        response = client.post("/api/simulate", json={"scenario": doc})
        assert response.status_code == 422
        body = response.json()
        assert body["lever_id"] == "timebomb"
        assert body["year"] == 2020
        assert body["line"] == 2

    def test_diagnostics_included_on_request(self, client):
        doc = lever_scenario_doc("limit out.alpha.eolMismanagedMT to [0, 1];")
        body = client.post(
            "/api/simulate",
            json={"scenario": doc, "include_diagnostics": True},
        ).json()
        assert "diagnostics" in body
        assert any(y["clamps_applied"] for y in body["diagnostics"])

    def test_headline_present(self, client):
        body = client.post(
            "/api/simulate", json={"scenario": empty_scenario_doc()}
        ).json()
        assert "cumulative_global_mismanaged" in body["headline"]
        assert set(body["headline"]["end_year_fates"]) == {"alpha", "beta"}


class TestPrivacyLogging:
    def test_access_log_has_no_script_text_or_values(self, toy_baseline, caplog):
        app = create_app({"default": toy_baseline})
        sentinel_script = (
            "out.alpha.importWasteMT = 123.456789; # SENTINEL_MARKER_XYZZY"
        )
        with caplog.at_level(logging.INFO, logger="policy_lab.service"):
            with TestClient(app) as client:
                client.get("/health")
                client.get("/api/vocabulary")
                client.get("/api/baseline")
                client.post("/api/check", json={"script": sentinel_script})
                response = client.post(
                    "/api/simulate",
                    json={"scenario": lever_scenario_doc(sentinel_script)},
                )
        # scan with the duration field stripped: it is the one numeric field
        # the log legitimately carries, and it can collide with short reprs
        log_lines = []
        for record in caplog.records:
            parts = record.getMessage().split()
            if parts and parts[-1].endswith("ms"):
                parts = parts[:-1]
            log_lines.append(" ".join(parts))
        log_text = "\n".join(log_lines)
        assert "SENTINEL_MARKER_XYZZY" not in log_text
        assert "123.456789" not in log_text
        assert "importWasteMT" not in log_text
        # no result values either: sample a few cells from the response body
        for cell in response.json()["cells"][:50]:
            value = cell["value"]
            if value and abs(value) > 1e-9:
                assert repr(value) not in log_text
        # what IS logged: method, path, status (duration was stripped above)
        assert any("POST /api/simulate 200" in line for line in log_text.splitlines())

    def test_log_lines_match_minimal_shape(self, toy_baseline, caplog):
        app = create_app({"default": toy_baseline})
        with caplog.at_level(logging.INFO, logger="policy_lab.service"):
            with TestClient(app) as client:
                client.get("/health")
        (line,) = [r.getMessage() for r in caplog.records]
        method, path, status, duration = line.split()
        assert (method, path, status) == ("GET", "/health", "200")
        assert duration.endswith("ms")
