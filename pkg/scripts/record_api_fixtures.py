#!/usr/bin/env python3
"""Record live validation-API responses into a fixture for the UI tests.

Builds the same context the `serve` stage would, drives one full
annotation pass (8 ok / 1 hypo / 1 near over a 10-link sample) plus a
five-diagnostic re-judging sequence, and captures every request/response
pair verbatim.
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from lexiweave.api import ValidationContext, create_app
from lexiweave.class_methods import run_class_methods
from lexiweave.lexdata import load_bilingual, load_monolingual, load_taxonomy, merge_bilinguals
from lexiweave.links import LinkSet
from lexiweave.validator import VerdictStore, draw_sample

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"
OUT = ROOT / "frontend" / "tests" / "fixtures" / "recorded_api.json"


def build_client() -> TestClient:
    tax = load_taxonomy(FIXTURES / "taxonomy.tsv")
    hbil = merge_bilinguals(
        load_bilingual(FIXTURES / "es_en.tsv", "es_en"),
        load_bilingual(FIXTURES / "en_es.tsv", "en_es"),
    )
    mono = load_monolingual(FIXTURES / "monolingual.jsonl")
    linksets = run_class_methods(hbil, tax)
    ten = LinkSet("cd1")
    for i in range(10):
        ten.add(f"palabra{i}", ("300", "400", "610")[i % 3])
    samples = {"cd1": draw_sample(ten, 1.0, seed=13)}
    ctx = ValidationContext(tax, hbil, mono, samples, VerdictStore(), linksets)
    return TestClient(create_app(ctx))


def main() -> None:
    client = build_client()
    annotator = "tester"
    record = {
        "samples": client.get("/api/samples").json(),
        "synset_400": client.get("/api/synsets/400").json(),
        "word_perro": client.get("/api/words/perro").json(),
        "flow": [],
        "five_diagnostics": [],
    }

    diagnostics = ["ok"] * 8 + ["hypo", "near"]
    for diagnostic in diagnostics:
        next_payload = client.get(
            "/api/samples/cd1/next", params={"annotator": annotator}
        ).json()
        body = {
            "sample_id": "cd1",
            "source_word": next_payload["link"]["source_word"],
            "synset": next_payload["link"]["synset"],
            "diagnostic": diagnostic,
            "annotator": annotator,
        }
        response = client.post("/api/verdicts", json=body)
        record["flow"].append(
            {
                "next": next_payload,
                "verdict_request": body,
                "verdict_status": response.status_code,
                "verdict_response": response.json(),
            }
        )
    record["final_next"] = client.get(
        "/api/samples/cd1/next", params={"annotator": annotator}
    ).json()
    record["stats"] = client.get("/api/stats").json()

    # the same link re-judged with every diagnostic kind by another annotator
    first_link = record["flow"][0]["verdict_request"]
    for diagnostic in ("ok", "ko", "hypo", "hyper", "near"):
        body = {**first_link, "diagnostic": diagnostic, "annotator": "reviewer"}
        response = client.post("/api/verdicts", json=body)
        record["five_diagnostics"].append(
            {
                "request": body,
                "status": response.status_code,
                "response": response.json(),
            }
        )

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(record, ensure_ascii=False, indent=2) + "\n")
    print(f"recorded {len(record['flow'])} annotation steps -> {OUT}")


if __name__ == "__main__":
    main()
