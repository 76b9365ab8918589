"""JSON API behind the annotation interface.

Serves candidate links with their taxonomy and dictionary context, records
verdicts, and reports live per-method confidence ratios.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Mapping

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .lexdata import BilingualLexicon, DataError, MonolingualDictionary, Taxonomy
from .links import LinkSet
from .validator import (
    Sample,
    VerdictStore,
    compute_diagnostic_ratios,
    record_verdict,
)


@dataclass
class ValidationContext:
    tax: Taxonomy
    hbil: BilingualLexicon
    mono: MonolingualDictionary | None
    samples: Mapping[str, Sample]
    store: VerdictStore
    linksets: Mapping[str, LinkSet] = field(default_factory=dict)


class VerdictIn(BaseModel):
    sample_id: str
    source_word: str
    synset: str
    diagnostic: Literal["ok", "ko", "hypo", "hyper", "near"]
    annotator: str


def _synset_payload(ctx: ValidationContext, synset_id: str) -> dict:
    synset = ctx.tax.synsets[synset_id]
    return {
        "id": synset.id,
        "variants": list(synset.variants),
        "depth": ctx.tax.depth[synset_id],
        "parents": sorted(synset.hypernyms),
        "children": sorted(ctx.tax.hyponyms(synset_id)),
        "hypernym_chain": ctx.tax.hypernym_chain(synset_id),
    }


def _word_context(ctx: ValidationContext, lemma: str) -> dict:
    translations = [
        {
            "source_lemma": p.source_lemma,
            "target_lemma": p.target_lemma,
            "field_id": p.field_id,
            "origin": p.origin,
        }
        for p in ctx.hbil.by_source.get(lemma, ())
    ]
    definitions = []
    if ctx.mono is not None:
        definitions = [
            {
                "headword": e.headword,
                "sense_no": e.sense_no,
                "definition": " ".join(e.definition),
                "genus": e.genus,
            }
            for e in ctx.mono.by_headword.get(lemma, ())
        ]
    return {"translations": translations, "definitions": definitions}


def _sample_progress(ctx: ValidationContext, sample: Sample, annotator: str) -> dict:
    judged_keys = {
        (v.source_word, v.synset)
        for v in ctx.store.for_method(sample.method)
        if not annotator or v.annotator == annotator
    }
    judged = sum(1 for link in sample.links if link.key in judged_keys)
    return {"judged": judged, "total": len(sample.links)}


def _ratios_payload(ctx: ValidationContext, sample: Sample) -> dict | None:
    try:
        cs, pending = compute_diagnostic_ratios(sample, ctx.store)
    except DataError:
        return None
    return {
        "method": cs.method,
        "ratios": dict(cs.ratios),
        "sample_size": cs.sample_size,
        "pending": pending,
    }


def create_app(ctx: ValidationContext, ui_assets: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="lexiweave validation")

    @app.get("/api/samples")
    def list_samples() -> list[dict]:
        out = []
        for sid in sorted(ctx.samples):
            sample = ctx.samples[sid]
            progress = _sample_progress(ctx, sample, "")
            out.append(
                {
                    "id": sample.id,
                    "method": sample.method,
                    "fraction": sample.fraction,
                    "seed": sample.seed,
                    **progress,
                }
            )
        return out

    @app.get("/api/samples/{sample_id}/next")
    def next_candidate(sample_id: str, annotator: str = "") -> dict:
        sample = ctx.samples.get(sample_id)
        if sample is None:
            raise HTTPException(status_code=404, detail="unknown sample")
        judged_keys = {
            (v.source_word, v.synset)
            for v in ctx.store.for_method(sample.method)
            if not annotator or v.annotator == annotator
        }
        progress = _sample_progress(ctx, sample, annotator)
        for link in sample.links:
            if link.key in judged_keys:
                continue
            return {
                "done": False,
                "link": {
                    "source_word": link.source_word,
                    "synset": link.synset,
                    "method": link.method,
                    "score": link.score,
                    "evidence": sorted(link.evidence),
                },
                "synset": _synset_payload(ctx, link.synset),
                **_word_context(ctx, link.source_word),
                "progress": progress,
            }
        return {
            "done": True,
            "progress": progress,
            "ratios": _ratios_payload(ctx, sample),
        }

    @app.post("/api/verdicts", status_code=201)
    def post_verdict(verdict: VerdictIn) -> JSONResponse:
        sample = ctx.samples.get(verdict.sample_id)
        if sample is None:
            raise HTTPException(status_code=404, detail="unknown sample")
        try:
            stored = record_verdict(
                ctx.store,
                sample,
                verdict.source_word,
                verdict.synset,
                verdict.diagnostic,
                verdict.annotator,
            )
        except DataError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return JSONResponse(status_code=201, content={"stored": stored})

    @app.get("/api/synsets/{synset_id}")
    def get_synset(synset_id: str) -> dict:
        if synset_id not in ctx.tax:
            raise HTTPException(status_code=404, detail="unknown synset")
        return _synset_payload(ctx, synset_id)

    @app.get("/api/words/{lemma}")
    def get_word(lemma: str) -> dict:
        context = _word_context(ctx, lemma)
        links = []
        for method in sorted(ctx.linksets):
            for link in ctx.linksets[method]:
                if link.source_word == lemma:
                    links.append(
                        {
                            "source_word": link.source_word,
                            "synset": link.synset,
                            "method": link.method,
                            "score": link.score,
                        }
                    )
        if not context["translations"] and not context["definitions"] and not links:
            raise HTTPException(status_code=404, detail="unknown word")
        return {"lemma": lemma, **context, "links": links}

    @app.get("/api/stats")
    def get_stats() -> list[dict]:
        out = []
        for sid in sorted(ctx.samples):
            payload = _ratios_payload(ctx, ctx.samples[sid])
            if payload is not None:
                out.append(payload)
        return out

    if ui_assets is not None and Path(ui_assets).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_assets), html=True), name="ui")

    return app
