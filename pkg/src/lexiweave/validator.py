"""Hand-validation support: samples, verdicts, and diagnostic ratios.

A fixed fraction of each method's links is drawn reproducibly, judged by
annotators with one of five diagnostics, and the judged proportions become
the method's confidence score.
"""

from __future__ import annotations

import hashlib
import json
import math
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from .combine import DIAGNOSTICS, MethodCS, compute_method_cs
from .lexdata import DataError, Taxonomy
from .links import LinkCandidate, LinkSet


@dataclass(frozen=True)
class Verdict:
    source_word: str
    synset: str
    method: str
    diagnostic: str
    annotator: str
    timestamp: float

    def __post_init__(self):
        if self.diagnostic not in DIAGNOSTICS:
            raise DataError(f"unknown diagnostic {self.diagnostic!r}")


@dataclass(frozen=True)
class Sample:
    id: str
    method: str
    links: tuple[LinkCandidate, ...]
    fraction: float
    seed: int

    def __contains__(self, key: tuple[str, str]) -> bool:
        return any(link.key == key for link in self.links)


def _rank_key(seed: int, link: LinkCandidate) -> tuple[str, str, str]:
    digest = hashlib.blake2b(
        f"{link.source_word}\t{link.synset}".encode("utf-8"),
        key=str(seed).encode("utf-8"),
        digest_size=16,
    ).hexdigest()
    return (digest, link.source_word, link.synset)


def draw_sample(linkset: LinkSet, fraction: float, seed: int) -> Sample:
    """Reproducible without-replacement sample of a link set.

    Links are ranked by a seed-keyed hash so the same inputs always yield
    the same sample, independent of iteration order.
    """
    if not 0.0 < fraction <= 1.0:
        raise DataError(f"sample fraction {fraction} outside (0, 1]")
    if len(linkset) == 0:
        raise DataError(f"{linkset.method}: cannot sample an empty link set")
    size = math.floor(fraction * len(linkset) + 0.5)
    ranked = sorted(linkset.candidates, key=lambda link: _rank_key(seed, link))
    return Sample(linkset.method, linkset.method, tuple(ranked[:size]), fraction, seed)


class VerdictStore:
    """Verdicts keyed by (link, annotator), latest wins.

    Optionally persisted as append-only JSON Lines and replayed on load.
    Writes are serialized through a lock; reads see immutable snapshots.
    """

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path is not None else None
        self._lock = threading.Lock()
        self._verdicts: dict[tuple[str, str, str, str], Verdict] = {}
        if self._path is not None and self._path.exists():
            with open(self._path, encoding="utf-8") as handle:
                for lineno, raw in enumerate(handle, 1):
                    if not raw.strip():
                        continue
                    try:
                        record = json.loads(raw)
                        verdict = Verdict(
                            record["source_word"],
                            record["synset"],
                            record["method"],
                            record["diagnostic"],
                            record["annotator"],
                            float(record["timestamp"]),
                        )
                    except (KeyError, TypeError, ValueError) as exc:
                        raise DataError(
                            f"{self._path.name}:{lineno}: malformed verdict"
                        ) from exc
                    self._verdicts[self._key(verdict)] = verdict

    @staticmethod
    def _key(verdict: Verdict) -> tuple[str, str, str, str]:
        return (
            verdict.source_word,
            verdict.synset,
            verdict.method,
            verdict.annotator,
        )

    def __len__(self) -> int:
        return len(self._verdicts)

    def record(self, verdict: Verdict) -> int:
        with self._lock:
            self._verdicts[self._key(verdict)] = verdict
            if self._path is not None:
                with open(self._path, "a", encoding="utf-8") as handle:
                    handle.write(json.dumps(verdict.__dict__, ensure_ascii=False))
                    handle.write("\n")
            return len(self._verdicts)

    def all(self) -> tuple[Verdict, ...]:
        return tuple(self._verdicts[k] for k in sorted(self._verdicts))

    def for_method(self, method: str) -> tuple[Verdict, ...]:
        return tuple(v for v in self.all() if v.method == method)

    def for_link(
        self, source_word: str, synset: str, method: str | None = None
    ) -> tuple[Verdict, ...]:
        return tuple(
            v
            for v in self.all()
            if v.source_word == source_word
            and v.synset == synset
            and (method is None or v.method == method)
        )


def record_verdict(
    store: VerdictStore,
    sample: Sample,
    source_word: str,
    synset: str,
    diagnostic: str,
    annotator: str,
    timestamp: float | None = None,
) -> int:
    """Persist one judgement; re-judging by the same annotator replaces."""
    if (source_word, synset) not in sample:
        raise DataError(f"link ({source_word}, {synset}) not in sample {sample.id}")
    verdict = Verdict(
        source_word,
        synset,
        sample.method,
        diagnostic,
        annotator,
        time.time() if timestamp is None else timestamp,
    )
    return store.record(verdict)


def compute_diagnostic_ratios(
    sample: Sample, store: VerdictStore
) -> tuple[MethodCS, int]:
    """Proportions over the judged links of a sample, plus pending count.

    Every (link, annotator) pair contributes one verdict; links no one has
    judged yet are excluded and reported as pending.
    """
    judged = [
        v.diagnostic
        for v in store.for_method(sample.method)
        if (v.source_word, v.synset) in sample
    ]
    if not judged:
        raise DataError(f"sample {sample.id}: no verdicts recorded")
    judged_keys = {
        (v.source_word, v.synset)
        for v in store.for_method(sample.method)
        if (v.source_word, v.synset) in sample
    }
    pending = sum(1 for link in sample.links if link.key not in judged_keys)
    return compute_method_cs(sample.method, judged), pending


def auto_diagnose(
    link: LinkCandidate | tuple[str, str],
    gold: Mapping[str, str],
    tax: Taxonomy,
) -> str:
    """Mechanical diagnostic against a gold word-to-synset map.

    Exact match is ok; an ancestor of the gold synset is hyper, a
    descendant hypo, anything else ko. `near` needs human judgement and is
    never produced here.
    """
    word, synset = link.key if isinstance(link, LinkCandidate) else link
    if word not in gold:
        raise DataError(f"no gold synset for {word!r}")
    target = gold[word]
    if synset == target:
        return "ok"
    if synset in tax.ancestors(target):
        return "hyper"
    if target in tax.ancestors(synset):
        return "hypo"
    return "ko"


def sample_to_json(sample: Sample, path: str | Path) -> None:
    payload = {
        "id": sample.id,
        "method": sample.method,
        "fraction": sample.fraction,
        "seed": sample.seed,
        "links": [
            {
                "source_word": link.source_word,
                "synset": link.synset,
                "score": link.score,
                "evidence": sorted(link.evidence),
            }
            for link in sample.links
        ],
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, ensure_ascii=False, indent=2, sort_keys=True)
        handle.write("\n")


def sample_from_json(path: str | Path) -> Sample:
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    links = tuple(
        LinkCandidate(
            entry["source_word"],
            entry["synset"],
            payload["method"],
            entry.get("score"),
            frozenset(entry.get("evidence", ())),
        )
        for entry in payload["links"]
    )
    return Sample(
        payload["id"], payload["method"], links, payload["fraction"], payload["seed"]
    )


def method_cs_from_store(
    store: VerdictStore, methods: Iterable[str]
) -> dict[str, MethodCS]:
    """Per-method confidence from every recorded verdict, where available."""
    result: dict[str, MethodCS] = {}
    for method in methods:
        verdicts = store.for_method(method)
        if verdicts:
            result[method] = compute_method_cs(
                method, (v.diagnostic for v in verdicts)
            )
    return result
