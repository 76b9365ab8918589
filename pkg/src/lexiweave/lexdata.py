"""Lexical data sources: taxonomy, bilingual lexicons, monolingual dictionary.

Loads the three inputs every linking method consumes, merges the two
bilingual directions into one homogeneous pair set, and reports how much
of the taxonomy is reachable through it.
"""

from __future__ import annotations

import json
import re
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping


class DataError(ValueError):
    """Malformed or inconsistent input data."""


class CycleError(DataError):
    """The hypernym graph is not acyclic."""


_WS_RUN = re.compile(r"\s+")


def normalize_lemma(text: str) -> str:
    """Lowercase and join internal whitespace with underscores.

    Accents are meaningful in the source language and are kept as-is.
    """
    return _WS_RUN.sub("_", text.strip()).lower()


@dataclass(frozen=True)
class Synset:
    """A lexicalized concept: a set of synonymous lemmas plus is-a parents."""

    id: str
    variants: tuple[str, ...]
    hypernyms: frozenset[str] = frozenset()

    def __post_init__(self):
        if not self.variants:
            raise DataError(f"synset {self.id}: no variants")
        if self.id in self.hypernyms:
            raise CycleError(f"cycle at {self.id}")


class Taxonomy:
    """Immutable hypernym DAG over synsets, with depth and lemma indexes.

    Depth of every root is 1 and depth(s) = 1 + min over the parents of s,
    so the per-node specificity weight 1/depth is always defined.
    """

    def __init__(self, synsets: Iterable[Synset]):
        self.synsets: dict[str, Synset] = {}
        for syn in synsets:
            if syn.id in self.synsets:
                raise DataError(f"duplicate synset id {syn.id}")
            self.synsets[syn.id] = syn
        if not self.synsets:
            raise DataError("no synsets")
        for syn in self.synsets.values():
            for hid in syn.hypernyms:
                if hid not in self.synsets:
                    raise DataError(f"synset {syn.id}: dangling hypernym {hid}")
        self.depth: dict[str, int] = compute_depths(
            {sid: syn.hypernyms for sid, syn in self.synsets.items()}
        )
        self.roots: frozenset[str] = frozenset(
            sid for sid, syn in self.synsets.items() if not syn.hypernyms
        )
        children: dict[str, set[str]] = defaultdict(set)
        lemma_index: dict[str, set[str]] = defaultdict(set)
        for sid, syn in self.synsets.items():
            for hid in syn.hypernyms:
                children[hid].add(sid)
            for lemma in syn.variants:
                lemma_index[lemma].add(sid)
        self._children = {sid: frozenset(kids) for sid, kids in children.items()}
        self.lemma_index: dict[str, frozenset[str]] = {
            lemma: frozenset(sids) for lemma, sids in lemma_index.items()
        }

    def __len__(self) -> int:
        return len(self.synsets)

    def __contains__(self, synset_id: str) -> bool:
        return synset_id in self.synsets

    def synsets_for(self, lemma: str) -> frozenset[str]:
        return self.lemma_index.get(lemma, frozenset())

    def hypernyms(self, synset_id: str) -> frozenset[str]:
        return self.synsets[synset_id].hypernyms

    def hyponyms(self, synset_id: str) -> frozenset[str]:
        return self._children.get(synset_id, frozenset())

    def ancestors(self, synset_id: str) -> set[str]:
        """All strict ancestors along hypernym edges."""
        seen: set[str] = set()
        frontier = list(self.synsets[synset_id].hypernyms)
        while frontier:
            node = frontier.pop()
            if node in seen:
                continue
            seen.add(node)
            frontier.extend(self.synsets[node].hypernyms)
        return seen

    def hypernym_chain(self, synset_id: str) -> list[str]:
        """One deterministic path from a synset up to a root, self included."""
        chain = [synset_id]
        current = synset_id
        while self.synsets[current].hypernyms:
            current = min(
                self.synsets[current].hypernyms,
                key=lambda sid: (self.depth[sid], sid),
            )
            chain.append(current)
        return chain

    @property
    def lemmas(self) -> frozenset[str]:
        return frozenset(self.lemma_index)


def compute_depths(hypernyms: Mapping[str, frozenset[str]]) -> dict[str, int]:
    """Per-node depth: roots are 1, otherwise 1 + min over parents.

    Raises CycleError (naming one offending node) if the graph is cyclic.
    """
    pending = {node: len(parents) for node, parents in hypernyms.items()}
    depth: dict[str, int] = {}
    frontier = sorted(node for node, n in pending.items() if n == 0)
    children: dict[str, list[str]] = defaultdict(list)
    for node, parents in hypernyms.items():
        for parent in parents:
            children[parent].append(node)
    while frontier:
        node = frontier.pop()
        depth[node] = (
            1
            if not hypernyms[node]
            else 1 + min(depth[p] for p in hypernyms[node])
        )
        for child in children.get(node, ()):
            pending[child] -= 1
            if pending[child] == 0:
                frontier.append(child)
    if len(depth) != len(hypernyms):
        stuck = min(set(hypernyms) - set(depth))
        raise CycleError(f"cycle at {stuck}")
    return depth


@dataclass(frozen=True)
class TranslationPair:
    """A directed translation, normalized to source-language -> English."""

    source_lemma: str
    target_lemma: str
    field_id: str | None = None
    origin: str = "merged"  # es_en | en_es | merged

    def __post_init__(self):
        if self.origin not in ("es_en", "en_es", "merged"):
            raise DataError(f"unknown origin {self.origin!r}")
        if self.field_id is not None and self.origin == "es_en":
            raise DataError(
                f"field identifier on source->English pair "
                f"({self.source_lemma}, {self.target_lemma})"
            )

    @property
    def key(self) -> tuple[str, str]:
        return (self.source_lemma, self.target_lemma)


class BilingualLexicon:
    """A set of translation pairs with per-direction lookup indexes."""

    def __init__(self, pairs: Iterable[TranslationPair]):
        merged: dict[tuple[str, str], TranslationPair] = {}
        for pair in pairs:
            prior = merged.get(pair.key)
            if prior is None:
                merged[pair.key] = pair
            else:
                merged[pair.key] = _combine_pair(prior, pair)
        self.pairs: tuple[TranslationPair, ...] = tuple(
            merged[key] for key in sorted(merged)
        )
        by_source: dict[str, list[TranslationPair]] = defaultdict(list)
        by_target: dict[str, list[TranslationPair]] = defaultdict(list)
        for pair in self.pairs:
            by_source[pair.source_lemma].append(pair)
            by_target[pair.target_lemma].append(pair)
        self.by_source = {k: tuple(v) for k, v in by_source.items()}
        self.by_target = {k: tuple(v) for k, v in by_target.items()}

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def translations(self, source_lemma: str) -> tuple[str, ...]:
        return tuple(p.target_lemma for p in self.by_source.get(source_lemma, ()))

    def back_translations(self, target_lemma: str) -> tuple[str, ...]:
        return tuple(p.source_lemma for p in self.by_target.get(target_lemma, ()))

    @property
    def source_lemmas(self) -> frozenset[str]:
        return frozenset(self.by_source)

    @property
    def target_lemmas(self) -> frozenset[str]:
        return frozenset(self.by_target)


def _combine_pair(a: TranslationPair, b: TranslationPair) -> TranslationPair:
    field_id = a.field_id if a.field_id is not None else b.field_id
    if a.field_id is not None and b.field_id is not None:
        field_id = min(a.field_id, b.field_id)
    origin = a.origin if a.origin == b.origin else "merged"
    return TranslationPair(a.source_lemma, a.target_lemma, field_id, origin)


@dataclass(frozen=True)
class MonolingualEntry:
    """One dictionary sense: headword, sense number, tokenized definition."""

    headword: str
    sense_no: int
    definition: tuple[str, ...]
    genus: str | None = None

    def __post_init__(self):
        if not self.definition:
            raise DataError(f"{self.headword}/{self.sense_no}: empty definition")
        if self.sense_no < 1:
            raise DataError(f"{self.headword}: sense_no must be positive")
        if self.genus is not None and self.genus not in self.definition:
            raise DataError(
                f"{self.headword}/{self.sense_no}: genus {self.genus!r} "
                f"not a definition token"
            )


class MonolingualDictionary:
    def __init__(self, entries: Iterable[MonolingualEntry]):
        self.entries: tuple[MonolingualEntry, ...] = tuple(entries)
        by_headword: dict[str, list[MonolingualEntry]] = defaultdict(list)
        for entry in self.entries:
            by_headword[entry.headword].append(entry)
        self.by_headword = {k: tuple(v) for k, v in by_headword.items()}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def headwords(self) -> frozenset[str]:
        return frozenset(self.by_headword)

    @property
    def n_definitions(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class CoverageReport:
    """Totals and reachable counts for a lexicon against a taxonomy."""

    english_nouns: int
    source_nouns: int
    synsets: int
    connections: int
    reachable_english: int
    reachable_source: int
    reachable_synsets: int
    ratios: Mapping[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "english_nouns": self.english_nouns,
            "source_nouns": self.source_nouns,
            "synsets": self.synsets,
            "connections": self.connections,
            "reachable_english": self.reachable_english,
            "reachable_source": self.reachable_source,
            "reachable_synsets": self.reachable_synsets,
            "ratios": dict(self.ratios),
        }


def load_taxonomy(path: str | Path, fmt: str = "tsv") -> Taxonomy:
    """Load a taxonomy from a TSV file or a Princeton-style noun database.

    TSV rows: ``synset_id <TAB> variant1|variant2 <TAB> hyp1,hyp2`` with an
    empty third column for roots.
    """
    path = Path(path)
    if fmt == "tsv":
        return Taxonomy(_parse_taxonomy_tsv(path))
    if fmt == "wndb":
        return Taxonomy(_parse_wndb(path))
    raise DataError(f"unknown taxonomy format {fmt!r}")


def _parse_taxonomy_tsv(path: Path) -> list[Synset]:
    synsets = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) < 2 or len(cols) > 3 or not cols[0].strip():
                raise DataError(f"{path.name}:{lineno}: malformed line")
            variants = tuple(
                dict.fromkeys(
                    normalize_lemma(v) for v in cols[1].split("|") if v.strip()
                )
            )
            if not variants:
                raise DataError(f"{path.name}:{lineno}: no variants")
            hypernyms = frozenset(
                h.strip()
                for h in (cols[2].split(",") if len(cols) == 3 else [])
                if h.strip()
            )
            synsets.append(Synset(cols[0].strip(), variants, hypernyms))
    return synsets


def _parse_wndb(path: Path) -> list[Synset]:
    """Parse a Princeton-style data.noun file, keeping only `@` pointers."""
    path = Path(path)
    if path.is_dir():
        path = path / "data.noun"
    synsets = []
    with open(path, encoding="latin-1") as handle:
        for lineno, raw in enumerate(handle, 1):
            if not raw.strip() or raw.startswith(" "):
                continue  # license header lines are indented
            tokens = raw.split("|")[0].split()
            try:
                offset = tokens[0]
                w_cnt = int(tokens[3], 16)
                words = tuple(
                    dict.fromkeys(
                        normalize_lemma(tokens[4 + 2 * i]) for i in range(w_cnt)
                    )
                )
                p_base = 4 + 2 * w_cnt
                p_cnt = int(tokens[p_base])
                hypernyms = set()
                for i in range(p_cnt):
                    symbol = tokens[p_base + 1 + 4 * i]
                    target = tokens[p_base + 2 + 4 * i]
                    pos = tokens[p_base + 3 + 4 * i]
                    if symbol == "@" and pos == "n":
                        hypernyms.add(target)
            except (IndexError, ValueError) as exc:
                raise DataError(f"{path.name}:{lineno}: malformed line") from exc
            synsets.append(Synset(offset, words, frozenset(hypernyms)))
    return synsets


def load_bilingual(path: str | Path, origin: str) -> BilingualLexicon:
    """Load one direction of a bilingual dictionary.

    ``es_en`` rows are ``source <TAB> english``; ``en_es`` rows are
    ``english <TAB> source [<TAB> field]`` and are flipped so every pair is
    stored source->English. Field identifiers are only legal on en_es rows.
    """
    path = Path(path)
    if origin not in ("es_en", "en_es"):
        raise DataError(f"unknown bilingual origin {origin!r}")
    pairs = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) < 2 or len(cols) > 3 or not cols[0].strip() or not cols[1].strip():
                raise DataError(f"{path.name}:{lineno}: malformed line")
            field_id = normalize_lemma(cols[2]) if len(cols) == 3 and cols[2].strip() else None
            if origin == "es_en":
                if field_id is not None:
                    raise DataError(
                        f"{path.name}:{lineno}: field identifier on es_en line"
                    )
                source, target = cols[0], cols[1]
            else:
                target, source = cols[0], cols[1]
            pairs.append(
                TranslationPair(
                    normalize_lemma(source), normalize_lemma(target), field_id, origin
                )
            )
    return BilingualLexicon(pairs)


def merge_bilinguals(ab: BilingualLexicon, ba: BilingualLexicon) -> BilingualLexicon:
    """Union both directions under (source, target) identity, keeping fields."""
    for pair in ab:
        if pair.origin not in ("es_en", "merged"):
            raise DataError("first lexicon must have es_en origin")
    for pair in ba:
        if pair.origin not in ("en_es", "merged"):
            raise DataError("second lexicon must have en_es origin")
    return BilingualLexicon(list(ab) + list(ba))


def load_monolingual(path: str | Path) -> MonolingualDictionary:
    """Load a JSON Lines monolingual dictionary.

    Keys: ``headword``, ``sense_no``, ``definition``, optional ``genus``.
    """
    path = Path(path)
    entries = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            if not raw.strip():
                continue
            try:
                record = json.loads(raw)
                headword = normalize_lemma(record["headword"])
                sense_no = int(record["sense_no"])
                definition = tuple(
                    token.lower() for token in str(record["definition"]).split()
                )
                genus = record.get("genus")
            except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
                raise DataError(f"{path.name}:{lineno}: malformed record") from exc
            try:
                entries.append(
                    MonolingualEntry(
                        headword,
                        sense_no,
                        definition,
                        normalize_lemma(genus) if genus is not None else None,
                    )
                )
            except DataError as exc:
                raise DataError(f"{path.name}:{lineno}: {exc}") from exc
    return MonolingualDictionary(entries)


def coverage_stats(hbil: BilingualLexicon, tax: Taxonomy) -> CoverageReport:
    """How much of the taxonomy the merged lexicon can reach at best."""
    reachable_english = {lemma for lemma in hbil.target_lemmas if lemma in tax.lemma_index}
    reachable_synsets: set[str] = set()
    for lemma in reachable_english:
        reachable_synsets |= tax.lemma_index[lemma]
    reachable_source = {
        sw
        for sw in hbil.source_lemmas
        if any(ew in reachable_english for ew in hbil.translations(sw))
    }
    totals = {
        "english": len(tax.lemmas),
        "source": len(hbil.source_lemmas),
        "synsets": len(tax),
    }
    reached = {
        "english": len(reachable_english),
        "source": len(reachable_source),
        "synsets": len(reachable_synsets),
    }
    ratios = {
        key: reached[key] / totals[key] for key in totals if totals[key] > 0
    }
    return CoverageReport(
        english_nouns=totals["english"],
        source_nouns=totals["source"],
        synsets=totals["synsets"],
        connections=len(hbil),
        reachable_english=reached["english"],
        reachable_source=reached["source"],
        reachable_synsets=reached["synsets"],
        ratios=ratios,
    )
