"""Structural criteria: disambiguate through the shape of the taxonomy.

For every source word with two or more translations, all translation
subsets of size >= 2 are tried against four graph conditions: the
translations share a synset (intersection), one translation's synset is
the direct parent of synsets of the others (parent), the translations
have synsets under one common parent (brother), or the parent condition
holds at ancestor distance >= 2 (distant). The source word is always
attached on the hyponym side; records subsumed by a larger translation
subset with no new synsets are pruned.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping

from .lexdata import BilingualLexicon, DataError, Taxonomy
from .links import LinkSet

CRITERIA = ("intersection", "parent", "brother", "distant")


@dataclass(frozen=True)
class StructuralRecord:
    source_word: str
    ew_set: frozenset[str]
    synsets: frozenset[str]
    criterion: str

    def __post_init__(self):
        if len(self.ew_set) < 2:
            raise DataError("structural record needs >= 2 English words")
        if not self.synsets:
            raise DataError("structural record with no synsets")
        if self.criterion not in CRITERIA:
            raise DataError(f"unknown structural criterion {self.criterion!r}")


def enumerate_translation_subsets(
    hbil: BilingualLexicon, source_word: str
) -> set[frozenset[str]]:
    """All subsets (size 2..n) of a word's translation set."""
    translations = sorted(set(hbil.translations(source_word)))
    subsets: set[frozenset[str]] = set()
    for size in range(2, len(translations) + 1):
        for combo in combinations(translations, size):
            subsets.add(frozenset(combo))
    return subsets


def apply_structural_criterion(
    hbil: BilingualLexicon, tax: Taxonomy, kind: str
) -> set[StructuralRecord]:
    if kind not in CRITERIA:
        raise ValueError(f"unknown structural criterion {kind!r}")
    records: set[StructuralRecord] = set()
    for source_word in sorted(hbil.source_lemmas):
        for ew_set in enumerate_translation_subsets(hbil, source_word):
            synset_sets = {ew: tax.synsets_for(ew) for ew in ew_set}
            if any(not s for s in synset_sets.values()):
                continue
            for synsets in _match(tax, kind, synset_sets):
                records.add(StructuralRecord(source_word, ew_set, synsets, kind))
    return records


def _match(
    tax: Taxonomy, kind: str, synset_sets: Mapping[str, frozenset[str]]
) -> list[frozenset[str]]:
    if kind == "intersection":
        common = None
        for synsets in synset_sets.values():
            common = synsets if common is None else common & synsets
        return [frozenset(common)] if common else []
    if kind == "brother":
        return _match_brother(tax, synset_sets)
    return _match_ancestor(tax, kind, synset_sets)


def _match_brother(
    tax: Taxonomy, synset_sets: Mapping[str, frozenset[str]]
) -> list[frozenset[str]]:
    # every word needs a synset under the candidate parent; a synset is not
    # its own brother, so at least two distinct children must be chosen
    parents: set[str] = set()
    for synsets in synset_sets.values():
        for sid in synsets:
            parents |= tax.hypernyms(sid)
    results = []
    for parent in sorted(parents):
        children = tax.hyponyms(parent)
        per_word = [synsets & children for synsets in synset_sets.values()]
        if all(per_word):
            chosen = frozenset().union(*per_word)
            if len(chosen) >= 2:
                results.append(chosen)
    return results


def _match_ancestor(
    tax: Taxonomy, kind: str, synset_sets: Mapping[str, frozenset[str]]
) -> list[frozenset[str]]:
    # one word contributes the ancestor synset; every other word must have a
    # synset strictly below it (directly for parent, distance >= 2 for distant)
    results = []
    for anchor_ew in sorted(synset_sets):
        rest = [ew for ew in synset_sets if ew != anchor_ew]
        for top in sorted(synset_sets[anchor_ew]):
            per_word = []
            for ew in rest:
                if kind == "parent":
                    qualifying = {
                        sid
                        for sid in synset_sets[ew]
                        if top in tax.hypernyms(sid)
                    }
                else:
                    qualifying = {
                        sid
                        for sid in synset_sets[ew]
                        if top in tax.ancestors(sid)
                        and top not in tax.hypernyms(sid)
                    }
                per_word.append(qualifying)
            if all(per_word):
                results.append(frozenset().union(*per_word))
    return results


def prune_subsumed(records: Iterable[StructuralRecord]) -> set[StructuralRecord]:
    """Drop records whose translation subset and synsets are covered by a
    strictly larger subset of the same word and criterion."""
    records = set(records)
    by_group: dict[tuple[str, str], list[StructuralRecord]] = {}
    for record in records:
        by_group.setdefault((record.source_word, record.criterion), []).append(record)
    kept: set[StructuralRecord] = set()
    for group in by_group.values():
        for record in group:
            subsumed = any(
                record.ew_set < other.ew_set and record.synsets <= other.synsets
                for other in group
            )
            if not subsumed:
                kept.add(record)
    return kept


def stratify_by_size(
    records: Iterable[StructuralRecord],
    verdicts: Mapping[StructuralRecord, str],
) -> dict[int, dict[str, float]]:
    """Verdict proportions per translation-subset size; sizes with no
    verdicts are omitted."""
    records = set(records)
    counts: dict[int, dict[str, int]] = {}
    for record, diagnostic in verdicts.items():
        if record not in records:
            raise DataError("verdict for a record not in the input")
        size = len(record.ew_set)
        bucket = counts.setdefault(
            size, {"ok": 0, "ko": 0, "hypo": 0, "hyper": 0, "near": 0}
        )
        if diagnostic not in bucket:
            raise DataError(f"unknown diagnostic {diagnostic!r}")
        bucket[diagnostic] += 1
    table: dict[int, dict[str, float]] = {}
    for size in sorted(counts):
        total = sum(counts[size].values())
        table[size] = {k: v / total for k, v in counts[size].items()}
    return table


def records_to_linkset(records: Iterable[StructuralRecord], kind: str) -> LinkSet:
    linkset = LinkSet(kind)
    for record in sorted(records, key=lambda r: (r.source_word, sorted(r.ew_set))):
        if record.criterion != kind:
            raise DataError(
                f"record criterion {record.criterion!r} does not match {kind!r}"
            )
        for synset in sorted(record.synsets):
            linkset.add(record.source_word, synset, evidence=record.ew_set)
    return linkset


def records_to_tsv(records: Iterable[StructuralRecord], path: str | Path) -> None:
    rows = sorted(
        records,
        key=lambda r: (r.source_word, sorted(r.ew_set), sorted(r.synsets), r.criterion),
    )
    with open(path, "w", encoding="utf-8") as handle:
        for record in rows:
            handle.write(
                f"{record.source_word}\t{','.join(sorted(record.ew_set))}\t"
                f"{','.join(sorted(record.synsets))}\t{record.criterion}\n"
            )


def records_from_tsv(path: str | Path) -> set[StructuralRecord]:
    path = Path(path)
    records: set[StructuralRecord] = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 4:
                raise DataError(f"{path.name}:{lineno}: malformed record row")
            word, ews, synsets, criterion = cols
            records.add(
                StructuralRecord(
                    word,
                    frozenset(e for e in ews.split(",") if e),
                    frozenset(s for s in synsets.split(",") if s),
                    criterion,
                )
            )
    return records
