"""Assemble wordnet versions from per-method link sets.

High-confidence methods form the base wordnet directly. The rest are
crossed pairwise; an intersection cell whose validated confidence clears
the threshold contributes its links to the next version.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .lexdata import DataError
from .links import LinkSet

DIAGNOSTICS = ("ok", "ko", "hypo", "hyper", "near")


@dataclass(frozen=True)
class MethodCS:
    """Validated diagnostic proportions for one method (or cell)."""

    method: str
    ratios: Mapping[str, float]
    sample_size: int

    def __post_init__(self):
        total = sum(self.ratios.get(d, 0.0) for d in DIAGNOSTICS)
        if self.sample_size > 0 and abs(total - 1.0) > 1e-9:
            raise DataError(f"{self.method}: ratios sum to {total}, not 1")

    def cs(self, measure: str = "ok") -> float:
        if measure == "ok":
            return self.ratios.get("ok", 0.0)
        if measure == "ok_plus_near":
            return self.ratios.get("ok", 0.0) + self.ratios.get("near", 0.0)
        raise DataError(f"unknown confidence measure {measure!r}")


def compute_method_cs(method: str, diagnostics: Iterable[str]) -> MethodCS:
    """Exact diagnostic proportions over a judged sample."""
    counts = {d: 0 for d in DIAGNOSTICS}
    total = 0
    for diagnostic in diagnostics:
        if diagnostic not in counts:
            raise DataError(f"unknown diagnostic {diagnostic!r}")
        counts[diagnostic] += 1
        total += 1
    if total == 0:
        raise DataError(f"{method}: empty sample")
    return MethodCS(method, {d: counts[d] / total for d in DIAGNOSTICS}, total)


@dataclass
class IntersectionCell:
    """Links produced by both of two methods."""

    method_a: str
    method_b: str
    links: LinkSet
    cs: float | None = None
    accepted: bool = False

    @property
    def tag(self) -> str:
        return cell_tag(self.method_a, self.method_b)


def cell_tag(method_a: str, method_b: str) -> str:
    return "|".join(sorted((method_a, method_b)))


def intersect_linksets(a: LinkSet, b: LinkSet) -> IntersectionCell:
    if a.method == b.method:
        raise DataError(f"cannot intersect {a.method} with itself")
    tag = cell_tag(a.method, b.method)
    common = LinkSet(tag)
    for key in sorted(a.keys() & b.keys()):
        word, synset = key
        evidence = a.get(key).evidence | b.get(key).evidence
        common.add(word, synset, None, evidence)
    return IntersectionCell(a.method, b.method, common)


@dataclass(frozen=True)
class WordnetLink:
    source_word: str
    synset: str
    cs: float | None
    provenance: frozenset[str]

    @property
    def key(self) -> tuple[str, str]:
        return (self.source_word, self.synset)


@dataclass(frozen=True)
class WordnetStats:
    links: int
    synsets: int
    words: int
    cs: float | None
    poly_links: int

    def as_dict(self) -> dict:
        return {
            "links": self.links,
            "synsets": self.synsets,
            "words": self.words,
            "cs": self.cs,
            "poly_links": self.poly_links,
        }


class Wordnet:
    """A versioned, deduplicated link collection with provenance."""

    def __init__(self, version: str):
        self.version = version
        self._links: dict[tuple[str, str], WordnetLink] = {}

    def add(
        self,
        source_word: str,
        synset: str,
        cs: float | None,
        provenance: Iterable[str],
    ) -> None:
        key = (source_word, synset)
        prior = self._links.get(key)
        if prior is not None:
            cs = prior.cs if cs is None else (
                cs if prior.cs is None else max(prior.cs, cs)
            )
            provenance = prior.provenance | frozenset(provenance)
        self._links[key] = WordnetLink(source_word, synset, cs, frozenset(provenance))

    def __len__(self) -> int:
        return len(self._links)

    def __contains__(self, key: tuple[str, str]) -> bool:
        return key in self._links

    def __iter__(self):
        return iter(self.links)

    def get(self, key: tuple[str, str]) -> WordnetLink | None:
        return self._links.get(key)

    @property
    def links(self) -> tuple[WordnetLink, ...]:
        return tuple(self._links[key] for key in sorted(self._links))

    def keys(self) -> set[tuple[str, str]]:
        return set(self._links)

    @property
    def stats(self) -> WordnetStats:
        return wordnet_stats(self)


def build_base_wordnet(
    linksets: Mapping[str, LinkSet],
    accepted_methods: Sequence[str],
    method_cs: Mapping[str, MethodCS] | None = None,
    version: str = "v0.0",
) -> Wordnet:
    """Union of the accepted methods' links; a link's confidence is the best
    %ok among the methods that produced it."""
    method_cs = method_cs or {}
    wordnet = Wordnet(version)
    for method in accepted_methods:
        if method not in linksets:
            raise DataError(f"unknown method tag {method!r}")
        cs = method_cs[method].ratios.get("ok") if method in method_cs else None
        for link in linksets[method]:
            wordnet.add(link.source_word, link.synset, cs, {method})
    return wordnet


def select_accepted_cells(
    cells: Iterable[IntersectionCell],
    cell_cs: Mapping[str, float],
    threshold: float,
) -> Wordnet:
    """Mark cells at or above the threshold accepted and pool their links."""
    if not 0.0 <= threshold <= 1.0:
        raise DataError(f"threshold {threshold} outside [0, 1]")
    combined = Wordnet("combination")
    for cell in cells:
        cs = cell_cs.get(cell.tag)
        cell.cs = cs
        cell.accepted = cs is not None and cs >= threshold
        if not cell.accepted:
            continue
        for link in cell.links:
            combined.add(link.source_word, link.synset, cs, {cell.tag})
    return combined


@dataclass(frozen=True)
class AssembleReport:
    new_links: int
    increase_pct: float


def assemble_wordnet(
    base: Wordnet, accepted: Wordnet, version: str = "v0.1"
) -> tuple[Wordnet, AssembleReport]:
    """Merge accepted combination links into the base wordnet."""
    merged = Wordnet(version)
    for link in base.links:
        merged.add(link.source_word, link.synset, link.cs, link.provenance)
    new_links = 0
    for link in accepted.links:
        if link.key not in merged:
            new_links += 1
        merged.add(link.source_word, link.synset, link.cs, link.provenance)
    increase = 100.0 * new_links / len(base) if len(base) else 0.0
    return merged, AssembleReport(new_links, increase)


def wordnet_stats(wordnet: Wordnet) -> WordnetStats:
    links = wordnet.links
    by_word: dict[str, int] = {}
    for link in links:
        by_word[link.source_word] = by_word.get(link.source_word, 0) + 1
    poly_links = sum(1 for link in links if by_word[link.source_word] > 1)
    scored = [link.cs for link in links if link.cs is not None]
    return WordnetStats(
        links=len(links),
        synsets=len({link.synset for link in links}),
        words=len(by_word),
        cs=sum(scored) / len(scored) if scored else None,
        poly_links=poly_links,
    )


def wordnet_to_tsv(wordnet: Wordnet, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for link in wordnet.links:
            cs = "" if link.cs is None else repr(link.cs)
            handle.write(
                f"{link.source_word}\t{link.synset}\t{cs}\t"
                f"{';'.join(sorted(link.provenance))}\n"
            )


def wordnet_from_tsv(path: str | Path, version: str) -> Wordnet:
    path = Path(path)
    wordnet = Wordnet(version)
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 4:
                raise DataError(f"{path.name}:{lineno}: malformed wordnet row")
            word, synset, cs, provenance = cols
            wordnet.add(
                word,
                synset,
                float(cs) if cs else None,
                (p for p in provenance.split(";") if p),
            )
    return wordnet


def stats_to_json(wordnet: Wordnet, path: str | Path) -> None:
    payload = {"version": wordnet.version, **wordnet.stats.as_dict()}
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(payload, handle, ensure_ascii=False, indent=2, sort_keys=True)
        handle.write("\n")
