"""Link candidates: source-word-to-synset attachments produced by any method."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .lexdata import DataError

CLASS_METHODS = (
    "mono1", "mono2", "mono3", "mono4",
    "poly1", "poly2", "poly3", "poly4",
    "variant", "field",
)
STRUCTURAL_METHODS = ("intersection", "parent", "brother", "distant")
CD_METHODS = ("cd1", "cd2", "cd3")
ALL_METHODS = CLASS_METHODS + STRUCTURAL_METHODS + CD_METHODS


def is_registered(tag: str) -> bool:
    """A known method tag, or a `a|b` pairing of two known tags."""
    if tag in ALL_METHODS:
        return True
    parts = tag.split("|")
    return len(parts) == 2 and all(p in ALL_METHODS for p in parts)


@dataclass(frozen=True)
class LinkCandidate:
    source_word: str
    synset: str
    method: str
    score: float | None = None
    evidence: frozenset[str] = frozenset()

    @property
    def key(self) -> tuple[str, str]:
        return (self.source_word, self.synset)


class LinkSet:
    """Links for one method, deduplicated on (source_word, synset).

    Re-adding an existing link merges its evidence and keeps the best score,
    so results do not depend on insertion order.
    """

    def __init__(self, method: str, links: Iterable[LinkCandidate] = ()):
        if not is_registered(method):
            raise DataError(f"unregistered method tag {method!r}")
        self.method = method
        self._links: dict[tuple[str, str], LinkCandidate] = {}
        for link in links:
            self.add(link.source_word, link.synset, link.score, link.evidence)

    def add(
        self,
        source_word: str,
        synset: str,
        score: float | None = None,
        evidence: Iterable[str] = (),
    ) -> None:
        key = (source_word, synset)
        prior = self._links.get(key)
        if prior is not None:
            score = prior.score if score is None else (
                score if prior.score is None else max(prior.score, score)
            )
            evidence = prior.evidence | frozenset(evidence)
        self._links[key] = LinkCandidate(
            source_word, synset, self.method, score, frozenset(evidence)
        )

    def __len__(self) -> int:
        return len(self._links)

    def __iter__(self) -> Iterator[LinkCandidate]:
        return iter(self.candidates)

    def __contains__(self, key: tuple[str, str]) -> bool:
        return key in self._links

    def get(self, key: tuple[str, str]) -> LinkCandidate | None:
        return self._links.get(key)

    @property
    def candidates(self) -> tuple[LinkCandidate, ...]:
        return tuple(self._links[key] for key in sorted(self._links))

    def keys(self) -> set[tuple[str, str]]:
        return set(self._links)

    def to_tsv(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            for link in self.candidates:
                score = "" if link.score is None else repr(link.score)
                handle.write(
                    f"{link.source_word}\t{link.synset}\t{link.method}\t"
                    f"{score}\t{','.join(sorted(link.evidence))}\n"
                )


def linkset_from_tsv(path: str | Path, method: str | None = None) -> LinkSet:
    path = Path(path)
    links = []
    seen_method = method
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 5:
                raise DataError(f"{path.name}:{lineno}: malformed link row")
            word, synset, tag, score, evidence = cols
            if seen_method is None:
                seen_method = tag
            elif tag != seen_method:
                raise DataError(
                    f"{path.name}:{lineno}: mixed method tags "
                    f"({tag!r} vs {seen_method!r})"
                )
            links.append(
                LinkCandidate(
                    word,
                    synset,
                    tag,
                    float(score) if score else None,
                    frozenset(e for e in evidence.split(",") if e),
                )
            )
    if seen_method is None:
        raise DataError(f"{path.name}: empty link set and no method given")
    return LinkSet(seen_method, links)
