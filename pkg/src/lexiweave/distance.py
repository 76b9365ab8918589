"""Depth-weighted conceptual distance and the three CD linking methods.

The distance between two words is the cheapest path between any synset of
one and any synset of the other, where a path may walk hypernym edges in
both directions and costs the sum of 1/depth over its nodes, endpoints
included. Deep (specific) nodes are cheap to cross, shallow (general)
ones expensive. Costs are computed in exact rational arithmetic so that
ties break the same way on every run.

CD1 measures proximity for words co-occurring in dictionary definitions,
CD2 for headword/genus pairs, CD3 for the multiple translations of one
source word.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

from .lexdata import (
    BilingualLexicon,
    DataError,
    MonolingualDictionary,
    Taxonomy,
    compute_depths,
)
from .links import LinkSet

__all__ = [
    "ConceptPath",
    "DistanceResult",
    "CoocPair",
    "compute_depths",
    "conceptual_distance",
    "shortest_weighted_path",
    "extract_cooccurrences",
    "association_ratio",
    "run_cd_method",
]


@dataclass(frozen=True)
class ConceptPath:
    """A concrete path through the taxonomy and its summed node cost."""

    nodes: tuple[str, ...]
    cost: float


@dataclass(frozen=True)
class DistanceResult:
    """Minimum distance plus the winning synset per input word.

    ``chosen`` is None when the words live in disconnected components
    (distance is +inf).
    """

    distance: float
    chosen: tuple[str, ...] | None


def _neighbors(tax: Taxonomy) -> dict[str, tuple[str, ...]]:
    return {
        sid: tuple(sorted(tax.hypernyms(sid) | tax.hyponyms(sid)))
        for sid in tax.synsets
    }


def _search(
    tax: Taxonomy, sources: Iterable[str], targets: Iterable[str]
) -> tuple[Fraction, str, str, dict[str, str | None]] | None:
    """Multi-source node-weighted Dijkstra.

    Returns (cost, origin, target, predecessor map) for the cheapest
    source-to-target path, or None when no target is reachable.
    """
    weight = {sid: Fraction(1, d) for sid, d in tax.depth.items()}
    neighbors = _neighbors(tax)
    dist: dict[str, Fraction] = {}
    origin: dict[str, str] = {}
    prev: dict[str, str | None] = {}
    heap: list[tuple[Fraction, str]] = []
    for s in sorted(set(sources)):
        dist[s] = weight[s]
        origin[s] = s
        prev[s] = None
        heapq.heappush(heap, (dist[s], s))
    settled: set[str] = set()
    target_set = set(targets)
    while heap:
        cost, node = heapq.heappop(heap)
        if node in settled or cost > dist[node]:
            continue
        settled.add(node)
        for neigh in neighbors[node]:
            if neigh in settled:
                continue
            cand = cost + weight[neigh]
            if neigh not in dist or cand < dist[neigh]:
                dist[neigh] = cand
                origin[neigh] = origin[node]
                prev[neigh] = node
                heapq.heappush(heap, (cand, neigh))
    best = None
    for t in sorted(target_set):
        if t in dist and (best is None or dist[t] < dist[best]):
            best = t
    if best is None:
        return None
    return dist[best], origin[best], best, prev


def shortest_weighted_path(
    tax: Taxonomy, sources: Iterable[str], targets: Iterable[str]
) -> ConceptPath | None:
    found = _search(tax, sources, targets)
    if found is None:
        return None
    cost, _, target, prev = found
    nodes = [target]
    while prev[nodes[-1]] is not None:
        nodes.append(prev[nodes[-1]])
    return ConceptPath(tuple(reversed(nodes)), float(cost))


def _validate_sets(word_synsets: Sequence[Iterable[str]], tax: Taxonomy) -> list[list[str]]:
    if len(word_synsets) < 2:
        raise DataError("conceptual distance needs at least two words")
    validated = []
    for synsets in word_synsets:
        ids = sorted(set(synsets))
        if not ids:
            raise DataError("empty synset set")
        for sid in ids:
            if sid not in tax:
                raise DataError(f"unknown synset {sid}")
        validated.append(ids)
    return validated


def _pair_distance(tax: Taxonomy, a: str, b: str, cache: dict) -> Fraction | None:
    key = (a, b) if a <= b else (b, a)
    if key not in cache:
        found = _search(tax, [key[0]], [key[1]])
        cache[key] = None if found is None else found[0]
    return cache[key]


def conceptual_distance(
    word_synsets: Sequence[Iterable[str]], tax: Taxonomy
) -> DistanceResult:
    """Cheapest joint interpretation of two or more words.

    Two words: minimum path cost between their synset sets. More words:
    one synset per word minimizing the summed pairwise distances,
    exhaustively for up to four words and by coordinate descent beyond.
    """
    sets = _validate_sets(word_synsets, tax)
    if len(sets) == 2:
        found = _search(tax, sets[0], sets[1])
        if found is None:
            return DistanceResult(math.inf, None)
        cost, origin, target, _ = found
        return DistanceResult(float(cost), (origin, target))
    cache: dict = {}
    if len(sets) <= 4:
        best_total: Fraction | None = None
        best_choice: tuple[str, ...] | None = None
        for choice in product(*sets):
            total = _total_pairwise(tax, choice, cache)
            if total is not None and (best_total is None or total < best_total):
                best_total, best_choice = total, choice
        if best_choice is None:
            return DistanceResult(math.inf, None)
        return DistanceResult(float(best_total), best_choice)
    return _greedy_choice(tax, sets, cache)


def _total_pairwise(tax, choice, cache) -> Fraction | None:
    total = Fraction(0)
    for a, b in combinations(choice, 2):
        d = _pair_distance(tax, a, b, cache)
        if d is None:
            return None
        total += d
    return total


def _greedy_choice(tax, sets, cache) -> DistanceResult:
    choice = [ids[0] for ids in sets]
    for _ in range(len(sets) * 4):
        changed = False
        for i, ids in enumerate(sets):
            def partial(candidate: str) -> Fraction | None:
                total = Fraction(0)
                for j, other in enumerate(choice):
                    if j == i:
                        continue
                    d = _pair_distance(tax, candidate, other, cache)
                    if d is None:
                        return None
                    total += d
                return total

            scored = [(partial(c), c) for c in ids]
            scored = [(s, c) for s, c in scored if s is not None]
            if not scored:
                return DistanceResult(math.inf, None)
            _, winner = min(scored, key=lambda sc: (sc[0], sc[1]))
            if winner != choice[i]:
                choice[i] = winner
                changed = True
        if not changed:
            break
    total = _total_pairwise(tax, tuple(choice), cache)
    if total is None:
        return DistanceResult(math.inf, None)
    return DistanceResult(float(total), tuple(choice))


@dataclass(frozen=True)
class CoocPair:
    """Definition-level co-occurrence counts for two headwords."""

    word_a: str
    word_b: str
    count_ab: int
    count_a: int
    count_b: int
    n_defs: int
    ar: float | None = None

    def __post_init__(self):
        if self.count_ab > min(self.count_a, self.count_b):
            raise DataError(
                f"({self.word_a}, {self.word_b}): joint count exceeds marginals"
            )
        if self.n_defs < 1:
            raise DataError("n_defs must be positive")


def association_ratio(pair: CoocPair) -> float:
    """log2 of observed joint frequency over the independence expectation."""
    if min(pair.count_ab, pair.count_a, pair.count_b) <= 0:
        raise DataError(
            f"({pair.word_a}, {pair.word_b}): association ratio needs "
            f"positive counts"
        )
    n = pair.n_defs
    return math.log2(
        (pair.count_ab / n) / ((pair.count_a / n) * (pair.count_b / n))
    )


def extract_cooccurrences(mono: MonolingualDictionary) -> tuple[CoocPair, ...]:
    """Unordered headword pairs sharing a definition, with their counts.

    Only definition tokens that are themselves headwords count; each
    definition contributes at most once per pair.
    """
    headwords = mono.headwords
    word_defs: dict[str, int] = {}
    pair_defs: dict[tuple[str, str], int] = {}
    for entry in mono.entries:
        present = sorted({t for t in entry.definition if t in headwords})
        for word in present:
            word_defs[word] = word_defs.get(word, 0) + 1
        for a, b in combinations(present, 2):
            pair_defs[(a, b)] = pair_defs.get((a, b), 0) + 1
    pairs = []
    for (a, b), count_ab in sorted(pair_defs.items()):
        pair = CoocPair(a, b, count_ab, word_defs[a], word_defs[b], mono.n_definitions)
        pairs.append(replace(pair, ar=association_ratio(pair)))
    return tuple(pairs)


def cooccurrences_to_tsv(pairs: Iterable[CoocPair], path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for p in pairs:
            ar = "" if p.ar is None else repr(p.ar)
            handle.write(
                f"{p.word_a}\t{p.word_b}\t{p.count_ab}\t{p.count_a}\t"
                f"{p.count_b}\t{p.n_defs}\t{ar}\n"
            )


def _word_synsets(hbil: BilingualLexicon, tax: Taxonomy, lemma: str) -> frozenset[str]:
    synsets: set[str] = set()
    for ew in hbil.translations(lemma):
        synsets |= tax.synsets_for(ew)
    return frozenset(synsets)


def _evidence_for(hbil, tax, lemma: str, synset: str) -> set[str]:
    return {
        ew for ew in hbil.translations(lemma) if synset in tax.synsets_for(ew)
    }


def run_cd_method(
    kind: str,
    hbil: BilingualLexicon,
    tax: Taxonomy,
    mono: MonolingualDictionary | None = None,
    cooc: Iterable[CoocPair] | None = None,
) -> LinkSet:
    """One of the three conceptual-distance linking methods."""
    if kind == "cd1":
        if cooc is None:
            if mono is None:
                raise DataError("cd1 needs a monolingual dictionary or pairs")
            cooc = extract_cooccurrences(mono)
        return _run_cd1(hbil, tax, cooc)
    if kind == "cd2":
        if mono is None:
            raise DataError("cd2 needs a monolingual dictionary")
        return _run_cd2(hbil, tax, mono)
    if kind == "cd3":
        return _run_cd3(hbil, tax)
    raise ValueError(f"unknown conceptual distance method {kind!r}")


def _run_cd1(hbil, tax, cooc: Iterable[CoocPair]) -> LinkSet:
    scored: dict[tuple[str, str], float] = {}
    for pair in sorted(cooc, key=lambda p: (p.word_a, p.word_b)):
        sets = [_word_synsets(hbil, tax, w) for w in (pair.word_a, pair.word_b)]
        if not all(sets):
            continue
        result = conceptual_distance(sets, tax)
        if result.chosen is None:
            continue
        ar = pair.ar if pair.ar is not None else association_ratio(pair)
        for word, synset in zip((pair.word_a, pair.word_b), result.chosen):
            key = (word, synset)
            scored[key] = max(scored.get(key, -math.inf), ar)
    linkset = LinkSet("cd1")
    if not scored:
        return linkset
    # dense rank of the association ratios, best pair scoring 1.0
    distinct = sorted(set(scored.values()))
    rank = {ar: (i + 1) / len(distinct) for i, ar in enumerate(distinct)}
    for (word, synset), ar in sorted(scored.items()):
        linkset.add(word, synset, rank[ar], _evidence_for(hbil, tax, word, synset))
    return linkset


def _run_cd2(hbil, tax, mono: MonolingualDictionary) -> LinkSet:
    linkset = LinkSet("cd2")
    for entry in mono.entries:
        if entry.genus is None:
            continue
        sets = [
            _word_synsets(hbil, tax, entry.headword),
            _word_synsets(hbil, tax, entry.genus),
        ]
        if not all(sets):
            continue
        result = conceptual_distance(sets, tax)
        if result.chosen is None:
            continue
        for word, synset in zip((entry.headword, entry.genus), result.chosen):
            linkset.add(word, synset, None, _evidence_for(hbil, tax, word, synset))
    return linkset


def _run_cd3(hbil, tax) -> LinkSet:
    linkset = LinkSet("cd3")
    for source_word in sorted(hbil.source_lemmas):
        translations = sorted(set(hbil.translations(source_word)))
        if len(translations) < 2:
            continue
        ews = [ew for ew in translations if tax.synsets_for(ew)]
        sets = [tax.synsets_for(ew) for ew in ews]
        if len(sets) < 2:
            continue
        result = conceptual_distance(sets, tax)
        if result.chosen is None:
            continue
        for ew, synset in zip(ews, result.chosen):
            linkset.add(source_word, synset, None, {ew})
    return linkset
