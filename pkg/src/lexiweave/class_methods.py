"""Class criteria: link source words through individual bilingual entries.

Every translation pair is placed in one of eight cells by the fan-out of
its two words (1:1, 1:N, M:1, M:N) and by whether the English word is
monosemous or polysemous in the taxonomy. Monosemic cells attach the
source word to the English word's unique synset; polysemic cells attach it
to all of them. Two hybrid criteria (variant, field) use synset membership
instead of fan-outs.

Field-tagged pairs are already sense-discriminated by their field gloss,
so they are kept out of the fan-out counts and the eight cells; they feed
only the field criterion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexdata import BilingualLexicon, Taxonomy, TranslationPair
from .links import LinkSet


@dataclass(frozen=True)
class PairShape:
    """Fan-out classification of one translation pair."""

    sw_fanout: int      # translations of the source word
    ew_fanout: int      # back-translations of the English word
    ew_polysemy: int    # synsets of the English word
    shape: int          # 1: 1:1, 2: 1:N, 3: M:1, 4: M:N
    pair_class: str     # mono | poly

    @property
    def method(self) -> str:
        return f"{self.pair_class}{self.shape}"


class ClassFanouts:
    """Fan-out indexes over the plain (non-field) pairs of a lexicon."""

    def __init__(self, hbil: BilingualLexicon):
        self.pairs = tuple(p for p in hbil.pairs if p.field_id is None)
        translations: dict[str, set[str]] = {}
        back: dict[str, set[str]] = {}
        for pair in self.pairs:
            translations.setdefault(pair.source_lemma, set()).add(pair.target_lemma)
            back.setdefault(pair.target_lemma, set()).add(pair.source_lemma)
        self.translations = translations
        self.back_translations = back


def classify_pair(
    hbil: BilingualLexicon,
    tax: Taxonomy,
    pair: TranslationPair,
    fanouts: ClassFanouts | None = None,
) -> PairShape | None:
    """Shape of one pair, or None when the pair is not classifiable.

    Unclassifiable: the English word has no synset, or the pair bears a
    field identifier (routed to the field criterion instead).
    """
    if pair.field_id is not None:
        return None
    synsets = tax.synsets_for(pair.target_lemma)
    if not synsets:
        return None
    fanouts = fanouts or ClassFanouts(hbil)
    n = len(fanouts.translations.get(pair.source_lemma, ()))
    m = len(fanouts.back_translations.get(pair.target_lemma, ()))
    if n == 0 or m == 0:
        return None
    shape = 1 if (n == 1 and m == 1) else 2 if m == 1 else 3 if n == 1 else 4
    pair_class = "mono" if len(synsets) == 1 else "poly"
    return PairShape(n, m, len(synsets), shape, pair_class)


def apply_class_criterion(
    hbil: BilingualLexicon, tax: Taxonomy, pair_class: str, shape: int
) -> LinkSet:
    """Links from every pair falling in the (pair_class, shape) cell."""
    if pair_class not in ("mono", "poly"):
        raise ValueError(f"unknown pair class {pair_class!r}")
    if shape not in (1, 2, 3, 4):
        raise ValueError(f"unknown shape {shape!r}")
    fanouts = ClassFanouts(hbil)
    linkset = LinkSet(f"{pair_class}{shape}")
    for pair in fanouts.pairs:
        ps = classify_pair(hbil, tax, pair, fanouts)
        if ps is None or ps.pair_class != pair_class or ps.shape != shape:
            continue
        for synset in sorted(tax.synsets_for(pair.target_lemma)):
            linkset.add(pair.source_lemma, synset, evidence={pair.target_lemma})
    return linkset


def apply_variant(hbil: BilingualLexicon, tax: Taxonomy) -> LinkSet:
    """Link a source word to a synset when two or more of the synset's
    variants each translate only to that word."""
    fanouts = ClassFanouts(hbil)
    linkset = LinkSet("variant")
    for sid in sorted(tax.synsets):
        synset = tax.synsets[sid]
        if len(synset.variants) < 2:
            continue
        unique_sw: dict[str, list[str]] = {}
        for variant in synset.variants:
            back = fanouts.back_translations.get(variant, set())
            if len(back) == 1:
                (sw,) = back
                unique_sw.setdefault(sw, []).append(variant)
        for sw, variants in sorted(unique_sw.items()):
            if len(variants) >= 2:
                linkset.add(sw, sid, evidence=variants)
    return linkset


def apply_field(hbil: BilingualLexicon, tax: Taxonomy) -> LinkSet:
    """Link a source word to synsets containing both its English translation
    and the entry's field identifier as variants."""
    linkset = LinkSet("field")
    for pair in hbil.pairs:
        if pair.field_id is None:
            continue
        for sid in sorted(tax.synsets_for(pair.target_lemma)):
            if pair.field_id in tax.synsets[sid].variants:
                linkset.add(
                    pair.source_lemma,
                    sid,
                    evidence={pair.target_lemma, pair.field_id},
                )
    return linkset


def run_class_methods(hbil: BilingualLexicon, tax: Taxonomy) -> dict[str, LinkSet]:
    """All ten class criteria, keyed by method tag."""
    results: dict[str, LinkSet] = {}
    for pair_class in ("mono", "poly"):
        for shape in (1, 2, 3, 4):
            ls = apply_class_criterion(hbil, tax, pair_class, shape)
            results[ls.method] = ls
    results["variant"] = apply_variant(hbil, tax)
    results["field"] = apply_field(hbil, tax)
    return results
