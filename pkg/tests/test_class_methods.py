import random

import pytest

from lexiweave.class_methods import (
    apply_class_criterion,
    apply_field,
    apply_variant,
    classify_pair,
    run_class_methods,
)
from lexiweave.lexdata import BilingualLexicon, Synset, Taxonomy, TranslationPair

from oracles import class_links_oracle_all, classify_oracle, random_lexicon, random_taxonomy


def pair_of(hbil, sw, ew):
    (pair,) = [p for p in hbil.pairs if p.key == (sw, ew)]
    return pair


def keys(linkset):
    return {link.key for link in linkset}


class TestClassify:
    def test_one_to_one_monosemous(self, core_hbil, tax):
        shape = classify_pair(core_hbil, tax, pair_of(core_hbil, "vaca", "cow"))
        assert (shape.shape, shape.pair_class) == (1, "mono")
        assert (shape.sw_fanout, shape.ew_fanout, shape.ew_polysemy) == (1, 1, 1)

    def test_one_to_many_polysemous(self, core_hbil, tax):
        shape = classify_pair(core_hbil, tax, pair_of(core_hbil, "perro", "hound"))
        assert (shape.shape, shape.pair_class) == (2, "poly")
        assert (shape.sw_fanout, shape.ew_fanout) == (2, 1)
        assert shape.ew_polysemy == 2  # hound sits in two synsets

    def test_many_to_one_monosemous(self, core_hbil, tax):
        shape = classify_pair(core_hbil, tax, pair_of(core_hbil, "gato", "cat"))
        assert (shape.shape, shape.pair_class) == (3, "mono")
        assert shape.ew_fanout == 2  # cat back-translates to gato and minino

    def test_extended_lexicon_widens_fanout(self, extended_hbil, tax):
        # with bicho in the lexicon, cat back-translates three ways
        shape = classify_pair(extended_hbil, tax, pair_of(extended_hbil, "gato", "cat"))
        assert (shape.shape, shape.pair_class) == (3, "mono")
        assert shape.ew_fanout == 3

    def test_field_pair_unclassifiable(self, core_hbil, tax):
        assert classify_pair(core_hbil, tax, pair_of(core_hbil, "ribazo", "bank")) is None

    def test_unknown_english_word_unclassifiable(self, core_hbil, tax):
        pair = TranslationPair("raro", "mutt", None, "es_en")
        hbil = BilingualLexicon(list(core_hbil.pairs) + [pair])
        assert classify_pair(hbil, tax, pair) is None

    def test_method_tag(self, core_hbil, tax):
        shape = classify_pair(core_hbil, tax, pair_of(core_hbil, "vaca", "cow"))
        assert shape.method == "mono1"


class TestCells:
    def test_mono1(self, core_hbil, tax):
        links = apply_class_criterion(core_hbil, tax, "mono", 1)
        assert keys(links) == {("vaca", "210"), ("declive", "800")}

    def test_mono2(self, core_hbil, tax):
        links = apply_class_criterion(core_hbil, tax, "mono", 2)
        assert keys(links) == {("perro", "400"), ("felino", "310"), ("banco", "610")}
        felino = links.get(("felino", "310"))
        assert felino.evidence == {"feline", "felid"}

    def test_mono3(self, core_hbil, tax):
        links = apply_class_criterion(core_hbil, tax, "mono", 3)
        assert keys(links) == {("gato", "300"), ("minino", "300")}

    def test_mono4_core_empty_extended_full(self, core_hbil, extended_hbil, tax):
        assert len(apply_class_criterion(core_hbil, tax, "mono", 4)) == 0
        links = apply_class_criterion(extended_hbil, tax, "mono", 4)
        assert keys(links) == {
            ("bicho", "300"), ("bicho", "400"),
            ("canino", "200"), ("chucho", "200"), ("chucho", "400"),
            ("perro", "400"),
        }

    def test_poly1(self, core_hbil, tax):
        links = apply_class_criterion(core_hbil, tax, "poly", 1)
        assert keys(links) == {("formación", "900"), ("formación", "910")}

    def test_poly2(self, core_hbil, tax):
        links = apply_class_criterion(core_hbil, tax, "poly", 2)
        assert keys(links) == {
            ("perro", "400"), ("perro", "450"),
            ("banco", "700"), ("banco", "800"),
        }

    def test_invalid_cell_arguments(self, core_hbil, tax):
        with pytest.raises(ValueError):
            apply_class_criterion(core_hbil, tax, "hybrid", 1)
        with pytest.raises(ValueError):
            apply_class_criterion(core_hbil, tax, "mono", 5)


class TestVariant:
    def test_core_lexicon(self, core_hbil, tax):
        # dog and hound both back-translate only to perro here, so the
        # criterion fires for synset 400 as well as for 310
        assert keys(apply_variant(core_hbil, tax)) == {
            ("felino", "310"), ("perro", "400"),
        }

    def test_extended_lexicon(self, extended_hbil, tax):
        assert keys(apply_variant(extended_hbil, tax)) == {("felino", "310")}

    def test_needs_two_variants(self, tax):
        hbil = BilingualLexicon([TranslationPair("gato", "cat", None, "es_en")])
        assert len(apply_variant(hbil, tax)) == 0

    def test_different_source_words_do_not_fire(self, tax):
        hbil = BilingualLexicon(
            [TranslationPair("felino", "feline", None, "es_en"),
             TranslationPair("otro", "felid", None, "es_en")]
        )
        assert len(apply_variant(hbil, tax)) == 0


class TestField:
    def test_fixture(self, core_hbil, tax):
        links = apply_field(core_hbil, tax)
        assert keys(links) == {("ribazo", "800")}
        assert links.get(("ribazo", "800")).evidence == {"bank", "slope"}

    def test_field_term_not_covariant(self, tax):
        hbil = BilingualLexicon([TranslationPair("x", "bank", "cow", "en_es")])
        assert len(apply_field(hbil, tax)) == 0

    def test_plain_pairs_ignored(self, core_hbil, tax):
        plain = BilingualLexicon([p for p in core_hbil.pairs if p.field_id is None])
        assert len(apply_field(plain, tax)) == 0


class TestProperties:
    def test_disjoint_partition(self, extended_hbil, tax):
        # every classifiable plain pair lands in exactly one of the 8 cells
        cells = {
            (pc, sh): keys(apply_class_criterion(extended_hbil, tax, pc, sh))
            for pc in ("mono", "poly")
            for sh in (1, 2, 3, 4)
        }
        for pair in extended_hbil.pairs:
            shape = classify_pair(extended_hbil, tax, pair)
            if shape is None:
                continue
            holders = [
                cell for cell, _ in cells.items()
                if cell == (shape.pair_class, shape.shape)
            ]
            assert len(holders) == 1

    def test_mono_cells_never_link_polysemous_words(self, extended_hbil, tax):
        for shape in (1, 2, 3, 4):
            for link in apply_class_criterion(extended_hbil, tax, "mono", shape):
                for ew in link.evidence:
                    assert len(tax.synsets_for(ew)) == 1

    def test_determinism_under_input_order(self, extended_hbil, tax):
        shuffled = BilingualLexicon(list(reversed(extended_hbil.pairs)))
        a = run_class_methods(extended_hbil, tax)
        b = run_class_methods(shuffled, tax)
        assert {t: keys(ls) for t, ls in a.items()} == {t: keys(ls) for t, ls in b.items()}

    def test_matches_oracle_on_random_inputs(self):
        rng = random.Random(7)
        for _ in range(15):
            tax = random_taxonomy(rng, max_synsets=30)
            hbil = random_lexicon(rng, max_pairs=60)
            got = {t: keys(ls) for t, ls in run_class_methods(hbil, tax).items()}
            assert got == class_links_oracle_all(hbil, tax)

    def test_classify_matches_oracle(self, extended_hbil, tax):
        for pair in extended_hbil.pairs:
            shape = classify_pair(extended_hbil, tax, pair)
            want = classify_oracle(extended_hbil, tax, pair)
            got = None if shape is None else (shape.pair_class, shape.shape)
            assert got == want

    def test_linkset_tsv_round_trip(self, extended_hbil, tax, tmp_path):
        from lexiweave.links import linkset_from_tsv

        for tag, linkset in run_class_methods(extended_hbil, tax).items():
            path = tmp_path / f"{tag}.tsv"
            linkset.to_tsv(path)
            loaded = linkset_from_tsv(path, tag)
            assert loaded.keys() == linkset.keys()
            for link in linkset:
                assert loaded.get(link.key).evidence == link.evidence
