"""Acceptance suite: one test per release criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s`.
"""

import json
import math
import os
import random
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from lexiweave.class_methods import run_class_methods
from lexiweave.cli import main
from lexiweave.combine import (
    IntersectionCell,
    cell_tag,
    compute_method_cs,
    select_accepted_cells,
    wordnet_from_tsv,
)
from lexiweave.distance import conceptual_distance
from lexiweave.lexdata import BilingualLexicon, coverage_stats, load_taxonomy
from lexiweave.links import LinkSet
from lexiweave.structural import apply_structural_criterion, prune_subsumed
from lexiweave.validator import draw_sample

from oracles import (
    all_paths_distance,
    class_links_oracle_all,
    random_lexicon,
    random_taxonomy,
    structural_records_oracle,
)


@contextmanager
def criterion(name):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"\n[acceptance] {name}: FAIL")
        raise
    elapsed = time.perf_counter() - started
    print(f"\n[acceptance] {name}: PASS ({elapsed:.2f}s)")


GOLDEN_BASE = {
    ("vaca", "210"), ("declive", "800"), ("felino", "310"), ("banco", "610"),
    ("gato", "300"), ("minino", "300"), ("perro", "400"), ("ribazo", "800"),
}


def test_class_methods_match_oracle(core_hbil, extended_hbil, tax):
    """All 10 class criteria equal a literal-definition brute force."""
    with criterion("class criteria vs brute-force oracle"):
        started = time.perf_counter()
        for hbil in (core_hbil, extended_hbil):
            got = {t: {l.key for l in ls} for t, ls in run_class_methods(hbil, tax).items()}
            assert got == class_links_oracle_all(hbil, tax)
        rng = random.Random(1203)
        for _ in range(100):
            rtax = random_taxonomy(rng, max_synsets=50)
            rlex = random_lexicon(rng, max_pairs=100)
            got = {t: {l.key for l in ls} for t, ls in run_class_methods(rlex, rtax).items()}
            assert got == class_links_oracle_all(rlex, rtax)
        assert time.perf_counter() - started < 5.0


def test_structural_methods_match_oracle(extended_hbil, tax):
    """All 4 structural criteria equal the oracle; pruning is idempotent."""
    with criterion("structural criteria vs brute-force oracle"):
        started = time.perf_counter()
        cases = [(extended_hbil, tax)]
        rng = random.Random(88)
        for _ in range(100):
            cases.append((random_lexicon(rng, max_pairs=100), random_taxonomy(rng, max_synsets=50)))
        for hbil, taxonomy in cases:
            for kind in ("intersection", "parent", "brother", "distant"):
                records = apply_structural_criterion(hbil, taxonomy, kind)
                got = {(r.source_word, r.ew_set, r.synsets) for r in records}
                assert got == structural_records_oracle(hbil, taxonomy, kind)
                pruned = prune_subsumed(records)
                assert prune_subsumed(pruned) == pruned
        assert time.perf_counter() - started < 10.0


def test_conceptual_distance_matches_enumeration(tax):
    """Weighted search equals exhaustive path enumeration; fixture values exact."""
    with criterion("conceptual distance vs path enumeration"):
        started = time.perf_counter()
        gato_perro = conceptual_distance(
            [tax.synsets_for("cat"), tax.synsets_for("dog") | tax.synsets_for("hound")], tax
        )
        assert gato_perro.distance == 7 / 6
        hound_dog = conceptual_distance(
            [tax.synsets_for("hound"), tax.synsets_for("dog")], tax
        )
        assert hound_dog.distance == 1 / 3

        lemmas = sorted(tax.lemmas)
        for i, a in enumerate(lemmas):
            for b in lemmas[i + 1:]:
                want, _ = all_paths_distance(tax, tax.synsets_for(a), tax.synsets_for(b))
                got = conceptual_distance([tax.synsets_for(a), tax.synsets_for(b)], tax)
                assert abs(got.distance - want) < 1e-9

        rng = random.Random(42)
        for _ in range(200):
            rtax = random_taxonomy(rng, max_synsets=12)
            ids = sorted(rtax.synsets)
            set_a = set(rng.sample(ids, rng.randint(1, min(3, len(ids)))))
            set_b = set(rng.sample(ids, rng.randint(1, min(3, len(ids)))))
            want, _ = all_paths_distance(rtax, set_a, set_b)
            got = conceptual_distance([set_a, set_b], rtax)
            if want == math.inf:
                assert got.distance == math.inf
            else:
                assert abs(got.distance - want) < 1e-9
        assert time.perf_counter() - started < 10.0


def test_fixture_pipeline_golden_run(tmp_path, fixtures_dir):
    """Full pipeline reproduces the 8-link base and the 9-link second version,
    byte-identically across two runs."""
    with criterion("fixture pipeline golden run"):
        trees = {}
        for name in ("first", "second"):
            out = tmp_path / name
            config = tmp_path / f"{name}.json"
            config.write_text(json.dumps({
                "taxonomy": str(fixtures_dir / "taxonomy.tsv"),
                "bilingual_es_en": str(fixtures_dir / "es_en.tsv"),
                "bilingual_en_es": str(fixtures_dir / "en_es.tsv"),
                "monolingual": str(fixtures_dir / "monolingual.jsonl"),
                "out": str(out),
                "seed": 13,
                "cell_cs_overrides": {"cd3|poly2": 0.95},
            }))
            for stage in ("load", "class", "structural", "cd", "sample", "combine", "assemble"):
                assert main([stage, "--config", str(config)]) == 0
            trees[name] = {
                str(p.relative_to(out)): p.read_bytes()
                for p in sorted(out.rglob("*")) if p.is_file()
            }
        assert trees["first"] == trees["second"]

        base = wordnet_from_tsv(tmp_path / "first" / "wordnet_v0.0.tsv", "v0.0")
        assert base.keys() == GOLDEN_BASE
        v01 = wordnet_from_tsv(tmp_path / "first" / "wordnet_v0.1.tsv", "v0.1")
        assert len(v01) == 9
        assert ("banco", "700") in v01


# published pairwise-combination table: (method pair) -> (size, %ok)
COMBINATION_TABLE = {
    ("brother", "cd1"): (855, 70), ("brother", "cd2"): (828, 71),
    ("brother", "cd3"): (435, 79), ("brother", "distant"): (449, 58),
    ("brother", "parent"): (405, 6), ("brother", "poly1"): (76, 86),
    ("brother", "poly2"): (107, 89), ("brother", "poly3"): (0, 0),
    ("brother", "poly4"): (1872, 67),
    ("cd1", "cd2"): (15736, 79), ("cd1", "cd3"): (1849, 85),
    ("cd1", "distant"): (576, 68), ("cd1", "parent"): (419, 71),
    ("cd1", "poly1"): (2076, 86), ("cd1", "poly2"): (556, 86),
    ("cd1", "poly3"): (3146, 72), ("cd1", "poly4"): (15105, 64),
    ("cd2", "cd3"): (2401, 86), ("cd2", "distant"): (571, 71),
    ("cd2", "parent"): (428, 72), ("cd2", "poly1"): (2536, 88),
    ("cd2", "poly2"): (592, 86), ("cd2", "poly3"): (3777, 75),
    ("cd2", "poly4"): (13246, 67),
    ("cd3", "distant"): (391, 79), ("cd3", "parent"): (325, 80),
    ("cd3", "poly1"): (205, 95), ("cd3", "poly2"): (180, 95),
    ("cd3", "poly3"): (215, 100), ("cd3", "poly4"): (3114, 77),
    ("distant", "parent"): (1432, 67), ("distant", "poly1"): (69, 78),
    ("distant", "poly2"): (68, 7), ("distant", "poly3"): (0, 0),
    ("distant", "poly4"): (1463, 65),
    ("parent", "poly1"): (69, 77), ("parent", "poly2"): (61, 70),
    ("parent", "poly3"): (0, 0), ("parent", "poly4"): (1101, 67),
    ("poly1", "poly2"): (0, 0), ("poly1", "poly3"): (77, 100),
    ("poly1", "poly4"): (178, 88),
    ("poly2", "poly3"): (28, 77), ("poly2", "poly4"): (78, 96),
}

EXPECTED_ACCEPTED = {
    "brother|poly1", "brother|poly2",
    "cd1|cd3", "cd1|poly1", "cd1|poly2",
    "cd2|cd3", "cd2|poly1", "cd2|poly2",
    "cd3|poly1", "cd3|poly2", "cd3|poly3",
    "poly1|poly3", "poly1|poly4", "poly2|poly4",
}


def test_combination_arithmetic():
    """Cell selection at threshold 0.85 accepts exactly the 14 published
    high-confidence intersections."""
    with criterion("combination arithmetic"):
        cells = []
        cell_cs = {}
        for i, ((method_a, method_b), (size, pct_ok)) in enumerate(
            sorted(COMBINATION_TABLE.items())
        ):
            links = LinkSet(cell_tag(method_a, method_b))
            links.add(f"w{i}", f"s{i}")
            cell = IntersectionCell(method_a, method_b, links)
            cells.append(cell)
            if size > 0:
                diagnostics = ["ok"] * pct_ok + ["ko"] * (100 - pct_ok)
                cs = compute_method_cs(cell.tag, diagnostics)
                cell_cs[cell.tag] = cs.cs("ok")
        combined = select_accepted_cells(cells, cell_cs, 0.85)
        accepted = {cell.tag for cell in cells if cell.accepted}
        assert accepted == EXPECTED_ACCEPTED
        assert len(combined) == len(EXPECTED_ACCEPTED)


def test_threshold_monotonicity():
    """Raising the threshold never increases the accepted link count."""
    with criterion("threshold monotonicity"):
        rng = random.Random(7)
        methods = ["poly1", "poly2", "poly3", "poly4", "cd1", "cd2", "cd3",
                   "brother", "parent", "distant", "intersection"]
        for _ in range(50):
            cells = []
            cell_cs = {}
            n_cells = rng.randint(1, 20)
            for i in range(n_cells):
                a, b = rng.sample(methods, 2)
                tag = cell_tag(a, b)
                links = LinkSet(tag)
                for j in range(rng.randint(1, 5)):
                    links.add(f"w{rng.randint(0, 30)}", f"s{rng.randint(0, 30)}")
                cells.append(IntersectionCell(a, b, links))
                if rng.random() < 0.9:
                    cell_cs[tag] = rng.random()
            counts = []
            for step in range(11):
                threshold = 0.5 + 0.05 * step
                counts.append(len(select_accepted_cells(cells, cell_cs, threshold)))
            assert counts == sorted(counts, reverse=True)


def test_sampling_determinism():
    """10% of 1,000 links is exactly 100, stable across runs, seed-sensitive."""
    with criterion("sampling determinism"):
        linkset = LinkSet("cd1")
        for i in range(1000):
            linkset.add(f"word{i:04d}", f"s{i % 211}")
        samples = [draw_sample(linkset, 0.10, seed=42) for _ in range(5)]
        assert all(len(s.links) == 100 for s in samples)
        assert all(s == samples[0] for s in samples[1:])
        other = draw_sample(linkset, 0.10, seed=43)
        keys_a = {l.key for l in samples[0].links}
        keys_b = {l.key for l in other.links}
        assert keys_a != keys_b


def test_real_wordnet_figures():
    """Against a real WordNet 1.5 noun database, totals match the published
    synset and noun counts. Skipped when the data is not supplied."""
    candidates = [Path(p) for p in (
        os.environ.get("LEXIWEAVE_WN15", ""),
        "tests/data/wn15",
    ) if p]
    location = next(
        (p for p in candidates if (p / "data.noun").exists() or p.name == "data.noun" and p.exists()),
        None,
    )
    if location is None:
        pytest.skip(
            "WordNet 1.5 noun database not supplied "
            "(set LEXIWEAVE_WN15 to its directory to enable this check)"
        )
    with criterion("real WordNet 1.5 figures"):
        tax = load_taxonomy(location, fmt="wndb")
        assert len(tax) == 60557
        report = coverage_stats(BilingualLexicon([]), tax)
        assert report.english_nouns == 87642
