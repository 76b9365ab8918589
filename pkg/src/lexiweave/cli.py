"""Pipeline driver: run stages from a JSON config, emit artifacts, serve the
annotation API.

Every stage writes deterministic TSV/JSON artifacts into the output
directory and records input digests in a manifest, so re-running with the
same inputs reproduces the same bytes and stale artifacts are detected
instead of silently consumed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import class_methods, combine, distance, structural
from .api import ValidationContext, create_app
from .lexdata import (
    BilingualLexicon,
    DataError,
    TranslationPair,
    coverage_stats,
    load_bilingual,
    load_monolingual,
    load_taxonomy,
    merge_bilinguals,
)
from .links import ALL_METHODS, CLASS_METHODS, LinkSet, linkset_from_tsv
from .validator import (
    VerdictStore,
    draw_sample,
    method_cs_from_store,
    sample_from_json,
    sample_to_json,
)

STAGES = (
    "load",
    "class",
    "structural",
    "cd",
    "sample",
    "combine",
    "assemble",
    "serve",
    "stats",
)


class UsageError(Exception):
    pass


@dataclass
class PipelineConfig:
    taxonomy: str | None = None
    taxonomy_format: str = "tsv"
    bilingual_es_en: str | None = None
    bilingual_en_es: str | None = None
    monolingual: str | None = None
    out: str = "out"
    threshold: float = 0.85
    sample_fraction: float = 0.10
    seed: int = 13
    base_methods: list[str] = field(
        default_factory=lambda: ["mono1", "mono2", "mono3", "mono4", "variant", "field"]
    )
    cs_measure: str = "ok"
    cell_cs_overrides: dict[str, float] = field(default_factory=dict)
    verdicts: str | None = None
    host: str = "127.0.0.1"
    port: int = 8570
    ui_assets: str | None = None

    def __post_init__(self):
        if not 0.0 < self.sample_fraction <= 1.0:
            raise DataError(f"sample_fraction {self.sample_fraction} outside (0, 1]")
        if not 0.0 <= self.threshold <= 1.0:
            raise DataError(f"threshold {self.threshold} outside [0, 1]")
        if self.cs_measure not in ("ok", "ok_plus_near"):
            raise DataError(f"unknown cs_measure {self.cs_measure!r}")
        unknown = [m for m in self.base_methods if m not in ALL_METHODS]
        if unknown:
            raise DataError(f"unknown base methods: {', '.join(unknown)}")

    @property
    def out_dir(self) -> Path:
        return Path(self.out)

    def snapshot(self) -> dict:
        """Config as recorded in the manifest; the output path is excluded so
        identical runs into different directories stay byte-identical."""
        data = {
            "taxonomy": self.taxonomy,
            "taxonomy_format": self.taxonomy_format,
            "bilingual_es_en": self.bilingual_es_en,
            "bilingual_en_es": self.bilingual_en_es,
            "monolingual": self.monolingual,
            "threshold": self.threshold,
            "sample_fraction": self.sample_fraction,
            "seed": self.seed,
            "base_methods": list(self.base_methods),
            "cs_measure": self.cs_measure,
            "cell_cs_overrides": dict(sorted(self.cell_cs_overrides.items())),
            "verdicts": self.verdicts,
        }
        return data


def load_config(path: str | Path) -> PipelineConfig:
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"config {path}: invalid JSON ({exc})") from exc
    known = set(PipelineConfig.__dataclass_fields__)
    unknown = set(raw) - known
    if unknown:
        raise DataError(f"config {path}: unknown keys {sorted(unknown)}")
    return PipelineConfig(**raw)


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


class Manifest:
    """Per-stage record of input digests, output digests, and config."""

    def __init__(self, out_dir: Path):
        self.path = out_dir / "manifest.json"
        self.data: dict = {"stages": {}}
        if self.path.exists():
            with open(self.path, encoding="utf-8") as handle:
                self.data = json.load(handle)

    def outputs_of(self, stage: str) -> dict[str, str]:
        return self.data["stages"].get(stage, {}).get("outputs", {})

    def record(
        self,
        stage: str,
        inputs: dict[str, str],
        outputs: dict[str, str],
        config: dict,
    ) -> None:
        self.data["stages"][stage] = {
            "inputs": inputs,
            "outputs": outputs,
            "config": config,
        }
        with open(self.path, "w", encoding="utf-8") as handle:
            json.dump(self.data, handle, ensure_ascii=False, indent=2, sort_keys=True)
            handle.write("\n")


class StageRunner:
    def __init__(self, cfg: PipelineConfig):
        self.cfg = cfg
        self.out = cfg.out_dir
        self.out.mkdir(parents=True, exist_ok=True)
        self.manifest = Manifest(self.out)
        self._inputs: dict[str, str] = {}

    def _source(self, path: str | None, what: str) -> Path:
        if path is None:
            raise DataError(f"missing input: {what} is not configured")
        p = Path(path)
        if not p.exists():
            raise DataError(f"missing input: {what} ({path})")
        self._inputs[str(path)] = _sha256(p)
        return p

    def _artifact(self, relpath: str, producer: str) -> Path:
        p = self.out / relpath
        if not p.exists():
            raise DataError(
                f"missing artifact: {relpath} (run the {producer!r} stage first)"
            )
        digest = _sha256(p)
        recorded = self.manifest.outputs_of(producer).get(relpath)
        if recorded is not None and recorded != digest:
            raise DataError(
                f"stale artifact: {relpath} does not match the manifest "
                f"(re-run the {producer!r} stage)"
            )
        self._inputs[relpath] = digest
        return p

    def _finish(self, stage: str, outputs: list[Path]) -> None:
        digests = {
            str(p.relative_to(self.out)): _sha256(p) for p in sorted(outputs)
        }
        self.manifest.record(stage, dict(sorted(self._inputs.items())),
                             digests, self.cfg.snapshot())
        self._inputs = {}

    def _write_json(self, relpath: str, payload) -> Path:
        p = self.out / relpath
        p.parent.mkdir(parents=True, exist_ok=True)
        with open(p, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, ensure_ascii=False, indent=2, sort_keys=True)
            handle.write("\n")
        return p

    # -- inputs shared by several stages ------------------------------------

    def _taxonomy(self):
        path = self._source(self.cfg.taxonomy, "taxonomy")
        return load_taxonomy(path, self.cfg.taxonomy_format)

    def _hbil(self) -> BilingualLexicon:
        path = self._artifact("hbil.tsv", "load")
        return _load_merged_tsv(path)

    def _store(self) -> VerdictStore:
        if self.cfg.verdicts is not None:
            p = Path(self.cfg.verdicts)
            if p.exists():
                self._inputs[str(p)] = _sha256(p)
            return VerdictStore(p)
        p = self.out / "verdicts.jsonl"
        if p.exists():
            self._inputs["verdicts.jsonl"] = _sha256(p)
        return VerdictStore(p)

    def _linksets(self, tags) -> dict[str, LinkSet]:
        out = {}
        for tag in tags:
            path = self.out / "links" / f"{tag}.tsv"
            if path.exists():
                producer = (
                    "class" if tag in CLASS_METHODS
                    else "structural" if tag in structural.CRITERIA
                    else "cd"
                )
                self._artifact(f"links/{tag}.tsv", producer)
                out[tag] = linkset_from_tsv(path, tag)
        return out

    # -- stages --------------------------------------------------------------

    def run(self, stage: str) -> int:
        handler = getattr(self, f"stage_{stage}")
        return handler()

    def stage_load(self) -> int:
        tax = self._taxonomy()
        ab = load_bilingual(self._source(self.cfg.bilingual_es_en, "bilingual_es_en"), "es_en")
        ba = load_bilingual(self._source(self.cfg.bilingual_en_es, "bilingual_en_es"), "en_es")
        hbil = merge_bilinguals(ab, ba)
        outputs = [_write_merged_tsv(hbil, self.out / "hbil.tsv")]
        report = coverage_stats(hbil, tax)
        outputs.append(self._write_json("coverage.json", report.as_dict()))
        if self.cfg.monolingual:
            load_monolingual(self._source(self.cfg.monolingual, "monolingual"))
        self._finish("load", outputs)
        print(
            f"loaded {len(tax)} synsets, {len(hbil)} merged pairs; "
            f"{report.reachable_synsets}/{report.synsets} synsets reachable"
        )
        return 0

    def stage_class(self) -> int:
        tax = self._taxonomy()
        hbil = self._hbil()
        results = class_methods.run_class_methods(hbil, tax)
        outputs = []
        (self.out / "links").mkdir(exist_ok=True)
        for tag in CLASS_METHODS:
            path = self.out / "links" / f"{tag}.tsv"
            results[tag].to_tsv(path)
            outputs.append(path)
        self._finish("class", outputs)
        total = sum(len(ls) for ls in results.values())
        print(f"class criteria: {total} links in {len(results)} link sets")
        return 0

    def stage_structural(self) -> int:
        tax = self._taxonomy()
        hbil = self._hbil()
        outputs = []
        (self.out / "links").mkdir(exist_ok=True)
        (self.out / "structural").mkdir(exist_ok=True)
        total = 0
        for kind in structural.CRITERIA:
            records = structural.prune_subsumed(
                structural.apply_structural_criterion(hbil, tax, kind)
            )
            rec_path = self.out / "structural" / f"{kind}.tsv"
            structural.records_to_tsv(records, rec_path)
            linkset = structural.records_to_linkset(records, kind)
            link_path = self.out / "links" / f"{kind}.tsv"
            linkset.to_tsv(link_path)
            outputs += [rec_path, link_path]
            total += len(linkset)
        self._finish("structural", outputs)
        print(f"structural criteria: {total} links")
        return 0

    def stage_cd(self) -> int:
        tax = self._taxonomy()
        hbil = self._hbil()
        mono = None
        if self.cfg.monolingual:
            mono = load_monolingual(self._source(self.cfg.monolingual, "monolingual"))
        outputs = []
        (self.out / "links").mkdir(exist_ok=True)
        cooc = distance.extract_cooccurrences(mono) if mono is not None else ()
        cooc_path = self.out / "cooccurrences.tsv"
        distance.cooccurrences_to_tsv(cooc, cooc_path)
        outputs.append(cooc_path)
        total = 0
        for kind in ("cd1", "cd2", "cd3"):
            if kind in ("cd1", "cd2") and mono is None:
                linkset = LinkSet(kind)
            else:
                linkset = distance.run_cd_method(
                    kind, hbil, tax, mono=mono, cooc=cooc if kind == "cd1" else None
                )
            path = self.out / "links" / f"{kind}.tsv"
            linkset.to_tsv(path)
            outputs.append(path)
            total += len(linkset)
        self._finish("cd", outputs)
        print(f"conceptual distance: {total} links")
        return 0

    def stage_sample(self) -> int:
        linksets = self._linksets(ALL_METHODS)
        if not linksets:
            raise DataError("missing artifact: links/ (run 'class' first)")
        outputs = []
        (self.out / "samples").mkdir(exist_ok=True)
        for tag in sorted(linksets):
            if len(linksets[tag]) == 0:
                continue
            sample = draw_sample(linksets[tag], self.cfg.sample_fraction, self.cfg.seed)
            path = self.out / "samples" / f"{tag}.json"
            sample_to_json(sample, path)
            outputs.append(path)
        self._finish("sample", outputs)
        print(f"drew {len(outputs)} samples at fraction {self.cfg.sample_fraction}")
        return 0

    def stage_combine(self) -> int:
        linksets = self._linksets(ALL_METHODS)
        discarded = [
            tag
            for tag in ALL_METHODS
            if tag in linksets and tag not in self.cfg.base_methods
        ]
        store = self._store()
        overrides = self.cfg.cell_cs_overrides
        if len(store) == 0 and not overrides:
            raise DataError("cell CS unavailable: no verdicts recorded")
        cells = []
        for i, tag_a in enumerate(discarded):
            for tag_b in discarded[i + 1:]:
                cells.append(
                    combine.intersect_linksets(linksets[tag_a], linksets[tag_b])
                )
        cell_cs: dict[str, float] = {}
        for cell in cells:
            judged = [
                v.diagnostic
                for v in store.all()
                if (v.source_word, v.synset) in cell.links
                and v.method in (cell.method_a, cell.method_b, cell.tag)
            ]
            if judged:
                cs = combine.compute_method_cs(cell.tag, judged)
                cell_cs[cell.tag] = cs.cs(self.cfg.cs_measure)
        cell_cs.update(overrides)
        combined = combine.select_accepted_cells(cells, cell_cs, self.cfg.threshold)
        outputs = []
        payload = [
            {
                "cell": cell.tag,
                "size": len(cell.links),
                "cs": cell.cs,
                "accepted": cell.accepted,
            }
            for cell in sorted(cells, key=lambda c: c.tag)
        ]
        outputs.append(self._write_json("cells.json", payload))
        comb_path = self.out / "combination.tsv"
        combine.wordnet_to_tsv(combined, comb_path)
        outputs.append(comb_path)
        self._finish("combine", outputs)
        accepted = sum(1 for cell in cells if cell.accepted)
        print(
            f"{accepted} of {len(cells)} cells accepted at threshold "
            f"{self.cfg.threshold}: {len(combined)} links"
        )
        return 0

    def stage_assemble(self) -> int:
        linksets = self._linksets(ALL_METHODS)
        missing = [m for m in self.cfg.base_methods if m not in linksets]
        if missing:
            raise DataError(
                f"missing artifact: links for {', '.join(missing)} "
                f"(run 'class' first)"
            )
        store = self._store()
        method_cs = method_cs_from_store(store, self.cfg.base_methods)
        base = combine.build_base_wordnet(linksets, self.cfg.base_methods, method_cs)
        comb_path = self._artifact("combination.tsv", "combine")
        accepted = combine.wordnet_from_tsv(comb_path, "combination")
        merged, report = combine.assemble_wordnet(base, accepted)
        outputs = []
        for wn in (base, merged):
            path = self.out / f"wordnet_{wn.version}.tsv"
            combine.wordnet_to_tsv(wn, path)
            outputs.append(path)
            stats_path = self.out / f"wordnet_{wn.version}.stats.json"
            combine.stats_to_json(wn, stats_path)
            outputs.append(stats_path)
        outputs.append(
            self._write_json(
                "assemble_report.json",
                {"new_links": report.new_links, "increase_pct": report.increase_pct},
            )
        )
        self._finish("assemble", outputs)
        print(
            f"{base.version}: {len(base)} links; {merged.version}: {len(merged)} "
            f"links (+{report.new_links}, {report.increase_pct:.1f}%)"
        )
        return 0

    def stage_stats(self) -> int:
        coverage_path = self.out / "coverage.json"
        if coverage_path.exists():
            with open(coverage_path, encoding="utf-8") as handle:
                cov = json.load(handle)
            print("== coverage ==")
            print(
                f"english nouns {cov['english_nouns']}  source nouns "
                f"{cov['source_nouns']}  synsets {cov['synsets']}  "
                f"connections {cov['connections']}"
            )
            print(
                f"reachable: english {cov['reachable_english']}  source "
                f"{cov['reachable_source']}  synsets {cov['reachable_synsets']}"
            )
            for key, value in sorted(cov["ratios"].items()):
                print(f"  {key}: {100 * value:.0f}%")
        store = self._store()
        methods = sorted({v.method for v in store.all()})
        if methods:
            print("== method confidence ==")
            header = "method    " + "".join(f"%{d:<7}" for d in combine.DIAGNOSTICS)
            print(header + "n")
            for method in methods:
                cs = combine.compute_method_cs(
                    method, (v.diagnostic for v in store.for_method(method))
                )
                row = f"{method:<10}" + "".join(
                    f"{100 * cs.ratios[d]:<8.1f}" for d in combine.DIAGNOSTICS
                )
                print(row + str(cs.sample_size))
        print("== wordnets ==")
        for stats_file in sorted(self.out.glob("wordnet_*.stats.json")):
            with open(stats_file, encoding="utf-8") as handle:
                stats = json.load(handle)
            cs = "-" if stats["cs"] is None else f"{100 * stats['cs']:.1f}"
            print(
                f"{stats['version']}: links {stats['links']}  synsets "
                f"{stats['synsets']}  words {stats['words']}  cs {cs}  "
                f"poly links {stats['poly_links']}"
            )
        return 0

    def stage_serve(self) -> int:
        import uvicorn

        tax = self._taxonomy()
        hbil = self._hbil()
        mono = None
        if self.cfg.monolingual:
            mono = load_monolingual(self._source(self.cfg.monolingual, "monolingual"))
        samples = {}
        samples_dir = self.out / "samples"
        if samples_dir.is_dir():
            for path in sorted(samples_dir.glob("*.json")):
                sample = sample_from_json(path)
                samples[sample.id] = sample
        linksets = {}
        for tag in ALL_METHODS:
            path = self.out / "links" / f"{tag}.tsv"
            if path.exists():
                linksets[tag] = linkset_from_tsv(path, tag)
        store = VerdictStore(
            Path(self.cfg.verdicts) if self.cfg.verdicts else self.out / "verdicts.jsonl"
        )
        ctx = ValidationContext(tax, hbil, mono, samples, store, linksets)
        app = create_app(ctx, self.cfg.ui_assets)
        print(f"serving validation API on {self.cfg.host}:{self.cfg.port}")
        uvicorn.run(app, host=self.cfg.host, port=self.cfg.port, log_level="warning")
        return 0


def _write_merged_tsv(hbil: BilingualLexicon, path: Path) -> Path:
    with open(path, "w", encoding="utf-8") as handle:
        for pair in hbil.pairs:
            handle.write(
                f"{pair.source_lemma}\t{pair.target_lemma}\t{pair.field_id or ''}\n"
            )
    return path


def _load_merged_tsv(path: Path) -> BilingualLexicon:
    pairs = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise DataError(f"{path.name}:{lineno}: malformed merged pair")
            pairs.append(
                TranslationPair(cols[0], cols[1], cols[2] or None, "merged")
            )
    return BilingualLexicon(pairs)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lexiweave", description=__doc__)
    parser.add_argument("stage", choices=STAGES)
    parser.add_argument("--config", required=True, help="JSON pipeline config")
    parser.add_argument("--out", help="output directory (overrides config)")
    parser.add_argument("--taxonomy")
    parser.add_argument("--taxonomy-format", choices=("tsv", "wndb"))
    parser.add_argument("--bilingual-es-en")
    parser.add_argument("--bilingual-en-es")
    parser.add_argument("--monolingual")
    parser.add_argument("--threshold", type=float)
    parser.add_argument("--sample-fraction", type=float)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--base-methods", help="comma-separated method tags")
    parser.add_argument("--cs-measure", choices=("ok", "ok_plus_near"))
    parser.add_argument("--verdicts")
    parser.add_argument("--host")
    parser.add_argument("--port", type=int)
    parser.add_argument("--ui-assets")
    parser.add_argument(
        "--force-cell-cs",
        action="append",
        default=[],
        metavar="CELL=CS",
        help="override a cell's confidence, e.g. cd3|poly2=0.95 (repeatable)",
    )
    return parser


def _apply_overrides(cfg: PipelineConfig, args: argparse.Namespace) -> PipelineConfig:
    updates = {}
    for name in (
        "taxonomy",
        "taxonomy_format",
        "bilingual_es_en",
        "bilingual_en_es",
        "monolingual",
        "out",
        "threshold",
        "sample_fraction",
        "seed",
        "cs_measure",
        "verdicts",
        "host",
        "port",
        "ui_assets",
    ):
        value = getattr(args, name)
        if value is not None:
            updates[name] = value
    if args.base_methods is not None:
        updates["base_methods"] = [
            m.strip() for m in args.base_methods.split(",") if m.strip()
        ]
    if args.force_cell_cs:
        overrides = dict(cfg.cell_cs_overrides)
        for item in args.force_cell_cs:
            if "=" not in item:
                raise UsageError(f"--force-cell-cs expects CELL=CS, got {item!r}")
            tag, _, value = item.partition("=")
            overrides["|".join(sorted(tag.split("|")))] = float(value)
        updates["cell_cs_overrides"] = overrides
    return replace(cfg, **updates)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _apply_overrides(load_config(args.config), args)
        return StageRunner(cfg).run(args.stage)
    except SystemExit as exc:  # argparse usage failures and --help
        return exc.code if isinstance(exc.code, int) else 1
    except UsageError as exc:
        print(f"lexiweave: error: {exc}", file=sys.stderr)
        return 1
    except (DataError, OSError) as exc:
        print(f"lexiweave: data error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
