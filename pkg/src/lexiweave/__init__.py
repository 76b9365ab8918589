"""lexiweave: attach source-language nouns to an English synset taxonomy."""

from .class_methods import (
    PairShape,
    apply_class_criterion,
    apply_field,
    apply_variant,
    classify_pair,
    run_class_methods,
)
from .combine import (
    IntersectionCell,
    MethodCS,
    Wordnet,
    assemble_wordnet,
    build_base_wordnet,
    compute_method_cs,
    intersect_linksets,
    select_accepted_cells,
    wordnet_stats,
)
from .distance import (
    ConceptPath,
    CoocPair,
    DistanceResult,
    association_ratio,
    conceptual_distance,
    extract_cooccurrences,
    run_cd_method,
)
from .lexdata import (
    BilingualLexicon,
    CoverageReport,
    CycleError,
    DataError,
    MonolingualDictionary,
    MonolingualEntry,
    Synset,
    Taxonomy,
    TranslationPair,
    compute_depths,
    coverage_stats,
    load_bilingual,
    load_monolingual,
    load_taxonomy,
    merge_bilinguals,
    normalize_lemma,
)
from .links import LinkCandidate, LinkSet
from .structural import (
    StructuralRecord,
    apply_structural_criterion,
    enumerate_translation_subsets,
    prune_subsumed,
    stratify_by_size,
)
from .validator import (
    Sample,
    Verdict,
    VerdictStore,
    auto_diagnose,
    compute_diagnostic_ratios,
    draw_sample,
    record_verdict,
)

__version__ = "0.1.0"
