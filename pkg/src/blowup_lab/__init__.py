"""Exponent-level blow-up simulator, feature extraction, ranking functions and
the bounded-delay descent harness, together with the embedded benchmark suites
and a seeded weight search over a parametric ranker template."""

from blowup_lab.core import (
    Boundary,
    IdealSpec,
    ParseError,
    State,
    TaggedMonomial,
    VariableSet,
    infer_tag,
    parse_polynomial,
    render_polynomial,
)
from blowup_lab.simulator import (
    Center,
    Trajectory,
    exceptional_exponent,
    is_monomial_phase,
    run_trajectory,
    select_center,
    step,
)
from blowup_lab.features import (
    FEATURE_NAMES,
    extract_features,
    hilbert_samuel_base,
    weighted_order_proxy,
)
from blowup_lab.rankers import (
    Ranker,
    discretize,
    get_ranker,
    lex_compare,
    rank_clean_lex,
    rank_disc_raw,
    rank_r100_raw,
    rank_two_component,
)
from blowup_lab.harness import (
    HarnessConfig,
    SuiteReport,
    ViolationReport,
    check_determinism,
    evaluate_trajectory,
    score_benchmark,
    verify_counterexamples,
)
from blowup_lab.benchmarks import (
    BenchmarkCase,
    ManifestError,
    builtin_suites,
    generate_broad_surrogates,
    get_suite,
    load_manifest,
    save_manifest,
)
from blowup_lab.search import RankerTemplate, hill_climb

__all__ = [
    "Boundary",
    "IdealSpec",
    "ParseError",
    "State",
    "TaggedMonomial",
    "VariableSet",
    "infer_tag",
    "parse_polynomial",
    "render_polynomial",
    "Center",
    "Trajectory",
    "exceptional_exponent",
    "is_monomial_phase",
    "run_trajectory",
    "select_center",
    "step",
    "FEATURE_NAMES",
    "extract_features",
    "hilbert_samuel_base",
    "weighted_order_proxy",
    "Ranker",
    "discretize",
    "get_ranker",
    "lex_compare",
    "rank_clean_lex",
    "rank_disc_raw",
    "rank_r100_raw",
    "rank_two_component",
    "HarnessConfig",
    "SuiteReport",
    "ViolationReport",
    "check_determinism",
    "evaluate_trajectory",
    "score_benchmark",
    "verify_counterexamples",
    "BenchmarkCase",
    "ManifestError",
    "builtin_suites",
    "generate_broad_surrogates",
    "get_suite",
    "load_manifest",
    "save_manifest",
    "RankerTemplate",
    "hill_climb",
]
