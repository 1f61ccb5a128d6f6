from __future__ import annotations

import itertools
import json
import math
import random
import time

import pytest

from blowup_lab.benchmarks import focused71
from blowup_lab.core import State, parse_polynomial
from blowup_lab.harness import (
    FLAG_DELAY,
    HarnessConfig,
    audit_trajectory,
    check_determinism,
    evaluate_trajectory,
    score_benchmark,
    simulate_case,
    verify_counterexamples,
)
from blowup_lab.rankers import get_ranker


def _features(n, monomial_at=None, f0=None, f14=None):
    stream = []
    for t in range(n):
        fv = [0.0] * 26
        fv[0] = 3.0 if f0 is None else float(f0[t])
        fv[14] = 0.0 if f14 is None else float(f14[t])
        if monomial_at is not None and t >= monomial_at:
            fv[9] = 1.0
            fv[0] = 0.0
        stream.append(tuple(fv))
    return stream


def test_config_validation():
    with pytest.raises(ValueError):
        HarnessConfig(window=0)
    with pytest.raises(ValueError):
        HarnessConfig(cap=-1)
    with pytest.raises(ValueError):
        HarnessConfig(heavy_weight=0.0)
    with pytest.raises(ValueError):
        HarnessConfig(stage_prefixes=(20,), stage_weights=(1.0, 2.0))


def test_strictly_decreasing_stream_is_clean():
    n = 12
    ranks = [(3.0, float(n - t)) for t in range(n - 1)] + [(0.0, 0.0)]
    features = _features(n, monomial_at=n - 1)
    for m in range(1, 9):
        report = evaluate_trajectory(ranks, features, HarnessConfig(window=m))
        assert report.solved
        assert report.total_violations == 0


def test_constant_stream_delay_accrual():
    # 12 equal non-monomial entries: the gap reaches the window at t=5 and a
    # violation accrues on every later stalled step as well
    ranks = [(3.0, 1.0)] * 12
    features = _features(12)
    report = evaluate_trajectory(ranks, features, HarnessConfig(window=5))
    assert report.delay_violations == 7
    assert report.max_plateau == 11  # eleven consecutive repeats
    assert not report.solved


def test_constant_stream_once_per_stall():
    ranks = [(3.0, 1.0)] * 12
    features = _features(12)
    cfg = HarnessConfig(window=5, delay_per_step=False)
    report = evaluate_trajectory(ranks, features, cfg)
    assert report.delay_violations == 1


def test_delay_stops_at_monomial_entry():
    ranks = [(3.0, 1.0)] * 7 + [(0.0, 0.0)]
    features = _features(8, monomial_at=7)
    report = evaluate_trajectory(ranks, features, HarnessConfig(window=5))
    # stalled steps before the monomial entry: t = 5, 6
    assert report.delay_violations == 2


def test_normalization_violations_both_directions():
    ranks = [(3.0, 1.0), (1.0, 1.0), (0.0, 1.0)]
    features = _features(3, monomial_at=1)
    report = evaluate_trajectory(ranks, features, HarnessConfig())
    # t=1 is monomial but rank[0] != 0; t=2 would be fine
    assert report.normalization_violations == 1

    ranks = [(0.0, 1.0), (3.0, 1.0)]
    features = _features(2)
    report = evaluate_trajectory(ranks, features, HarnessConfig())
    # t=0 is non-monomial but rank[0] == 0
    assert report.normalization_violations == 1


def test_alignment_penalties_weighted():
    cfg = HarnessConfig()
    # f0 drops 3 -> 2 at t=1 while the rank stays put
    ranks = [(3.0, 5.0), (3.0, 5.0)]
    features = _features(2, f0=[3, 2])
    report = evaluate_trajectory(ranks, features, cfg)
    assert report.align_f0 == cfg.heavy_weight
    assert report.align_f14 == 0.0

    # f14 drops at t=1 while the rank increases
    ranks = [(3.0, 5.0), (3.0, 6.0)]
    features = _features(2, f14=[2.0, 1.0])
    report = evaluate_trajectory(ranks, features, cfg)
    assert report.align_f14 == cfg.light_weight
    assert report.align_f0 == 0.0

    # a strict rank drop silences both penalties
    ranks = [(3.0, 5.0), (2.0, 6.0)]
    features = _features(2, f0=[3, 2], f14=[2.0, 1.0])
    report = evaluate_trajectory(ranks, features, cfg)
    assert report.total_violations == 0


def test_structural_penalty_on_nan():
    cfg = HarnessConfig()
    ranks = [(3.0, 1.0), (3.0, float("nan"))]
    report = evaluate_trajectory(ranks, _features(2), cfg)
    assert report.structural_failure
    assert report.total_violations == cfg.structural_penalty
    assert not report.solved


def test_structural_penalty_on_crash_marker_and_shape():
    cfg = HarnessConfig()
    report = evaluate_trajectory([(3.0, 1.0), None], _features(2), cfg)
    assert report.structural_failure
    report = evaluate_trajectory([(3.0, 1.0), (3.0, 1.0, 1.0)], _features(2), cfg)
    assert report.structural_failure


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        evaluate_trajectory([(1.0,)], _features(2), HarnessConfig())


def test_local_increase_and_plateau_diagnostics():
    ranks = [(3.0, 3.0), (3.0, 3.0), (3.0, 4.0), (3.0, 2.0), (3.0, 2.0), (3.0, 2.0)]
    report = evaluate_trajectory(ranks, _features(6), HarnessConfig())
    assert report.local_increases == 1
    assert report.max_plateau == 2  # two consecutive repeats of (3, 2)


def test_best_stream_is_running_lex_min():
    ranks = [(3.0, 5.0), (3.0, 7.0), (3.0, 4.0), (3.0, 6.0), (0.0, 0.0)]
    features = _features(5, monomial_at=4)
    report = evaluate_trajectory(ranks, features, HarnessConfig())
    assert report.best_stream == ((3.0, 5.0), (3.0, 5.0), (3.0, 4.0), (3.0, 4.0), (0.0, 0.0))
    assert report.best_stream[-1] == min(ranks)


def test_delay_monotone_in_window():
    rng = random.Random(31)
    for _ in range(30):
        n = rng.randint(2, 25)
        ranks = [(float(rng.randint(1, 4)), float(rng.randint(0, 5))) for _ in range(n)]
        features = _features(n)
        delays = [
            evaluate_trajectory(ranks, features, HarnessConfig(window=m)).delay_violations
            for m in range(1, 11)
        ]
        assert all(a >= b for a, b in zip(delays, delays[1:]))


def test_check_determinism_positive_and_negative(vars4):
    fv = tuple(float(i) for i in range(26))
    assert check_determinism(get_ranker("r100"), fv)

    calls = itertools.count()

    def counter_stub(_fv):
        return (next(calls),)

    assert not check_determinism(counter_stub, fv)

    def clock_stub(_fv):
        return (time.time(),)

    assert not check_determinism(clock_stub, fv)


def test_score_benchmark_saturated_formula(suite_focused71, default_cfg):
    report = score_benchmark(
        get_ranker("disc_lex"), suite_focused71, default_cfg, "focused71", "disc_lex"
    )
    assert report.saturated_score == 2.0 * 71
    assert report.all_solved


def test_score_benchmark_staged_totals_single_stage(suite_focused71):
    cfg = HarnessConfig(stage_prefixes=(None,), stage_weights=(1.0,))
    report = score_benchmark(get_ranker("disc_lex"), suite_focused71, cfg, "focused71")
    assert report.staged_violations == report.total_violations


def test_score_benchmark_order_invariant_totals(suite_focused71, default_cfg):
    cases = list(suite_focused71[:10])
    forward = score_benchmark(get_ranker("r100"), cases, default_cfg, "fwd")
    backward = score_benchmark(get_ranker("r100"), list(reversed(cases)), default_cfg, "bwd")
    assert forward.total_violations == backward.total_violations
    assert forward.solved_count == backward.solved_count


def test_score_benchmark_parallel_matches_serial(suite_focused71, default_cfg):
    cases = suite_focused71[:16]
    serial = score_benchmark(get_ranker("disc_lex"), cases, default_cfg, "s", workers=1)
    parallel = score_benchmark(get_ranker("disc_lex"), cases, default_cfg, "s", workers=4)
    assert serial == parallel


def test_score_benchmark_flags_nondeterministic_ranker(suite_focused71, default_cfg):
    calls = itertools.count()

    class Jitter:
        name = "jitter"

        def __call__(self, fv):
            return (float(fv[0]) + 0.25 if fv[9] != 1 else 0.0, float(next(calls)))

    report = score_benchmark(Jitter(), suite_focused71[:3], default_cfg, "s")
    assert all(r.structural_failure for r in report.reports)
    assert not report.all_solved


def test_score_benchmark_empty_suite_rejected(default_cfg):
    with pytest.raises(ValueError):
        score_benchmark(get_ranker("r100"), [], default_cfg)


def test_suite_report_json_shape(suite_focused71, default_cfg):
    report = score_benchmark(
        get_ranker("disc_lex"), suite_focused71[:5], default_cfg, "mini", "disc_lex"
    )
    payload = report.to_json_dict()
    assert payload["suite"] == "mini"
    assert payload["ranker"] == "disc_lex"
    assert payload["m"] == 5 and payload["cap"] == 30
    assert len(payload["cases"]) == 5
    assert set(payload["cases"][0]) == {"name", "violations", "solved", "increases", "max_plateau"}
    json.dumps(payload)  # serializable


def test_saturated_score_example_values():
    # 100 clean cases score 200; one stubborn case at 10 violations costs
    # tanh(1) against the 99 solved
    assert 2.0 * 100 - 0.0 == 200.0
    assert 2.0 * 99 - math.tanh(1.0) == pytest.approx(198 - math.tanh(1.0))


def test_verify_counterexamples_findings():
    findings = verify_counterexamples()
    assert findings.lex_tuple_delay_m10
    assert findings.disc_delay_m5
    assert findings.r100_clean_m5
    assert findings.all_match_expected
    assert findings.disc_rank_step0 == (3, 4280, 531, 5000, 220)
    assert findings.disc_rank_step9 == (3, 999, 511, 4770, 210)
    assert findings.lex_c2_first_zero_step == 2


def test_audit_step_flags(vars4):
    cfg = HarnessConfig(window=2)
    ranks = [(3.0, 1.0)] * 5
    audit = audit_trajectory(ranks, _features(5), cfg)
    assert audit.step_flags[0] == 0
    assert audit.step_flags[2] & FLAG_DELAY
    assert audit.best_improved[0] and not any(audit.best_improved[1:])


def test_simulate_case_records_crash_as_none(vars4, default_cfg):
    state = State.initial(parse_polynomial("z^3 + x^6", vars4), vars4)

    def exploder(fv):
        raise RuntimeError("boom")

    _, _, ranks = simulate_case(state, exploder, default_cfg)
    assert all(r is None for r in ranks)


def test_allowed_tags_threads_through_config(vars4):
    # with a restrictive tag set the z-free mixed monomial no longer counts
    # as monomial phase, so the simulator keeps stepping; the chart rewrites
    # strip one variable per step until the ideal empties, which is terminal
    state = State.initial(parse_polynomial("x^7*y^5*w^4", vars4), vars4)
    open_cfg = HarnessConfig(cap=4)
    closed_cfg = HarnessConfig(cap=4, allowed_tags=("pure-base", "monomial-like"))
    open_traj, open_features, _ = simulate_case(state, get_ranker("r100"), open_cfg)
    closed_traj, closed_features, _ = simulate_case(state, get_ranker("r100"), closed_cfg)
    assert open_traj.monomial_step == 0
    assert open_features[0][9] == 1.0
    assert closed_features[0][9] == 0.0
    assert closed_traj.monomial_step == 3
    assert not closed_traj.states[-1].ideal  # emptied, hence vacuously terminal
    assert closed_features[-1][9] == 1.0
