"""Scoring harness: bounded-delay descent, normalization, alignment, purity.

A ranker is scored over simulated trajectories.  Violations accrue from four
sources: structural failures (non-finite or malformed ranks), breaks of the
monomial-phase normalization of the first component, bounded-delay stalls of
the best-so-far rank, and misalignment with drops of the order proxies f0
(heavier) and f14 (lighter).  Secondary diagnostics (local increases, plateau
lengths) are recorded but carry no penalty.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence

from blowup_lab.core import State, VariableSet, parse_polynomial
from blowup_lab.features import extract_features
from blowup_lab.rankers import get_ranker, lex_compare
from blowup_lab.simulator import DEFAULT_CAP, DEFAULT_WINDOW, Trajectory, run_trajectory

FLAG_DELAY = 1
FLAG_NORMALIZATION = 2
FLAG_ALIGN_F0 = 4
FLAG_ALIGN_F14 = 8


@dataclass(frozen=True)
class HarnessConfig:
    """Scoring knobs.

    window/cap are the bounded-delay window and the step cap.  Alignment
    weights make an f0 misalignment count heavier than an f14 one.  The stage
    prefixes/weights define the curriculum (None means the whole suite).
    delay_per_step accrues one violation per stalled step once the gap
    reaches the window; switching it off counts each stall once.
    align_at_entry includes the monomial-entry step in the alignment checks.
    """

    window: int = DEFAULT_WINDOW
    cap: int = DEFAULT_CAP
    heavy_weight: float = 1.0
    light_weight: float = 0.5
    structural_penalty: float = 1000.0
    stage_prefixes: tuple[Optional[int], ...] = (20, 40, None)
    stage_weights: tuple[float, ...] = (1.0, 2.0, 4.0)
    saturated: bool = True
    delay_per_step: bool = True
    align_at_entry: bool = True
    allowed_tags: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError("window must be at least 1")
        if self.cap < 0:
            raise ValueError("cap must be nonnegative")
        if self.heavy_weight <= 0 or self.light_weight <= 0:
            raise ValueError("alignment weights must be positive")
        if len(self.stage_prefixes) != len(self.stage_weights):
            raise ValueError("stage prefixes and weights must align")


@dataclass(frozen=True)
class ViolationReport:
    """Per-trajectory audit result."""

    name: str
    total_violations: float
    delay_violations: int
    normalization_violations: int
    align_f0: float
    align_f14: float
    structural_failure: bool
    local_increases: int
    max_plateau: int
    solved: bool
    rank_stream: tuple
    best_stream: tuple

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "violations": self.total_violations,
            "solved": self.solved,
            "increases": self.local_increases,
            "max_plateau": self.max_plateau,
        }


@dataclass(frozen=True)
class TrajectoryAudit:
    """ViolationReport plus the per-step data used by trace export."""

    report: ViolationReport
    step_flags: tuple[int, ...]
    best_improved: tuple[bool, ...]


def _is_malformed(rank) -> bool:
    if rank is None:
        return True
    try:
        values = tuple(rank)
    except TypeError:
        return True
    if not values:
        return True
    for v in values:
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            return True
        if not math.isfinite(v):
            return True
    return False


def audit_trajectory(
    ranks: Sequence,
    features: Sequence[Sequence[float]],
    cfg: HarnessConfig,
    name: str = "case",
) -> TrajectoryAudit:
    """Score one rank/feature stream and keep the per-step flag detail."""
    if len(ranks) != len(features):
        raise ValueError("rank and feature streams must have equal length")
    if not ranks:
        raise ValueError("empty trajectory")

    n = len(ranks)
    tau = next((t for t in range(n) if features[t][9] == 1), n)

    structural = any(_is_malformed(r) for r in ranks) or any(
        len(tuple(r)) != len(tuple(ranks[0])) for r in ranks
    )
    if structural:
        report = ViolationReport(
            name=name,
            total_violations=cfg.structural_penalty,
            delay_violations=0,
            normalization_violations=0,
            align_f0=0.0,
            align_f14=0.0,
            structural_failure=True,
            local_increases=0,
            max_plateau=0,
            solved=False,
            rank_stream=tuple(tuple(r) if r is not None and not _is_malformed(r) else None for r in ranks),
            best_stream=(),
        )
        return TrajectoryAudit(report=report, step_flags=(0,) * n, best_improved=(False,) * n)

    ranks = [tuple(r) for r in ranks]
    flags = [0] * n

    # normalization: first component is 0 exactly in monomial phase
    normalization = 0
    for t in range(n):
        monomial = features[t][9] == 1
        ok = (ranks[t][0] == 0) if monomial else (ranks[t][0] > 0)
        if not ok:
            normalization += 1
            flags[t] |= FLAG_NORMALIZATION

    # bounded delay on the running best
    best = ranks[0]
    best_stream = [best]
    improved = [True] + [False] * (n - 1)
    last_improve = 0
    delay = 0
    for t in range(1, n):
        if lex_compare(ranks[t], best) < 0:
            best = ranks[t]
            last_improve = t
            improved[t] = True
        best_stream.append(best)
        if t < tau and t - last_improve >= cfg.window:
            if cfg.delay_per_step or t - last_improve == cfg.window:
                delay += 1
                flags[t] |= FLAG_DELAY

    # alignment: proxy drops must be reflected by an immediate rank decrease
    align_hi = min(tau if cfg.align_at_entry else tau - 1, n - 1)
    align_f0_count = 0
    align_f14_count = 0
    for t in range(1, align_hi + 1):
        decreased = lex_compare(ranks[t], ranks[t - 1]) < 0
        if features[t][0] < features[t - 1][0] and not decreased:
            align_f0_count += 1
            flags[t] |= FLAG_ALIGN_F0
        if features[t][14] < features[t - 1][14] and not decreased:
            align_f14_count += 1
            flags[t] |= FLAG_ALIGN_F14

    # diagnostics over the whole stream; a plateau is counted as the number
    # of consecutive indices whose rank repeats the previous one
    local_increases = sum(
        1 for t in range(1, n) if lex_compare(ranks[t], ranks[t - 1]) > 0
    )
    max_plateau = 0
    run_length = 0
    for t in range(1, n):
        if lex_compare(ranks[t], ranks[t - 1]) == 0:
            run_length += 1
        else:
            run_length = 0
        max_plateau = max(max_plateau, run_length)

    align_f0 = cfg.heavy_weight * align_f0_count
    align_f14 = cfg.light_weight * align_f14_count
    total = float(normalization + delay) + align_f0 + align_f14

    report = ViolationReport(
        name=name,
        total_violations=total,
        delay_violations=delay,
        normalization_violations=normalization,
        align_f0=align_f0,
        align_f14=align_f14,
        structural_failure=False,
        local_increases=local_increases,
        max_plateau=max_plateau,
        solved=total == 0,
        rank_stream=tuple(ranks),
        best_stream=tuple(best_stream),
    )
    return TrajectoryAudit(report=report, step_flags=tuple(flags), best_improved=tuple(improved))


def evaluate_trajectory(
    ranks: Sequence,
    features: Sequence[Sequence[float]],
    cfg: HarnessConfig,
    name: str = "case",
) -> ViolationReport:
    """Audit a rank/feature stream and return the violation report."""
    return audit_trajectory(ranks, features, cfg, name).report


def check_determinism(rank_fn: Callable, fv: Sequence[float]) -> bool:
    """Purity probe: two evaluations on the same input must agree exactly."""
    try:
        first = tuple(rank_fn(fv))
        second = tuple(rank_fn(fv))
    except Exception:
        return False
    return first == second


def simulate_case(initial: State, ranker: Callable, cfg: HarnessConfig):
    """Run a trajectory and evaluate features and ranks along it.

    Ranker crashes are recorded as None ranks, which the audit treats as
    structural failures.
    """
    trajectory = run_trajectory(initial, cfg.cap, cfg.allowed_tags)
    feature_stream = [extract_features(s, cfg.allowed_tags) for s in trajectory.states]
    rank_stream = []
    for fv in feature_stream:
        try:
            rank_stream.append(ranker(fv))
        except Exception:
            rank_stream.append(None)
    return trajectory, feature_stream, rank_stream


@dataclass(frozen=True)
class SuiteReport:
    """Aggregated scoring of one ranker over one suite."""

    suite: str
    ranker: str
    window: int
    cap: int
    reports: tuple[ViolationReport, ...]
    total_violations: float
    staged_violations: float
    solved_count: int
    local_increases_total: int
    max_plateau: int
    saturated_score: float

    @property
    def all_solved(self) -> bool:
        return self.solved_count == len(self.reports)

    def report_for(self, name: str) -> ViolationReport:
        for r in self.reports:
            if r.name == name:
                return r
        raise KeyError(f"no case named {name!r} in suite report")

    def to_json_dict(self) -> dict:
        return {
            "suite": self.suite,
            "ranker": self.ranker,
            "m": self.window,
            "cap": self.cap,
            "cases": [r.to_json_dict() for r in self.reports],
            "totals": {
                "violations": self.total_violations,
                "staged_violations": self.staged_violations,
                "solved": self.solved_count,
                "cases": len(self.reports),
                "local_increases": self.local_increases_total,
                "max_plateau": self.max_plateau,
            },
            "saturated_score": self.saturated_score,
        }


def _score_one(case, ranker: Callable, cfg: HarnessConfig) -> ViolationReport:
    initial = case.initial_state()
    _, feature_stream, rank_stream = simulate_case(initial, ranker, cfg)
    report = evaluate_trajectory(rank_stream, feature_stream, cfg, name=case.name)
    # purity gate: a ranker that fails the determinism probe is structurally
    # broken even if each single evaluation looks fine
    if not report.structural_failure and not check_determinism(ranker, feature_stream[0]):
        report = replace(
            report,
            total_violations=report.total_violations + cfg.structural_penalty,
            structural_failure=True,
            solved=False,
        )
    return report


def score_benchmark(
    ranker: Callable,
    cases: Sequence,
    cfg: HarnessConfig,
    suite_name: str = "suite",
    ranker_name: Optional[str] = None,
    workers: int = 1,
) -> SuiteReport:
    """Score a ranker over a suite of benchmark cases.

    Cases are independent; with workers > 1 they are evaluated concurrently
    and reassembled in suite order, so the report is deterministic either
    way.
    """
    if not cases:
        raise ValueError("cannot score an empty suite")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda c: _score_one(c, ranker, cfg), cases))
    else:
        reports = [_score_one(case, ranker, cfg) for case in cases]

    total = sum(r.total_violations for r in reports)
    staged = 0.0
    for prefix, weight in zip(cfg.stage_prefixes, cfg.stage_weights):
        upto = len(reports) if prefix is None else min(prefix, len(reports))
        staged += weight * sum(r.total_violations for r in reports[:upto])
    solved = sum(1 for r in reports if r.solved)
    saturated = 2.0 * solved - sum(math.tanh(r.total_violations / 10.0) for r in reports)

    if ranker_name is None:
        ranker_name = getattr(ranker, "name", ranker.__class__.__name__)

    return SuiteReport(
        suite=suite_name,
        ranker=ranker_name,
        window=cfg.window,
        cap=cfg.cap,
        reports=tuple(reports),
        total_violations=total,
        staged_violations=staged,
        solved_count=solved,
        local_increases_total=sum(r.local_increases for r in reports),
        max_plateau=max(r.max_plateau for r in reports),
        saturated_score=saturated,
    )


# Two reference stall instances, dim 4, characteristic 3.  The first
# freezes the continuous lex tuple by driving its second component to 0; the
# second stalls the discretized rank for a full window.
LEX_STALL_POLY = "z^3 + x^7 + z^5*y^2 + z^3*x^2*w^4*y^6 + z^3*x^2*w^6*y^3 + z^4*w^6*y^5"
DISC_STALL_POLY = "z^3 + x^12 + y^6 + w^9*y^4 + x^9*y^8*w^10"


@dataclass(frozen=True)
class CounterexampleFindings:
    """Results of the three stall-instance checks, with expectations.

    Expected outcome: the continuous lex tuple stalls on the first instance
    even with window 10; the discretized rank stalls on the second instance
    with window 5; the catastrophe-term ranker clears the same instance.
    """

    lex_tuple_delay_m10: bool
    disc_delay_m5: bool
    r100_clean_m5: bool
    disc_rank_step0: tuple
    disc_rank_step9: tuple
    lex_c2_first_zero_step: Optional[int]

    @property
    def all_match_expected(self) -> bool:
        return self.lex_tuple_delay_m10 and self.disc_delay_m5 and self.r100_clean_m5

    def to_json_dict(self) -> dict:
        return {
            "lex_tuple_delay_m10": self.lex_tuple_delay_m10,
            "disc_delay_m5": self.disc_delay_m5,
            "r100_clean_m5": self.r100_clean_m5,
            "disc_rank_step0": list(self.disc_rank_step0),
            "disc_rank_step9": list(self.disc_rank_step9),
            "lex_c2_first_zero_step": self.lex_c2_first_zero_step,
            "all_match_expected": self.all_match_expected,
        }


def verify_counterexamples(cap: int = DEFAULT_CAP) -> CounterexampleFindings:
    """Re-run the two stall instances against the three relevant rankers."""
    vars4 = VariableSet.standard(4, 3)
    lex_state = State.initial(parse_polynomial(LEX_STALL_POLY, vars4), vars4)
    disc_state = State.initial(parse_polynomial(DISC_STALL_POLY, vars4), vars4)

    cfg_m10 = HarnessConfig(window=10, cap=cap)
    cfg_m5 = HarnessConfig(window=5, cap=cap)

    clean_lex = get_ranker("clean_lex")
    _, lex_features, lex_ranks = simulate_case(lex_state, clean_lex, cfg_m10)
    lex_report = evaluate_trajectory(lex_ranks, lex_features, cfg_m10, name="lex-stall")
    c2_zero = next((t for t, r in enumerate(lex_ranks) if r[1] == 0.0), None)

    disc = get_ranker("disc_lex")
    _, disc_features, disc_ranks = simulate_case(disc_state, disc, cfg_m5)
    disc_report = evaluate_trajectory(disc_ranks, disc_features, cfg_m5, name="disc-stall")

    r100 = get_ranker("r100")
    _, r100_features, r100_ranks = simulate_case(disc_state, r100, cfg_m5)
    r100_report = evaluate_trajectory(r100_ranks, r100_features, cfg_m5, name="r100-clean")

    return CounterexampleFindings(
        lex_tuple_delay_m10=lex_report.delay_violations >= 1,
        disc_delay_m5=disc_report.delay_violations >= 1,
        r100_clean_m5=r100_report.total_violations == 0,
        disc_rank_step0=tuple(disc_ranks[0]),
        disc_rank_step9=tuple(disc_ranks[9]) if len(disc_ranks) > 9 else (),
        lex_c2_first_zero_step=c2_zero,
    )
