"""Ranking functions over the 26-feature vector, discretization, lex order.

Three built-in rankers are provided:

* ``two_component`` — a continuous pair (gate, weighted sum) whose scalar
  weights encode a component hierarchy;
* ``clean_lex`` — the same five components returned unscalarized;
* ``disc_lex`` / ``r100`` — five-component raw ranks meant to be composed
  with the floor/offset/log discretization map into natural-number tuples.

Every ranker is a pure function: identical feature vectors give bit-identical
outputs.  The first component is 0 exactly on monomial-phase inputs and
strictly positive otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

Rank = Sequence[float]

LESS = -1
EQUAL = 0
GREATER = 1


def rank_clean_lex(fv: Sequence[float]) -> tuple[float, float, float, float, float]:
    """Five-component continuous rank (the unscalarized two-component core)."""
    f0 = float(fv[0])
    f1 = float(fv[1])
    f4 = float(fv[4])
    f5 = float(fv[5])
    f7 = float(fv[7])
    f8 = float(fv[8])
    f9 = int(fv[9])
    f10 = float(fv[10])
    f14 = float(fv[14])
    f18 = float(fv[18])
    f19 = float(fv[19])
    f20 = float(fv[20])
    f21 = float(fv[21])
    f22 = float(fv[22])
    f23 = float(fv[23])
    f24 = float(fv[24])
    f25 = float(fv[25])

    # gate: exactly 0 in monomial phase, order + 0.25 otherwise
    c1 = 0.0 if f9 == 1 else (f0 + 0.25)

    c2 = f14

    # saturated plateau breaker: Hilbert-Samuel mass against a Jacobian
    # reward and an angular potential in the (depth, mass) plane
    jacobian_reward = (1.0 - f23) * (1.0 + f22 / 5.0)
    locus_penalty = 0.1 * f19 + 0.05 * f20
    angular_potential = -5.0 * math.atan2(f24 / 10.0, f21 / 25.0)
    plateau_input = f21 + locus_penalty + f10 - jacobian_reward + angular_potential
    c3 = math.tanh(plateau_input / 5.0) * 50.0

    c4 = f1 * 0.15 - f7 * 1.5 - 1.0 * math.exp(f25 * 0.1) + f8 * 0.2

    c5 = f5 * 0.5 + f18 * 0.5 - f4 * 0.1

    return (c1, c2, c3, c4, c5)


# Scalarization weights: each level clears the worst-case swing of everything
# below it, assuming |c3| <= 50, |c4| <= 22326, |c5| <= 55.
_W_C4 = 250.0
_W_C3 = math.ceil(22326.0 + 1.0) * _W_C4  # 5581750
_W_C2 = math.ceil(50.0 + 1.0) * _W_C3  # 284669250
_W_C5 = 1.0


def rank_two_component(fv: Sequence[float]) -> tuple[float, float]:
    """Continuous two-component rank: (gate, scalarized c2..c5)."""
    c1, c2, c3, c4, c5 = rank_clean_lex(fv)
    combined = _W_C2 * c2 + _W_C3 * c3 + _W_C4 * c4 + _W_C5 * c5
    return (c1, combined)


def rank_disc_raw(fv: Sequence[float]) -> tuple[float, float, float, float, float]:
    """Five-component raw rank built for discretization (cubic depth charge)."""
    f0 = float(fv[0])
    f1 = float(fv[1])
    f5 = float(fv[5])
    f8 = float(fv[8])
    f9 = int(fv[9])
    f10 = float(fv[10])
    f14 = float(fv[14])
    f18 = float(fv[18])
    f19 = float(fv[19])
    f20 = float(fv[20])
    f21 = float(fv[21])
    f23 = float(fv[23])
    f24 = float(fv[24])
    f25 = float(fv[25])

    c1 = 0.0 if f9 == 1 else f0

    c2 = 0.5 * f14 + 0.5 * f21 + 0.05 * f1 + 0.01 * f5

    c3 = f10 + f19 + 0.1 * f20

    # inverted depth/complexity accumulator, amplified when the Jacobian
    # carries no information
    interaction = f10 * f24 * (1.0 - f23)
    c4 = -1.0 * (
        4.0 * (f24 ** 3)
        + 1.0 * f25
        + 5.0 * (1.0 - f23) * f24
        + 10.0 * interaction
    )

    c5 = f18 + 0.5 * f8

    return (c1, c2, c3, c4, c5)


def rank_r100_raw(fv: Sequence[float]) -> tuple[float, float, float, float, float]:
    """Five-component raw rank with an exponential catastrophe term in c4."""
    f0 = float(fv[0])
    f1 = float(fv[1])
    f4 = float(fv[4])
    f5 = float(fv[5])
    f6 = float(fv[6])
    f7 = float(fv[7])
    f8 = float(fv[8])
    f9 = int(fv[9])
    f10 = float(fv[10])
    f12 = float(fv[12])
    f13 = float(fv[13])
    f14 = float(fv[14])
    f15 = float(fv[15])
    f17 = float(fv[17])
    f18 = float(fv[18])
    f19 = float(fv[19])
    f20 = float(fv[20])
    f21 = float(fv[21])
    f22 = float(fv[22])
    f23 = float(fv[23])
    f24 = float(fv[24])
    f25 = float(fv[25])

    c1 = 0.0 if f9 == 1 else f0

    c2 = (
        1.0 * f14
        + 0.1 * f21
        + 0.1 * f1
        + 0.8 * f23
        + 0.5 * f7
        + 0.2 * f17
    )

    c3 = (
        f10
        + 2.0 * f19
        + 0.5 * f20
        + 0.1 * f4
        + 0.2 * f12
        + 0.1 * f13
    )

    depth_mass = 10.0 * (f24 ** 2.0) + 5.0 * f25

    jacobian_gap = f6 + (1.0 - f23) + f12 + f13
    jacobian_activation = max(0.0, math.tanh(jacobian_gap + f21 / (1.0 + f22)))

    wildness_signal = f10 + f18 + f5 + f19 * f20 + f4
    wildness_activation = max(0.0, math.tanh(wildness_signal / 5.0))

    effort_pressure = max(0.0, math.tanh((f24 + f25 + f4) / 10.0))

    overload_scale = 1000.0 * (1.0 + math.tanh((depth_mass + f4 + f5 + f18) / 100.0))

    blended_activation = (
        0.01
        + 0.5 * jacobian_activation
        + 0.5 * wildness_activation
        + 0.1 * effort_pressure
    )

    catastrophe = overload_scale * math.exp(blended_activation)

    c4 = -1.0 * (depth_mass + catastrophe)

    c5 = f18 + f5 + 0.5 * f8 + 2.0 * f6 + 0.1 * f15 - 0.1 * f22

    return (c1, c2, c3, c4, c5)


def discretize(raw: Sequence[float]) -> tuple[int, int, int, int, int]:
    """Floor/offset/log map sending a 5-component raw rank into naturals.

    The logarithmic compression of the fourth component keeps very negative
    values comparable on a finite scale while preserving monotonicity (more
    negative is better, i.e. smaller image).  The image is clamped at 0 so
    the codomain is genuinely well-founded.
    """
    if len(raw) != 5:
        raise ValueError(f"discretization expects 5 components, got {len(raw)}")
    c1, c2, c3, c4, c5 = raw
    d1 = math.floor(c1)
    d2 = math.floor(100.0 * c2)
    d3 = math.floor(10.0 * (c3 + 50.0))
    d4 = 5000 - math.floor(100.0 * math.log(1.0 + max(0.0, -c4)))
    if d4 < 0:
        d4 = 0
    d5 = math.floor(10.0 * (c5 + 20.0))
    return (d1, d2, d3, d4, d5)


def lex_compare(a: Sequence[float], b: Sequence[float]) -> int:
    """Standard lexicographic order on exact values: -1, 0 or +1.

    No epsilon: components are compared as exact doubles (or ints).
    """
    if len(a) != len(b):
        raise ValueError(f"rank length mismatch: {len(a)} vs {len(b)}")
    for x, y in zip(a, b):
        if x < y:
            return LESS
        if x > y:
            return GREATER
    return EQUAL


_RAW_FUNCTIONS: dict[str, tuple[Callable[[Sequence[float]], tuple], int]] = {
    "two_component": (rank_two_component, 2),
    "clean_lex": (rank_clean_lex, 5),
    "disc_lex": (rank_disc_raw, 5),
    "r100": (rank_r100_raw, 5),
}

#: Which registry entries compose with the discretization map by default.
_DISCRETIZED_BY_DEFAULT = frozenset({"disc_lex", "r100"})


@dataclass(frozen=True)
class Ranker:
    """A named pure rank function, optionally composed with discretization."""

    name: str
    raw: Callable[[Sequence[float]], tuple]
    discretized: bool = False

    def __call__(self, fv: Sequence[float]) -> tuple:
        rank = self.raw(fv)
        return discretize(rank) if self.discretized else rank


def ranker_names() -> tuple[str, ...]:
    return tuple(_RAW_FUNCTIONS)


def get_ranker(name: str, discretized: bool | None = None) -> Ranker:
    """Look up a built-in ranker; discretized overrides the registry default."""
    if name not in _RAW_FUNCTIONS:
        raise ValueError(
            f"unknown ranker {name!r}; available: {', '.join(_RAW_FUNCTIONS)}"
        )
    raw, length = _RAW_FUNCTIONS[name]
    if discretized is None:
        discretized = name in _DISCRETIZED_BY_DEFAULT
    if discretized and length != 5:
        raise ValueError(f"ranker {name!r} returns {length} components; discretization needs 5")
    return Ranker(name=name, raw=raw, discretized=discretized)
