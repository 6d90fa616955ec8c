"""
e_filtrations.py

Filtrations {F_n} of a ring by monomial ideals, and the two quantities the
bounds are built from:

  k    least k with I^{k+1} contained in Q F_k + a F_{k+1}
  v_n  number of generators of F_n modulo Q F_{n-1} + I^n; v = sum of the v_n

Filtration kinds:
  adic              F_n = I^n for the base ideal I itself
  powers            F_n = J^n for an intermediate ideal J
  ratliff_rush      F_n = Ratliff-Rush closure of J^n
  integral_closure  F_n = integral closure of I^n

Terms are memoized per Filtration object, so one object should not be shared
between threads that extend it concurrently.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .a_exponent_core import ExponentVector
from .b_ideal_engine import (
    MonomialIdeal,
    PowerLadder,
    _ideal,
    ideal_leq,
    ideal_product,
    ideal_sum,
    maximal_ideal,
    unit_ideal,
    zero_ideal,
)
from .c_closures import RatliffRushConfig, integral_closure, ratliff_rush_power
from .d_invariants import nu_quotient
from .helpers import AlgebraError, AmbientMismatch, ConfigError, HypothesisNotMet, UnresolvedBound

logger = logging.getLogger(__name__)

ADIC = "adic"
POWERS = "powers"
RATLIFF_RUSH = "ratliff_rush"
INTEGRAL_CLOSURE = "integral_closure"
FILTRATION_KINDS = (ADIC, POWERS, RATLIFF_RUSH, INTEGRAL_CLOSURE)

DEFAULT_K_SEARCH = 24
DEFAULT_V_SEARCH = 24
ZERO_WINDOW = 3


class Filtration:
    def __init__(self, kind: str, base: MonomialIdeal, rr_config: Optional[RatliffRushConfig] = None):
        if kind not in FILTRATION_KINDS:
            raise ConfigError(f"unknown filtration kind '{kind}', expected one of {', '.join(FILTRATION_KINDS)}")
        self.kind = kind
        self.base = base
        self.rr_config = rr_config or RatliffRushConfig()
        self.ladder = PowerLadder(base)
        self._terms: Dict[int, MonomialIdeal] = {0: unit_ideal(base.ambient)}

    @property
    def ambient(self):
        return self.base.ambient

    @property
    def is_power_filtration(self) -> bool:
        """F_{n+1} = Q F_n at one n forces it at every later n."""
        return self.kind in (ADIC, POWERS)

    def term(self, n: int) -> MonomialIdeal:
        if n < 0:
            raise ValueError(f"filtration index must be >= 0, got {n}")
        if n not in self._terms:
            if self.kind in (ADIC, POWERS):
                value = self.ladder[n]
            elif self.kind == RATLIFF_RUSH:
                value = ratliff_rush_power(self.base, n, self.rr_config, self.ladder).closure
            else:
                value = integral_closure(self.ladder[n])
            self._terms[n] = value
        return self._terms[n]

    def check_invariants(self, I: MonomialIdeal, upto: int) -> None:
        """F_0 = A, I F_n inside F_{n+1} and I^n inside F_n for n <= upto."""
        if not self.term(0).is_unit:
            raise HypothesisNotMet("F_0 is not the unit ideal")
        powers = PowerLadder(I)
        for n in range(upto + 1):
            if not ideal_leq(powers[n], self.term(n)):
                raise HypothesisNotMet(f"I^{n} is not contained in F_{n} of {self.describe()}")
            if not ideal_leq(ideal_product(I, self.term(n)), self.term(n + 1)):
                raise HypothesisNotMet(f"I F_{n} is not contained in F_{n + 1} of {self.describe()}")

    def describe(self) -> str:
        return f"{self.kind}{self.base.describe()}"

    def __repr__(self) -> str:
        return f"Filtration({self.describe()})"


@dataclass
class BoundInstance:
    I: MonomialIdeal
    Q: MonomialIdeal
    a: MonomialIdeal
    F: Filtration
    k_search: int = DEFAULT_K_SEARCH
    v_search: int = DEFAULT_V_SEARCH
    rn_bound: Optional[int] = None
    # a pinned k is used as given instead of the least one
    k: Optional[int] = None
    _q_powers: PowerLadder = field(init=False, repr=False)
    _i_powers: PowerLadder = field(init=False, repr=False)

    def __post_init__(self):
        A = self.I.ambient
        for name, ideal in (("Q", self.Q), ("a", self.a), ("F", self.F.base)):
            if ideal.ambient != A:
                raise AmbientMismatch(f"{name} lives in {ideal.ambient.describe()}, I in {A.describe()}")
        if not ideal_leq(self.Q, self.I):
            raise HypothesisNotMet(f"Q = {self.Q.describe()} is not contained in I = {self.I.describe()}")
        if not ideal_leq(self.I, self.F.term(1)):
            raise HypothesisNotMet(f"I = {self.I.describe()} is not contained in F_1 = {self.F.term(1).describe()}")
        self._q_powers = PowerLadder(self.Q)
        adic_of_i = self.F.kind == ADIC and self.F.base == self.I
        self._i_powers = self.F.ladder if adic_of_i else PowerLadder(self.I)

    @property
    def ambient(self):
        return self.I.ambient

    @property
    def i_powers(self) -> PowerLadder:
        return self._i_powers

    @property
    def q_powers(self) -> PowerLadder:
        return self._q_powers

    @property
    def a_is_maximal(self) -> bool:
        return self.a == maximal_ideal(self.ambient)

    def with_a(self, a: MonomialIdeal) -> "BoundInstance":
        return BoundInstance(self.I, self.Q, a, self.F, self.k_search, self.v_search, self.rn_bound, self.k)


def expand_filtration_term(F: Optional[Filtration], I: MonomialIdeal, Q: MonomialIdeal,
                           blocks: Sequence[MonomialIdeal], n: int) -> MonomialIdeal:
    """
    I^n + sum over l <= n of Q^{n-l} I_l, with blocks[l] = I_l. When F is given
    the blocks must have been extracted from it and the sum is checked against F_n.
    """
    budget = len(blocks) - 1
    if n > budget:
        raise UnresolvedBound(f"term {n} needs blocks up to {n}, only {budget} materialized", bound=budget)
    q_powers = PowerLadder(Q)
    total = PowerLadder(I)[n]
    for ell in range(n + 1):
        if not blocks[ell].is_zero:
            total = ideal_sum(total, ideal_product(q_powers[n - ell], blocks[ell]))
    if F is not None and total != F.term(n):
        raise AlgebraError(f"F_{n} = {F.term(n).describe()} but the block expansion gives {total.describe()}")
    return total


def find_k(inst: BoundInstance) -> int:
    if inst.k is not None:
        if not _k_holds(inst, inst.k):
            raise HypothesisNotMet(f"pinned k = {inst.k} does not satisfy I^(k+1) in Q F_k + a F_(k+1)")
        return inst.k
    for k in range(inst.k_search + 1):
        if _k_holds(inst, k):
            logger.debug("k = %d for %s", k, inst.F.describe())
            return k
    raise UnresolvedBound(f"no k <= {inst.k_search} with I^(k+1) in Q F_k + a F_(k+1)", bound=inst.k_search)


def _k_holds(inst: BoundInstance, k: int) -> bool:
    target = ideal_product(inst.Q, inst.F.term(k))
    if not inst.a.is_zero:
        target = ideal_sum(target, ideal_product(inst.a, inst.F.term(k + 1)))
    return ideal_leq(inst.i_powers[k + 1], target)


@dataclass(frozen=True)
class VData:
    """v_n for n = 1..budget (index 0 holds v_0 = 0) and the extracted blocks I_n."""

    values: Tuple[int, ...]
    blocks: Tuple[MonomialIdeal, ...]
    stable_from: int
    short_circuit: bool

    @property
    def v(self) -> int:
        return sum(self.values)

    @property
    def budget(self) -> int:
        return len(self.values) - 1

    def block_generators(self) -> Dict[int, Tuple[ExponentVector, ...]]:
        return {n: b.gens for n, b in enumerate(self.blocks) if not b.is_zero}


def compute_v(inst: BoundInstance) -> VData:
    """
    v_n = nu(F_n / (Q F_{n-1} + I^n)). Stops after ZERO_WINDOW consecutive
    zeros, or at the first n with F_n = Q F_{n-1} on power filtrations.
    """
    A = inst.ambient
    values: List[int] = [0]
    blocks: List[MonomialIdeal] = [zero_ideal(A)]
    zeros = 0
    for n in range(1, inst.v_search + 1):
        Fn = inst.F.term(n)
        q_part = ideal_product(inst.Q, inst.F.term(n - 1))
        G = ideal_sum(q_part, inst.i_powers[n])
        count = nu_quotient(Fn, G)
        values.append(count)
        blocks.append(_ideal(A, (g for g in Fn.gens if g not in G)))
        zeros = zeros + 1 if count == 0 else 0
        if count == 0 and inst.F.is_power_filtration and Fn == q_part:
            logger.debug("compute_v: F_%d = Q F_%d, stopping", n, n - 1)
            return VData(tuple(values), tuple(blocks), n, True)
        if zeros >= ZERO_WINDOW:
            return VData(tuple(values), tuple(blocks), n - ZERO_WINDOW + 1, False)
    raise UnresolvedBound(f"v_n did not vanish over {ZERO_WINDOW} consecutive steps within {inst.v_search}",
                          bound=inst.v_search)
