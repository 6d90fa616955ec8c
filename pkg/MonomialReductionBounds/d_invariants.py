"""
d_invariants.py

Numerical invariants of monomial ideals:

  length_quotient   number of semigroup points outside I (math.inf if infinite)
  nu_quotient       minimal number of generators of F/G by graded Nakayama
  hilbert_lengths   l(A/F_{n+1}) for n = 0..up_to along a filtration
  fit_hilbert_coefficients / hilbert_coefficients
                    exact (e0, e1, e2) from second differences
  reduction_number  least n with I^{n+1} = Q I^n
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from .a_exponent_core import FREE, VERONESE, AmbientRing, add, enumerate_box, scale
from .b_ideal_engine import MonomialIdeal, PowerLadder, ideal_contains_monomial, ideal_leq, ideal_product
from .c_closures import default_rn_bound, polygon_certifies_non_reduction
from .helpers import AlgebraError, AmbientMismatch, HypothesisNotMet, StabilizationError, UnresolvedBound

logger = logging.getLogger(__name__)

HILBERT_WINDOW = 3
HILBERT_START = 8
HILBERT_CAP = 32


def _ray_power(I: MonomialIdeal, h) -> Optional[int]:
    """Least k >= 1 with k*h in I, None when the ray through h misses I."""
    A = I.ambient
    best = None
    for g in I.gens:
        if any(gc > 0 and hc == 0 for gc, hc in zip(g, h)):
            continue
        k = max([1] + [-(-gc // hc) for gc, hc in zip(g, h) if hc > 0])
        if A.kind != FREE and A.kind != VERONESE:
            # affine semigroups: k*h - g may need a few more steps to become a member
            limit = k + sum(g) + 1
            while k <= limit and not ideal_contains_monomial(I, scale(k, h)):
                k += 1
            if k > limit:
                continue
        if best is None or k < best:
            best = k
    return best


def ray_powers(I: MonomialIdeal) -> Optional[Dict[tuple, int]]:
    out = {}
    for h in I.ambient.maximal_ideal_gens:
        k = _ray_power(I, h)
        if k is None:
            return None
        out[h] = k
    return out


def is_m_primary(I: MonomialIdeal) -> bool:
    """Every maximal-ideal generator has a power inside I."""
    if I.is_zero:
        return False
    return ray_powers(I) is not None


def _count_under_staircase(I: MonomialIdeal, modulus: int):
    stairs = sorted(I.gens)
    if stairs[0][0] != 0 or stairs[-1][1] != 0:
        return math.inf
    total = 0
    for (x0, y), (x1, _) in zip(stairs, stairs[1:]):
        for x in range(x0, x1):
            r = (-x) % modulus
            if r < y:
                total += (y - 1 - r) // modulus + 1
    return total


def length_quotient(A: AmbientRing, I: MonomialIdeal):
    """
    l(A/I) as the number of semigroup points outside I. Returns math.inf when
    some ray of the semigroup never meets I.
    """
    if I.ambient != A:
        raise AmbientMismatch(f"{I.ambient.describe()} vs {A.describe()}")
    if I.is_zero:
        return math.inf
    if I.is_unit:
        return 0
    if A.dim == 2 and A.kind in (FREE, VERONESE):
        # on these ambients divisibility between members is the componentwise order
        return _count_under_staircase(I, A.degree if A.kind == VERONESE else 1)
    powers = ray_powers(I)
    if powers is None:
        return math.inf
    box = A.zero
    for h, k in powers.items():
        box = add(box, scale(k - 1, h))
    return sum(1 for e in enumerate_box(A, box) if not ideal_contains_monomial(I, e))


def nu_quotient(F: MonomialIdeal, G: MonomialIdeal) -> int:
    """
    nu(F/G): minimal generators of F surviving modulo G + mF. A minimal
    generator of F never lies in mF, so this counts the ones outside G.
    """
    if not ideal_leq(G, F):
        raise HypothesisNotMet(f"{G.describe()} is not contained in {F.describe()}")
    return sum(1 for g in F.gens if not ideal_contains_monomial(G, g))


@dataclass(frozen=True)
class HilbertData:
    lengths: Tuple[Tuple[int, int], ...]
    fitted: Optional[Tuple[int, int, int]] = None
    stabilization_index: Optional[int] = None

    def polynomial(self, n: int) -> int:
        e0, e1, e2 = self.fitted
        return e0 * math.comb(n + 2, 2) - e1 * (n + 1) + e2

    def to_report(self) -> dict:
        out = {"lengths": [list(p) for p in self.lengths]}
        if self.fitted is not None:
            out["e"] = list(self.fitted)
            out["stabilizationIndex"] = self.stabilization_index
        return out


def hilbert_lengths(F, up_to: int) -> HilbertData:
    """F is anything with term(n); the lengths are l(A/F_{n+1}) for n = 0..up_to."""
    lengths = []
    for n in range(up_to + 1):
        term = F.term(n + 1)
        value = length_quotient(term.ambient, term)
        if value == math.inf:
            raise HypothesisNotMet(f"F_{n + 1} = {term.describe()} is not m-primary")
        lengths.append((n, value))
    return HilbertData(tuple(lengths))


def fit_hilbert_coefficients(data: HilbertData, window: int = HILBERT_WINDOW) -> HilbertData:
    values = [v for _, v in data.lengths]
    d2 = [values[i + 2] - 2 * values[i + 1] + values[i] for i in range(len(values) - 2)]
    start = None
    for s in range(len(d2) - window + 1):
        if all(d == d2[s] for d in d2[s:]):
            start = s
            break
    if start is None:
        raise StabilizationError(f"second differences not constant over {window} terms in {len(values)} lengths",
                                 bound=len(values) - 1)
    e0 = d2[start]
    rest = [v - e0 * math.comb(n + 2, 2) for n, v in enumerate(values)]
    e1 = -(rest[start + 1] - rest[start])
    e2 = rest[start] + e1 * (start + 1)
    fitted = HilbertData(data.lengths, (e0, e1, e2), start)
    for n in range(start, len(values)):
        if fitted.polynomial(n) != values[n]:
            raise AlgebraError(f"Hilbert polynomial misses l({n}) = {values[n]}")
    return fitted


def hilbert_coefficients(F, up_to: int = HILBERT_START, cap: int = HILBERT_CAP) -> HilbertData:
    """Fit, doubling the number of lengths until the tail is quadratic or cap is hit."""
    while True:
        try:
            return fit_hilbert_coefficients(hilbert_lengths(F, up_to))
        except StabilizationError:
            if up_to >= cap:
                raise
            up_to = min(2 * up_to, cap)
            logger.debug("extending Hilbert lengths to %d terms", up_to + 1)


def reduction_number(Q: MonomialIdeal, I: MonomialIdeal, bound: Optional[int] = None,
                     ladder: Optional[PowerLadder] = None):
    """
    Least n <= bound with I^{n+1} = Q I^n. math.inf when the Newton polygons
    prove Q is no reduction; UnresolvedBound when the search runs out.
    """
    if not ideal_leq(Q, I):
        raise HypothesisNotMet(f"Q = {Q.describe()} is not contained in I = {I.describe()}")
    bound = default_rn_bound(I) if bound is None else bound
    if Q == I:
        return 0
    if Q.is_zero or polygon_certifies_non_reduction(Q, I):
        return math.inf
    ladder = ladder or PowerLadder(I)
    for n in range(bound + 1):
        if ladder[n + 1] == ideal_product(Q, ladder[n]):
            for m in (n + 1, n + 2):
                if ladder[m + 1] != ideal_product(Q, ladder[m]):
                    raise AlgebraError(f"I^{m + 1} = Q I^{m} failed after holding at {n}")
            return n
    raise UnresolvedBound(f"no n <= {bound} with I^(n+1) = Q I^n", bound=bound)
