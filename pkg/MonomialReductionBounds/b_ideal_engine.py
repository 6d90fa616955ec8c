"""
b_ideal_engine.py

Monomial ideals of a semigroup ring and exact ring-element arithmetic.

A MonomialIdeal always holds its unique minimal generating set, sorted in
graded-lex order, so two ideals are equal exactly when their generator tuples
are. The zero ideal has no generators; the unit ideal is generated by the
zero exponent.

Free two-variable ideals take a staircase fast path for minimalization and
intersection (x ascending forces y strictly descending on minimal
generators); every other ambient goes through the divisibility oracle of
a_exponent_core.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .a_exponent_core import (
    AmbientRing,
    ExponentVector,
    add,
    as_exponent,
    componentwise_max,
    divides,
    enumerate_box,
    graded_lex_key,
    semigroup_contains,
)
from .helpers import AmbientMismatch, NonMemberExponent, UnsupportedAmbient, ZeroIdealError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonomialIdeal:
    ambient: AmbientRing
    gens: Tuple[ExponentVector, ...]
    # colon results on non-free ambients remember the box they were searched in
    search_box: Optional[ExponentVector] = field(default=None, compare=False)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == (self.ambient.zero,)

    @property
    def num_gens(self) -> int:
        return len(self.gens)

    def __contains__(self, e) -> bool:
        return ideal_contains_monomial(self, tuple(e))

    def describe(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(str(list(g)) for g in self.gens) + ")"

    def to_config(self) -> List[List[int]]:
        return [list(g) for g in self.gens]


def _staircase(points: Iterable[ExponentVector]) -> List[ExponentVector]:
    """Minimal elements of a set of N^2 points, x ascending (so y descending)."""
    kept = []
    best_y = None
    for x, y in sorted(set(points)):
        if best_y is None or y < best_y:
            kept.append((x, y))
            best_y = y
    return kept


def _minimal(A: AmbientRing, points: Iterable[ExponentVector]) -> Tuple[ExponentVector, ...]:
    if A.is_free and A.dim == 2:
        kept = _staircase(points)
    else:
        kept = []
        # a proper divisor always has smaller total degree, so it is seen first
        for e in sorted(set(points), key=graded_lex_key):
            if not any(divides(A, g, e) for g in kept):
                kept.append(e)
    return tuple(sorted(kept, key=graded_lex_key))


def _ideal(A: AmbientRing, points: Iterable[ExponentVector], search_box=None) -> MonomialIdeal:
    return MonomialIdeal(A, _minimal(A, points), search_box)


def _same_ambient(*ideals) -> AmbientRing:
    A = ideals[0].ambient
    for other in ideals[1:]:
        if other.ambient != A:
            raise AmbientMismatch(f"{A.describe()} vs {other.ambient.describe()}")
    return A


def minimalize(ambient: AmbientRing, raw: Iterable[Sequence[int]]) -> MonomialIdeal:
    """Unique minimal generating set of the ideal generated by raw."""
    points = []
    for values in raw:
        e = as_exponent(values, ambient.dim)
        if not semigroup_contains(ambient, e):
            raise NonMemberExponent(f"{list(e)} is not in the semigroup of {ambient.describe()}")
        points.append(e)
    return _ideal(ambient, points)


def zero_ideal(A: AmbientRing) -> MonomialIdeal:
    return MonomialIdeal(A, ())


def unit_ideal(A: AmbientRing) -> MonomialIdeal:
    return MonomialIdeal(A, (A.zero,))


def maximal_ideal(A: AmbientRing) -> MonomialIdeal:
    return _ideal(A, A.maximal_ideal_gens)


def ideal_sum(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    A = _same_ambient(I, J)
    return _ideal(A, I.gens + J.gens)


def ideal_product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    A = _same_ambient(I, J)
    return _ideal(A, (add(g, h) for g in I.gens for h in J.gens))


def power_ladder(I: MonomialIdeal, n: int) -> List[MonomialIdeal]:
    """[I^0, I^1, ..., I^n], each step minimalized."""
    if n < 0:
        raise ValueError(f"power must be >= 0, got {n}")
    ladder = [unit_ideal(I.ambient)]
    for _ in range(n):
        ladder.append(ideal_product(ladder[-1], I))
    return ladder


def ideal_power(I: MonomialIdeal, n: int) -> MonomialIdeal:
    return power_ladder(I, n)[-1]


class PowerLadder:
    """Memoized powers of one ideal; callers that walk I^0, I^1, ... share it."""

    def __init__(self, base: MonomialIdeal):
        self.base = base
        self._powers = [unit_ideal(base.ambient)]

    def __getitem__(self, n: int) -> MonomialIdeal:
        if n < 0:
            raise ValueError(f"power must be >= 0, got {n}")
        while len(self._powers) <= n:
            self._powers.append(ideal_product(self._powers[-1], self.base))
        return self._powers[n]


def ideal_contains_monomial(I: MonomialIdeal, e: ExponentVector) -> bool:
    if len(e) != I.ambient.dim:
        raise AmbientMismatch(f"{list(e)} does not live in {I.ambient.describe()}")
    return any(divides(I.ambient, g, e) for g in I.gens)


def ideal_leq(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    """I is contained in J."""
    _same_ambient(I, J)
    return all(ideal_contains_monomial(J, g) for g in I.gens)


def ideal_eq(I: MonomialIdeal, J: MonomialIdeal) -> bool:
    return ideal_leq(I, J) and ideal_leq(J, I)


def _profile(stairs: List[ExponentVector], xs: List[int]) -> List[Optional[int]]:
    # smallest y with (x, y) in the ideal for each sorted x; None for an empty column
    out = []
    i, y = 0, None
    for x in xs:
        while i < len(stairs) and stairs[i][0] <= x:
            y = stairs[i][1]
            i += 1
        out.append(y)
    return out


def ideal_intersection(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """Exact intersection; free ambients only."""
    A = _same_ambient(I, J)
    if not A.is_free:
        raise UnsupportedAmbient(f"intersection is only exact on free ambients, not {A.describe()}")
    if I.is_zero or J.is_zero:
        return zero_ideal(A)
    if A.dim == 2:
        left, right = sorted(I.gens), sorted(J.gens)
        xs = sorted({g[0] for g in left} | {g[0] for g in right})
        points = [(x, max(y1, y2)) for x, y1, y2 in zip(xs, _profile(left, xs), _profile(right, xs))
                  if y1 is not None and y2 is not None]
        return _ideal(A, points)
    return _ideal(A, (tuple(max(a, b) for a, b in zip(g, h)) for g in I.gens for h in J.gens))


def ideal_colon(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    """
    (I : J) = {a in S : a + g in I for every generator g of J}.

    Free ambients intersect the single-generator colons. Other ambients search
    the box max(I) + max(J) + one generator span and record it on the result.
    """
    A = _same_ambient(I, J)
    if J.is_zero:
        raise ZeroIdealError("colon by the zero ideal")
    if J.is_unit or I.is_zero:
        return I
    if A.is_free:
        result = None
        for g in J.gens:
            single = _ideal(A, (tuple(max(a - b, 0) for a, b in zip(e, g)) for e in I.gens))
            result = single if result is None else ideal_intersection(result, single)
        return result
    span = A.generator_span
    top_i = componentwise_max(I.gens, A.dim)
    top_j = componentwise_max(J.gens, A.dim)
    box = tuple(a + b + span for a, b in zip(top_i, top_j))
    survivors = [a for a in enumerate_box(A, box)
                 if all(ideal_contains_monomial(I, add(a, g)) for g in J.gens)]
    logger.debug("colon on %s searched box %s, %d survivors", A.describe(), list(box), len(survivors))
    return _ideal(A, survivors, search_box=box)


@dataclass(frozen=True)
class RingElement:
    """A finite formal sum of semigroup monomials with integer coefficients."""

    ambient: AmbientRing
    terms: Tuple[Tuple[ExponentVector, int], ...] = ()

    @classmethod
    def from_terms(cls, ambient: AmbientRing, mapping) -> "RingElement":
        checked: Dict[ExponentVector, int] = {}
        items = mapping.items() if isinstance(mapping, dict) else mapping
        for values, coeff in items:
            e = as_exponent(values, ambient.dim)
            if not semigroup_contains(ambient, e):
                raise NonMemberExponent(f"{list(e)} is not in the semigroup of {ambient.describe()}")
            checked[e] = checked.get(e, 0) + int(coeff)
        return _element(ambient, checked)

    @classmethod
    def monomial(cls, ambient: AmbientRing, e: Sequence[int], coeff: int = 1) -> "RingElement":
        return cls.from_terms(ambient, {tuple(e): coeff})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> Dict[ExponentVector, int]:
        return dict(self.terms)

    def to_config(self) -> List[list]:
        return [[list(e), c] for e, c in self.terms]

    def __add__(self, other: "RingElement") -> "RingElement":
        return elem_add(self, other)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return elem_sub(self, other)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return elem_mul(self, other)

    def __neg__(self) -> "RingElement":
        return RingElement(self.ambient, tuple((e, -c) for e, c in self.terms))


def _element(A: AmbientRing, coeffs: Dict[ExponentVector, int]) -> RingElement:
    terms = tuple(sorted(((e, c) for e, c in coeffs.items() if c != 0), key=lambda t: graded_lex_key(t[0])))
    return RingElement(A, terms)


def zero_element(A: AmbientRing) -> RingElement:
    return RingElement(A, ())


def one_element(A: AmbientRing) -> RingElement:
    return RingElement(A, ((A.zero, 1),))


def _check_elements(f: RingElement, g: RingElement) -> AmbientRing:
    if f.ambient != g.ambient:
        raise AmbientMismatch(f"{f.ambient.describe()} vs {g.ambient.describe()}")
    return f.ambient


def elem_add(f: RingElement, g: RingElement) -> RingElement:
    A = _check_elements(f, g)
    coeffs = dict(f.terms)
    for e, c in g.terms:
        coeffs[e] = coeffs.get(e, 0) + c
    return _element(A, coeffs)


def elem_sub(f: RingElement, g: RingElement) -> RingElement:
    A = _check_elements(f, g)
    coeffs = dict(f.terms)
    for e, c in g.terms:
        coeffs[e] = coeffs.get(e, 0) - c
    return _element(A, coeffs)


def elem_mul(f: RingElement, g: RingElement) -> RingElement:
    A = _check_elements(f, g)
    coeffs: Dict[ExponentVector, int] = {}
    for e, c in f.terms:
        for h, d in g.terms:
            key = add(e, h)
            coeffs[key] = coeffs.get(key, 0) + c * d
    return _element(A, coeffs)


def element_in_ideal(f: RingElement, I: MonomialIdeal) -> bool:
    """Monomial ideals split elements termwise."""
    if f.ambient != I.ambient:
        raise AmbientMismatch(f"{f.ambient.describe()} vs {I.ambient.describe()}")
    return all(ideal_contains_monomial(I, e) for e, _ in f.terms)
