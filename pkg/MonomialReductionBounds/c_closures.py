"""
c_closures.py

Closure operations on monomial ideals:

  - integral closure through the Newton polygon (two-dimensional ambients,
    free or Veronese; the polygon is built with exact rational halfplanes from
    the lower-left convex hull of the generator exponents)
  - Ratliff-Rush closure through the increasing colon chain
    (J^{n+k} : J^k), stopped once it has been constant over a window
  - the reduction test Q <= I, with the Newton polygon as a certificate of
    non-reduction
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .a_exponent_core import FREE, VERONESE, ExponentVector, componentwise_max, enumerate_box
from .b_ideal_engine import (
    MonomialIdeal,
    PowerLadder,
    _ideal,
    _staircase,
    ideal_colon,
    ideal_eq,
    ideal_leq,
    ideal_product,
)
from .helpers import HypothesisNotMet, StabilizationError, UnsupportedAmbient, ZeroIdealError

logger = logging.getLogger(__name__)

Halfplane = Tuple[Fraction, Fraction, Fraction]

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class NewtonPolyhedron:
    """Halfplanes a*x + b*y >= c whose intersection is conv(gens) + R^2_{>=0}."""

    halfplanes: Tuple[Halfplane, ...]
    vertices: Tuple[ExponentVector, ...]

    def contains(self, e) -> bool:
        x, y = e
        return all(a * x + b * y >= c for a, b, c in self.halfplanes)

    def min_y(self, x: int) -> Optional[int]:
        """Smallest integer y >= 0 with (x, y) inside, None if the column misses."""
        y = 0
        for a, b, c in self.halfplanes:
            if b == 0:
                if a * x < c:
                    return None
                continue
            need = (c - a * x) / b
            bound = -((-need.numerator) // need.denominator)
            if bound > y:
                y = bound
        return y


def newton_polyhedron(I: MonomialIdeal) -> NewtonPolyhedron:
    if I.ambient.dim != 2:
        raise UnsupportedAmbient(f"Newton polygons need a two-dimensional ambient, not {I.ambient.describe()}")
    if I.is_zero:
        raise ZeroIdealError("the zero ideal has no Newton polygon")
    hull = []
    for p in _staircase(I.gens):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    planes = [(Fraction(1), Fraction(0), Fraction(hull[0][0])),
              (Fraction(0), Fraction(1), Fraction(hull[-1][1]))]
    for p, q in zip(hull, hull[1:]):
        a, b = p[1] - q[1], q[0] - p[0]
        planes.append((Fraction(a), Fraction(b), Fraction(a * p[0] + b * p[1])))
    return NewtonPolyhedron(tuple(planes), tuple(hull))


def _check_closure_ambient(I: MonomialIdeal) -> None:
    A = I.ambient
    if A.dim != 2 or A.kind not in (FREE, VERONESE):
        raise UnsupportedAmbient(f"integral closure is implemented for Free(2) and Veronese ambients, not {A.describe()}")


def integral_closure(I: MonomialIdeal) -> MonomialIdeal:
    _check_closure_ambient(I)
    if I.is_zero:
        raise ZeroIdealError("integral closure of the zero ideal")
    if I.is_unit:
        return I
    A = I.ambient
    polygon = newton_polyhedron(I)
    if A.is_free:
        top_x = max(g[0] for g in I.gens)
        points = []
        for x in range(top_x + 1):
            y = polygon.min_y(x)
            if y is not None:
                points.append((x, y))
        return _ideal(A, points)
    # non-free: one generator span of slack keeps every minimal generator inside the box
    top = componentwise_max(I.gens, 2)
    box = tuple(c + A.generator_span for c in top)
    return _ideal(A, (e for e in enumerate_box(A, box) if polygon.contains(e)))


@dataclass(frozen=True)
class RatliffRushConfig:
    window_stable: int = 3
    max_steps: int = 25


@dataclass(frozen=True)
class RatliffRushResult:
    closure: MonomialIdeal
    steps: int
    window: int


def ratliff_rush_power(J: MonomialIdeal, n: int, config: Optional[RatliffRushConfig] = None,
                       ladder: Optional[PowerLadder] = None) -> RatliffRushResult:
    """
    Ratliff-Rush closure of J^n as the stable value of (J^{n+k} : J^k), k >= 1.
    """
    config = config or RatliffRushConfig()
    if J.is_zero:
        raise ZeroIdealError("Ratliff-Rush closure needs a nonzero ideal")
    if n < 1:
        raise ValueError(f"power must be >= 1, got {n}")
    ladder = ladder or PowerLadder(J)
    chain = []
    for k in range(1, config.max_steps + 1):
        chain.append(ideal_colon(ladder[n + k], ladder[k]))
        window = chain[-config.window_stable:]
        if len(window) == config.window_stable and all(c == window[-1] for c in window):
            stable = window[-1]
            if not ideal_leq(ideal_product(stable, ladder[k]), ladder[n + k]):
                raise StabilizationError(f"false stabilization of the colon chain at step {k}", bound=config.max_steps)
            logger.debug("Ratliff-Rush chain of power %d stable after %d steps", n, k)
            return RatliffRushResult(stable, k, config.window_stable)
    raise StabilizationError(
        f"colon chain did not stabilize within {config.max_steps} steps", bound=config.max_steps)


def ratliff_rush(I: MonomialIdeal, config: Optional[RatliffRushConfig] = None) -> RatliffRushResult:
    return ratliff_rush_power(I, 1, config)


@dataclass(frozen=True)
class ReductionTest:
    status: str
    n: Optional[int] = None
    bound: Optional[int] = None


def default_rn_bound(I: MonomialIdeal) -> int:
    return 4 * I.num_gens + 10


def polygon_certifies_non_reduction(Q: MonomialIdeal, I: MonomialIdeal) -> bool:
    """True when some generator of I lies outside the Newton polygon of Q."""
    A = I.ambient
    if A.dim != 2 or A.kind not in (FREE, VERONESE) or Q.is_zero:
        return False
    polygon = newton_polyhedron(Q)
    return not all(polygon.contains(g) for g in I.gens)


def is_reduction(Q: MonomialIdeal, I: MonomialIdeal, bound: Optional[int] = None) -> ReductionTest:
    if not ideal_leq(Q, I):
        raise HypothesisNotMet(f"Q = {Q.describe()} is not contained in I = {I.describe()}")
    bound = default_rn_bound(I) if bound is None else bound
    if Q == I:
        return ReductionTest(YES, 0, bound)
    if Q.is_zero or polygon_certifies_non_reduction(Q, I):
        return ReductionTest(NO, None, bound)
    ladder = PowerLadder(I)
    for n in range(bound + 1):
        if ideal_eq(ladder[n + 1], ideal_product(Q, ladder[n])):
            return ReductionTest(YES, n, bound)
    return ReductionTest(UNKNOWN, None, bound)
