"""
a_exponent_core.py

Exact lattice arithmetic over the ambient monoid. Exponent vectors are plain
tuples of Python ints (arbitrary precision, always >= 0); an AmbientRing says
which of them are semigroup members:

  Free(m)           every vector of N^m
  Veronese(n)       vectors (a, b) of N^2 with a + b divisible by n
  AffineSemigroup   nonnegative integer combinations of a finite generator list

Everything here is pure and immutable; the other phase modules only talk to
the monoid through semigroup_contains / semigroup_subtract / enumerate_box.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Tuple

from .helpers import DimensionMismatch, NonMemberExponent

ExponentVector = Tuple[int, ...]

FREE = "free"
VERONESE = "veronese"
AFFINE = "affine"


def graded_lex_key(e: ExponentVector):
    """Sort key: total degree first, then lexicographically larger vectors first."""
    return (sum(e), tuple(-c for c in e))


def as_exponent(values: Sequence[int], dim: int) -> ExponentVector:
    """Validate and freeze a coordinate list."""
    coords = tuple(int(c) for c in values)
    if len(coords) != dim:
        raise DimensionMismatch(f"exponent {list(coords)} has length {len(coords)}, ambient dimension is {dim}")
    if any(c < 0 for c in coords):
        raise NonMemberExponent(f"exponent {list(coords)} has a negative coordinate")
    return coords


def add(e: ExponentVector, f: ExponentVector) -> ExponentVector:
    return tuple(a + b for a, b in zip(e, f))


def scale(k: int, e: ExponentVector) -> ExponentVector:
    return tuple(k * a for a in e)


def componentwise_max(vectors, dim: int) -> ExponentVector:
    best = [0] * dim
    for e in vectors:
        for i, c in enumerate(e):
            if c > best[i]:
                best[i] = c
    return tuple(best)


@dataclass(frozen=True)
class AmbientRing:
    kind: str
    dim: int
    degree: int = 1
    semigroup_gens: Tuple[ExponentVector, ...] = ()

    @classmethod
    def free(cls, m: int) -> "AmbientRing":
        if m < 1:
            raise DimensionMismatch(f"free ambient needs dimension >= 1, got {m}")
        return cls(FREE, m)

    @classmethod
    def veronese(cls, n: int) -> "AmbientRing":
        if n < 1:
            raise DimensionMismatch(f"Veronese degree must be >= 1, got {n}")
        return cls(VERONESE, 2, n)

    @classmethod
    def affine(cls, gens: Sequence[Sequence[int]]) -> "AmbientRing":
        if not gens:
            raise DimensionMismatch("affine semigroup needs at least one generator")
        dim = len(gens[0])
        frozen = [as_exponent(g, dim) for g in gens]
        if any(not any(g) for g in frozen):
            raise NonMemberExponent("affine semigroup generators must be nonzero")
        if len(set(frozen)) != len(frozen):
            raise NonMemberExponent("affine semigroup generators must be pairwise distinct")
        return cls(AFFINE, dim, 1, tuple(sorted(frozen, key=graded_lex_key)))

    @property
    def maximal_ideal_gens(self) -> Tuple[ExponentVector, ...]:
        """The semigroup generators; they generate the graded maximal ideal."""
        if self.kind == FREE:
            units = [tuple(1 if i == j else 0 for i in range(self.dim)) for j in range(self.dim)]
            return tuple(sorted(units, key=graded_lex_key))
        if self.kind == VERONESE:
            n = self.degree
            return tuple((n - i, i) for i in range(n + 1))
        return self.semigroup_gens

    @property
    def generator_span(self) -> int:
        """Largest coordinate of any semigroup generator."""
        return max(max(g) for g in self.maximal_ideal_gens)

    @property
    def zero(self) -> ExponentVector:
        return (0,) * self.dim

    @property
    def is_free(self) -> bool:
        return self.kind == FREE

    def describe(self) -> str:
        if self.kind == FREE:
            return f"Free({self.dim})"
        if self.kind == VERONESE:
            return f"Veronese({self.degree})"
        return "AffineSemigroup{" + ",".join(str(g) for g in self.semigroup_gens) + "}"

    def to_config(self) -> dict:
        if self.kind == FREE:
            return {"kind": FREE, "dim": self.dim}
        if self.kind == VERONESE:
            return {"kind": VERONESE, "degree": self.degree}
        return {"kind": AFFINE, "gens": [list(g) for g in self.semigroup_gens]}


@lru_cache(maxsize=1 << 16)
def _affine_contains(gens: Tuple[ExponentVector, ...], e: ExponentVector) -> bool:
    # Exhaustive over coefficient vectors; the coefficient of gens[0] is bounded
    # by feasibility, so the search terminates.
    if not any(e):
        return True
    if not gens:
        return False
    g, rest = gens[0], gens[1:]
    remaining = e
    while True:
        if _affine_contains(rest, remaining):
            return True
        remaining = tuple(r - c for r, c in zip(remaining, g))
        if min(remaining) < 0:
            return False


def _member(A: AmbientRing, e: ExponentVector) -> bool:
    if A.kind == FREE:
        return True
    if A.kind == VERONESE:
        return (e[0] + e[1]) % A.degree == 0
    return _affine_contains(A.semigroup_gens, e)


def _check_dim(A: AmbientRing, *vectors: ExponentVector) -> None:
    for e in vectors:
        if len(e) != A.dim:
            raise DimensionMismatch(f"{list(e)} does not live in {A.describe()} (dimension {A.dim})")


def semigroup_contains(A: AmbientRing, e: ExponentVector) -> bool:
    """True iff e is a nonnegative integer combination of the semigroup generators."""
    _check_dim(A, e)
    if any(c < 0 for c in e):
        return False
    return _member(A, tuple(e))


def divides(A: AmbientRing, g: ExponentVector, e: ExponentVector) -> bool:
    """g | e in the semigroup ring; no dimension checks (hot path)."""
    d = tuple(a - b for a, b in zip(e, g))
    if any(c < 0 for c in d):
        return False
    return _member(A, d)


def semigroup_subtract(A: AmbientRing, e: ExponentVector, g: ExponentVector) -> Optional[ExponentVector]:
    """e - g when that difference is a semigroup member, otherwise None."""
    _check_dim(A, e, g)
    d = tuple(a - b for a, b in zip(e, g))
    if any(c < 0 for c in d) or not _member(A, d):
        return None
    return d


def enumerate_box(A: AmbientRing, bound: ExponentVector) -> Iterator[ExponentVector]:
    """
    Semigroup members e with e <= bound componentwise, in graded-lex order.
    """
    _check_dim(A, bound)
    if any(c < 0 for c in bound):
        return iter(())
    points = [e for e in itertools.product(*(range(c + 1) for c in bound)) if _member(A, e)]
    points.sort(key=graded_lex_key)
    return iter(points)
