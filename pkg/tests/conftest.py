import random

import pytest

from MonomialReductionBounds.a_exponent_core import AmbientRing
from MonomialReductionBounds.b_ideal_engine import minimalize


def make_ideal(ambient, *gens):
    return minimalize(ambient, list(gens))


@pytest.fixture
def free2():
    return AmbientRing.free(2)


@pytest.fixture
def rng():
    return random.Random(20240229)


def veronese_part1(n):
    """(A, I, Q) for I = (x_0, x_1, x_n), Q = (x_0, x_n) on Veronese(n)."""
    A = AmbientRing.veronese(n)
    return A, make_ideal(A, (n, 0), (n - 1, 1), (0, n)), make_ideal(A, (n, 0), (0, n))


def veronese_part2(n):
    """(A, I, Q, J) for I = (x_0, x_1, x_{n-1}), Q = (x_0, x_{n-1}), J = (x_0..x_{n-1})."""
    A = AmbientRing.veronese(n)
    I = make_ideal(A, (n, 0), (n - 1, 1), (1, n - 1))
    Q = make_ideal(A, (n, 0), (1, n - 1))
    J = make_ideal(A, *[(n - i, i) for i in range(n)])
    return A, I, Q, J


def random_mprimary(rng, ambient, max_exp=5, extra=3):
    """An m-primary Free(2) ideal with pure powers plus a few random points."""
    a, b = rng.randint(1, max_exp), rng.randint(1, max_exp)
    points = [(a, 0), (0, b)]
    for _ in range(rng.randint(0, extra)):
        points.append((rng.randint(0, max_exp), rng.randint(0, max_exp)))
    return minimalize(ambient, points)
