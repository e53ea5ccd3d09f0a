"""Shared generators for randomized contract tests."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from qclosure.partial_iso import PartialIso
from qclosure.rationals import PointSupplier

POOL = [Fraction(v) for v in
        (-6, -4, -3, Fraction(-3, 2), 0, Fraction(1, 2), 1, 2, Fraction(7, 2), 5)]


@pytest.fixture
def fresh():
    return PointSupplier(seed=0)


def random_partial_iso(rng: random.Random, max_pairs: int = 4,
                       pool=None) -> PartialIso:
    """A random valid map: sorted sources paired with sorted targets."""
    pool = list(POOL if pool is None else pool)
    k = rng.randint(0, max_pairs)
    xs = sorted(rng.sample(pool, k))
    ys = sorted(rng.sample(pool, k))
    return PartialIso(zip(xs, ys))


def check_amalgam(p0, p1, p2, result, *, fixed=None):
    """The four amalgamation-contract invariants."""
    p3, psi = result.p3, result.psi
    assert p3.includes(p1), "p3 must extend p1"
    fixed_points = p0.support if fixed is None else fixed
    assert psi.fixes(fixed_points), "psi must fix the base support pointwise"
    for x in p2.support:
        assert x in psi, f"psi undefined at {x}"
    for x, y in p2.pairs:
        assert p3.image(psi(x)) == psi(y), "psi must conjugate p2 into p3"
    xs = [psi(x) for x in p2.support]
    assert xs == sorted(set(xs)), "psi must be strictly increasing"
