"""Shared fixtures: small benchmark algebras built directly from brackets.

These are constructed inline, independently of the corpus module, so the
corpus tests can compare against them as a second opinion.
"""
from fractions import Fraction

import pytest

from liedef.lie import LieAlgebra


@pytest.fixture
def r2():
    return LieAlgebra.from_entries(2, {}, names=("x1", "x2"))


@pytest.fixture
def axb():
    # [a, x] = x
    return LieAlgebra.from_entries(2, {(0, 1): (0, 1)}, names=("a", "x"))


@pytest.fixture
def h3():
    # [x, y] = z
    return LieAlgebra.from_entries(3, {(0, 1): (0, 0, 1)},
                                   names=("x", "y", "z"))


@pytest.fixture
def e2():
    # [R, X] = Y, [R, Y] = -X; basis order X, Y, R
    return LieAlgebra.from_entries(3, {(0, 2): (0, -1, 0),
                                       (1, 2): (1, 0, 0)},
                                   names=("X", "Y", "R"))


@pytest.fixture
def oscillator():
    # [a, x] = x + y, [a, y] = -x + y; ad(a) has eigenvalues 1 +- i
    return LieAlgebra.from_entries(3, {(0, 2): (-1, -1, 0),
                                       (1, 2): (1, -1, 0)},
                                   names=("x", "y", "a"))


@pytest.fixture
def sl2():
    # [h, e] = 2e, [h, f] = -2f, [e, f] = h
    return LieAlgebra.from_entries(3, {(0, 1): (0, 2, 0),
                                       (0, 2): (0, 0, -2),
                                       (1, 2): (1, 0, 0)},
                                   names=("h", "e", "f"))


@pytest.fixture
def so3():
    return LieAlgebra.from_entries(3, {(0, 1): (0, 0, 1),
                                       (0, 2): (0, -1, 0),
                                       (1, 2): (1, 0, 0)},
                                   names=("e1", "e2", "e3"))


@pytest.fixture
def filiform4():
    # [x1, x2] = x3, [x1, x3] = x4; nilpotency class 3
    return LieAlgebra.from_entries(4, {(0, 1): (0, 0, 1, 0),
                                       (0, 2): (0, 0, 0, 1)},
                                   names=("x1", "x2", "x3", "x4"))


def frac_vec(*xs):
    return tuple(Fraction(x) for x in xs)
