"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

from fractions import Fraction

import pytest

from vertexkz import default_params, oracle_polynomial


def laplace_det(rows):
    """Cofactor-expansion determinant: the independent route for order <= 5."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        sign = -1 if j % 2 else 1
        total += sign * rows[0][j] * laplace_det(minor)
    return total


@pytest.fixture(scope="session")
def zpoly_for():
    """Session cache of reconstructed oracle polynomials keyed by L."""
    cache: dict[int, object] = {}

    def get(L: int):
        if L not in cache:
            cache[L] = oracle_polynomial(default_params(L))
        return cache[L]

    return get
