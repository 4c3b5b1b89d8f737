"""Coefficients and exact residuals of the functional equations obeyed by Z.

The partition function satisfies a linear relation over L+1 rapidities
(lambda_0, lambda_1, ..., lambda_L):

    sum_{i=0}^{L} M_i * Z(all rapidities except lambda_i) = 0

with

    M_0 = prod_j b(l0 - mu_j)
          - prod_j a(l0 - mu_j) * prod_j a(l_j - l0) / b(l_j - l0)
    M_i = [c / b(l_i - l0)] * prod_j a(l_i - mu_j)
          * prod_{j != i} a(l_j - l_i) / b(l_j - l_i)          (i >= 1).

Swapping the values of lambda_0 and lambda_n (n = 1..L) and using the
symmetry of Z yields L further relations of the same shape; their
coefficients M_i^(n) are the base ones evaluated at the swapped point with
the indices 0 and n exchanged.  Residuals are returned as exact rationals —
zero on the true Z, and a diagnostic magnitude on anything else.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .model import (
    ModelParams,
    SpectralPoint,
    require_generic,
    weight_a,
    weight_b,
    weight_c,
)

ZFunction = Callable[[SpectralPoint], Fraction]


@dataclass(frozen=True)
class FunctionalCoeffs:
    """The L+1 coefficients of relation n at one (lambda_0, lambda) tuple."""

    n: int
    lambda0: Fraction
    point: SpectralPoint
    m: tuple[Fraction, ...]


def coeff_M(i: int, lambda0: Fraction, point: SpectralPoint, params: ModelParams) -> Fraction:
    """Coefficient M_i of the base relation, i in 0..L."""
    full = SpectralPoint(point.lam, lambda0)
    require_generic(full, params, include_lambda0=True)
    return _coeff_m_unchecked(i, Fraction(lambda0), point, params)


def _coeff_m_unchecked(
    i: int, lambda0: Fraction, point: SpectralPoint, params: ModelParams
) -> Fraction:
    L = params.L
    lam = point.lam
    if i == 0:
        prod_b = Fraction(1)
        prod_a = Fraction(1)
        for m in params.mu:
            prod_b *= weight_b(lambda0 - m, params)
            prod_a *= weight_a(lambda0 - m, params)
        ratio = Fraction(1)
        for x in lam:
            ratio *= weight_a(x - lambda0, params) / weight_b(x - lambda0, params)
        return prod_b - prod_a * ratio
    if not 1 <= i <= L:
        raise ValueError(f"coefficient index {i} outside 0..{L}")
    li = lam[i - 1]
    out = weight_c(params) / weight_b(li - lambda0, params)
    for m in params.mu:
        out *= weight_a(li - m, params)
    for j, x in enumerate(lam, start=1):
        if j != i:
            out *= weight_a(x - li, params) / weight_b(x - li, params)
    return out


def coeff_M_n(
    n: int, i: int, lambda0: Fraction, point: SpectralPoint, params: ModelParams
) -> Fraction:
    """Coefficient M_i^(n) of relation n (n = 0 means the base relation).

    Implemented literally: swap the values of lambda_0 and lambda_n, then
    evaluate the base coefficient with index n (if i = 0), index 0 (if i = n),
    and index i otherwise.
    """
    full = SpectralPoint(point.lam, lambda0)
    require_generic(full, params, include_lambda0=True)
    if n == 0:
        return _coeff_m_unchecked(i, Fraction(lambda0), point, params)
    if not 1 <= n <= params.L:
        raise ValueError(f"relation index {n} outside 0..{params.L}")
    swapped_point = point.with_value(n, Fraction(lambda0))
    swapped_lambda0 = point.value(n)
    if i == 0:
        base_index = n
    elif i == n:
        base_index = 0
    else:
        base_index = i
    return _coeff_m_unchecked(base_index, swapped_lambda0, swapped_point, params)


def functional_coeffs(
    n: int, lambda0: Fraction, point: SpectralPoint, params: ModelParams
) -> FunctionalCoeffs:
    m = tuple(
        coeff_M_n(n, i, lambda0, point, params) for i in range(params.L + 1)
    )
    return FunctionalCoeffs(n, Fraction(lambda0), point, m)


def reduced_point(i: int, lambda0: Fraction, point: SpectralPoint) -> SpectralPoint:
    """The L-tuple (lambda_0, ..., lambda_L) with entry i removed, natural order."""
    values = (Fraction(lambda0),) + point.lam
    kept = values[:i] + values[i + 1 :]
    return SpectralPoint(kept, None)


def functional_residual(
    n: int,
    lambda0: Fraction,
    point: SpectralPoint,
    params: ModelParams,
    zfun: ZFunction,
) -> Fraction:
    """sum_i M_i^(n) * zfun(rapidities minus lambda_i), exact.

    Zero exactly when zfun is the model's partition function; the returned
    rational carries the failure magnitude otherwise.
    """
    total = Fraction(0)
    for i in range(params.L + 1):
        coeff = coeff_M_n(n, i, lambda0, point, params)
        total += coeff * Fraction(zfun(reduced_point(i, lambda0, point)))
    return total
