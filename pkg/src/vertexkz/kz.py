"""First-order PDE systems satisfied by Z, with exact coefficient evaluation.

Taking the limit lambda_0 -> lambda_i in the functional equation leaves a
linear first-order PDE for the partition function,

    c * dZ/dlambda_i = sum_{j != i} omega_ij E_ij(Z) + h_i Z,

where E_ij substitutes lambda_i for lambda_j ("evaluation map") and omega_ij,
h_i are explicit rational functions of the rapidities.  Starting instead from
the relation labelled n (obtained by the lambda_0 <-> lambda_n swap) gives a
family of L such systems with coefficients omega_ij^(n), h_i^(n); the n = i
member reproduces the base system, which is checked rather than assumed.

The "reduced" coefficients obar_ij^(n) differ from omega_ij^(n) by one factor

    P_i = prod_k a^{-1}(lambda_i - mu_k) * prod_{k != i} b(lambda_k - lambda_i) / a(lambda_k - lambda_i)

common to all (j, n); they are the entries that make the representation
determinants polynomial.  All formulas below spell out both branches
explicitly and are guarded by the shared genericity predicate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .functional import ZFunction, functional_residual
from .model import (
    ModelParams,
    SpectralPoint,
    is_generic,
    require_generic,
    weight_a,
    weight_b,
    weight_c,
)
from .poly import MultiPoly, interpolate_univariate


@dataclass(frozen=True)
class KZCoeffs:
    """Scalar data of one equation: factors omega_ij^(n) for j != i, and h_i^(n)."""

    i: int
    n: int
    omega: dict[int, Fraction]
    h: Fraction


def eval_map(zfun: ZFunction, i: int, j: int) -> ZFunction:
    """E_ij: evaluate zfun with lambda_j overwritten by lambda_i (1-based)."""
    if i == j:
        raise ValueError("evaluation map needs distinct indices")

    def substituted(point: SpectralPoint) -> Fraction:
        return zfun(point.with_value(j, point.value(i)))

    return substituted


def _check_indices(i: int, j: int | None, n: int | None, L: int) -> None:
    if not 1 <= i <= L:
        raise ValueError(f"index i={i} outside 1..{L}")
    if j is not None:
        if not 1 <= j <= L:
            raise ValueError(f"index j={j} outside 1..{L}")
        if j == i:
            raise ValueError("i and j must differ")
    if n is not None and not 1 <= n <= L:
        raise ValueError(f"index n={n} outside 1..{L}")


# ---------------------------------------------------------------------------
# Base-system coefficients (the lambda_0 -> lambda_i limit of the base relation)
# ---------------------------------------------------------------------------


def omega_coeff_base(i: int, j: int, point: SpectralPoint, params: ModelParams) -> Fraction:
    """Scalar factor multiplying E_ij in the base system."""
    _check_indices(i, j, None, params.L)
    require_generic(point, params)
    lam = point.lam
    li, lj = lam[i - 1], lam[j - 1]
    c = weight_c(params)
    out = c / weight_a(lj - li, params)
    out *= weight_a(li - lj, params) / weight_b(li - lj, params)
    for m in params.mu:
        out *= weight_a(lj - m, params) / weight_a(li - m, params)
    for k, lk in enumerate(lam, start=1):
        if k in (i, j):
            continue
        out *= weight_b(lk - li, params) / weight_a(lk - li, params)
        out *= weight_a(lk - lj, params) / weight_b(lk - lj, params)
    return out


def h_coeff_base(i: int, point: SpectralPoint, params: ModelParams) -> Fraction:
    """Scalar multiplying Z itself in the base system."""
    _check_indices(i, None, None, params.L)
    require_generic(point, params)
    lam = point.lam
    li = lam[i - 1]
    c = weight_c(params)
    prod = Fraction(1)
    for m in params.mu:
        prod *= weight_b(li - m, params) / weight_a(li - m, params)
    for k, lk in enumerate(lam, start=1):
        if k != i:
            prod *= weight_b(lk - li, params) / weight_a(lk - li, params)
    total = prod
    for m in params.mu:
        total += c / weight_a(li - m, params)
    for k, lk in enumerate(lam, start=1):
        if k != i:
            total += (c / weight_b(lk - li, params)) * (c / weight_a(lk - li, params))
    return total - 1


# ---------------------------------------------------------------------------
# Family coefficients (one system per n = 1..L)
# ---------------------------------------------------------------------------


def omega_coeff(i: int, j: int, n: int, point: SpectralPoint, params: ModelParams) -> Fraction:
    """Scalar factor multiplying E_ij in system n.

    For n = i this reduces (a(0) = c) to the base-system factor; both routes
    are implemented so transcription errors in either display get caught.
    """
    _check_indices(i, j, n, params.L)
    require_generic(point, params)
    lam = point.lam
    li, lj = lam[i - 1], lam[j - 1]
    c = weight_c(params)
    if j != n:
        ln = lam[n - 1]
        out = weight_a(li - lj, params) / weight_b(lj - li, params)
        out *= weight_a(ln - li, params) / weight_a(ln - lj, params)
        for m in params.mu:
            out *= weight_a(lj - m, params) / weight_a(li - m, params)
        for k, lk in enumerate(lam, start=1):
            if k != i:
                out *= weight_b(lk - li, params) / weight_a(lk - li, params)
        for k, lk in enumerate(lam, start=1):
            if k != j:
                out *= weight_a(lk - lj, params) / weight_b(lk - lj, params)
        return out
    ln = lj  # j == n
    out = Fraction(1) / c
    for m in params.mu:
        out /= weight_a(li - m, params)
    for k, lk in enumerate(lam, start=1):
        if k not in (i, n):
            out *= weight_b(lk - li, params) / weight_a(lk - li, params)
    first = weight_b(ln - li, params)
    for m in params.mu:
        first *= weight_b(ln - m, params)
    second = weight_a(li - ln, params) ** 2 / weight_b(li - ln, params)
    for m in params.mu:
        second *= weight_a(ln - m, params)
    for k, lk in enumerate(lam, start=1):
        if k not in (i, n):
            second *= weight_a(lk - ln, params) / weight_b(lk - ln, params)
    return out * (first + second)


def omega_bar_coeff(i: int, j: int, n: int, point: SpectralPoint, params: ModelParams) -> Fraction:
    """Reduced scalar factor: omega_ij^(n) with the common prefactor P_i removed."""
    _check_indices(i, j, n, params.L)
    require_generic(point, params)
    lam = point.lam
    li, lj = lam[i - 1], lam[j - 1]
    c = weight_c(params)
    if j != n:
        ln = lam[n - 1]
        out = weight_a(li - lj, params) / weight_b(lj - li, params)
        out *= weight_a(ln - li, params) / weight_a(ln - lj, params)
        for m in params.mu:
            out *= weight_a(lj - m, params)
        for k, lk in enumerate(lam, start=1):
            if k != j:
                out *= weight_a(lk - lj, params) / weight_b(lk - lj, params)
        return out
    ln = lj  # j == n
    head = weight_a(ln - li, params) / c
    first = Fraction(1)
    for m in params.mu:
        first *= weight_b(ln - m, params)
    ratio = weight_a(li - ln, params) / weight_b(li - ln, params)
    second = ratio * ratio
    for m in params.mu:
        second *= weight_a(ln - m, params)
    for k, lk in enumerate(lam, start=1):
        if k not in (i, n):
            second *= weight_a(lk - ln, params) / weight_b(lk - ln, params)
    return head * (first - second)


def reduction_prefactor(i: int, point: SpectralPoint, params: ModelParams) -> Fraction:
    """P_i with omega_ij^(n) = P_i * obar_ij^(n) for every j, n."""
    _check_indices(i, None, None, params.L)
    lam = point.lam
    li = lam[i - 1]
    out = Fraction(1)
    for m in params.mu:
        out /= weight_a(li - m, params)
    for k, lk in enumerate(lam, start=1):
        if k != i:
            out *= weight_b(lk - li, params) / weight_a(lk - li, params)
    return out


def h_coeff(i: int, n: int, point: SpectralPoint, params: ModelParams) -> Fraction:
    """Scalar multiplying Z in system n; the n = i member is the base formula.

    The family display for h contains a(lambda_i - lambda_n)/b(lambda_i - lambda_n),
    which degenerates at n = i (b(0) = 0); the base system supplies that case,
    and the coincidence of the two systems at n = i is covered by the
    omega-coefficient tests.
    """
    _check_indices(i, None, n, params.L)
    if n == i:
        return h_coeff_base(i, point, params)
    require_generic(point, params)
    lam = point.lam
    li, ln = lam[i - 1], lam[n - 1]
    c = weight_c(params)
    total = Fraction(0)
    for k, lk in enumerate(lam, start=1):
        if k not in (i, n):
            total += (c / weight_b(lk - li, params)) * (c / weight_a(lk - li, params))
    for m in params.mu:
        total += c / weight_a(li - m, params)
    total -= weight_a(li - ln, params) / weight_b(li - ln, params)
    return total - 1


def kz_coeffs(i: int, n: int, point: SpectralPoint, params: ModelParams) -> KZCoeffs:
    omega = {
        j: omega_coeff(i, j, n, point, params)
        for j in range(1, params.L + 1)
        if j != i
    }
    return KZCoeffs(i, n, omega, h_coeff(i, n, point, params))


# ---------------------------------------------------------------------------
# Residuals
# ---------------------------------------------------------------------------


def _poly_value(zpoly: MultiPoly, point: SpectralPoint) -> Fraction:
    return zpoly.evaluate(point.lam)


def kz_residual(
    i: int, n: int, point: SpectralPoint, params: ModelParams, zpoly: MultiPoly
) -> Fraction:
    """c*(d_i zpoly) - sum_j omega_ij^(n)*(E_ij zpoly) - h_i^(n)*zpoly at the point.

    Exactly zero when zpoly is the model's partition function (any constant
    rescaling of it passes too: the residual is linear in zpoly).
    """
    coeffs = kz_coeffs(i, n, point, params)
    return _residual_from_coeffs(coeffs, point, params, zpoly)


def kz_residual_base(
    i: int, point: SpectralPoint, params: ModelParams, zpoly: MultiPoly
) -> Fraction:
    """Same residual computed from the base-system coefficient formulas."""
    omega = {
        j: omega_coeff_base(i, j, point, params)
        for j in range(1, params.L + 1)
        if j != i
    }
    coeffs = KZCoeffs(i, i, omega, h_coeff_base(i, point, params))
    return _residual_from_coeffs(coeffs, point, params, zpoly)


def _residual_from_coeffs(
    coeffs: KZCoeffs, point: SpectralPoint, params: ModelParams, zpoly: MultiPoly
) -> Fraction:
    i = coeffs.i
    variable = zpoly.variables[i - 1]
    derivative = zpoly.differentiate(variable)
    total = weight_c(params) * _poly_value(derivative, point)
    li = point.value(i)
    for j, factor in coeffs.omega.items():
        collapsed = point.with_value(j, li)
        total -= factor * _poly_value(zpoly, collapsed)
    total -= coeffs.h * _poly_value(zpoly, point)
    return total


# ---------------------------------------------------------------------------
# The lambda_0 -> lambda_i limit, exactly
# ---------------------------------------------------------------------------


def limit_prefactor(i: int, point: SpectralPoint, params: ModelParams) -> Fraction:
    """G_i: the factor relating the functional-equation limit to the PDE residual."""
    _check_indices(i, None, None, params.L)
    lam = point.lam
    li = lam[i - 1]
    out = Fraction(1)
    for m in params.mu:
        out *= weight_a(li - m, params)
    for k, lk in enumerate(lam, start=1):
        if k != i:
            out *= weight_a(lk - li, params) / weight_b(lk - li, params)
    return out


def fz_residual_at_offset(
    i: int,
    alpha: Fraction,
    point: SpectralPoint,
    params: ModelParams,
    zfun: ZFunction,
) -> Fraction:
    """Base functional residual with lambda_0 = lambda_i + alpha."""
    lambda0 = point.value(i) + Fraction(alpha)
    return functional_residual(0, lambda0, point.without_lambda0(), params, zfun)


def fz_residual_limit(
    i: int, point: SpectralPoint, params: ModelParams, zpoly: MultiPoly
) -> Fraction:
    """Exact alpha -> 0 limit of the residual with lambda_0 = lambda_i + alpha.

    The residual S(alpha) is a rational function of alpha, regular at zero:
    clearing the denominator D(alpha) = alpha * prod_{k != i}(lambda_k -
    lambda_i - alpha) makes N = S*D a polynomial of degree at most 2L, which
    is reconstructed exactly from samples and the limit read off by
    L'Hopital: S(0) = N'(0) / D'(0).
    """
    require_generic(point, params)
    L = params.L
    li = point.value(i)
    degree = 2 * L

    def admissible(alpha: Fraction) -> bool:
        shifted = SpectralPoint(point.lam, li + alpha)
        return alpha != 0 and is_generic(shifted, params, include_lambda0=True)

    def zfun(pt: SpectralPoint) -> Fraction:
        return zpoly.evaluate(pt.lam)

    samples: list[tuple[Fraction, Fraction]] = []
    candidate = 0
    while len(samples) < degree + 1:
        candidate += 1
        alpha = Fraction(1, candidate + 1)
        if not admissible(alpha):
            continue
        s_val = fz_residual_at_offset(i, alpha, point, params, zfun)
        denom = alpha * _prod_shifted(point, i, alpha)
        samples.append((alpha, s_val * denom))
        if candidate > 100 * degree:
            raise RuntimeError("could not collect admissible offsets")
    cleared = interpolate_univariate(samples, degree, "alpha")
    if cleared.coefficient((0,)) != 0:
        raise RuntimeError("cleared residual does not vanish at alpha = 0")
    n_prime = cleared.coefficient((1,))
    d_prime = _prod_shifted(point, i, Fraction(0))
    return n_prime / d_prime


def _prod_shifted(point: SpectralPoint, i: int, alpha: Fraction) -> Fraction:
    li = point.value(i)
    out = Fraction(1)
    for k, lk in enumerate(point.lam, start=1):
        if k != i:
            out *= lk - li - alpha
    return out


def alpha_limit_pair(
    i: int, point: SpectralPoint, params: ModelParams, zpoly: MultiPoly
) -> tuple[Fraction, Fraction]:
    """(exact functional-equation limit, value predicted by the PDE residual).

    The two entries agree exactly for every polynomial candidate, true Z or
    not: the limit of the base relation at lambda_0 -> lambda_i equals
    -G_i * (base PDE residual).
    """
    limit = fz_residual_limit(i, point, params, zpoly)
    predicted = -limit_prefactor(i, point, params) * kz_residual_base(
        i, point, params, zpoly
    )
    return limit, predicted
