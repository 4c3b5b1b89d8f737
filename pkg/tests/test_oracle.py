"""Enumeration oracle: frozen hand values, counts, symmetry, reconstruction.

The L=2 closed form used below was derived by listing the two admissible
configurations of the 2x2 domain-wall lattice by hand:

    Z_2 = c^2 * [ a(l1-m1) a(l2-m2) + b(l1-m2) b(l2-m1) ],

which at lambda=(0,1), mu=(5,7), eta=1/3 evaluates to 490/81.  These numbers
are independent of the transfer-sweep implementation they test.
"""

import itertools
from fractions import Fraction as F

import pytest

from vertexkz import (
    BoundaryOrientation,
    ModelParams,
    OrientationSelectionError,
    SpectralPoint,
    count_configurations,
    default_params,
    enumerate_Z,
    interpolate_univariate,
    oracle_polynomial,
    sample_generic_point,
    select_orientation,
    weight_a,
    weight_b,
)
import vertexkz.oracle as oracle_module


def hand_z2(lam, mu, eta):
    params = ModelParams(2, eta, tuple(mu))
    return eta**2 * (
        weight_a(lam[0] - mu[0], params) * weight_a(lam[1] - mu[1], params)
        + weight_b(lam[0] - mu[1], params) * weight_b(lam[1] - mu[0], params)
    )


def test_L1_is_eta_everywhere():
    params = default_params(1)
    for seed in range(10):
        point = sample_generic_point(params, seed)
        assert enumerate_Z(params, point) == params.eta
    # genericity is not required
    assert enumerate_Z(params, SpectralPoint((params.mu[0],))) == params.eta


def test_L2_frozen_value_and_closed_form():
    params = ModelParams.make(2, "1/3", ["5", "7"])
    point = SpectralPoint((F(0), F(1)))
    assert enumerate_Z(params, point) == F(490, 81)
    assert enumerate_Z(params, SpectralPoint((F(1), F(0)))) == F(490, 81)
    for seed in range(5):
        pt = sample_generic_point(params, seed)
        assert enumerate_Z(params, pt) == hand_z2(pt.lam, params.mu, params.eta)


def test_configuration_counts_are_asm_numbers():
    assert [count_configurations(L) for L in (1, 2, 3, 4)] == [1, 2, 7, 42]


def test_orientations_give_identical_Z():
    # global arrow reversal preserves every vertex class, hence the weight
    for L in (1, 2, 3):
        params = default_params(L)
        point = sample_generic_point(params, 3)
        std = enumerate_Z(params, point, BoundaryOrientation.STANDARD)
        rev = enumerate_Z(params, point, BoundaryOrientation.REVERSED)
        assert std == rev


def test_lambda_permutation_symmetry_exhaustive():
    for L in (2, 3):
        params = default_params(L)
        point = sample_generic_point(params, 21)
        base = enumerate_Z(params, point)
        for perm in itertools.permutations(range(L)):
            permuted = SpectralPoint(tuple(point.lam[p] for p in perm))
            assert enumerate_Z(params, permuted) == base


def test_mu_permutation_symmetry():
    params = default_params(3)
    point = sample_generic_point(params, 8)
    base = enumerate_Z(params, point)
    for perm in itertools.permutations(range(3)):
        shuffled = ModelParams(3, params.eta, tuple(params.mu[p] for p in perm))
        assert enumerate_Z(shuffled, point) == base


def test_polynomial_degree_bound_via_held_out_sample():
    # degree <= L-1 in one variable: L samples determine the slice; an extra
    # sample must be consistent
    L = 3
    params = default_params(L)
    frozen = sample_generic_point(params, 4)
    samples = []
    for k in range(L):
        x = F(k)
        samples.append((x, enumerate_Z(params, frozen.with_value(1, x))))
    slice_poly = interpolate_univariate(samples, L - 1, "l1")
    held_out = F(17, 3)
    assert slice_poly.evaluate([held_out]) == enumerate_Z(
        params, frozen.with_value(1, held_out)
    )


def test_oracle_polynomial_L1_constant():
    params = default_params(1)
    poly = oracle_polynomial(params)
    assert poly.terms == {(0,): params.eta}


def test_oracle_polynomial_L2_frozen_coefficients():
    params = ModelParams.make(2, "1/3", ["5", "7"])
    poly = oracle_polynomial(params)
    assert poly.terms == {
        (1, 1): F(2, 9),
        (1, 0): F(-35, 27),
        (0, 1): F(-35, 27),
        (0, 0): F(595, 81),
    }
    # symmetric in the two variables
    assert poly.coefficient((1, 0)) == poly.coefficient((0, 1))


def test_oracle_polynomial_matches_fresh_evaluation():
    params = default_params(3)
    poly = oracle_polynomial(params)
    fresh = sample_generic_point(params, 777)
    assert poly.evaluate(fresh.lam) == enumerate_Z(params, fresh)


def test_select_orientation_returns_standard_and_holds_at_L3():
    assert select_orientation(default_params(2)) is BoundaryOrientation.STANDARD
    assert select_orientation(default_params(3)) is BoundaryOrientation.STANDARD


def test_select_orientation_requires_L2():
    with pytest.raises(ValueError):
        select_orientation(default_params(1))


def test_select_orientation_error_path(monkeypatch):
    # make the enumerator return garbage: no orientation can satisfy the relation
    def broken(params, point, orientation=BoundaryOrientation.STANDARD, tables=None):
        return point.lam[0]

    monkeypatch.setattr(oracle_module, "enumerate_Z", broken)
    with pytest.raises(OrientationSelectionError, match="no orientation satisfies"):
        select_orientation(default_params(2))


def test_point_length_validated():
    params = default_params(2)
    with pytest.raises(ValueError):
        enumerate_Z(params, SpectralPoint((F(1),)))
