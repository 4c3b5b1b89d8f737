"""Cramer systems, family matrices, representation values, degree profile.

Frozen values at L=2, lambda=(0,1), mu=(5,7), eta=1/3 (hand-derived from the
coefficient formulas, independent of this implementation):

    det(Y_1)    = (l2-l1+eta) b(l2-m1) b(l2-m2) + (eta-l2+l1) a(l2-m1) a(l2-m2)
                = 490/27
    det(Ybar_1) = eta * (2 l2 - m1 - m2 + eta) = -29/9
    c^(L-1) det(Y_1) = 490/81 = Z at that point.
"""

from fractions import Fraction as F

import pytest

from vertexkz import (
    CalibrationMismatchError,
    ModelParams,
    MultiPoly,
    SpectralPoint,
    build_cramer,
    build_family,
    calibrate,
    cramer_identity_residual,
    degree_report,
    determinant,
    default_params,
    enumerate_Z,
    fuchs_residual,
    generic_interpolation_grid,
    h_coeff,
    is_generic,
    omega_bar_coeff,
    omega_coeff,
    reduction_prefactor,
    representation_polynomial,
    sample_generic_point,
    weight_c,
    z_det,
)

L2_PARAMS = ModelParams.make(2, "1/3", ["5", "7"])
L2_POINT = SpectralPoint((F(0), F(1)))


def test_cramer_shapes_L2():
    system = build_cramer(1, L2_POINT, L2_PARAMS)
    assert system.row_index == (2,) and system.col_index == (2,)
    assert system.W.order == 1
    assert system.W[0, 0] == omega_coeff(1, 2, 2, L2_POINT, L2_PARAMS)
    assert system.H[2][0, 0] == weight_c(L2_PARAMS)
    assert system.Hbar[2][0, 0] == h_coeff(1, 2, L2_POINT, L2_PARAMS)


def test_cramer_shapes_L3_index_bookkeeping():
    params = default_params(3)
    point = sample_generic_point(params, 2)
    system = build_cramer(2, point, params)
    assert system.row_index == (1, 3) and system.col_index == (1, 3)
    for r, n in enumerate(system.row_index):
        for c, j in enumerate(system.col_index):
            assert system.W[r, c] == omega_coeff(2, j, n, point, params)
    assert system.det_W != 0


def test_cramer_residual_zero_on_oracle(zpoly_for):
    for L in (2, 3):
        params = default_params(L)
        zpoly = zpoly_for(L)
        for k in range(2):
            point = sample_generic_point(params, 10 + k)
            for i in range(1, L + 1):
                system = build_cramer(i, point, params)
                for j in range(1, L + 1):
                    if j != i:
                        assert (
                            cramer_identity_residual(i, j, point, params, zpoly, system)
                            == 0
                        )


def test_cramer_negative_control(zpoly_for):
    params = default_params(2)
    perturbed = zpoly_for(2) + 1
    point = sample_generic_point(params, 13)
    assert cramer_identity_residual(1, 2, point, params, perturbed) != 0


def test_family_L1_shapes():
    params = default_params(1)
    point = sample_generic_point(params, 1)
    family = build_family(1, point, params)
    assert family.Y.entries == ((params.eta,),)
    assert family.Ybar.entries == ((F(0),),)  # h_1 = 0 identically
    assert z_det(1, point, params) == params.eta


def test_family_L2_structure_and_frozen_determinants():
    family = build_family(1, L2_POINT, L2_PARAMS)
    c = weight_c(L2_PARAMS)
    assert family.Y.entries[0] == (c, omega_bar_coeff(1, 2, 1, L2_POINT, L2_PARAMS))
    assert family.Y.entries[1] == (c, omega_bar_coeff(1, 2, 2, L2_POINT, L2_PARAMS))
    assert determinant(family.Y) == F(490, 27)
    assert determinant(family.Ybar) == F(-29, 9)
    assert z_det(1, L2_POINT, L2_PARAMS) == F(490, 81)
    assert enumerate_Z(L2_PARAMS, L2_POINT) == F(490, 81)


def test_family_Ybar_closed_form_L2():
    eta = L2_PARAMS.eta
    for seed in range(4):
        point = sample_generic_point(L2_PARAMS, seed)
        family = build_family(1, point, L2_PARAMS)
        expected = eta * (2 * point.lam[1] - F(5) - F(7) + eta)
        assert determinant(family.Ybar) == expected


def test_prefactor_determinant_identity():
    params = default_params(3)
    for seed in (3, 4):
        point = sample_generic_point(params, seed)
        for i in (1, 2, 3):
            family = build_family(i, point, params)
            p = reduction_prefactor(i, point, params)
            assert determinant(family.K) == p ** (params.L - 1) * determinant(family.Y)
            assert determinant(family.Kbar) == p ** (params.L - 1) * determinant(
                family.Ybar
            )
            assert family.prefactor == p


def test_fuchs_residual_zero_and_negative_control(zpoly_for):
    for L in (2, 3):
        params = default_params(L)
        zpoly = zpoly_for(L)
        for k in range(2):
            point = sample_generic_point(params, 20 + k)
            for i in range(1, L + 1):
                assert fuchs_residual(i, point, params, zpoly) == 0
    params = default_params(2)
    zpoly = zpoly_for(2)
    bumped = dict(zpoly.terms)
    bumped[(0, 0)] = bumped[(0, 0)] + F(1, 2)
    perturbed = MultiPoly(zpoly.variables, bumped, zpoly.degree_bounds)
    point = sample_generic_point(params, 23)
    assert fuchs_residual(1, point, params, perturbed) != 0


def test_fuchs_L1_trivial(zpoly_for):
    params = default_params(1)
    point = sample_generic_point(params, 2)
    assert fuchs_residual(1, point, params, zpoly_for(1)) == 0


def test_representation_agreement_across_i():
    for L in (2, 3, 4):
        params = default_params(L)
        point = sample_generic_point(params, 31)
        values = {z_det(i, point, params) for i in range(1, L + 1)}
        assert len(values) == 1


def test_calibration_constant_is_one():
    for L in (1, 2, 3):
        assert calibrate(default_params(L), seed=7) == 1


def test_calibration_mu_permutation_independence():
    params = default_params(3)
    shuffled = ModelParams(3, params.eta, (params.mu[2], params.mu[0], params.mu[1]))
    assert calibrate(shuffled, seed=7) == calibrate(params, seed=7) == 1


def test_calibration_detects_mismatched_candidates(monkeypatch):
    import vertexkz.representation as det_module

    def broken(params, point, orientation=None, tables=None):
        return point.lam[0] + 1

    monkeypatch.setattr(det_module, "enumerate_Z", broken)
    with pytest.raises(CalibrationMismatchError, match="representation mismatch"):
        calibrate(default_params(2), seed=7)


def test_generic_grid_tensor_points_are_generic():
    params = default_params(3)
    grid = generic_interpolation_grid(params, [2, 2, 2])
    import itertools

    for combo in itertools.product(*grid):
        assert is_generic(SpectralPoint(combo), params)


def test_representation_polynomial_matches_oracle(zpoly_for):
    for L in (1, 2, 3):
        params = default_params(L)
        assert representation_polynomial(params, 1).terms == zpoly_for(L).terms


def test_degree_report_profile():
    for L in (2, 3):
        params = default_params(L)
        record = degree_report(1, params)
        assert record["pass"]
        for entry in record["variables"]:
            assert entry["degree_main"] == L - 1
            expected_bar = L - 2 if entry["variable"] == "l1" else L - 1
            assert entry["degree_bar"] == expected_bar
            assert entry["gcd_degree"] == 0
        # the blanket uniform L-2 figure fails as soon as L >= 2
        assert record["uniform_bar_degree_claim_holds"] is False


def test_degree_report_guards():
    with pytest.raises(ValueError):
        degree_report(1, default_params(1))
