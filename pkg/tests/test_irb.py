"""Internal-ratings parameterization and the pluggable weight function."""

from __future__ import annotations

from fractions import Fraction

import pytest

from regcap import (
    FOUNDATION_LGD,
    FOUNDATION_MATURITY_YEARS,
    IrbParams,
    MonotonicityGrid,
    NonFiniteWeight,
    OutOfRange,
    UnknownFunction,
    check_monotonicity,
    evaluate_weight,
    foundation_params,
    register_risk_weight_function,
    risk_weight_function,
    rwa_irb,
)

from conftest import eur


def step_function(params: IrbParams) -> Fraction:
    """pd < 1% -> 0.5, else 1.0 (monotone test fixture)."""
    return Fraction(1, 2) if params.pd < Fraction(1, 100) else Fraction(1)


def decreasing_in_pd(params: IrbParams) -> Fraction:
    return 1 - params.pd


class TestFoundationParams:
    def test_supervisory_fills(self):
        params = foundation_params(Fraction(1, 100), eur("1000.00"))
        assert params.pd == Fraction(1, 100)
        assert params.lgd == Fraction(1, 2)
        assert params.ead == eur("1000.00")
        assert params.maturity_years == Fraction(3)

    def test_lgd_is_one_minus_recovery(self):
        assert FOUNDATION_LGD == 1 - Fraction(1, 2)

    def test_zero_edge(self):
        params = foundation_params(Fraction(0), eur("0"))
        assert params.pd == 0
        assert params.ead == eur("0")
        assert params.maturity_years == FOUNDATION_MATURITY_YEARS

    def test_pd_bound(self):
        with pytest.raises(OutOfRange):
            foundation_params(Fraction(3, 2), eur("1"))

    def test_negative_nominal(self):
        with pytest.raises(OutOfRange):
            foundation_params(Fraction(1, 100), -eur("1"))

    def test_defaults_do_not_depend_on_pd(self):
        for numerator in (0, 1, 50, 100):
            params = foundation_params(Fraction(numerator, 100), eur("7.77"))
            assert params.lgd == Fraction(1, 2)
            assert params.maturity_years == Fraction(3)
            assert params.ead == eur("7.77")


class TestIrbParamsValidation:
    def test_all_fields_checked(self):
        good = dict(pd=Fraction(1, 100), lgd=Fraction(1, 2), ead=eur("1"),
                    maturity_years=Fraction(3))
        IrbParams(**good)
        with pytest.raises(OutOfRange):
            IrbParams(**{**good, "lgd": Fraction(2)})
        with pytest.raises(OutOfRange):
            IrbParams(**{**good, "maturity_years": Fraction(0)})
        with pytest.raises(OutOfRange):
            IrbParams(**{**good, "ead": -eur("1")})

    def test_from_recovery(self):
        params = IrbParams.from_recovery(
            Fraction(1, 100), Fraction(3, 10), eur("1"), Fraction(3)
        )
        assert params.lgd == Fraction(7, 10)


class TestRwaIrb:
    def test_zero_ead_short_circuits(self):
        params = IrbParams(Fraction(1, 2), Fraction(1, 2), eur("0"), Fraction(3))
        assert rwa_irb(params, "constant") == eur("0")

    def test_constant_function_identity(self):
        params = foundation_params(Fraction(1, 100), eur("500.00"))
        assert rwa_irb(params, "constant") == eur("500.00")

    def test_step_function(self):
        params = foundation_params(Fraction(2, 100), eur("100.00"))
        assert rwa_irb(params, step_function) == eur("100.00")
        low = foundation_params(Fraction(1, 1000), eur("100.00"))
        assert rwa_irb(low, step_function) == eur("50.00")

    def test_unregistered_name(self):
        params = foundation_params(Fraction(1, 100), eur("1"))
        with pytest.raises(UnknownFunction):
            rwa_irb(params, "supervisory_curve")

    def test_unregistered_name_raises_even_at_zero_ead(self):
        params = foundation_params(Fraction(1, 100), eur("0"))
        with pytest.raises(UnknownFunction):
            rwa_irb(params, "supervisory_curve")

    def test_non_finite_weight_rejected(self):
        params = foundation_params(Fraction(1, 100), eur("1"))
        with pytest.raises(NonFiniteWeight):
            rwa_irb(params, lambda p: float("nan"))
        with pytest.raises(NonFiniteWeight):
            rwa_irb(params, lambda p: float("inf"))
        with pytest.raises(NonFiniteWeight):
            rwa_irb(params, lambda p: Fraction(-1))
        with pytest.raises(NonFiniteWeight):
            rwa_irb(params, lambda p: "heavy")

    def test_float_weights_read_as_decimals(self):
        params = foundation_params(Fraction(1, 100), eur("1000.00"))
        assert rwa_irb(params, lambda p: 0.1) == eur("100.00")

    def test_foundation_advanced_consistency(self):
        # advanced inputs equal to the supervisory defaults reproduce
        # foundation output exactly
        nominal = eur("1234.56")
        pd = Fraction(7, 1000)
        foundation = foundation_params(pd, nominal)
        advanced = IrbParams(pd=pd, lgd=Fraction(1, 2), ead=nominal,
                             maturity_years=Fraction(3))
        assert rwa_irb(foundation, "constant") == rwa_irb(advanced, "constant")
        assert foundation == advanced


class TestMonotonicityGate:
    def test_constant_passes(self):
        report = check_monotonicity(risk_weight_function("constant"))
        assert report.passed
        assert report.witness is None

    def test_step_function_passes(self):
        assert check_monotonicity(step_function).passed

    def test_decreasing_fails_with_witness(self):
        report = check_monotonicity(decreasing_in_pd)
        assert not report.passed
        first, second = report.witness
        assert first.pd < second.pd
        assert report.weights[0] > report.weights[1]
        assert "decreases" in report.message()

    def test_grid_covers_unit_interval_endpoints(self):
        grid = MonotonicityGrid(pd_steps=20, lgd_steps=20)
        assert grid.pd_values()[0] == 0 and grid.pd_values()[-1] == 1
        assert len(grid.pd_values()) == 20

    def test_registration_gate_rejects_bad_function(self):
        with pytest.raises(ValueError, match="rejected"):
            register_risk_weight_function("bad", decreasing_in_pd)
        with pytest.raises(UnknownFunction):
            risk_weight_function("bad")

    def test_registration_accepts_monotone_function(self):
        register_risk_weight_function("step_for_test", step_function)
        try:
            assert risk_weight_function("step_for_test") is step_function
        finally:
            from regcap.irb import _FUNCTIONS

            _FUNCTIONS.pop("step_for_test", None)


class TestLinearity:
    def test_linear_in_ead_spot(self):
        pd, lgd, m = Fraction(1, 100), Fraction(45, 100), Fraction(5, 2)
        base = IrbParams(pd, lgd, eur("250.00"), m)
        tripled = IrbParams(pd, lgd, eur("750.00"), m)
        assert rwa_irb(tripled, step_function).units == 3 * rwa_irb(
            base, step_function
        ).units
