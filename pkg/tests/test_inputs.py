"""Validation and time-scaling behaviour of the input layer."""

import logging
import math

import pytest

from daywatch import InputParameters, ValidationError
from daywatch.inputs import (
    DOUBLING_THRESHOLD_HOURS,
    FIELD_ORDER,
    LONG_DAY_HOURS,
    scale_times,
    validate,
)


def make(**overrides):
    base = dict(
        t6_1=6.0, t6_2=6.0, t16=16.0, t24=24.0, k_c=4.0, c_0=50.0, delta=0.035
    )
    base.update(overrides)
    return InputParameters(**base)


class TestValidate:
    def test_accepts_baseline(self, baseline):
        validate(baseline)

    def test_collects_every_violation_at_once(self):
        record = make(t6_1=-1.0, t16=0.0, k_c=-2.0, delta=float("nan"))
        with pytest.raises(ValidationError) as excinfo:
            validate(record)
        err = excinfo.value
        assert set(err.fields) == {"t6_1", "t16", "k_c", "delta"}
        kinds = {v.field: v.kind for v in err.violations}
        assert kinds["t6_1"] == "NonPositiveTime"
        assert kinds["t16"] == "NonPositiveTime"
        assert kinds["k_c"] == "NegativeParameter"
        assert kinds["delta"] == "NonFinite"
        for field in ("t6_1", "t16", "k_c", "delta"):
            assert field in str(err)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), float("-inf")])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(ValidationError) as excinfo:
            validate(make(c_0=bad))
        assert excinfo.value.fields == ("c_0",)

    def test_rejects_bool(self):
        # bool is an int subtype; it must not sneak through as 1.0
        with pytest.raises(ValidationError) as excinfo:
            validate(make(k_c=True))
        (violation,) = excinfo.value.violations
        assert violation.field == "k_c"
        assert violation.kind == "NonFinite"

    def test_rejects_non_numeric(self):
        with pytest.raises(ValidationError) as excinfo:
            validate(make(t24="24"))
        assert excinfo.value.fields == ("t24",)

    def test_zero_time_rejected_but_zero_rate_allowed(self):
        with pytest.raises(ValidationError):
            validate(make(t6_2=0.0))
        validate(make(k_c=0.0, c_0=0.0, delta=0.0))

    def test_long_times_warn_but_pass(self, caplog):
        record = make(t24=LONG_DAY_HOURS + 1.0)
        with caplog.at_level(logging.WARNING, logger="daywatch.inputs"):
            validate(record)
        assert any("t24" in message for message in caplog.messages)

    def test_exactly_48_hours_does_not_warn(self, caplog):
        with caplog.at_level(logging.WARNING, logger="daywatch.inputs"):
            validate(make(t24=LONG_DAY_HOURS))
        assert caplog.messages == []

    def test_with_row_attaches_row_number(self):
        with pytest.raises(ValidationError) as excinfo:
            validate(make(t6_1=0.0))
        tagged = excinfo.value.with_row(3)
        assert tagged.row == 3
        assert "row 3" in str(tagged)


class TestScaling:
    def test_baseline_scaling(self, baseline):
        scaled = scale_times(baseline)
        assert scaled.t6_1_s == pytest.approx(1.2, rel=1e-15)
        assert scaled.t6_2_s == pytest.approx(0.6, rel=1e-15)
        assert scaled.t16_s == pytest.approx(1.6, rel=1e-15)
        assert scaled.t24_s == pytest.approx(2.4, rel=1e-15)

    def test_short_doubling_fields_double(self):
        scaled = scale_times(make(t6_1=6.0, t16=9.0))
        assert scaled.t6_1_s == pytest.approx(1.2, rel=1e-15)
        assert scaled.t16_s == pytest.approx(1.8, rel=1e-15)

    def test_threshold_is_strict(self):
        # exactly at the threshold the plain branch applies
        at = scale_times(make(t6_1=DOUBLING_THRESHOLD_HOURS))
        assert at.t6_1_s == pytest.approx(0.95, rel=1e-15)
        below = scale_times(make(t6_1=math.nextafter(DOUBLING_THRESHOLD_HOURS, 0.0)))
        assert below.t6_1_s == pytest.approx(1.9, rel=1e-12)

    def test_plain_fields_never_double(self):
        scaled = scale_times(make(t6_2=3.0, t24=3.0))
        assert scaled.t6_2_s == pytest.approx(0.3, rel=1e-15)
        assert scaled.t24_s == pytest.approx(0.3, rel=1e-15)


def test_values_follow_field_order(baseline):
    assert FIELD_ORDER == ("t6_1", "t6_2", "t16", "t24", "k_c", "c_0", "delta")
    assert baseline.values() == {
        "t6_1": 6.0, "t6_2": 6.0, "t16": 16.0, "t24": 24.0,
        "k_c": 4.0, "c_0": 50.0, "delta": 0.035,
    }
    assert tuple(baseline.values()) == FIELD_ORDER


def test_date_is_carried_but_not_validated():
    record = make()
    assert record.date is None
    dated = InputParameters(
        t6_1=6.0, t6_2=6.0, t16=16.0, t24=24.0, k_c=4.0, c_0=50.0,
        delta=0.035, date="2026-01-01",
    )
    validate(dated)
    assert dated.date == "2026-01-01"
