from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnglue.numerics import (
    EXCEPTIONAL_TRIPLES,
    Capacity,
    CurveSpec,
    glue,
    interpolation_capacity,
    is_exceptional,
    margin,
    passes_through,
    rho,
)


def capacity_oracle(spec: CurveSpec) -> int | None:
    """Independent oracle: scan n upward against the defining inequality
    instead of using the closed-form floor.  None means unbounded."""
    d, g, r = spec.d, spec.g, spec.r
    assert d >= g
    if r == 1:
        return None
    if d - g < r:
        return d + 1 - g
    if (d, g, r) in EXCEPTIONAL_TRIPLES:
        return 9
    n = 0
    while (r - 1) * (n + 1) <= (r + 1) * d - (r - 3) * (g - 1):
        n += 1
    return n


def rho_oracle(d: int, g: int, r: int) -> int:
    # Expanded by hand rather than via the factored form.
    return r * d + d - r * g - r * r - r


curves = st.builds(
    CurveSpec,
    d=st.integers(min_value=1, max_value=60),
    g=st.integers(min_value=0, max_value=40),
    r=st.integers(min_value=1, max_value=12),
)


class TestCurveSpec:
    def test_validation(self):
        with pytest.raises(ValueError, match="degree"):
            CurveSpec(0, 0, 3)
        with pytest.raises(ValueError, match="genus"):
            CurveSpec(3, -1, 3)
        with pytest.raises(ValueError, match="ambient"):
            CurveSpec(3, 0, 0)

    def test_excess_ranges(self):
        assert CurveSpec(6, 3, 3).excess == 0
        assert CurveSpec(7, 3, 3).excess == 1
        assert CurveSpec(5, 3, 3).excess == -1


class TestRho:
    def test_linearly_normal_value(self):
        # rho(g + r, g, r) = g
        assert rho(CurveSpec(5, 2, 3)) == 2
        for g in range(0, 51):
            for r in range(1, 11):
                assert rho(CurveSpec(g + r, g, r)) == g

    def test_rational_normal_curve(self):
        for r in range(1, 12):
            assert rho(CurveSpec(r, 0, r)) == 0

    def test_hand_value(self):
        assert rho(CurveSpec(6, 2, 3)) == 24 - 6 - 12

    @given(curves)
    def test_matches_expanded_form(self, spec):
        assert rho(spec) == rho_oracle(spec.d, spec.g, spec.r)


class TestExceptional:
    def test_members(self):
        assert is_exceptional(CurveSpec(5, 2, 3))
        assert is_exceptional(CurveSpec(7, 2, 5))
        assert not is_exceptional(CurveSpec(6, 2, 3))

    def test_formula_overshoots_by_one(self):
        for d, g, r in EXCEPTIONAL_TRIPLES:
            raw = ((r + 1) * d - (r - 3) * (g - 1)) // (r - 1)
            assert raw == 10
            assert interpolation_capacity(CurveSpec(d, g, r)).value == 9


class TestMargin:
    def test_hand_values(self):
        assert margin(CurveSpec(6, 3, 3), 10) == 4
        assert margin(CurveSpec(6, 2, 3), 11) == 2

    def test_rational_normal_curve_at_r_plus_3(self):
        for r in range(2, 10):
            assert margin(CurveSpec(r, 0, r), r + 3) == 0

    def test_rejects_negative_n(self):
        with pytest.raises(ValueError):
            margin(CurveSpec(3, 0, 3), -1)

    @given(curves, st.integers(min_value=0, max_value=50))
    def test_step_is_r_minus_1(self, spec, n):
        assert margin(spec, n) - margin(spec, n + 1) == spec.r - 1


class TestCapacity:
    def test_exceptional_override(self):
        assert interpolation_capacity(CurveSpec(5, 2, 3)).value == 9
        assert interpolation_capacity(CurveSpec(7, 2, 5)).value == 9

    def test_degenerate_range(self):
        # a line meets two general points
        assert interpolation_capacity(CurveSpec(1, 0, 3)).value == 2

    def test_rational_normal_curve(self):
        assert interpolation_capacity(CurveSpec(3, 0, 3)).value == 6

    def test_hand_value(self):
        assert interpolation_capacity(CurveSpec(6, 2, 3)).value == 12

    def test_unbounded_only_in_dimension_one(self):
        cap = interpolation_capacity(CurveSpec(2, 1, 1))
        assert cap.is_unbounded
        assert cap.admits(10**9)
        assert str(cap) == "unbounded"

    def test_rejects_special_degree(self):
        with pytest.raises(ValueError, match="d >= g"):
            interpolation_capacity(CurveSpec(2, 3, 3))

    @given(curves)
    def test_matches_scan_oracle(self, spec):
        if spec.d < spec.g:
            with pytest.raises(ValueError):
                interpolation_capacity(spec)
            return
        expected = capacity_oracle(spec)
        got = interpolation_capacity(spec)
        assert got.value == expected
        if expected is not None:
            assert expected >= 0


class TestPassesThrough:
    def test_exceptional_boundary(self):
        assert passes_through(CurveSpec(5, 2, 3), 9)
        assert not passes_through(CurveSpec(5, 2, 3), 10)

    def test_zero_points_always(self):
        assert passes_through(CurveSpec(4, 1, 3), 0)

    def test_derived_boundary(self):
        assert passes_through(CurveSpec(4, 1, 3), 8)
        assert not passes_through(CurveSpec(4, 1, 3), 9)

    @given(curves, st.integers(min_value=1, max_value=80))
    def test_monotone(self, spec, n):
        if spec.d < spec.g:
            return
        if passes_through(spec, n):
            assert passes_through(spec, n - 1)


class TestGlue:
    def test_examples(self):
        assert glue(CurveSpec(3, 0, 3), CurveSpec(3, 0, 3), 5) == CurveSpec(6, 4, 3)
        assert glue(CurveSpec(7, 2, 4), CurveSpec(1, 0, 4), 1) == CurveSpec(8, 2, 4)
        assert glue(CurveSpec(4, 1, 3), CurveSpec(5, 2, 3), 6) == CurveSpec(9, 8, 3)

    def test_rejects_mismatched_ambient(self):
        with pytest.raises(ValueError, match="ambient"):
            glue(CurveSpec(3, 0, 3), CurveSpec(3, 0, 4), 2)

    def test_rejects_zero_nodes(self):
        with pytest.raises(ValueError, match="node"):
            glue(CurveSpec(3, 0, 3), CurveSpec(3, 0, 3), 0)

    @given(curves, curves, st.integers(min_value=1, max_value=30))
    def test_commutative(self, left, right, n):
        right = CurveSpec(right.d, right.g, left.r)
        assert glue(left, right, n) == glue(right, left, n)

    @given(curves, curves, st.integers(min_value=1, max_value=30))
    @settings(max_examples=300)
    def test_rho_additivity(self, left, right, n):
        right = CurveSpec(right.d, right.g, left.r)
        r = left.r
        assert rho(glue(left, right, n)) == rho(left) + rho(right) - r * n + r * (r + 2)


class TestCapacityType:
    def test_surplus(self):
        assert Capacity(7).surplus(5) == 2
        assert Capacity(None).surplus(10**6) == 1

    def test_admits_rejects_negative(self):
        with pytest.raises(ValueError):
            Capacity(3).admits(-1)
