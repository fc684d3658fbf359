from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnglue.hypotheses import (
    GluingInstance,
    HyperplaneInstance,
    SmallMidQuery,
    check_main,
    check_main_hyp,
    check_main_sp,
    check_small_hyp,
    check_small_mid,
)
from bnglue.numerics import CurveSpec, rho


def gi(d1, g1, d2, g2, r, n):
    return GluingInstance(CurveSpec(d1, g1, r), CurveSpec(d2, g2, r), n)


def hi(d1, g1, d2, g2, r, n):
    return HyperplaneInstance(CurveSpec(d1, g1, r), CurveSpec(d2, g2, r - 1), n)


nns_instances = st.integers(min_value=3, max_value=6).flatmap(
    lambda r: st.tuples(
        st.integers(min_value=0, max_value=8),
        st.integers(min_value=0, max_value=8),
        st.integers(min_value=0, max_value=2 * r),
        st.integers(min_value=0, max_value=2 * r),
        st.integers(min_value=1, max_value=3 * r),
    ).map(
        lambda t: gi(t[0] + t[2] + r, t[2], t[1] + t[3] + r, t[3], r, t[4])
    )
)


class TestInstances:
    def test_gluing_validation(self):
        with pytest.raises(ValueError, match="ambient"):
            GluingInstance(CurveSpec(3, 0, 3), CurveSpec(3, 0, 4), 2)
        with pytest.raises(ValueError, match="node count"):
            gi(3, 0, 3, 0, 3, 0)
        with pytest.raises(ValueError, match="at least 2"):
            GluingInstance(CurveSpec(2, 1, 1), CurveSpec(2, 1, 1), 1)

    def test_hyperplane_validation(self):
        with pytest.raises(ValueError, match="one dimension down"):
            HyperplaneInstance(CurveSpec(3, 0, 3), CurveSpec(2, 0, 3), 2)

    def test_mid_query_validation(self):
        with pytest.raises(ValueError, match="0 <= a <= r"):
            SmallMidQuery(CurveSpec(5, 1, 3), 4)

    def test_glued_class(self):
        assert gi(4, 1, 5, 2, 3, 6).glued == CurveSpec(9, 8, 3)
        assert hi(3, 0, 2, 0, 3, 3).glued == CurveSpec(5, 2, 3)


class TestCheckMainSp:
    def test_tight_pass(self):
        v = check_main_sp(gi(3, 0, 3, 0, 3, 5))
        assert v.passed and v.conclusion == "WBN"
        assert min(c.slack for c in v.checks) == 0

    def test_line_side_witness(self):
        # the line on side 1 carries the bound: 4 - 0 + 3 >= 6
        v = check_main_sp(gi(1, 0, 2, 2, 3, 2))
        assert v.passed
        assert any("side 1" in c.label for c in v.checks)

    def test_fail(self):
        v = check_main_sp(gi(3, 0, 3, 0, 3, 6))
        assert not v.passed and v.conclusion == "none"


class TestCheckMain:
    def test_worked_pass(self):
        v = check_main(gi(4, 1, 5, 2, 3, 6))
        assert v.passed and v.conclusion == "BN"
        assert rho(gi(4, 1, 5, 2, 3, 6).glued) == 0

    def test_rho_fail(self):
        v = check_main(gi(4, 1, 5, 2, 3, 7))
        assert not v.passed
        assert rho(gi(4, 1, 5, 2, 3, 7).glued) == -3

    def test_capacity_gate_fail(self):
        v = check_main(gi(5, 2, 5, 2, 3, 10))
        assert not v.passed
        bad = [c.label for c in v.failing()]
        assert any("through the nodes" in label for label in bad)

    def test_margin_route(self):
        # not linearly normal on either side; side 1 carries the margin
        v = check_main(gi(8, 2, 6, 3, 3, 9))
        assert v.passed
        assert any("margin" in c.label for c in v.checks)

    @given(nns_instances)
    @settings(max_examples=400)
    def test_symmetric(self, inst):
        assert check_main(inst).passed == check_main(inst.swapped).passed

    @given(nns_instances)
    @settings(max_examples=400)
    def test_pass_implies_rho_bound(self, inst):
        # cross-multiplied admissibility: rn <= r(r+2) + rho1 + rho2
        if check_main(inst).passed:
            r = inst.r
            assert r * inst.n <= r * (r + 2) + rho(inst.left) + rho(inst.right)

    @given(nns_instances)
    @settings(max_examples=400)
    def test_small_n_implies_side_bound(self, inst):
        # with both sides admissible and few nodes, the side bound follows
        if (
            inst.n <= inst.r + 2
            and rho(inst.left) >= 0
            and rho(inst.right) >= 0
        ):
            assert check_main_sp(inst).passed

    @given(nns_instances)
    def test_outcome_is_function_of_slacks(self, inst):
        v = check_main(inst)
        assert v.passed == all(c.slack >= 0 for c in v.checks)


class TestCheckMainHyp:
    def test_pass(self):
        v = check_main_hyp(hi(4, 0, 2, 0, 3, 3))
        assert v.passed and v.conclusion == "WBN"

    def test_degree_genus_fail(self):
        v = check_main_hyp(hi(3, 1, 2, 0, 3, 1))
        assert not v.passed

    def test_tight_rational_normal(self):
        for r in range(3, 8):
            v = check_main_hyp(hi(r, 0, 1, 0, r, r + 2))
            assert v.passed
            assert min(c.slack for c in v.checks) == 0


class TestCheckSmallMid:
    def test_pass(self):
        assert rho(CurveSpec(8, 3, 3)) == 11
        assert check_small_mid(SmallMidQuery(CurveSpec(8, 3, 3), 1)).passed

    def test_completion_shape(self):
        v = check_small_mid(SmallMidQuery(CurveSpec(7, 2, 5), 3))
        assert v.passed

    def test_low_a_fail(self):
        v = check_small_mid(SmallMidQuery(CurveSpec(8, 3, 3), 0))
        assert not v.passed


class TestCheckSmallHyp:
    def test_pass(self):
        v = check_small_hyp(hi(3, 0, 2, 0, 3, 3))
        assert v.passed and v.conclusion == "BN"
        assert rho(CurveSpec(5, 2, 3)) == 2

    def test_node_bound_fail(self):
        assert not check_small_hyp(hi(3, 0, 2, 0, 3, 6)).passed

    def test_line_in_plane_pass(self):
        v = check_small_hyp(hi(4, 0, 1, 0, 3, 2))
        assert v.passed
        assert hi(4, 0, 1, 0, 3, 2).glued == CurveSpec(5, 1, 3)
        assert rho(CurveSpec(5, 1, 3)) == 5
