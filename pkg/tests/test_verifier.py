from __future__ import annotations

from dataclasses import replace

from bnglue.certificates import (
    Certificate,
    Split,
    SplitPlan,
    Swap,
    TheoremLeaf,
    iter_certificates,
    unwrap_swaps,
)
from bnglue.certifier import certify_main, certify_small_hyp, certify_small_mid
from bnglue.hypotheses import (
    GluingInstance,
    HyperplaneInstance,
    SmallMidQuery,
    check_main_sp,
)
from bnglue.numerics import CurveSpec
from bnglue.verifier import metric, tier, verify, verify_node


def gi(d1, g1, d2, g2, r, n):
    return GluingInstance(CurveSpec(d1, g1, r), CurveSpec(d2, g2, r), n)


WORKED = gi(4, 1, 5, 2, 3, 6)


def worked_certificate():
    cert = certify_main(WORKED)
    assert isinstance(cert, Certificate)
    return cert


class TestVerifyClean:
    def test_worked_example(self):
        assert verify(worked_certificate()).ok

    def test_small_certificates(self):
        for build, arg in [
            (certify_small_mid, SmallMidQuery(CurveSpec(13, 6, 3), 2)),
            (certify_small_mid, SmallMidQuery(CurveSpec(7, 2, 5), 3)),
            (
                certify_small_hyp,
                HyperplaneInstance(CurveSpec(5, 2, 3), CurveSpec(3, 0, 2), 4),
            ),
        ]:
            cert = build(arg)
            assert isinstance(cert, Certificate)
            assert verify(cert).ok

    def test_report_is_deterministic(self):
        a = verify(worked_certificate())
        b = verify(worked_certificate())
        assert a == b


def tamper_plan(cert: Certificate, **changes) -> Certificate:
    node = cert.node
    return replace(cert, node=replace(node, plan=replace(node.plan, **changes)))


class TestTamperDetection:
    def test_wrong_internal_node_count(self):
        cert = worked_certificate()
        bad = tamper_plan(cert, n0=3)
        report = verify(bad)
        assert not report.ok
        labels = [f.label for f in report.failures]
        assert any("account for the split genus" in label for label in labels)

    def test_wrong_piece_degree(self):
        cert = worked_certificate()
        bad = tamper_plan(cert, piece_main=CurveSpec(4, 0, 3))
        report = verify(bad)
        assert not report.ok
        assert any("degrees sum" in f.label for f in report.failures)

    def test_leaf_beyond_base_bound(self):
        inst = gi(4, 0, 4, 0, 3, 6)
        bad = Certificate(inst, "base-node-count", TheoremLeaf("main-sp", check_main_sp(inst)))
        report = verify(bad)
        assert not report.ok
        assert any("base bound" in f.label and f.slack == -1 for f in report.failures)

    def test_tampered_leaf_verdict(self):
        cert = worked_certificate()
        swapped_leaf = cert.node.inner
        other = check_main_sp(gi(3, 0, 3, 0, 3, 5))
        forged = replace(swapped_leaf, node=TheoremLeaf("main-sp", other))
        bad = replace(cert, node=replace(cert.node, inner=forged))
        report = verify(bad)
        assert not report.ok
        assert any("matches recomputation" in f.label for f in report.failures)

    def test_swapped_child_mismatch(self):
        inner = worked_certificate()
        bad = Certificate(WORKED, "swap", Swap(inner))  # child not swapped
        report = verify(bad)
        assert any(f.label == "malformed node" for f in report.failures)


class TestVerifyNode:
    def test_base_leaf_conditions(self):
        inst = gi(3, 0, 3, 0, 3, 5)
        leaf = Certificate(inst, "base-node-count", TheoremLeaf("main-sp", check_main_sp(inst)))
        conds = verify_node(leaf)
        assert any("degree-genus bound" in c.label and c.slack == 0 for c in conds)
        assert all(c.slack >= 0 for c in conds)

    def test_rnc_split_has_tight_outer_bound(self):
        cert = worked_certificate()
        rnc = unwrap_swaps(cert.node.outer)
        assert rnc.node.kind == "rnc"
        conds = verify_node(rnc)
        found = [c for c in conds if c.label.startswith("condition 5b")]
        assert found and found[0].slack == 0  # n0 + n' = r + 2
        assert all(c.slack >= 0 for c in conds)

    def test_swap_node_is_conditionless(self):
        cert = cert_with_swap()
        swap = next(
            sub for _, sub in iter_certificates(cert) if isinstance(sub.node, Swap)
        )
        assert verify_node(swap) == ()


def cert_with_swap():
    cert = certify_main(gi(5, 2, 4, 1, 3, 6))
    assert isinstance(cert.node, Swap)
    return cert


class TestTerminationMeasure:
    def test_tiers(self):
        cert = worked_certificate()
        assert tier(cert) == 1  # linearly normal line split
        rnc = unwrap_swaps(cert.node.outer)
        assert tier(rnc) == 1
        assert tier(rnc.node.inner) == 0

    def test_strict_decrease_on_worked_example(self):
        cert = worked_certificate()
        for _, sub in iter_certificates(cert):
            if isinstance(sub.node, Split):
                for child in (sub.node.inner, sub.node.outer):
                    assert metric(unwrap_swaps(child)) < metric(sub)

    def test_boundary_step_drops_tier(self):
        cert = certify_main(gi(8, 5, 4, 0, 3, 8))
        assert tier(cert) == 3
        outer = unwrap_swaps(cert.node.outer)
        assert tier(outer) == 2
        assert metric(outer) < metric(cert)
