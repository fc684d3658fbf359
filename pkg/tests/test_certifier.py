from __future__ import annotations

import pytest

from bnglue.certificates import (
    Certificate,
    LemmaLeaf,
    Reduce,
    Refusal,
    Split,
    Swap,
    TheoremLeaf,
    depth,
    iter_certificates,
    unwrap_swaps,
)
from bnglue.certifier import certify_main, certify_small_hyp, certify_small_mid
from bnglue.hypotheses import GluingInstance, HyperplaneInstance, SmallMidQuery
from bnglue.numerics import CurveSpec, margin
from bnglue.verifier import verify


def gi(d1, g1, d2, g2, r, n):
    return GluingInstance(CurveSpec(d1, g1, r), CurveSpec(d2, g2, r), n)


def hi(d1, g1, d2, g2, r, n):
    return HyperplaneInstance(CurveSpec(d1, g1, r), CurveSpec(d2, g2, r - 1), n)


def cases(cert):
    return [(path, sub.case_id) for path, sub in iter_certificates(cert)]


class TestCertifyMainWorkedExample:
    def test_structure(self):
        cert = certify_main(gi(4, 1, 5, 2, 3, 6))
        assert isinstance(cert, Certificate)
        assert cert.case_id == "lln-split-line"
        # outer instance re-dispatches through the rnc arm
        outer = cert.node.outer
        assert outer.instance == gi(3, 0, 6, 3, 3, 6)
        rnc = unwrap_swaps(outer)
        assert rnc.case_id == "lln-split-rnc"
        assert rnc.node.inner.instance == gi(3, 0, 3, 0, 3, 5)
        assert isinstance(rnc.node.inner.node, TheoremLeaf)
        assert depth(cert) == 3
        assert verify(cert).ok

    def test_deterministic_structure(self):
        a = certify_main(gi(4, 1, 5, 2, 3, 6))
        b = certify_main(gi(4, 1, 5, 2, 3, 6))
        assert a == b


class TestCertifyMainDispatch:
    def test_base_leaf(self):
        cert = certify_main(gi(3, 0, 3, 0, 3, 5))
        assert cert.case_id == "base-node-count"
        assert isinstance(cert.node, TheoremLeaf)
        assert depth(cert) == 1

    def test_refusal_carries_verdict(self):
        out = certify_main(gi(4, 1, 5, 2, 3, 7))
        assert isinstance(out, Refusal)
        assert out.verdict is not None and not out.verdict.passed
        assert "Brill-Noether" in out.reason

    def test_excess_split(self):
        cert = certify_main(gi(8, 2, 6, 3, 3, 9))
        assert isinstance(cert, Certificate)
        sub = unwrap_swaps(cert)
        assert sub.case_id == "excess-split-line"
        assert sub.node.kind == "line1"
        assert sub.node.plan.n0 == 1
        assert verify(cert).ok

    def test_boundary_split(self):
        # left on the linearly normal boundary, right at its capacity edge
        inst = gi(8, 5, 4, 0, 3, 8)
        cert = certify_main(inst)
        assert cert.case_id == "boundary-split-line"
        assert cert.node.kind == "line2"
        # outer keeps the node count; the swapped excess arm then lowers it
        outer = unwrap_swaps(cert.node.outer)
        assert outer.case_id == "excess-split-line"
        assert verify(cert).ok

    def test_exceptional_margin_four_forces_n_ten(self):
        assert margin(CurveSpec(6, 3, 3), 10) == 4
        assert [n for n in range(1, 30) if margin(CurveSpec(6, 3, 3), n) == 4] == [10]
        cert = certify_main(gi(6, 3, 9, 2, 3, 10))
        assert isinstance(cert, Certificate)
        # the boundary arm's strictness fails at margin exactly 4, so the
        # derived margin of the other side routes through a swap
        assert cert.case_id == "swap"
        assert unwrap_swaps(cert).case_id == "excess-split-line"
        assert verify(cert).ok

    def test_swap_orientation(self):
        # the larger-genus side sits on the left, so normalization swaps
        cert = certify_main(gi(5, 2, 4, 1, 3, 6))
        assert cert.case_id == "swap"
        inner = unwrap_swaps(cert)
        assert inner.case_id == "lln-split-line"
        assert verify(cert).ok

    def test_shared_memo_reuses_subtrees(self):
        memo = {}
        a = certify_main(gi(4, 1, 5, 2, 3, 6), memo=memo)
        b = certify_main(gi(3, 0, 6, 3, 3, 6), memo=memo)
        assert unwrap_swaps(a.node.outer) is unwrap_swaps(b)


class TestCertifySmallMid:
    def test_full_attachment(self):
        cert = certify_small_mid(SmallMidQuery(CurveSpec(8, 3, 3), 3))
        assert cert.case_id == "attach-rnc-full"
        assert verify(cert).ok

    def test_completion(self):
        cert = certify_small_mid(SmallMidQuery(CurveSpec(7, 2, 5), 3))
        assert cert.case_id == "attach-dualizing"
        assert isinstance(cert.node, LemmaLeaf)
        assert verify(cert).ok

    def test_line_slide(self):
        cert = certify_small_mid(SmallMidQuery(CurveSpec(13, 6, 3), 2))
        assert cert.case_id == "attach-line-slide"
        assert verify(cert).ok

    def test_genus_step_recursion(self):
        q = SmallMidQuery(CurveSpec(10, 9, 3), 2)
        cert = certify_small_mid(q)
        assert cert.case_id == "attach-genus-step"
        assert isinstance(cert.node, Reduce)
        reduced = cert.node.child("reduced")
        assert reduced.instance == SmallMidQuery(CurveSpec(7, 5, 3), 2)
        assert verify(cert).ok

    def test_refusal(self):
        out = certify_small_mid(SmallMidQuery(CurveSpec(8, 3, 3), 0))
        assert isinstance(out, Refusal)


class TestCertifySmallHyp:
    def test_nonspecial_inner_rational(self):
        cert = certify_small_hyp(hi(3, 0, 2, 0, 3, 3))
        assert cert.case_id == "hyp-rational-base"
        assert isinstance(cert.node, TheoremLeaf)
        assert cert.node.theorem == "main-hyp"
        assert verify(cert).ok

    def test_few_nodes_base(self):
        cert = certify_small_hyp(hi(3, 0, 2, 0, 3, 2))
        assert cert.case_id == "hyp-base"
        assert isinstance(cert.node.child("union").node, TheoremLeaf)
        assert verify(cert).ok

    def test_node_bound_refusal(self):
        out = certify_small_hyp(hi(4, 0, 1, 0, 3, 6))
        assert isinstance(out, Refusal)
        assert "hypotheses fail" in out.reason

    def test_line_step(self):
        cert = certify_small_hyp(hi(5, 2, 3, 0, 3, 4))
        assert cert.case_id == "hyp-line-step"
        glued = cert.node.child("glued")
        assert glued.instance == gi(4, 1, 4, 0, 3, 5)
        assert verify(cert).ok

    def test_special_band_small_base(self):
        # inner class below the nonspecial range, few nodes
        cert = certify_small_hyp(hi(8, 6, 6, 2, 3, 3))
        assert cert.case_id == "hyp-small-base"
        assert verify(cert).ok

    def test_mid_base(self):
        cert = certify_small_hyp(hi(8, 6, 2, 0, 3, 4))
        assert cert.case_id == "hyp-mid-base"
        attach = cert.node.child("attach")
        assert attach.instance == SmallMidQuery(CurveSpec(8, 6, 3), 2)
        assert verify(cert).ok

    def test_special_step(self):
        cert = certify_small_hyp(hi(9, 7, 4, 1, 3, 5))
        assert cert.case_id == "hyp-special-step"
        assert verify(cert).ok

    def test_special_boundary(self):
        cert = certify_small_hyp(hi(10, 8, 2, 0, 3, 5))
        assert cert.case_id == "hyp-special-boundary"
        assert verify(cert).ok

    def test_planar_step_at_boundary(self):
        cert = certify_small_hyp(hi(6, 2, 4, 3, 3, 4))
        assert cert.case_id == "hyp-planar-step"
        assert verify(cert).ok

    def test_planar_step_strictly_special_refuses(self):
        # the planar split's gluing hypotheses fail one step below the
        # boundary, so the engine refuses rather than fake a certificate
        out = certify_small_hyp(hi(9, 6, 6, 6, 3, 3))
        assert isinstance(out, Refusal)
        assert "planar gluing sub-derivation" in out.reason

    def test_inadmissible_planar_class_refuses(self):
        out = certify_small_hyp(hi(4, 0, 1, 0, 3, 2))
        assert isinstance(out, Refusal)
        assert "negative Brill-Noether" in out.reason


class TestTreeShape:
    def test_every_swap_wraps_swapped_instance(self):
        cert = certify_main(gi(5, 2, 4, 1, 3, 6))
        for _, sub in iter_certificates(cert):
            if isinstance(sub.node, Swap):
                assert sub.node.child.instance == sub.instance.swapped

    def test_split_children_instances(self):
        cert = certify_main(gi(8, 2, 6, 3, 3, 9))
        for _, sub in iter_certificates(cert):
            if isinstance(sub.node, Split):
                plan = sub.node.plan
                inst = sub.instance
                assert plan.parent == inst.left
                assert plan.piece_main.d + plan.piece_off.d == plan.parent.d
                assert (
                    plan.piece_main.g + plan.piece_off.g + plan.n0 - 1 == plan.parent.g
                )
                assert plan.n_prime + plan.n_dprime == inst.n
