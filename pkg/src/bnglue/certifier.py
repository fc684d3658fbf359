"""Certificate construction: replays the inductive gluing arguments.

``certify_main`` walks the gluing induction: a base leaf when the node
count is small, a line or rational-normal-curve split otherwise, recursing
on the outer union.  ``certify_small_mid`` and ``certify_small_hyp`` emit
the attachment and hyperplane recursions as composite reduction steps
whose sub-derivations are certified recursively.

Dispatch order is fixed and every normalization is an explicit swap node,
so identical inputs yield structurally identical certificates.  Each arm
predicate computes its margin form and its interpolation-capacity form and
insists they agree; a disagreement means the engine itself is broken and
raises instead of emitting a bad certificate.

The recursion carries no shared state.  The optional memo table is
per-call (or caller-supplied), so concurrent use needs no locking and
certificates, being immutable values, are safe to share.
"""

from __future__ import annotations

from .certificates import (
    Certificate,
    LemmaLeaf,
    Reduce,
    Refusal,
    Split,
    SplitPlan,
    Swap,
    TheoremLeaf,
)
from .hypotheses import (
    Check,
    GluingInstance,
    HyperplaneInstance,
    SmallMidQuery,
    Verdict,
    check_main,
    check_main_hyp,
    check_main_sp,
    check_small_hyp,
    check_small_mid,
)
from .numerics import CurveSpec, glue, interpolation_capacity, margin, passes_through, rho

__all__ = ["certify_main", "certify_small_mid", "certify_small_hyp"]

# Classes at which an arm demands one unit of extra margin.  Keys are
# (g, r) for the two linearly-normal arms and (d, g, r) otherwise; each
# set marks exactly the inputs whose peeled piece is capacity-exceptional.
LLN_LINE_STRICT = frozenset({(3, 3), (3, 5)})
LLN_RNC_STRICT = frozenset({(5, 3), (7, 5)})
EXCESS_STRICT = frozenset({(6, 2, 3), (8, 2, 5)})
BOUNDARY_STRICT = frozenset({(6, 3, 3), (8, 3, 5)})


def _line(r: int) -> CurveSpec:
    return CurveSpec(1, 0, r)


def _failure_reason(verdict: Verdict) -> str:
    return "hypotheses fail: " + "; ".join(c.label for c in verdict.failing())


def _refused(instance, child: Refusal, where: str) -> Refusal:
    return Refusal(instance, f"{where} refused: {child.reason}", child.verdict)


def _encodings_agree(margin_ok: bool, capacity_ok: bool, arm: str) -> None:
    if margin_ok != capacity_ok:
        raise RuntimeError(
            f"margin and capacity encodings disagree in the {arm} arm; "
            "the dispatch tables are corrupt"
        )


# --------------------------------------------------------------------------
# Gluing certificates


def certify_main(inst: GluingInstance, *, memo: dict | None = None):
    """Certificate that the glued class is a BN class, or a Refusal.

    A caller-supplied ``memo`` dict is reused across calls; by default each
    call gets its own.
    """
    if memo is None:
        memo = {}
    return _certify_main(inst, memo)


def _certify_main(inst, memo):
    hit = memo.get(inst)
    if hit is not None:
        return hit
    verdict = check_main(inst)
    if verdict.passed:
        out = _dispatch_main(inst, memo)
    else:
        out = Refusal(inst, _failure_reason(verdict), verdict)
    memo[inst] = out
    return out


def _base_applies(r: int, n: int) -> bool:
    return n <= r + 2


def _main_sp_leaf(inst: GluingInstance) -> Certificate:
    return Certificate(inst, "base-node-count", TheoremLeaf("main-sp", check_main_sp(inst)))


def _dispatch_main(inst, memo):
    if _base_applies(inst.r, inst.n):
        return _main_sp_leaf(inst)
    if inst.left.excess == 0 and inst.right.excess == 0:
        return _dispatch_linearly_normal(inst, memo)
    return _dispatch_with_excess(inst, memo)


def _oriented(inst, oriented, result):
    """Re-root a certificate built for the (possibly swapped) orientation."""
    if isinstance(result, Refusal):
        if result.instance == inst:
            return result
        return Refusal(inst, result.reason, result.verdict)
    if oriented == inst:
        return result
    return Certificate(inst, "swap", Swap(result))


def _lln_line_applies(left: CurveSpec, n: int) -> bool:
    """Line arm of the linearly normal case, for the smaller-genus side."""
    g, r = left.g, left.r
    if g < 1:
        return False
    bump = 1 if (g, r) in LLN_LINE_STRICT else 0
    margin_ok = (r - 1) * n <= 4 * g + r * r + 2 * r - 7 - bump
    capacity_ok = passes_through(CurveSpec(left.d - 1, g - 1, r), n)
    _encodings_agree(margin_ok, capacity_ok, "linearly-normal line")
    return margin_ok


def _lln_rnc_applies(left: CurveSpec, n: int) -> bool:
    """Rational-normal-curve arm, for the larger-genus side."""
    g, r = left.g, left.r
    if g < r:
        return False
    bump = 1 if (g, r) in LLN_RNC_STRICT else 0
    margin_ok = (r - 1) * n <= 4 * g + r * r - r - 4 - bump
    capacity_ok = passes_through(CurveSpec(left.d - r, g - r, r), n - 1)
    _encodings_agree(margin_ok, capacity_ok, "linearly-normal rnc")
    return margin_ok


def _dispatch_linearly_normal(inst, memo):
    # Normalize so the line arm sees the smaller genus and the rnc arm the
    # larger; ties keep the given order.
    low_first = inst if inst.left.g <= inst.right.g else inst.swapped
    if _lln_line_applies(low_first.left, low_first.n):
        return _oriented(inst, low_first, _emit_split(
            low_first, "lln-split-line", "line2", _lln_line_plan(low_first.left, low_first.n),
            memo, inner_recurses=False, outer_recurses=True,
        ))
    high_first = inst if inst.left.g >= inst.right.g else inst.swapped
    if _lln_rnc_applies(high_first.left, high_first.n):
        return _oriented(inst, high_first, _emit_split(
            high_first, "lln-split-rnc", "rnc", _lln_rnc_plan(high_first.left, high_first.n),
            memo, inner_recurses=True, outer_recurses=False,
        ))
    return Refusal(inst, "no arm applies to the linearly normal pair (dispatch gap)", None)


def _excess_arm_applies(s: CurveSpec, n: int) -> bool:
    if s.excess <= 0:
        return False
    bump = 1 if s.as_tuple() in EXCESS_STRICT else 0
    margin_ok = margin(s, n) >= 2 + bump
    capacity_ok = passes_through(CurveSpec(s.d - 1, s.g, s.r), n - 1)
    _encodings_agree(margin_ok, capacity_ok, "excess line")
    return margin_ok


def _boundary_arm_applies(s: CurveSpec, n: int) -> bool:
    if s.excess != 0 or s.g < 1:
        return False
    bump = 1 if s.as_tuple() in BOUNDARY_STRICT else 0
    margin_ok = margin(s, n) >= 4 + bump
    capacity_ok = passes_through(CurveSpec(s.d - 1, s.g - 1, s.r), n)
    _encodings_agree(margin_ok, capacity_ok, "boundary line")
    return margin_ok


def _dispatch_with_excess(inst, memo):
    # Arms in presentation order, each tried on both orientations.  The
    # exceptional-equality inputs (margin exactly 2 on (6,2,3)/(8,2,5),
    # forcing n = 11, or exactly 4 on (6,3,3)/(8,3,5), forcing n = 10) fail
    # their own arm's strictness, and the admissibility gate then guarantees
    # the other side's margin is at least 4, so a swapped arm fires.
    for oriented in (inst, inst.swapped):
        if _excess_arm_applies(oriented.left, oriented.n):
            return _oriented(inst, oriented, _emit_split(
                oriented, "excess-split-line", "line1",
                _excess_plan(oriented.left, oriented.n),
                memo, inner_recurses=False, outer_recurses=True,
            ))
    for oriented in (inst, inst.swapped):
        if _boundary_arm_applies(oriented.left, oriented.n):
            return _oriented(inst, oriented, _emit_split(
                oriented, "boundary-split-line", "line2",
                _boundary_plan(oriented.left, oriented.n),
                memo, inner_recurses=False, outer_recurses=True,
            ))
    return Refusal(inst, "no arm applies (dispatch gap)", None)


def _lln_line_plan(left: CurveSpec, n: int) -> SplitPlan:
    r = left.r
    return SplitPlan(left, CurveSpec(left.d - 1, left.g - 1, r), _line(r), 2, n - 2, 2)


def _lln_rnc_plan(left: CurveSpec, n: int) -> SplitPlan:
    r = left.r
    return SplitPlan(
        left, CurveSpec(r, 0, r), CurveSpec(left.d - r, left.g - r, r), r + 1, 1, n - 1
    )


def _excess_plan(left: CurveSpec, n: int) -> SplitPlan:
    r = left.r
    return SplitPlan(left, CurveSpec(left.d - 1, left.g, r), _line(r), 1, n - 2, 2)


def _boundary_plan(left: CurveSpec, n: int) -> SplitPlan:
    r = left.r
    return SplitPlan(left, CurveSpec(left.d - 1, left.g - 1, r), _line(r), 2, n - 2, 2)


def _inner_union(piece_off: CurveSpec, right: CurveSpec, n_dprime: int) -> CurveSpec:
    return glue(piece_off, right, n_dprime)


def _emit_split(inst, case_id, kind, plan, memo, *, inner_recurses, outer_recurses):
    inner_inst = GluingInstance(plan.piece_off, inst.right, plan.n_dprime)
    if inner_recurses:
        inner = _certify_main(inner_inst, memo)
        if isinstance(inner, Refusal):
            return _refused(inst, inner, "inner recursion")
    else:
        inner = _main_sp_leaf(inner_inst)

    outer_inst = GluingInstance(
        plan.piece_main,
        _inner_union(plan.piece_off, inst.right, plan.n_dprime),
        plan.n0 + plan.n_prime,
    )
    if outer_recurses:
        outer = _certify_main(outer_inst, memo)
        if isinstance(outer, Refusal):
            return _refused(inst, outer, "outer recursion")
    else:
        outer = _main_sp_leaf(outer_inst)

    return Certificate(inst, case_id, Split(kind, plan, inner, outer))


# --------------------------------------------------------------------------
# Attachment certificates


def certify_small_mid(q: SmallMidQuery, *, memo: dict | None = None):
    """Certificate for attaching a degree-a rational curve at a + 2 nodes."""
    if memo is None:
        memo = {}
    verdict = check_small_mid(q)
    if not verdict.passed:
        return Refusal(q, _failure_reason(verdict), verdict)
    if q.spec.r < 2:
        return Refusal(q, "union checks unsupported in ambient dimension 1", None)
    return _dispatch_small_mid(q, memo)


def _meets_nodes_check(spec: CurveSpec, count: int) -> Check:
    """A class meets `count` general points: by capacity on the
    nondegenerate-nonspecial range, by projective transitivity (any
    nondegenerate curve meets r + 2 general points) otherwise."""
    if spec.excess >= 0:
        cap = interpolation_capacity(spec)
        return Check("class meets the node set", f"{count} <= {cap}", cap.surplus(count))
    return Check(
        "projective transitivity supplies the node set",
        f"{count} <= {spec.r + 2}",
        spec.r + 2 - count,
    )


def _dispatch_small_mid(q: SmallMidQuery, memo):
    d, g, r = q.spec.d, q.spec.g, q.spec.r
    a = q.a
    p = rho(q.spec)

    if a == r:
        union = GluingInstance(q.spec, CurveSpec(r, 0, r), r + 2)
        conditions = (
            _eq("attachment degree equals ambient dimension", a, r),
            _meets_nodes_check(q.spec, r + 2),
            Check("rational normal piece spans the ambient space", f"{r} >= {r}", 0),
        )
        return Certificate(q, "attach-rnc-full", Reduce(conditions, (
            ("union", _main_sp_leaf(union)),
        )))

    if p >= r + 1 and a >= 1:
        reduced = CurveSpec(d - 1, g, r)
        rnc_join = GluingInstance(reduced, CurveSpec(a, 0, r), a + 1)
        line_join = GluingInstance(glue(reduced, CurveSpec(a, 0, r), a + 1), _line(r), 2)
        conditions = (
            Check("reduced class admissible", f"{p - (r + 1)} >= 0", p - (r + 1)),
            Check("attachment spans a proper subspace", f"{a + 1} <= {r}", r - a - 1),
            Check("doubled nodes span the ambient space", f"{2 * (a + 1)} >= {r}", 2 * a + 2 - r),
        )
        return Certificate(q, "attach-line-slide", Reduce(conditions, (
            ("attach-rnc", _main_sp_leaf(rnc_join)),
            ("attach-line", _main_sp_leaf(line_join)),
        )))

    if g >= r + 1:
        reduced = CurveSpec(d - r, g - r - 1, r)
        sub = certify_small_mid(SmallMidQuery(reduced, a), memo=memo)
        if isinstance(sub, Refusal):
            return _refused(q, sub, "attachment recursion")
        bridge = GluingInstance(CurveSpec(r, 0, r), reduced, r + 2)
        rejoined = GluingInstance(CurveSpec(r, 0, r), CurveSpec(d - r + a, g - r + a, r), r + 2)
        conditions = (
            _eq("reduction preserves the Brill-Noether number", rho(reduced), p),
            _meets_nodes_check(reduced, r + 2),
        )
        return Certificate(q, "attach-genus-step", Reduce(conditions, (
            ("reduced", sub),
            ("bridge", _main_sp_leaf(bridge)),
            ("rejoined", _main_sp_leaf(rejoined)),
        )))

    if p >= 1 and g >= 1 and a >= r + 1 - p:
        reduced = CurveSpec(d - 1, g - 1, r)
        sub = certify_small_mid(SmallMidQuery(reduced, a), memo=memo)
        if isinstance(sub, Refusal):
            return _refused(q, sub, "attachment recursion")
        bridge = GluingInstance(_line(r), reduced, 2)
        rejoined = GluingInstance(_line(r), CurveSpec(d - 1 + a, g + a, r), 2)
        conditions = (
            Check("reduced class admissible", f"{p - 1} >= 0", p - 1),
            Check("attachment bound survives reduction", f"{a} >= {r + 1 - p}", a - (r + 1 - p)),
        )
        return Certificate(q, "attach-rho-step", Reduce(conditions, (
            ("reduced", sub),
            ("bridge", _main_sp_leaf(bridge)),
            ("rejoined", _main_sp_leaf(rejoined)),
        )))

    if d == 2 * r - a and g == r - a:
        conditions = (
            _eq("degree matches the completion form", d, 2 * r - a),
            _eq("genus matches the completion form", g, r - a),
            _eq("Brill-Noether number equals the genus", p, g),
            Check("nodes dominate the genus", f"{a + 2} >= {r - a}", a + 2 - (r - a)),
        )
        return Certificate(q, "attach-dualizing", LemmaLeaf("dualizing-sheaf construction", conditions))

    return Refusal(q, "no attachment arm applies (dispatch gap)", None)


def _eq(label: str, lhs: int, rhs: int) -> Check:
    return Check(label, f"{lhs} = {rhs}", -abs(lhs - rhs))


# --------------------------------------------------------------------------
# Hyperplane certificates


def certify_small_hyp(inst: HyperplaneInstance, *, memo: dict | None = None):
    """Certificate for gluing a curve to a hyperplane curve at n nodes."""
    if memo is None:
        memo = {}
    return _certify_small_hyp(inst, memo)


def _certify_small_hyp(inst, memo):
    verdict = check_small_hyp(inst)
    if not verdict.passed:
        return Refusal(inst, _failure_reason(verdict), verdict)
    h = inst.hyper
    if rho(h) < 0:
        return Refusal(
            inst,
            "planar class has negative Brill-Noether number inside its hyperplane",
            verdict,
        )
    return _dispatch_small_hyp(inst, memo)


def _planar_in_ambient(inst: HyperplaneInstance) -> CurveSpec:
    return CurveSpec(inst.hyper.d, inst.hyper.g, inst.r)


def _dispatch_small_hyp(inst, memo):
    r, n = inst.r, inst.n
    c, h = inst.inner, inst.hyper
    dpp, gpp = h.d, h.g
    planar = _planar_in_ambient(inst)

    # Few nodes: the union follows from the side bound on the planar curve.
    if n <= r - 1 and dpp >= gpp + r - 1:
        union = GluingInstance(c, planar, n)
        conditions = (
            Check("few nodes", f"{n} <= {r - 1}", r - 1 - n),
            Check("planar side nonspecial", f"{dpp} >= {gpp + r - 1}", dpp - gpp - r + 1),
        )
        return Certificate(inst, "hyp-base", Reduce(conditions, (
            ("union", _main_sp_leaf(union)),
        )))

    # Planar curve special in its hyperplane: split it there first.
    if dpp <= gpp + r - 2:
        return _emit_hyp_planar_step(inst, memo)

    # Planar side nonspecial; branch on the inner curve.
    if c.excess >= 0:
        if c.g == 0:
            return Certificate(
                inst, "hyp-rational-base", TheoremLeaf("main-hyp", check_main_hyp(inst))
            )
        return _emit_hyp_line_step(inst, memo)
    return _dispatch_hyp_special(inst, memo)


def _emit_hyp_line_step(inst, memo):
    r, n = inst.r, inst.n
    c = inst.inner
    reduced = CurveSpec(c.d - 1, c.g - 1, r)
    extended = CurveSpec(inst.hyper.d + 1, inst.hyper.g, r)
    glued = certify_main(GluingInstance(reduced, extended, n + 1), memo=memo)
    if isinstance(glued, Refusal):
        return _refused(inst, glued, "gluing sub-derivation")
    bridge = GluingInstance(_line(r), _planar_in_ambient(inst), 1)
    generality = Certificate(inst, "marked-point-generality", LemmaLeaf(
        "hyperplane-section point generality",
        (
            Check("marked points fit the hyperplane bound", f"{n - 1} <= {r + 1}", r + 2 - n),
            Check("off-hyperplane marks fit", f"2 <= {r + 3 - (n - 1)}", r + 2 - n),
            Check("degree meets the marked points", f"{c.d - 1} >= {n - 1}", c.d - n),
        ),
    ))
    conditions = (
        Check("reduced class admissible", f"{rho(reduced)} >= 0", rho(reduced)),
        Check(
            "extended planar class nonspecial",
            f"{extended.d} >= {extended.g + r}",
            extended.excess,
        ),
    )
    return Certificate(inst, "hyp-line-step", Reduce(conditions, (
        ("bridge", _main_sp_leaf(bridge)),
        ("glued", glued),
        ("generality", generality),
    )))


def _dispatch_hyp_special(inst, memo):
    r, n = inst.r, inst.n
    c, h = inst.inner, inst.hyper
    dpp, gpp = h.d, h.g
    planar = _planar_in_ambient(inst)

    if n <= r:
        union = GluingInstance(c, planar, n)
        conditions = (
            Check("node bound", f"{n} <= {r}", r - n),
            Check("planar side nonspecial", f"{dpp} >= {gpp + r - 1}", dpp - gpp - r + 1),
        )
        return Certificate(inst, "hyp-small-base", Reduce(conditions, (
            ("union", _main_sp_leaf(union)),
        )))

    if n == r + 1 and dpp == r - 1 and gpp == 0:
        sub = certify_small_mid(SmallMidQuery(c, r - 1), memo=memo)
        if isinstance(sub, Refusal):
            return _refused(inst, sub, "attachment sub-derivation")
        conditions = (
            _eq("planar side is a rational normal curve of the hyperplane", dpp, r - 1),
            _eq("planar side is rational", gpp, 0),
            _eq("node count matches the attachment", n, r + 1),
        )
        return Certificate(inst, "hyp-mid-base", Reduce(conditions, (
            ("attach", sub),
        )))

    if rho(c) < 0:
        return Refusal(
            inst,
            "inner class has negative Brill-Noether number, so no nondegenerate "
            "representative exists",
            None,
        )

    if n == r + 2 and dpp == r - 1 and gpp == 0:
        shifted = rho(CurveSpec(c.d - r, c.g - r, r)) if c.d - r >= 1 and c.g - r >= 0 else None
        if shifted is None or shifted < 1:
            return Refusal(inst, "boundary reduction needs a strongly admissible inner class", None)
        reduced = CurveSpec(c.d - r, c.g - r, r)
        peel = GluingInstance(reduced, CurveSpec(r, 0, r), r + 1)
        sub = _certify_small_hyp(HyperplaneInstance(reduced, CurveSpec(r - 1, 0, r - 1), r + 1), memo)
        if isinstance(sub, Refusal):
            return _refused(inst, sub, "hyperplane recursion")
        rejoin = GluingInstance(CurveSpec(c.d - 1, c.g, r), CurveSpec(r, 0, r), r + 2)
        conditions = (
            Check("inner class strongly admissible", f"{shifted} >= 1", shifted - 1),
            _eq("planar side is a rational normal curve of the hyperplane", dpp, r - 1),
            Check("rational normal piece spans the ambient space", f"{r} >= {r}", 0),
        )
        return Certificate(inst, "hyp-special-boundary", Reduce(conditions, (
            ("peel", _main_sp_leaf(peel)),
            ("reduced", sub),
            ("rejoin", _main_sp_leaf(rejoin)),
        )))

    if c.g < r + 1 or c.d - r + 1 < 1:
        return Refusal(inst, "no hyperplane arm applies (dispatch gap)", None)

    reduced = CurveSpec(c.d - r + 1, c.g - r, r)
    attach = certify_small_mid(SmallMidQuery(reduced, r - 1), memo=memo)
    if isinstance(attach, Refusal):
        return _refused(inst, attach, "attachment sub-derivation")
    joined = GluingInstance(reduced, planar, n - 1)
    sub = _certify_small_hyp(
        HyperplaneInstance(glue(reduced, planar, n - 1), CurveSpec(r - 1, 0, r - 1), r + 2),
        memo,
    )
    if isinstance(sub, Refusal):
        return _refused(inst, sub, "hyperplane recursion")
    conditions = (
        Check("inner class admissible", f"{rho(c)} >= 0", rho(c)),
        Check("inner genus forces the special band", f"{c.g} >= {r + 1}", c.g - r - 1),
        Check("planar degree above the rational floor", f"{dpp} >= {r}", dpp - r),
        Check("planar side nonspecial", f"{dpp} >= {gpp + r - 1}", dpp - gpp - r + 1),
    )
    return Certificate(inst, "hyp-special-step", Reduce(conditions, (
        ("attach", attach),
        ("joined", _main_sp_leaf(joined)),
        ("reduced", sub),
    )))


def _emit_hyp_planar_step(inst, memo):
    r, n = inst.r, inst.n
    c, h = inst.inner, inst.hyper
    dpp, gpp = h.d, h.g
    if r - 1 < 2:
        return Refusal(inst, "ambient dimension too small for a planar split", None)
    reduced_h = CurveSpec(dpp - r + 1, gpp - r, r - 1)
    split = certify_main(GluingInstance(reduced_h, CurveSpec(r - 1, 0, r - 1), r + 1), memo=memo)
    if isinstance(split, Refusal):
        return _refused(inst, split, "planar gluing sub-derivation")
    sub1 = _certify_small_hyp(HyperplaneInstance(c, reduced_h, n), memo)
    if isinstance(sub1, Refusal):
        return _refused(inst, sub1, "hyperplane recursion")
    joined = glue(c, CurveSpec(reduced_h.d, reduced_h.g, r), n)
    sub2 = _certify_small_hyp(
        HyperplaneInstance(joined, CurveSpec(r - 1, 0, r - 1), r + 1), memo
    )
    if isinstance(sub2, Refusal):
        return _refused(inst, sub2, "hyperplane recursion")
    conditions = (
        Check("planar class admissible", f"{rho(h)} >= 0", rho(h)),
        Check("planar genus above the ambient dimension", f"{gpp} >= {r}", gpp - r),
        Check(
            "planar deformation degree bound",
            f"{reduced_h.d - reduced_h.g + n} >= {r + 1}",
            dpp - gpp + n - r,
        ),
    )
    return Certificate(inst, "hyp-planar-step", Reduce(conditions, (
        ("split", split),
        ("reduced", sub1),
        ("rejoined", sub2),
    )))
