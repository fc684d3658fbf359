"""Trust-nothing certificate checking.

Every node of a certificate is re-validated locally: split plans against
the five splitting conditions, leaf verdicts recomputed from scratch,
reduction steps against their own re-derived side conditions and child
instances, and a global termination measure along every edge.  Nothing
here calls certifier code; the only shared ingredients are the arithmetic
primitives and the hypothesis checkers.

Failures accumulate (no short-circuit) so audits see all violations, and
are ordered by depth-first node path, which is a canonical string like
"root/outer/swap/inner".  Verification is a pure function of the
certificate; subtree results may be cached and merged freely.
"""

from __future__ import annotations

from dataclasses import dataclass

from .certificates import (
    Certificate,
    LemmaLeaf,
    Reduce,
    Split,
    Swap,
    TheoremLeaf,
    unwrap_swaps,
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
from .numerics import (
    CurveSpec,
    glue,
    interpolation_capacity,
    is_exceptional,
    margin,
    passes_through,
    rho,
)

__all__ = ["Failure", "VerificationReport", "verify", "verify_node", "metric", "tier"]


@dataclass(frozen=True, slots=True)
class Failure:
    path: str
    label: str
    inequality: str
    slack: int


@dataclass(frozen=True, slots=True)
class VerificationReport:
    ok: bool
    failures: tuple[Failure, ...]


def _min_slack(verdict: Verdict) -> int:
    return min(c.slack for c in verdict.checks)


def _bool_check(label: str, holds: bool) -> Check:
    return Check(label, "holds" if holds else "violated", 0 if holds else -1)


def _malformed(reason: str) -> tuple[Check, ...]:
    return (Check("malformed node", reason, -1),)


# --------------------------------------------------------------------------
# Termination measure for gluing certificates

_TIER_LEAF = 0
_TIER_LINEARLY_NORMAL = 1
_TIER_EXCESS = 2
_TIER_BOUNDARY = 3


def tier(cert: Certificate) -> int:
    """Rank of the dispatch case a gluing node belongs to, derived from the
    node shape alone.  Swaps are transparent."""
    cert = unwrap_swaps(cert)
    node = cert.node
    if not isinstance(node, Split):
        return _TIER_LEAF
    if node.kind == "rnc":
        return _TIER_LINEARLY_NORMAL
    if node.kind == "line1":
        return _TIER_EXCESS
    inst = cert.instance
    if (
        isinstance(inst, GluingInstance)
        and inst.left.excess == 0
        and inst.right.excess == 0
    ):
        return _TIER_LINEARLY_NORMAL
    return _TIER_BOUNDARY


def metric(cert: Certificate) -> tuple[int, int, int, int]:
    """Lexicographic termination measure of a gluing certificate:
    (total degree, node count, dispatch tier, smaller genus)."""
    inst = unwrap_swaps(cert).instance
    if not isinstance(inst, GluingInstance):
        raise TypeError("termination measure is defined for gluing instances only")
    return (
        inst.left.d + inst.right.d,
        inst.n,
        tier(cert),
        min(inst.left.g, inst.right.g),
    )


def _metric_check(branch: str, parent: Certificate, child: Certificate) -> Check:
    mp = metric(parent)
    mc = metric(child)
    return Check(
        f"termination measure decreases to the {branch} branch",
        f"{mc} < {mp}",
        0 if mc < mp else -1,
    )


# --------------------------------------------------------------------------
# Per-node condition lists


def verify_node(cert: Certificate) -> tuple[Check, ...]:
    """The local condition list for one node, recomputed from scratch.

    Swap nodes carry no inequalities and get an empty list; a malformed
    node is reported as a single failing check.
    """
    node = cert.node
    if isinstance(node, Swap):
        return _verify_swap(cert)
    if isinstance(node, TheoremLeaf):
        return _verify_theorem_leaf(cert)
    if isinstance(node, LemmaLeaf):
        return _verify_lemma_leaf(cert)
    if isinstance(node, Split):
        return _verify_split(cert)
    if isinstance(node, Reduce):
        return _verify_reduce(cert)
    return _malformed(f"unknown node type {type(node).__name__}")


def _verify_swap(cert: Certificate) -> tuple[Check, ...]:
    inst, child = cert.instance, cert.node.child
    if not isinstance(inst, GluingInstance) or child.instance != inst.swapped:
        return _malformed("swap child does not certify the swapped instance")
    return ()


def _verify_theorem_leaf(cert: Certificate) -> tuple[Check, ...]:
    node = cert.node
    inst = cert.instance
    checks: list[Check] = []
    if node.theorem == "main-sp":
        if not isinstance(inst, GluingInstance):
            return _malformed("side-bound leaf needs a gluing instance")
        recomputed = check_main_sp(inst)
        checks.extend(recomputed.checks)
        r = inst.r
        checks.append(
            Check(
                "leaf node count within the base bound",
                f"{inst.n} <= {r + 2}",
                r + 2 - inst.n,
            )
        )
    elif node.theorem == "main-hyp":
        if not isinstance(inst, HyperplaneInstance):
            return _malformed("hyperplane-bound leaf needs a hyperplane instance")
        recomputed = check_main_hyp(inst)
        checks.extend(recomputed.checks)
        gates = check_small_hyp(inst)
        checks.append(
            Check(
                "hyperplane attachment hypotheses",
                "all gates hold" if gates.passed else "a gate fails",
                _min_slack(gates),
            )
        )
    else:
        return _malformed(f"unknown theorem tag {node.theorem!r}")
    checks.append(
        _bool_check("stored verdict matches recomputation", node.verdict == recomputed)
    )
    return tuple(checks)


def _verify_lemma_leaf(cert: Certificate) -> tuple[Check, ...]:
    node = cert.node
    inst = cert.instance
    checks: list[Check] = []
    if node.tag == "dualizing-sheaf construction":
        if not isinstance(inst, SmallMidQuery):
            return _malformed("dualizing leaf needs an attachment query")
        d, g, r, a = inst.spec.d, inst.spec.g, inst.spec.r, inst.a
        p = rho(inst.spec)
        gates = check_small_mid(inst)
        checks.append(
            Check(
                "attachment hypotheses",
                "all gates hold" if gates.passed else "a gate fails",
                _min_slack(gates),
            )
        )
        checks.append(Check("degree matches the completion form", f"{d} = {2 * r - a}", -abs(d - (2 * r - a))))
        checks.append(Check("genus matches the completion form", f"{g} = {r - a}", -abs(g - (r - a))))
        checks.append(Check("Brill-Noether number equals the genus", f"{p} = {g}", -abs(p - g)))
        checks.append(Check("nodes dominate the genus", f"{a + 2} >= {r - a}", a + 2 - (r - a)))
    elif node.tag == "hyperplane-section point generality":
        if not isinstance(inst, HyperplaneInstance):
            return _malformed("point-generality leaf needs a hyperplane instance")
        r, n = inst.r, inst.n
        dp = inst.inner.d
        checks.append(Check("marked points fit the hyperplane bound", f"{n - 1} <= {r + 1}", r + 2 - n))
        checks.append(Check("off-hyperplane marks fit", f"2 <= {r + 3 - (n - 1)}", r + 2 - n))
        checks.append(Check("degree meets the marked points", f"{dp - 1} >= {n - 1}", dp - n))
    else:
        return _malformed(f"unknown construction tag {node.tag!r}")
    stored_ok = all(c.slack >= 0 for c in node.conditions)
    checks.append(_bool_check("stored conditions all hold", stored_ok))
    return tuple(checks)


def _verify_split(cert: Certificate) -> tuple[Check, ...]:
    node = cert.node
    inst = cert.instance
    if not isinstance(inst, GluingInstance):
        return _malformed("split node needs a gluing instance")
    plan = node.plan
    r, n = inst.r, inst.n
    main, off = plan.piece_main, plan.piece_off
    n0, np_, npp = plan.n0, plan.n_prime, plan.n_dprime
    checks: list[Check] = []

    gates = check_main(inst)
    checks.append(
        Check(
            "gluing hypotheses at this node",
            "all gates hold" if gates.passed else "a gate fails",
            _min_slack(gates),
        )
    )

    # Plan bookkeeping.
    checks.append(_bool_check("split side matches the left curve", plan.parent == inst.left))
    checks.append(
        _bool_check("pieces live in the same ambient space", main.r == r and off.r == r)
    )
    checks.append(
        Check(
            "piece degrees sum to the split degree",
            f"{main.d} + {off.d} = {plan.parent.d}",
            -abs(main.d + off.d - plan.parent.d),
        )
    )
    checks.append(
        Check(
            "piece genera and internal nodes account for the split genus",
            f"{main.g} + {off.g} + {n0} - 1 = {plan.parent.g}",
            -abs(main.g + off.g + n0 - 1 - plan.parent.g),
        )
    )
    checks.append(
        Check(
            "marked points partition",
            f"{np_} + {npp} = {n}",
            -abs(np_ + npp - n),
        )
    )
    checks.append(Check("internal node count positive", f"{n0} >= 1", n0 - 1))
    checks.append(Check("kept points nonnegative", f"{np_} >= 0", np_))
    checks.append(Check("moved points positive", f"{npp} >= 1", npp - 1))

    # Shape of the split.
    line = CurveSpec(1, 0, r)
    if node.kind == "line1":
        checks.append(_bool_check("shape: off piece is a line at one node", off == line and n0 == 1))
    elif node.kind == "line2":
        checks.append(_bool_check("shape: off piece is a line at two nodes", off == line and n0 == 2))
    elif node.kind == "rnc":
        checks.append(
            _bool_check(
                "shape: main piece is a rational normal curve",
                main == CurveSpec(r, 0, r) and n0 == r + 1,
            )
        )
    else:
        checks.append(_bool_check(f"shape: unknown split kind {node.kind!r}", False))

    # Condition 1: the main piece is nonspecial and nondegenerate and meets
    # its kept points plus the internal nodes (strictly on the
    # capacity-exceptional classes).
    checks.append(
        Check(
            "condition 1: main piece nonspecial and nondegenerate",
            f"{main.d} >= {main.g + r}",
            main.excess,
        )
    )
    bump1 = 1 if is_exceptional(main) else 0
    m1 = margin(main, np_ + n0)
    checks.append(
        Check(
            "condition 1: main piece meets its points",
            f"{m1} >= {bump1}",
            m1 - bump1,
        )
    )
    if main.excess >= 0:
        cap_ok = passes_through(main, np_ + n0)
        checks.append(
            _bool_check(
                "condition 1: capacity encoding agrees", cap_ok == (m1 - bump1 >= 0)
            )
        )

    # Condition 2: the off piece meets max(moved points, internal nodes).
    peak = max(npp, n0)
    if off.excess >= 0:
        bump2 = 1 if is_exceptional(off) else 0
        m2 = margin(off, peak)
        checks.append(
            Check(
                "condition 2a: off piece meets its points",
                f"{m2} >= {bump2}",
                m2 - bump2,
            )
        )
        cap_ok = passes_through(off, peak)
        checks.append(
            _bool_check(
                "condition 2a: capacity encoding agrees", cap_ok == (m2 - bump2 >= 0)
            )
        )
    else:
        checks.append(
            Check(
                "condition 2b: off piece admits a nonspecial class",
                f"{off.d} >= {off.g}",
                off.d - off.g,
            )
        )
        checks.append(
            Check(
                "condition 2b: degenerate off piece meets its points",
                f"{off.d + 1 - off.g} >= {peak}",
                off.d + 1 - off.g - peak,
            )
        )

    # Condition 3: few internal nodes.
    checks.append(
        Check("condition 3: internal nodes within the base bound", f"{n0} <= {r + 2}", r + 2 - n0)
    )

    # Condition 4: the inner union is the prescribed instance and satisfies
    # the gluing hypotheses (recursive branch) or the side bound (leaf).
    inner_expected = None
    try:
        inner_expected = GluingInstance(off, inst.right, npp)
    except ValueError:
        checks.append(_bool_check("condition 4: inner union instance well formed", False))
    if inner_expected is not None:
        checks.append(
            _bool_check(
                "condition 4: inner union instance prescribed",
                node.inner.instance == inner_expected,
            )
        )
        inner_leaf = isinstance(unwrap_swaps(node.inner).node, (TheoremLeaf, LemmaLeaf))
        if inner_leaf:
            v = check_main_sp(inner_expected)
            checks.append(
                Check(
                    "condition 4b: inner union satisfies the side bound",
                    "holds" if v.passed else "fails",
                    _min_slack(v),
                )
            )
        else:
            v = check_main(inner_expected)
            checks.append(
                Check(
                    "condition 4a: inner union satisfies the gluing hypotheses",
                    "holds" if v.passed else "fails",
                    _min_slack(v),
                )
            )

    # Condition 5: the outer union is the prescribed instance; a recursive
    # branch needs the full hypotheses and no more internal nodes than
    # moved points, a leaf branch needs few nodes.
    outer_expected = None
    try:
        outer_expected = GluingInstance(main, glue(off, inst.right, npp), n0 + np_)
    except ValueError:
        checks.append(_bool_check("condition 5: outer union instance well formed", False))
    if outer_expected is not None:
        checks.append(
            _bool_check(
                "condition 5: outer union instance prescribed",
                node.outer.instance == outer_expected,
            )
        )
        outer_leaf = isinstance(unwrap_swaps(node.outer).node, (TheoremLeaf, LemmaLeaf))
        if outer_leaf:
            checks.append(
                Check(
                    "condition 5b: outer nodes within the base bound",
                    f"{n0 + np_} <= {r + 2}",
                    r + 2 - (n0 + np_),
                )
            )
        else:
            v = check_main(outer_expected)
            checks.append(
                Check(
                    "condition 5a: outer union satisfies the gluing hypotheses",
                    "holds" if v.passed else "fails",
                    _min_slack(v),
                )
            )
            checks.append(
                Check(
                    "condition 5a: internal nodes at most the moved points",
                    f"{n0} <= {npp}",
                    npp - n0,
                )
            )

    # Termination: the measure strictly decreases along both edges.
    checks.append(_metric_check("inner", cert, node.inner))
    checks.append(_metric_check("outer", cert, node.outer))
    return tuple(checks)


# --------------------------------------------------------------------------
# Reduction steps: expected children and conditions per case


def _child_map(node: Reduce) -> dict[str, Certificate]:
    return {name: child for name, child in node.children}


def _expect_children(node: Reduce, expected: dict) -> list[Check]:
    """Check the reduction has exactly the named children with the
    prescribed instances (None means any instance)."""
    got = _child_map(node)
    checks = [
        _bool_check(
            "reduction children prescribed", sorted(got) == sorted(expected)
        )
    ]
    for name, want in expected.items():
        child = got.get(name)
        if child is None:
            continue
        if want is not None:
            checks.append(
                _bool_check(f"child '{name}' instance prescribed", child.instance == want)
            )
    return checks


def _is_main_sp_leaf(cert: Certificate) -> bool:
    return isinstance(cert.node, TheoremLeaf) and cert.node.theorem == "main-sp"


def _meets_nodes(spec: CurveSpec, count: int) -> Check:
    if spec.excess >= 0:
        cap = interpolation_capacity(spec)
        return Check("class meets the node set", f"{count} <= {cap}", cap.surplus(count))
    return Check(
        "projective transitivity supplies the node set",
        f"{count} <= {spec.r + 2}",
        spec.r + 2 - count,
    )


def _verify_reduce(cert: Certificate) -> tuple[Check, ...]:
    inst = cert.instance
    if isinstance(inst, SmallMidQuery):
        return _verify_reduce_mid(cert)
    if isinstance(inst, HyperplaneInstance):
        return _verify_reduce_hyp(cert)
    return _malformed("reduction node needs an attachment or hyperplane instance")


def _verify_reduce_mid(cert: Certificate) -> tuple[Check, ...]:
    node = cert.node
    q = cert.instance
    d, g, r, a = q.spec.d, q.spec.g, q.spec.r, q.a
    p = rho(q.spec)
    checks: list[Check] = []
    gates = check_small_mid(q)
    checks.append(
        Check(
            "attachment hypotheses at this node",
            "all gates hold" if gates.passed else "a gate fails",
            _min_slack(gates),
        )
    )

    case = cert.case_id
    if case == "attach-rnc-full":
        checks.append(Check("attachment degree equals ambient dimension", f"{a} = {r}", -abs(a - r)))
        checks.append(_meets_nodes(q.spec, r + 2))
        checks.extend(
            _expect_children(node, {"union": GluingInstance(q.spec, CurveSpec(r, 0, r), r + 2)})
        )
        checks.append(_bool_check("union child is a side-bound leaf", _is_main_sp_leaf(node.child("union")) if _child_map(node).get("union") else False))
    elif case == "attach-line-slide":
        checks.append(Check("reduced class admissible", f"{p - (r + 1)} >= 0", p - (r + 1)))
        checks.append(Check("attachment positive", f"{a} >= 1", a - 1))
        checks.append(Check("attachment spans a proper subspace", f"{a + 1} <= {r}", r - a - 1))
        checks.append(Check("doubled nodes span the ambient space", f"{2 * (a + 1)} >= {r}", 2 * a + 2 - r))
        if a >= 1:
            reduced = CurveSpec(d - 1, g, r)
            rnc = CurveSpec(a, 0, r)
            checks.extend(
                _expect_children(
                    node,
                    {
                        "attach-rnc": GluingInstance(reduced, rnc, a + 1),
                        "attach-line": GluingInstance(glue(reduced, rnc, a + 1), CurveSpec(1, 0, r), 2),
                    },
                )
            )
    elif case == "attach-genus-step":
        checks.append(Check("genus above the ambient dimension", f"{g} >= {r + 1}", g - r - 1))
        reduced = CurveSpec(d - r, g - r - 1, r) if d - r >= 1 and g - r - 1 >= 0 else None
        if reduced is None:
            checks.append(_bool_check("reduced class well formed", False))
        else:
            checks.append(
                Check(
                    "reduction preserves the Brill-Noether number",
                    f"{rho(reduced)} = {p}",
                    -abs(rho(reduced) - p),
                )
            )
            checks.append(_meets_nodes(reduced, r + 2))
            checks.extend(
                _expect_children(
                    node,
                    {
                        "reduced": SmallMidQuery(reduced, a),
                        "bridge": GluingInstance(CurveSpec(r, 0, r), reduced, r + 2),
                        "rejoined": GluingInstance(
                            CurveSpec(r, 0, r), CurveSpec(d - r + a, g - r + a, r), r + 2
                        ),
                    },
                )
            )
            checks.append(
                Check(
                    "termination: attachment degree decreases",
                    f"{reduced.d} < {d}",
                    d - reduced.d - 1,
                )
            )
    elif case == "attach-rho-step":
        checks.append(Check("reduced class admissible", f"{p - 1} >= 0", p - 1))
        checks.append(Check("genus positive", f"{g} >= 1", g - 1))
        checks.append(
            Check("attachment bound survives reduction", f"{a} >= {r + 1 - p}", a - (r + 1 - p))
        )
        reduced = CurveSpec(d - 1, g - 1, r) if d - 1 >= 1 and g - 1 >= 0 else None
        if reduced is None:
            checks.append(_bool_check("reduced class well formed", False))
        else:
            checks.extend(
                _expect_children(
                    node,
                    {
                        "reduced": SmallMidQuery(reduced, a),
                        "bridge": GluingInstance(CurveSpec(1, 0, r), reduced, 2),
                        "rejoined": GluingInstance(
                            CurveSpec(1, 0, r), CurveSpec(d - 1 + a, g + a, r), 2
                        ),
                    },
                )
            )
            checks.append(
                Check(
                    "termination: attachment degree decreases",
                    f"{reduced.d} < {d}",
                    d - reduced.d - 1,
                )
            )
    else:
        return _malformed(f"unknown attachment case {case!r}")
    checks.append(
        _bool_check(
            "stored conditions all hold", all(c.slack >= 0 for c in node.conditions)
        )
    )
    return tuple(checks)


def _verify_reduce_hyp(cert: Certificate) -> tuple[Check, ...]:
    node = cert.node
    inst = cert.instance
    r, n = inst.r, inst.n
    c, h = inst.inner, inst.hyper
    dpp, gpp = h.d, h.g
    planar = CurveSpec(dpp, gpp, r)
    checks: list[Check] = []

    gates = check_small_hyp(inst)
    checks.append(
        Check(
            "hyperplane attachment hypotheses at this node",
            "all gates hold" if gates.passed else "a gate fails",
            _min_slack(gates),
        )
    )
    ph = rho(h)
    checks.append(
        Check("planar class admissible inside its hyperplane", f"{ph} >= 0", ph)
    )

    case = cert.case_id
    if case == "hyp-base":
        checks.append(Check("few nodes", f"{n} <= {r - 1}", r - 1 - n))
        checks.append(Check("planar side nonspecial", f"{dpp} >= {gpp + r - 1}", dpp - gpp - r + 1))
        checks.extend(_expect_children(node, {"union": GluingInstance(c, planar, n)}))
    elif case == "hyp-small-base":
        checks.append(Check("node bound", f"{n} <= {r}", r - n))
        checks.append(Check("planar side nonspecial", f"{dpp} >= {gpp + r - 1}", dpp - gpp - r + 1))
        checks.extend(_expect_children(node, {"union": GluingInstance(c, planar, n)}))
    elif case == "hyp-mid-base":
        checks.append(Check("planar side is a rational normal curve of the hyperplane", f"{dpp} = {r - 1}", -abs(dpp - (r - 1))))
        checks.append(Check("planar side is rational", f"{gpp} = 0", -abs(gpp)))
        checks.append(Check("node count matches the attachment", f"{n} = {r + 1}", -abs(n - (r + 1))))
        checks.extend(_expect_children(node, {"attach": SmallMidQuery(c, r - 1)}))
    elif case == "hyp-line-step":
        pr = rho(CurveSpec(c.d - 1, c.g - 1, r)) if c.d - 1 >= 1 and c.g - 1 >= 0 else None
        checks.append(Check("inner curve nonspecial", f"{c.d} >= {c.g + r}", c.excess))
        checks.append(Check("inner genus positive", f"{c.g} >= 1", c.g - 1))
        checks.append(Check("planar side nonspecial", f"{dpp} >= {gpp + r - 1}", dpp - gpp - r + 1))
        if pr is None:
            checks.append(_bool_check("reduced class well formed", False))
        else:
            checks.append(Check("reduced class admissible", f"{pr} >= 0", pr))
            reduced = CurveSpec(c.d - 1, c.g - 1, r)
            extended = CurveSpec(dpp + 1, gpp, r)
            checks.append(
                Check(
                    "extended planar class nonspecial",
                    f"{extended.d} >= {extended.g + r}",
                    extended.excess,
                )
            )
            checks.extend(
                _expect_children(
                    node,
                    {
                        "bridge": GluingInstance(CurveSpec(1, 0, r), planar, 1),
                        "glued": GluingInstance(reduced, extended, n + 1),
                        "generality": inst,
                    },
                )
            )
    elif case == "hyp-special-boundary":
        shifted_spec = (
            CurveSpec(c.d - r, c.g - r, r) if c.d - r >= 1 and c.g - r >= 0 else None
        )
        checks.append(Check("planar side is a rational normal curve of the hyperplane", f"{dpp} = {r - 1}", -abs(dpp - (r - 1))))
        checks.append(Check("planar side is rational", f"{gpp} = 0", -abs(gpp)))
        checks.append(Check("node count at the boundary", f"{n} = {r + 2}", -abs(n - (r + 2))))
        if shifted_spec is None:
            checks.append(_bool_check("reduced class well formed", False))
        else:
            shifted = rho(shifted_spec)
            checks.append(Check("inner class strongly admissible", f"{shifted} >= 1", shifted - 1))
            checks.extend(
                _expect_children(
                    node,
                    {
                        "peel": GluingInstance(shifted_spec, CurveSpec(r, 0, r), r + 1),
                        "reduced": HyperplaneInstance(
                            shifted_spec, CurveSpec(r - 1, 0, r - 1), r + 1
                        ),
                        "rejoin": GluingInstance(
                            CurveSpec(c.d - 1, c.g, r), CurveSpec(r, 0, r), r + 2
                        ),
                    },
                )
            )
    elif case == "hyp-special-step":
        pc = rho(c)
        checks.append(Check("inner class admissible", f"{pc} >= 0", pc))
        checks.append(Check("inner genus forces the special band", f"{c.g} >= {r + 1}", c.g - r - 1))
        checks.append(Check("planar degree above the rational floor", f"{dpp} >= {r}", dpp - r))
        checks.append(Check("planar side nonspecial", f"{dpp} >= {gpp + r - 1}", dpp - gpp - r + 1))
        checks.append(Check("enough nodes to recurse", f"{n} >= {r + 1}", n - r - 1))
        reduced = (
            CurveSpec(c.d - r + 1, c.g - r, r) if c.d - r + 1 >= 1 and c.g - r >= 0 else None
        )
        if reduced is None:
            checks.append(_bool_check("reduced class well formed", False))
        else:
            checks.extend(
                _expect_children(
                    node,
                    {
                        "attach": SmallMidQuery(reduced, r - 1),
                        "joined": GluingInstance(reduced, planar, n - 1),
                        "reduced": HyperplaneInstance(
                            glue(reduced, planar, n - 1), CurveSpec(r - 1, 0, r - 1), r + 2
                        ),
                    },
                )
            )
    elif case == "hyp-planar-step":
        checks.append(Check("planar side special", f"{dpp} <= {gpp + r - 2}", gpp + r - 2 - dpp))
        checks.append(Check("planar genus above the ambient dimension", f"{gpp} >= {r}", gpp - r))
        checks.append(
            Check(
                "planar deformation degree bound",
                f"{dpp - r + 1 - (gpp - r) + n} >= {r + 1}",
                dpp - gpp + n - r,
            )
        )
        reduced_h = (
            CurveSpec(dpp - r + 1, gpp - r, r - 1)
            if dpp - r + 1 >= 1 and gpp - r >= 0 and r - 1 >= 2
            else None
        )
        if reduced_h is None:
            checks.append(_bool_check("reduced planar class well formed", False))
        else:
            joined = glue(c, CurveSpec(reduced_h.d, reduced_h.g, r), n)
            checks.extend(
                _expect_children(
                    node,
                    {
                        "split": GluingInstance(reduced_h, CurveSpec(r - 1, 0, r - 1), r + 1),
                        "reduced": HyperplaneInstance(c, reduced_h, n),
                        "rejoined": HyperplaneInstance(joined, CurveSpec(r - 1, 0, r - 1), r + 1),
                    },
                )
            )
    else:
        return _malformed(f"unknown hyperplane case {case!r}")

    # Cross-recursion termination: any recursive hyperplane child strictly
    # reduces the measure (planar degree, then node count).  Leaf children
    # annotate the same instance and are exempt.
    for name, child in node.children:
        if isinstance(child.node, (TheoremLeaf, LemmaLeaf)):
            continue
        if isinstance(child.instance, HyperplaneInstance):
            parent_m = (dpp, n)
            child_m = (child.instance.hyper.d, child.instance.n)
            checks.append(
                Check(
                    f"termination: hyperplane measure decreases to '{name}'",
                    f"{child_m} < {parent_m}",
                    0 if child_m < parent_m else -1,
                )
            )
    checks.append(
        _bool_check(
            "stored conditions all hold", all(c.slack >= 0 for c in node.conditions)
        )
    )
    return tuple(checks)


# --------------------------------------------------------------------------
# Whole-certificate verification


def _root_gate(cert: Certificate) -> Verdict:
    inst = cert.instance
    if isinstance(inst, GluingInstance):
        return check_main(inst)
    if isinstance(inst, SmallMidQuery):
        return check_small_mid(inst)
    return check_small_hyp(inst)


def _children_of(cert: Certificate) -> list[tuple[str, Certificate]]:
    node = cert.node
    if isinstance(node, Swap):
        return [("swap", node.child)]
    if isinstance(node, Split):
        return [("inner", node.inner), ("outer", node.outer)]
    if isinstance(node, Reduce):
        return list(node.children)
    return []


def _walk(cert: Certificate, cache: dict) -> list[tuple[str, str, str, int]]:
    """Relative failures for a subtree, cached by object identity.

    The cache value keeps the certificate alive, so identity keys stay
    valid for the cache's lifetime.
    """
    hit = cache.get(id(cert))
    if hit is not None:
        return hit[1]
    rel: list[tuple[str, str, str, int]] = []
    for check in verify_node(cert):
        if check.slack < 0:
            rel.append(("", check.label, check.inequality, check.slack))
    for name, child in _children_of(cert):
        for sub_path, label, ineq, slack in _walk(child, cache):
            rel.append((f"/{name}{sub_path}", label, ineq, slack))
    cache[id(cert)] = (cert, rel)
    return rel


def verify(cert: Certificate, *, cache: dict | None = None) -> VerificationReport:
    """Re-validate every node of a certificate.

    The optional ``cache`` lets a caller share subtree results across many
    verifications of structurally shared certificates.
    """
    failures: list[Failure] = []
    gate = _root_gate(cert)
    if not gate.passed:
        for check in gate.failing():
            failures.append(
                Failure("root", "root hypotheses: " + check.label, check.inequality, check.slack)
            )
    for sub_path, label, ineq, slack in _walk(cert, cache if cache is not None else {}):
        failures.append(Failure("root" + sub_path, label, ineq, slack))
    return VerificationReport(not failures, tuple(failures))
