"""Structured hypothesis checkers, one per gluing criterion.

Each checker returns a :class:`Verdict` listing every inequality it looked
at together with its slack.  The verdict outcome is a pure function of the
slacks: it passes exactly when every slack is nonnegative.  Strict
inequalities are encoded by tightening (``x > y`` becomes ``x >= y + 1``),
and disjunctive gates are encoded as a single check whose slack is the
best disjunct, with the label naming the winner.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .numerics import CurveSpec, glue, interpolation_capacity, margin, rho

__all__ = [
    "GluingInstance",
    "HyperplaneInstance",
    "SmallMidQuery",
    "Check",
    "Verdict",
    "check_main",
    "check_main_sp",
    "check_main_hyp",
    "check_small_mid",
    "check_small_hyp",
]


@dataclass(frozen=True, slots=True)
class GluingInstance:
    """Two curve classes in the same ambient space joined at n general points."""

    left: CurveSpec
    right: CurveSpec
    n: int

    def __post_init__(self) -> None:
        if self.left.r != self.right.r:
            raise ValueError(
                f"ambient dimensions must match (got r={self.left.r} and r={self.right.r})"
            )
        if self.left.r < 2:
            raise ValueError("gluing checks need ambient dimension at least 2")
        if self.n < 1:
            raise ValueError(f"node count must be at least 1 (got n={self.n})")

    @property
    def r(self) -> int:
        return self.left.r

    @property
    def swapped(self) -> "GluingInstance":
        return GluingInstance(self.right, self.left, self.n)

    @property
    def glued(self) -> CurveSpec:
        return glue(self.left, self.right, self.n)

    def __str__(self) -> str:
        return f"{self.left} + {self.right} at n={self.n}"


@dataclass(frozen=True, slots=True)
class HyperplaneInstance:
    """A curve in the ambient space glued to a curve inside a hyperplane.

    ``inner`` lives in projective r-space and is transverse to the
    hyperplane; ``hyper`` lives inside the hyperplane, so its ambient
    dimension is r - 1.  The n nodes lie in the hyperplane.
    """

    inner: CurveSpec
    hyper: CurveSpec
    n: int

    def __post_init__(self) -> None:
        if self.inner.r != self.hyper.r + 1:
            raise ValueError(
                "hyperplane curve must live one dimension down "
                f"(got inner r={self.inner.r}, hyper r={self.hyper.r})"
            )
        if self.n < 1:
            raise ValueError(f"node count must be at least 1 (got n={self.n})")

    @property
    def r(self) -> int:
        return self.inner.r

    @property
    def glued(self) -> CurveSpec:
        return CurveSpec(
            self.inner.d + self.hyper.d,
            self.inner.g + self.hyper.g + self.n - 1,
            self.inner.r,
        )

    def __str__(self) -> str:
        return f"{self.inner} + planar {self.hyper} at n={self.n}"


@dataclass(frozen=True, slots=True)
class SmallMidQuery:
    """A curve class plus the degree a of a rational curve to attach at a + 2 nodes."""

    spec: CurveSpec
    a: int

    def __post_init__(self) -> None:
        if not 0 <= self.a <= self.spec.r:
            raise ValueError(
                f"attachment degree must satisfy 0 <= a <= r (got a={self.a}, r={self.spec.r})"
            )

    def __str__(self) -> str:
        return f"{self.spec} with attachment degree a={self.a}"


@dataclass(frozen=True, slots=True)
class Check:
    """One inequality, rendered with concrete integers, plus its slack."""

    label: str
    inequality: str
    slack: int

    @property
    def holds(self) -> bool:
        return self.slack >= 0


@dataclass(frozen=True, slots=True)
class Verdict:
    """Pass/fail report for one criterion's hypotheses.

    The outcome is recomputable from the checks alone; ``conclusion`` is
    the kind of conclusion the criterion licenses ("BN" or "WBN"), or
    "none" when the checks fail.
    """

    checks: tuple[Check, ...]
    conclusion: str

    @property
    def passed(self) -> bool:
        return all(c.slack >= 0 for c in self.checks)

    @property
    def outcome(self) -> str:
        return "pass" if self.passed else "fail"

    def failing(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if c.slack < 0)


def _verdict(checks: list[Check], kind: str) -> Verdict:
    checks_t = tuple(checks)
    passed = all(c.slack >= 0 for c in checks_t)
    return Verdict(checks_t, kind if passed else "none")


def _eq_check(label: str, lhs: int, rhs: int) -> Check:
    return Check(label, f"{lhs} = {rhs}", -abs(lhs - rhs))


def _capacity_check(label: str, spec: CurveSpec, n: int) -> Check:
    if spec.d < spec.g:
        return Check(label, f"{spec.d} >= {spec.g}", spec.d - spec.g)
    cap = interpolation_capacity(spec)
    return Check(label, f"{n} <= {cap}", cap.surplus(n))


def _side_bound_slack(spec: CurveSpec, r: int, n: int) -> int:
    """Slack of (r + 1)d - rg + r >= rn for one side."""
    return (r + 1) * spec.d - r * spec.g + r - r * n


@lru_cache(maxsize=1 << 17)
def check_main_sp(inst: GluingInstance) -> Verdict:
    """Side bound for the union of two WBN classes: some side must satisfy
    (r + 1)d - rg + r >= rn.  Concludes WBN."""
    r, n = inst.r, inst.n
    s1 = _side_bound_slack(inst.left, r, n)
    s2 = _side_bound_slack(inst.right, r, n)
    side, spec, slack = (1, inst.left, s1) if s1 >= s2 else (2, inst.right, s2)
    lhs = (r + 1) * spec.d - r * spec.g + r
    checks = [
        Check("node count positive", f"{n} >= 1", n - 1),
        Check(f"side {side} degree-genus bound", f"{lhs} >= {r * n}", slack),
    ]
    return _verdict(checks, "WBN")


@lru_cache(maxsize=1 << 17)
def check_main(inst: GluingInstance) -> Verdict:
    """Full gluing criterion.  Concludes BN.

    Gates: both sides lie in the nondegenerate-nonspecial range and pass
    through the n nodes; either both sides are limit linearly normal
    (d = g + r on both) or some side has interpolation margin at least 2
    (at least 4 on the linearly normal boundary); and the glued class has
    nonnegative Brill-Noether number.
    """
    r, n = inst.r, inst.n
    checks: list[Check] = []
    for i, s in ((1, inst.left), (2, inst.right)):
        checks.append(
            Check(
                f"side {i} nondegenerate nonspecial",
                f"{s.d} >= {s.g + s.r}",
                s.excess,
            )
        )
        checks.append(_capacity_check(f"side {i} through the nodes", s, n))
    checks.append(Check("node count positive", f"{n} >= 1", n - 1))

    lln_slack = -(abs(inst.left.excess) + abs(inst.right.excess))
    candidates = [
        (
            "both sides limit linearly normal",
            f"{inst.left.d} = {inst.left.g + r} and {inst.right.d} = {inst.right.g + r}",
            lln_slack,
        )
    ]
    for i, s in ((1, inst.left), (2, inst.right)):
        if s.excess >= 0:
            thr = 4 if s.excess == 0 else 2
            m = margin(s, n)
            candidates.append(
                (f"side {i} margin at least {thr}", f"{m} >= {thr}", m - thr)
            )
    label, ineq, slack = max(candidates, key=lambda c: c[2])
    checks.append(Check(label, ineq, slack))

    p = rho(inst.glued)
    checks.append(
        Check("glued class has nonnegative Brill-Noether number", f"{p} >= 0", p)
    )
    return _verdict(checks, "BN")


@lru_cache(maxsize=1 << 15)
def check_main_hyp(inst: HyperplaneInstance) -> Verdict:
    """Hyperplane gluing criterion on the inner curve's numbers.  Concludes WBN."""
    r, n = inst.r, inst.n
    d, g = inst.inner.d, inst.inner.g
    nd = d - r * g - 1
    side = _side_bound_slack(inst.inner, r, n)
    checks = [
        Check("inner curve degree dominates genus", f"{d - r * g - 1} >= 0", nd),
        Check(
            "inner curve degree-genus bound",
            f"{(r + 1) * d - r * g + r} >= {r * n}",
            side,
        ),
    ]
    return _verdict(checks, "WBN")


@lru_cache(maxsize=1 << 15)
def check_small_mid(q: SmallMidQuery) -> Verdict:
    """Attachment criterion: max((r - 2)/2, r - rho) <= a <= r, rho >= 0.

    The half-integer lower bound is compared without division (2a >= r - 2).
    Concludes BN.
    """
    r, a = q.spec.r, q.a
    p = rho(q.spec)
    checks = [
        Check("attachment spans enough directions", f"{2 * a} >= {r - 2}", 2 * a - (r - 2)),
        Check("attachment absorbs the deficiency", f"{a} >= {r - p}", a - (r - p)),
        Check("attachment within ambient dimension", f"{a} <= {r}", r - a),
        Check("class has nonnegative Brill-Noether number", f"{p} >= 0", p),
    ]
    return _verdict(checks, "BN")


@lru_cache(maxsize=1 << 15)
def check_small_hyp(inst: HyperplaneInstance) -> Verdict:
    """Hyperplane attachment criterion: n <= r + 2, d'' + n >= g'' + r, and
    nonnegative Brill-Noether number for the glued class.  Concludes BN."""
    r, n = inst.r, inst.n
    dpp, gpp = inst.hyper.d, inst.hyper.g
    p = rho(inst.glued)
    checks = [
        Check("node bound", f"{n} <= {r + 2}", r + 2 - n),
        Check("planar degree bound", f"{dpp + n} >= {gpp + r}", dpp + n - gpp - r),
        Check("glued class has nonnegative Brill-Noether number", f"{p} >= 0", p),
    ]
    return _verdict(checks, "BN")
