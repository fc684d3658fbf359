"""Decomposition search: split a target class into two glueable pieces.

The claim under test is that a target with nonnegative Brill-Noether
number decomposes through the gluing criterion exactly when d >= 2r.  The
search is exhaustive over nondegenerate-nonspecial pieces, so an
Infeasible answer carries the exhausted bounds, and any counterexample to
the claim surfaces as a plain search result rather than being suppressed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .certificates import Certificate, Refusal
from .certifier import certify_main
from .hypotheses import GluingInstance, check_main
from .numerics import CurveSpec, rho
from .verifier import verify

__all__ = ["DecompositionPlan", "Infeasible", "plan_decomposition", "enumerate_decompositions"]


@dataclass(frozen=True, slots=True)
class DecompositionPlan:
    target: CurveSpec
    left: CurveSpec
    right: CurveSpec
    n: int
    certificate: Certificate


@dataclass(frozen=True, slots=True)
class Infeasible:
    target: CurveSpec
    searched: str


def _require_target(target: CurveSpec) -> None:
    if target.r < 3:
        raise ValueError(f"decomposition search needs r >= 3 (got r={target.r})")
    p = rho(target)
    if p < 0:
        raise ValueError(
            f"target must have nonnegative Brill-Noether number (got {p})"
        )


def _search_bounds(target: CurveSpec) -> str:
    d, r = target.d, target.r
    return (
        f"d1 in [{r}, {d - r}], g1 in [0, d1-{r}], g2 in [0, d2-{r}], "
        f"n = g - g1 - g2 + 1 >= 1"
    )


def _candidates(target: CurveSpec) -> Iterator[GluingInstance]:
    """Canonical order: minimal n first, then minimal degree imbalance,
    then lexicographic on (d1, g1, g2)."""
    d, g, r = target.d, target.g, target.r
    keyed: list[tuple[int, int, int, int, int]] = []
    for d1 in range(r, d - r + 1):
        d2 = d - d1
        for g1 in range(0, d1 - r + 1):
            for g2 in range(0, d2 - r + 1):
                n = g - g1 - g2 + 1
                if n < 1:
                    continue
                keyed.append((n, abs(d1 - d2), d1, g1, g2))
    keyed.sort()
    for n, _, d1, g1, g2 in keyed:
        yield GluingInstance(
            CurveSpec(d1, g1, target.r), CurveSpec(d - d1, g2, target.r), n
        )


def _certified(inst: GluingInstance, target: CurveSpec) -> DecompositionPlan:
    cert = certify_main(inst)
    if isinstance(cert, Refusal):
        raise RuntimeError(
            f"search accepted {inst} but certification refused: {cert.reason}"
        )
    report = verify(cert)
    if not report.ok:
        raise RuntimeError(f"certificate for {inst} fails verification")
    return DecompositionPlan(target, inst.left, inst.right, inst.n, cert)


def plan_decomposition(target: CurveSpec) -> DecompositionPlan | Infeasible:
    """First decomposition in canonical order, with a verified certificate."""
    _require_target(target)
    for inst in _candidates(target):
        if check_main(inst).passed:
            return _certified(inst, target)
    return Infeasible(target, _search_bounds(target))


def enumerate_decompositions(target: CurveSpec, limit: int) -> list[DecompositionPlan]:
    """Up to ``limit`` decompositions in canonical order, all verified."""
    _require_target(target)
    if limit < 0:
        raise ValueError(f"limit must be nonnegative (got {limit})")
    plans: list[DecompositionPlan] = []
    for inst in _candidates(target):
        if len(plans) >= limit:
            break
        if check_main(inst).passed:
            plans.append(_certified(inst, target))
    return plans
