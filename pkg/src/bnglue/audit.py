"""Exhaustive desk-scale audits of the certification engine.

Three audits back the engine's meta-claims empirically: the case split of
the linearly normal dispatch is total (coverage), certification succeeds
exactly when the hypotheses hold and every certificate verifies
(agreement), and the termination measure strictly decreases along every
edge with bounded depth (termination).

Enumeration order is canonical (lexicographic on r, d1, g1, d2, g2, n),
so violation lists are stable across runs, and each grid cell is pure, so
shards over the ambient dimension merge to the same totals.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from . import certifier
from .certificates import Certificate, Split, depth, iter_certificates, unwrap_swaps
from .hypotheses import GluingInstance, check_main
from .numerics import CurveSpec, interpolation_capacity
from .verifier import metric, verify

__all__ = [
    "AuditGrid",
    "AuditReport",
    "audit_case_coverage",
    "audit_oracle_agreement",
    "audit_termination",
    "default_coverage_grid",
    "default_certificate_grid",
]


@dataclass(frozen=True, slots=True)
class AuditGrid:
    """Finite enumeration bounds.

    ``g_cap`` of None means "three times the ambient dimension", which
    scales the genus range with r.  ``n_mode`` is "all-admissible" (every
    node count up to one past the joint interpolation capacity) or
    "fixed" (just ``n_fixed``).
    """

    r_min: int
    r_max: int
    g_cap: int | None
    d_cap: int
    n_mode: str = "all-admissible"
    n_fixed: int | None = None

    def __post_init__(self) -> None:
        if self.r_min < 2 or self.r_max < self.r_min:
            raise ValueError("need 2 <= r_min <= r_max")
        if self.d_cap < 2:
            raise ValueError("total degree cap must be at least 2")
        if self.n_mode not in ("all-admissible", "fixed"):
            raise ValueError(f"unknown n_mode {self.n_mode!r}")
        if self.n_mode == "fixed" and (self.n_fixed is None or self.n_fixed < 1):
            raise ValueError("fixed n_mode needs n_fixed >= 1")

    def genus_cap(self, r: int) -> int:
        return 3 * r if self.g_cap is None else self.g_cap


@dataclass(frozen=True, slots=True)
class AuditReport:
    """Outcome of one audit run.

    ``gaps`` lists instances where a required structural property failed
    (uncovered dispatch, depth or measure violations); ``disagreements``
    lists instances where the certifier and the hypothesis checker differ
    or a certificate fails verification.  A passing audit has both empty.
    """

    instances_checked: int
    gaps: tuple[str, ...]
    disagreements: tuple[str, ...]
    max_depth: int
    wall_time_ms: int

    @property
    def ok(self) -> bool:
        return not self.gaps and not self.disagreements


def default_coverage_grid() -> AuditGrid:
    return AuditGrid(3, 8, None, 40)


def default_certificate_grid() -> AuditGrid:
    return AuditGrid(3, 6, None, 30)


def _describe(inst: GluingInstance) -> str:
    return (
        f"r={inst.r} d1={inst.left.d} g1={inst.left.g} "
        f"d2={inst.right.d} g2={inst.right.g} n={inst.n}"
    )


def _capacity_int(spec: CurveSpec) -> int:
    cap = interpolation_capacity(spec)
    assert cap.value is not None  # ambient dimension is at least 2 here
    return cap.value


def _n_values(grid: AuditGrid, cap: int) -> range:
    if grid.n_mode == "fixed":
        n = grid.n_fixed or 1
        return range(n, n + 1)
    return range(1, cap + 2)


def _iter_instances(grid: AuditGrid, r: int) -> Iterator[GluingInstance]:
    """All gluing instances with nondegenerate-nonspecial sides, in
    canonical lexicographic order."""
    gcap = grid.genus_cap(r)
    for d1 in range(r, grid.d_cap - r + 1):
        for g1 in range(0, min(gcap, d1 - r) + 1):
            left = CurveSpec(d1, g1, r)
            cap1 = _capacity_int(left)
            for d2 in range(r, grid.d_cap - d1 + 1):
                for g2 in range(0, min(gcap, d2 - r) + 1):
                    right = CurveSpec(d2, g2, r)
                    cap = min(cap1, _capacity_int(right))
                    for n in _n_values(grid, cap):
                        yield GluingInstance(left, right, n)


# --------------------------------------------------------------------------
# Coverage


def _coverage_shard(grid: AuditGrid, r: int) -> tuple[int, list[str], list[str]]:
    checked = 0
    gaps: list[str] = []
    gcap = grid.genus_cap(r)
    for g1 in range(0, gcap + 1):
        left = CurveSpec(g1 + r, g1, r)
        cap1 = _capacity_int(left)
        for g2 in range(0, gcap + 1):
            if left.d + g2 + r > grid.d_cap:
                continue
            right = CurveSpec(g2 + r, g2, r)
            cap = min(cap1, _capacity_int(right))
            bound = (r * (r + 2) + g1 + g2) // r
            for n in _n_values(grid, cap):
                if n > cap:
                    continue
                checked += 1
                inst = GluingInstance(left, right, n)
                if n <= bound:
                    if n <= r + 2:
                        continue
                    low = left if g1 <= g2 else right
                    high = right if g1 <= g2 else left
                    if certifier._lln_line_applies(low, n):
                        continue
                    if certifier._lln_rnc_applies(high, n):
                        continue
                    gaps.append(_describe(inst) + ": no arm covers this instance")
                else:
                    # Contrapositive: past the admissibility bound the
                    # hypotheses must fail outright.
                    if check_main(inst).passed:
                        gaps.append(
                            _describe(inst) + ": hypotheses pass beyond the bound"
                        )
    return checked, gaps, []


def audit_case_coverage(grid: AuditGrid, *, threads: int = 1) -> AuditReport:
    """Every admissible linearly normal instance is covered by the base
    case or one of the two splitting arms after normalization."""
    return _run(grid, _coverage_shard, threads)


# --------------------------------------------------------------------------
# Agreement (soundness and completeness)


def _agreement_shard(grid: AuditGrid, r: int) -> tuple[int, list[str], list[str], int]:
    checked = 0
    disagreements: list[str] = []
    memo: dict = {}
    vcache: dict = {}
    max_depth = 0
    for inst in _iter_instances(grid, r):
        checked += 1
        expected = check_main(inst).passed
        try:
            result = certifier.certify_main(inst, memo=memo)
        except Exception as exc:  # a crash is a defect finding, not a stop
            disagreements.append(f"{_describe(inst)}: certifier error: {exc}")
            continue
        got = isinstance(result, Certificate)
        if got != expected:
            verb = "refused a passing" if expected else "certified a failing"
            disagreements.append(f"{_describe(inst)}: certifier {verb} instance")
            continue
        if got:
            max_depth = max(max_depth, depth(result))
            report = verify(result, cache=vcache)
            if not report.ok:
                first = report.failures[0]
                disagreements.append(
                    f"{_describe(inst)}: verification failed at {first.path}: "
                    f"{first.label} ({first.inequality})"
                )
    return checked, [], disagreements, max_depth


def audit_oracle_agreement(grid: AuditGrid, *, threads: int = 1) -> AuditReport:
    """Certification succeeds exactly when the hypotheses hold, and every
    emitted certificate passes verification."""
    return _run(grid, _agreement_shard, threads)


# --------------------------------------------------------------------------
# Termination


def _termination_shard(grid: AuditGrid, r: int) -> tuple[int, list[str], list[str], int]:
    checked = 0
    gaps: list[str] = []
    memo: dict = {}
    edge_cache: dict = {}
    max_depth = 0
    for inst in _iter_instances(grid, r):
        checked += 1
        try:
            result = certifier.certify_main(inst, memo=memo)
        except Exception as exc:
            gaps.append(f"{_describe(inst)}: certifier error: {exc}")
            continue
        if not isinstance(result, Certificate):
            continue
        dep = depth(result)
        max_depth = max(max_depth, dep)
        budget = inst.left.d + inst.right.d + inst.n
        if dep > budget:
            gaps.append(f"{_describe(inst)}: depth {dep} exceeds {budget}")
        bad = _edge_violations(result, edge_cache)
        if bad:
            gaps.append(f"{_describe(inst)}: measure fails to decrease at {bad[0]}")
    return checked, gaps, [], max_depth


def _edge_violations(cert: Certificate, cache: dict) -> list[str]:
    hit = cache.get(id(cert))
    if hit is not None:
        return hit[1]
    bad: list[str] = []
    for path, sub in iter_certificates(cert):
        node = sub.node
        if isinstance(node, Split):
            for branch, child in (("inner", node.inner), ("outer", node.outer)):
                if not metric(unwrap_swaps(child)) < metric(sub):
                    bad.append(f"{path}/{branch}")
    cache[id(cert)] = (cert, bad)
    return bad


def audit_termination(grid: AuditGrid, *, threads: int = 1) -> AuditReport:
    """The termination measure strictly decreases along every split edge,
    and depth never exceeds total degree plus node count."""
    return _run(grid, _termination_shard, threads)


# --------------------------------------------------------------------------
# Shard runner


def _run(grid: AuditGrid, shard, threads: int) -> AuditReport:
    start = time.monotonic()
    rs = list(range(grid.r_min, grid.r_max + 1))
    if threads > 1 and len(rs) > 1:
        with ProcessPoolExecutor(max_workers=min(threads, len(rs))) as pool:
            results = list(pool.map(shard, [grid] * len(rs), rs))
    else:
        results = [shard(grid, r) for r in rs]
    checked = 0
    gaps: list[str] = []
    disagreements: list[str] = []
    max_depth = 0
    for res in results:
        checked += res[0]
        gaps.extend(res[1])
        disagreements.extend(res[2])
        if len(res) > 3:
            max_depth = max(max_depth, res[3])
    wall_ms = int((time.monotonic() - start) * 1000)
    return AuditReport(checked, tuple(gaps), tuple(disagreements), max_depth, wall_ms)
