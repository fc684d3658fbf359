"""Canonical JSON documents for verdicts, certificates, reports, and plans.

Key order is fixed by construction, there is no floating point anywhere,
and integers that exceed the signed 64-bit range are emitted as decimal
strings so every consumer parses the same bytes the same way.  Parsing
composed with serialization is the identity on certificates.
"""

from __future__ import annotations

import json
from typing import Any

from .audit import AuditReport
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
)
from .numerics import CurveSpec
from .planner import DecompositionPlan, Infeasible
from .verifier import Failure, VerificationReport

__all__ = [
    "FORMAT_VERSION",
    "dumps",
    "verdict_to_doc",
    "certificate_to_doc",
    "certificate_from_doc",
    "refusal_to_doc",
    "verification_report_to_doc",
    "audit_report_to_doc",
    "plan_to_doc",
    "infeasible_to_doc",
]

FORMAT_VERSION = 1

_I64 = 2**63


def _enc(value: int) -> int | str:
    """Decimal string beyond the signed 64-bit range, plain int otherwise."""
    return str(value) if abs(value) >= _I64 else value


def _dec(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"expected an integer field, got {value!r}")
    return int(value)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# --------------------------------------------------------------------------
# Curves, instances, verdicts


def _curve_to_doc(spec: CurveSpec) -> dict:
    return {"d": _enc(spec.d), "g": _enc(spec.g), "r": _enc(spec.r)}


def _curve_from_doc(doc: dict) -> CurveSpec:
    return CurveSpec(_dec(doc["d"]), _dec(doc["g"]), _dec(doc["r"]))


def _instance_to_doc(inst) -> dict:
    if isinstance(inst, GluingInstance):
        return {
            "type": "gluing",
            "left": _curve_to_doc(inst.left),
            "right": _curve_to_doc(inst.right),
            "n": _enc(inst.n),
        }
    if isinstance(inst, HyperplaneInstance):
        return {
            "type": "hyperplane",
            "inner": _curve_to_doc(inst.inner),
            "hyper": _curve_to_doc(inst.hyper),
            "n": _enc(inst.n),
        }
    if isinstance(inst, SmallMidQuery):
        return {
            "type": "attachment",
            "curve": _curve_to_doc(inst.spec),
            "a": _enc(inst.a),
        }
    raise TypeError(f"unknown instance type {type(inst).__name__}")


def _instance_from_doc(doc: dict):
    kind = doc.get("type")
    if kind == "gluing":
        return GluingInstance(
            _curve_from_doc(doc["left"]), _curve_from_doc(doc["right"]), _dec(doc["n"])
        )
    if kind == "hyperplane":
        return HyperplaneInstance(
            _curve_from_doc(doc["inner"]), _curve_from_doc(doc["hyper"]), _dec(doc["n"])
        )
    if kind == "attachment":
        return SmallMidQuery(_curve_from_doc(doc["curve"]), _dec(doc["a"]))
    raise ValueError(f"unknown instance type {kind!r}")


def _check_to_doc(check: Check) -> dict:
    return {
        "label": check.label,
        "inequality": check.inequality,
        "slack": _enc(check.slack),
    }


def _check_from_doc(doc: dict) -> Check:
    return Check(str(doc["label"]), str(doc["inequality"]), _dec(doc["slack"]))


def verdict_to_doc(verdict: Verdict) -> dict:
    return {
        "outcome": verdict.outcome,
        "conclusion": verdict.conclusion,
        "checks": [_check_to_doc(c) for c in verdict.checks],
    }


def _verdict_from_doc(doc: dict) -> Verdict:
    checks = tuple(_check_from_doc(c) for c in doc["checks"])
    return Verdict(checks, str(doc["conclusion"]))


# --------------------------------------------------------------------------
# Certificates


def _plan_to_doc(plan: SplitPlan) -> dict:
    return {
        "parent": _curve_to_doc(plan.parent),
        "piece_main": _curve_to_doc(plan.piece_main),
        "piece_off": _curve_to_doc(plan.piece_off),
        "n0": _enc(plan.n0),
        "n_prime": _enc(plan.n_prime),
        "n_dprime": _enc(plan.n_dprime),
    }


def _plan_from_doc(doc: dict) -> SplitPlan:
    return SplitPlan(
        _curve_from_doc(doc["parent"]),
        _curve_from_doc(doc["piece_main"]),
        _curve_from_doc(doc["piece_off"]),
        _dec(doc["n0"]),
        _dec(doc["n_prime"]),
        _dec(doc["n_dprime"]),
    )


def _node_to_doc(node) -> dict:
    if isinstance(node, TheoremLeaf):
        return {
            "kind": "theorem-leaf",
            "theorem": node.theorem,
            "verdict": verdict_to_doc(node.verdict),
        }
    if isinstance(node, LemmaLeaf):
        return {
            "kind": "lemma-leaf",
            "tag": node.tag,
            "conditions": [_check_to_doc(c) for c in node.conditions],
        }
    if isinstance(node, Split):
        return {
            "kind": "split",
            "split": node.kind,
            "plan": _plan_to_doc(node.plan),
            "inner": _cert_to_doc(node.inner),
            "outer": _cert_to_doc(node.outer),
        }
    if isinstance(node, Swap):
        return {"kind": "swap", "child": _cert_to_doc(node.child)}
    if isinstance(node, Reduce):
        return {
            "kind": "reduce",
            "conditions": [_check_to_doc(c) for c in node.conditions],
            "children": [
                {"name": name, "certificate": _cert_to_doc(child)}
                for name, child in node.children
            ],
        }
    raise TypeError(f"unknown node type {type(node).__name__}")


def _node_from_doc(doc: dict):
    kind = doc.get("kind")
    if kind == "theorem-leaf":
        return TheoremLeaf(str(doc["theorem"]), _verdict_from_doc(doc["verdict"]))
    if kind == "lemma-leaf":
        return LemmaLeaf(
            str(doc["tag"]), tuple(_check_from_doc(c) for c in doc["conditions"])
        )
    if kind == "split":
        return Split(
            str(doc["split"]),
            _plan_from_doc(doc["plan"]),
            _cert_from_doc(doc["inner"]),
            _cert_from_doc(doc["outer"]),
        )
    if kind == "swap":
        return Swap(_cert_from_doc(doc["child"]))
    if kind == "reduce":
        return Reduce(
            tuple(_check_from_doc(c) for c in doc["conditions"]),
            tuple(
                (str(entry["name"]), _cert_from_doc(entry["certificate"]))
                for entry in doc["children"]
            ),
        )
    raise ValueError(f"unknown node kind {kind!r}")


def _cert_to_doc(cert: Certificate) -> dict:
    return {
        "instance": _instance_to_doc(cert.instance),
        "case": cert.case_id,
        "node": _node_to_doc(cert.node),
    }


def _cert_from_doc(doc: dict) -> Certificate:
    return Certificate(
        _instance_from_doc(doc["instance"]), str(doc["case"]), _node_from_doc(doc["node"])
    )


def certificate_to_doc(cert: Certificate) -> dict:
    doc = {"format_version": FORMAT_VERSION}
    doc.update(_cert_to_doc(cert))
    return doc


def certificate_from_doc(doc: dict) -> Certificate:
    version = _dec(doc.get("format_version", 0))
    if version != FORMAT_VERSION:
        raise ValueError(f"unsupported format_version {version}")
    return _cert_from_doc(doc)


def refusal_to_doc(ref: Refusal) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "refused": True,
        "instance": _instance_to_doc(ref.instance),
        "reason": ref.reason,
        "verdict": None if ref.verdict is None else verdict_to_doc(ref.verdict),
    }


# --------------------------------------------------------------------------
# Reports and plans


def verification_report_to_doc(report: VerificationReport) -> dict:
    return {
        "ok": report.ok,
        "failures": [
            {
                "path": f.path,
                "label": f.label,
                "inequality": f.inequality,
                "slack": _enc(f.slack),
            }
            for f in report.failures
        ],
    }


def audit_report_to_doc(report: AuditReport) -> dict:
    return {
        "instances_checked": _enc(report.instances_checked),
        "gaps": list(report.gaps),
        "disagreements": list(report.disagreements),
        "max_depth": _enc(report.max_depth),
        "wall_time_ms": _enc(report.wall_time_ms),
    }


def plan_to_doc(plan: DecompositionPlan) -> dict:
    return {
        "target": _curve_to_doc(plan.target),
        "left": _curve_to_doc(plan.left),
        "right": _curve_to_doc(plan.right),
        "n": _enc(plan.n),
        "certificate": certificate_to_doc(plan.certificate),
    }


def infeasible_to_doc(inf: Infeasible) -> dict:
    return {
        "infeasible": True,
        "target": _curve_to_doc(inf.target),
        "searched": inf.searched,
    }
