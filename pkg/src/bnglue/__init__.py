"""Exact-arithmetic decision and certification engine for gluing curve
classes in projective space."""

from .certificates import (
    Certificate,
    LemmaLeaf,
    Reduce,
    Refusal,
    Split,
    SplitPlan,
    Swap,
    TheoremLeaf,
    depth,
    iter_certificates,
    unwrap_swaps,
)
from .certifier import certify_main, certify_small_hyp, certify_small_mid
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
    EXCEPTIONAL_TRIPLES,
    UNBOUNDED,
    Capacity,
    CurveSpec,
    glue,
    interpolation_capacity,
    is_exceptional,
    margin,
    passes_through,
    rho,
)
from .planner import DecompositionPlan, Infeasible, enumerate_decompositions, plan_decomposition
from .verifier import Failure, VerificationReport, verify, verify_node

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Capacity",
    "Certificate",
    "Check",
    "CurveSpec",
    "DecompositionPlan",
    "EXCEPTIONAL_TRIPLES",
    "Failure",
    "GluingInstance",
    "HyperplaneInstance",
    "Infeasible",
    "LemmaLeaf",
    "Reduce",
    "Refusal",
    "SmallMidQuery",
    "Split",
    "SplitPlan",
    "Swap",
    "TheoremLeaf",
    "UNBOUNDED",
    "Verdict",
    "VerificationReport",
    "certify_main",
    "certify_small_hyp",
    "certify_small_mid",
    "check_main",
    "check_main_hyp",
    "check_main_sp",
    "check_small_hyp",
    "check_small_mid",
    "depth",
    "enumerate_decompositions",
    "glue",
    "interpolation_capacity",
    "is_exceptional",
    "iter_certificates",
    "margin",
    "passes_through",
    "plan_decomposition",
    "rho",
    "unwrap_swaps",
    "verify",
    "verify_node",
]
