"""Immutable proof-tree data model shared by the certifier and the verifier.

A :class:`Certificate` pairs an instance with a node.  Internal nodes are
degeneration steps (line splits, rational-normal-curve splits, index
swaps, and named composite reductions); leaves apply a base criterion or
a named construction whose numeric side conditions are recorded.  The
model carries no checking logic: the certifier builds trees, the verifier
re-derives every condition from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .hypotheses import (
    Check,
    GluingInstance,
    HyperplaneInstance,
    SmallMidQuery,
    Verdict,
)
from .numerics import CurveSpec

__all__ = [
    "Instance",
    "SplitPlan",
    "TheoremLeaf",
    "LemmaLeaf",
    "Split",
    "Swap",
    "Reduce",
    "CertNode",
    "Certificate",
    "Refusal",
    "unwrap_swaps",
    "depth",
    "iter_certificates",
]

Instance = Union[GluingInstance, HyperplaneInstance, SmallMidQuery]


@dataclass(frozen=True, slots=True)
class SplitPlan:
    """How one side of a gluing instance degenerates into two pieces.

    ``parent`` splits into ``piece_main`` and ``piece_off`` meeting at
    ``n0`` internal nodes; of the parent's marked points, ``n_prime`` stay
    on the main piece and ``n_dprime`` move to the off piece.  The
    bookkeeping invariants (degree and genus additivity, point partition)
    are enforced by the verifier, not the constructor.
    """

    parent: CurveSpec
    piece_main: CurveSpec
    piece_off: CurveSpec
    n0: int
    n_prime: int
    n_dprime: int


@dataclass(frozen=True, slots=True)
class TheoremLeaf:
    """Leaf applying a base criterion ("main-sp" or "main-hyp") to the instance."""

    theorem: str
    verdict: Verdict


@dataclass(frozen=True, slots=True)
class LemmaLeaf:
    """Leaf invoking a named geometric construction.

    The construction itself is accepted as an axiom; its numeric side
    conditions are recorded and re-derived by the verifier.
    """

    tag: str
    conditions: tuple[Check, ...]


@dataclass(frozen=True, slots=True)
class Split:
    """A degeneration of the left curve of a gluing instance.

    ``kind`` is "line1" (peel a line at one node), "line2" (peel a line at
    two nodes, dropping genus), or "rnc" (peel a rational normal curve at
    r + 1 nodes).  ``inner`` certifies the off piece glued to the right
    curve; ``outer`` certifies the main piece glued to that union.
    """

    kind: str
    plan: SplitPlan
    inner: "Certificate"
    outer: "Certificate"


@dataclass(frozen=True, slots=True)
class Swap:
    """Explicit index exchange; the child certifies the swapped instance."""

    child: "Certificate"


@dataclass(frozen=True, slots=True)
class Reduce:
    """Composite reduction step with named sub-certificates.

    Used by the attachment and hyperplane recursions, whose steps combine
    a specialization, a bridge criterion, and one or more recursive
    sub-certificates.  ``conditions`` are the step's numeric side
    conditions; ``children`` is an ordered (name, certificate) list.
    """

    conditions: tuple[Check, ...]
    children: tuple[tuple[str, "Certificate"], ...]

    def child(self, name: str) -> "Certificate":
        for key, cert in self.children:
            if key == name:
                return cert
        raise KeyError(name)


CertNode = Union[TheoremLeaf, LemmaLeaf, Split, Swap, Reduce]


@dataclass(frozen=True, slots=True)
class Certificate:
    """A machine-checkable proof tree for one instance."""

    instance: Instance
    case_id: str
    node: CertNode


@dataclass(frozen=True, slots=True)
class Refusal:
    """Graceful rejection: the hypotheses fail or a sub-derivation refused."""

    instance: Instance
    reason: str
    verdict: Verdict | None


def unwrap_swaps(cert: Certificate) -> Certificate:
    """Skip through swap wrappers to the first structural node."""
    while isinstance(cert.node, Swap):
        cert = cert.node.child
    return cert


def depth(cert: Certificate) -> int:
    """Longest root-to-leaf chain of structural nodes; swaps are transparent."""
    node = unwrap_swaps(cert).node
    if isinstance(node, Split):
        return 1 + max(depth(node.inner), depth(node.outer))
    if isinstance(node, Reduce):
        if not node.children:
            return 1
        return 1 + max(depth(c) for _, c in node.children)
    return 1


def iter_certificates(
    cert: Certificate, path: str = "root"
) -> Iterator[tuple[str, Certificate]]:
    """Depth-first preorder walk yielding (path, certificate) pairs.

    Paths are canonical strings like "root/outer/swap/inner" so reports
    diff stably across runs.
    """
    yield path, cert
    node = cert.node
    if isinstance(node, Swap):
        yield from iter_certificates(node.child, path + "/swap")
    elif isinstance(node, Split):
        yield from iter_certificates(node.inner, path + "/inner")
        yield from iter_certificates(node.outer, path + "/outer")
    elif isinstance(node, Reduce):
        for name, child in node.children:
            yield from iter_certificates(child, f"{path}/{name}")
