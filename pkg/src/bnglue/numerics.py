"""Exact integer arithmetic for curve classes in projective space.

Everything in this module is a pure function of ordinary Python integers,
so all arithmetic is arbitrary-precision by construction: nothing rounds,
truncates toward zero, or overflows.  Floor division below is Euclidean
(toward minus infinity), which is what ``//`` does for ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "CurveSpec",
    "Capacity",
    "UNBOUNDED",
    "EXCEPTIONAL_TRIPLES",
    "rho",
    "is_exceptional",
    "margin",
    "interpolation_capacity",
    "passes_through",
    "glue",
]

#: The two exceptional classes whose interpolation capacity is capped at 9,
#: one below what the counting formula would give.
EXCEPTIONAL_TRIPLES = frozenset({(5, 2, 3), (7, 2, 5)})


@dataclass(frozen=True, slots=True)
class CurveSpec:
    """A curve class in projective space.

    ``d`` is the degree, ``g`` the genus, and ``r`` the dimension of the
    ambient projective space.  Role flags (nonspecial range, degenerate
    range, linearly normal boundary) are derived from ``excess`` and never
    stored.
    """

    d: int
    g: int
    r: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"degree must be at least 1 (got d={self.d})")
        if self.g < 0:
            raise ValueError(f"genus must be nonnegative (got g={self.g})")
        if self.r < 1:
            raise ValueError(f"ambient dimension must be at least 1 (got r={self.r})")

    @property
    def excess(self) -> int:
        """d - g - r.

        Nonnegative exactly on the nondegenerate-nonspecial range; zero
        exactly on its linearly normal boundary (d = g + r).
        """
        return self.d - self.g - self.r

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.d, self.g, self.r)

    def __str__(self) -> str:
        return f"(d={self.d}, g={self.g}, r={self.r})"


@dataclass(frozen=True, slots=True)
class Capacity:
    """Maximum number of general points a class passes through.

    ``value`` is a nonnegative integer, or ``None`` for the unbounded case,
    which occurs only in ambient dimension 1 where the defining inequality
    is vacuous.
    """

    value: int | None

    @property
    def is_unbounded(self) -> bool:
        return self.value is None

    def admits(self, n: int) -> bool:
        if n < 0:
            raise ValueError(f"point count must be nonnegative (got n={n})")
        return self.value is None or n <= self.value

    def surplus(self, n: int) -> int:
        """value - n, used as a slack; 1 for the unbounded case."""
        if self.value is None:
            return 1
        return self.value - n

    def __str__(self) -> str:
        return "unbounded" if self.value is None else str(self.value)


UNBOUNDED = Capacity(None)


def rho(spec: CurveSpec) -> int:
    """Brill-Noether number (r + 1)d - rg - r(r + 1).  May be negative."""
    return (spec.r + 1) * spec.d - spec.r * spec.g - spec.r * (spec.r + 1)


def is_exceptional(spec: CurveSpec) -> bool:
    """True exactly on the two capacity-exceptional classes."""
    return spec.as_tuple() in EXCEPTIONAL_TRIPLES


def margin(spec: CurveSpec, n: int) -> int:
    """(r + 1)d - (r - 3)(g - 1) - (r - 1)n, the interpolation slack at n points.

    Strictly decreasing in n with step r - 1 (for r >= 2); may be negative.
    """
    if n < 0:
        raise ValueError(f"point count must be nonnegative (got n={n})")
    d, g, r = spec.d, spec.g, spec.r
    return (r + 1) * d - (r - 3) * (g - 1) - (r - 1) * n


@lru_cache(maxsize=1 << 16)
def interpolation_capacity(spec: CurveSpec) -> Capacity:
    """Largest n such that the class passes through n general points.

    Requires d >= g, so that a nonspecial class of the given degree and
    genus exists at all.  In ambient dimension 1 the count is unbounded.
    A degenerate nonspecial class (g <= d < g + r) meets exactly d + 1 - g
    points, the reach of its linear span.  On the nondegenerate range the
    count is floor(((r+1)d - (r-3)(g-1)) / (r-1)), except for the two
    exceptional classes, which are capped at 9.
    """
    d, g, r = spec.d, spec.g, spec.r
    if d < g:
        raise ValueError(
            f"no nonspecial class of degree {d} and genus {g} (need d >= g)"
        )
    if r == 1:
        return UNBOUNDED
    if d - g < r:
        return Capacity(d + 1 - g)
    if is_exceptional(spec):
        return Capacity(9)
    return Capacity(((r + 1) * d - (r - 3) * (g - 1)) // (r - 1))


def passes_through(spec: CurveSpec, n: int) -> bool:
    """Whether the class passes through n general points."""
    if n < 0:
        raise ValueError(f"point count must be nonnegative (got n={n})")
    return interpolation_capacity(spec).admits(n)


def glue(left: CurveSpec, right: CurveSpec, n: int) -> CurveSpec:
    """Class of the union of two curves meeting at n general points.

    Degrees add; the genus is g1 + g2 + n - 1.
    """
    if left.r != right.r:
        raise ValueError(
            f"ambient dimensions must match (got r={left.r} and r={right.r})"
        )
    if n < 1:
        raise ValueError(f"gluing needs at least one node (got n={n})")
    return CurveSpec(left.d + right.d, left.g + right.g + n - 1, left.r)
