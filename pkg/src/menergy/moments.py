"""Combinatorial spectral moments: degree statistics, 4-cycle counts, and
the scaled moment triple that drives the quartic bounds.

The second and fourth moments of the adjacency spectrum count closed walks:
M2 = 2m and M4 = 2 * zagreb - 2m + 8 * quad_count, where zagreb is the sum
of squared degrees and quad_count the number of quadrilateral subgraphs.
Every quantity here is an exact integer; the 4-cycle count is computed by
two independent routes that must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .graphs import Graph
from .spectral import TRACE_MAX_VERTICES, trace_moments


class MomentMismatchError(RuntimeError):
    """Two independent computations of the same quantity disagreed."""


class NoEdgesError(ValueError):
    """Scaled moments are undefined for edgeless graphs (energy is 0 there)."""


class DegreeStats(NamedTuple):
    degrees: tuple[int, ...]
    edge_count: int
    max_degree: int
    min_degree: int
    zagreb: int


def degree_stats(g: Graph) -> DegreeStats:
    degs = g.degrees()
    return DegreeStats(
        degrees=degs,
        edge_count=sum(degs) // 2,
        max_degree=max(degs, default=0),
        min_degree=min(degs, default=0),
        zagreb=sum(d * d for d in degs),
    )


def _codegree_pair_sum(g: Graph) -> int:
    """Sum over vertex pairs of C(codegree, 2); equals twice the 4-cycle count."""
    total = 0
    for u in range(g.n):
        row = g.adj[u]
        for v in range(u + 1, g.n):
            c = (row & g.adj[v]).bit_count()
            total += c * (c - 1) // 2
    return total


def _quad_count_checked(g: Graph, zagreb: int, m: int, t4: int | None) -> int:
    pair_sum = _codegree_pair_sum(g)
    if pair_sum % 2:
        raise MomentMismatchError("common-neighbour pair sum must be even")
    q = pair_sum // 2
    if t4 is not None:
        num = t4 - 2 * zagreb + 2 * m
        if num % 8:
            raise MomentMismatchError(f"Tr(A^4) - 2*zagreb + 2*m = {num} is not divisible by 8")
        if num // 8 != q:
            raise MomentMismatchError(
                f"4-cycle counts disagree: walk route {num // 8}, codegree route {q}"
            )
    return q


def count_quadrilaterals(g: Graph) -> int:
    """Number of 4-cycles as subgraphs, each counted once.

    Counted from codegrees (each 4-cycle contributes one pair of opposite
    vertices twice) and, within the exact-moment size cap, re-derived from
    Tr(A^4); disagreement raises.
    """
    st = degree_stats(g)
    t4 = trace_moments(g, 4)[4] if g.n <= TRACE_MAX_VERTICES else None
    return _quad_count_checked(g, st.zagreb, st.edge_count, t4)


@dataclass(frozen=True)
class MomentSummary:
    """Exact integer moment data for one graph."""

    n: int
    m: int
    degrees: tuple[int, ...]
    max_degree: int
    min_degree: int
    zagreb: int
    quad_count: int
    m2: int
    m4: int


def moment_summary(g: Graph) -> MomentSummary:
    """Assemble all integer moment quantities, self-checking against walk counts."""
    st = degree_stats(g)
    traces = trace_moments(g, 4) if g.n <= TRACE_MAX_VERTICES else None
    q = _quad_count_checked(g, st.zagreb, st.edge_count, traces[4] if traces else None)
    m2 = 2 * st.edge_count
    m4 = 2 * st.zagreb - 2 * st.edge_count + 8 * q
    if traces is not None and (m2 != traces[2] or m4 != traces[4]):
        raise MomentMismatchError("combinatorial moments disagree with closed-walk counts")
    return MomentSummary(
        n=g.n,
        m=st.edge_count,
        degrees=st.degrees,
        max_degree=st.max_degree,
        min_degree=st.min_degree,
        zagreb=st.zagreb,
        quad_count=q,
        m2=m2,
        m4=m4,
    )


@dataclass(frozen=True)
class ScaledMoments:
    """The dimension-reduced moments (M4/D^3, M2/D, n*D) for D = max degree.

    The ordering m4_scaled <= m2_scaled <= m0_scaled holds for every graph
    with an edge; construction re-checks it.
    """

    m4_scaled: float
    m2_scaled: float
    m0_scaled: float


def scaled_moments(s: MomentSummary) -> ScaledMoments:
    if s.max_degree < 1:
        raise NoEdgesError("scaled moments are undefined without edges")
    d = float(s.max_degree)
    triple = ScaledMoments(s.m4 / d**3, s.m2 / d, s.n * d)
    slack = 1e-12 * max(1.0, triple.m0_scaled)
    if not (triple.m4_scaled <= triple.m2_scaled + slack and triple.m2_scaled <= triple.m0_scaled + slack):
        raise MomentMismatchError(f"scaled moment ordering violated: {triple}")
    return triple
