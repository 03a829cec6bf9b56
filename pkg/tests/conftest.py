"""Shared corpus and reference oracles for the test suite.

Two tiers of graphs: CORPUS_SPECS is a hand-picked list covering every
generator family plus the structural corner cases (edgeless, disconnected,
bipartite, clamped tangency), and the seeded G(n, p) batch drives the
property sweeps.  Spectra and summaries are cached per session because the
eigensolver would otherwise dominate collection time.

The oracles here deliberately avoid the code paths they check: closed walks
are counted by depth-first enumeration rather than matrix powers, and
quadrilaterals by testing all three pairings of every 4-subset.
"""

import itertools

import pytest

import menergy as me
from menergy.graphs import bit_indices

CORPUS_SPECS = [
    "complete:1",
    "complete:2",
    "complete:3",
    "complete:5",
    "complete:8",
    "complete:12",
    "cycle:3",
    "cycle:4",
    "cycle:5",
    "cycle:7",
    "cycle:12",
    "path:1",
    "path:2",
    "path:5",
    "path:10",
    "star:1",
    "star:2",
    "star:4",
    "star:9",
    "bipartite:1:1",
    "bipartite:2:3",
    "bipartite:3:3",
    "bipartite:4:5",
    "petersen",
    "heawood",
    "rook:2",
    "rook:3",
    "rook:4",
    "rook:5",
    "projective:2",
    "projective:3",
    "projective:5",
    "gnp:10:0.2:1",
    "gnp:15:0.5:2",
    "gnp:20:0.8:3",
    "gnp:24:0.5:4",
    "union:complete:2,complete:2",
    "union:complete:3,cycle:4",
    "union:star:3,path:4",
    "union:complete:2,complete:2,complete:2",
]

# Criterion batch: 200 seeded G(n, p), n in 4..24, p cycling {0.2, 0.5, 0.8}.
GNP_COUNT = 200


def gnp_batch_spec(i: int) -> tuple[int, float, int]:
    return 4 + (i % 21), (0.2, 0.5, 0.8)[i % 3], 1000 + i


_graph_cache: dict[str, me.Graph] = {}
_spectrum_cache: dict[me.Graph, me.Spectrum] = {}
_summary_cache: dict[me.Graph, me.MomentSummary] = {}


def corpus_graph(spec: str) -> me.Graph:
    if spec not in _graph_cache:
        _graph_cache[spec] = me.generate_from_string(spec)
    return _graph_cache[spec]


def spectrum_of(g: me.Graph) -> me.Spectrum:
    if g not in _spectrum_cache:
        _spectrum_cache[g] = me.eigenvalues(g)
    return _spectrum_cache[g]


def summary_of(g: me.Graph) -> me.MomentSummary:
    if g not in _summary_cache:
        _summary_cache[g] = me.moment_summary(g)
    return _summary_cache[g]


@pytest.fixture(scope="session")
def corpus() -> list[me.Graph]:
    return [corpus_graph(spec) for spec in CORPUS_SPECS]


@pytest.fixture(scope="session")
def gnp_batch() -> list[me.Graph]:
    return [me.random_gnp(*gnp_batch_spec(i)) for i in range(GNP_COUNT)]


def count_closed_walks(g: me.Graph, length: int) -> int:
    """Closed walks of the given length by plain depth-first enumeration."""
    neighbours = [tuple(bit_indices(row)) for row in g.adj]

    def walks(v: int, steps: int, target: int) -> int:
        if steps == 0:
            return 1 if v == target else 0
        return sum(walks(u, steps - 1, target) for u in neighbours[v])

    return sum(walks(v, length, v) for v in range(g.n))


def brute_force_quad_count(g: me.Graph) -> int:
    """4-cycles by checking all three pairings of every 4-vertex subset."""
    count = 0
    for a, b, c, d in itertools.combinations(range(g.n), 4):
        for w, x, y, z in ((a, b, c, d), (a, c, b, d), (a, b, d, c)):
            if (
                g.has_edge(w, x)
                and g.has_edge(x, y)
                and g.has_edge(y, z)
                and g.has_edge(z, w)
            ):
                count += 1
    return count
