"""Torus quotients of the periodic bipartite graph of a point set.

Black vertices are the residues of the difference lattice mod N; white
vertices are the (single) folded coset of the point set.  Each black vertex
sends one typed edge per point, weighted by that point's weight.  A closed
walk alternates black-to-white and white-to-black steps, so a walk of
length 2k is a sequence of k type pairs whose difference sum folds to zero;
enumerating those pairs literally (no matrix shortcut) provides the
independent count that the convolution traces are checked against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CosetViolation, ExplosionGuard
from .lattice import (
    LatticeBasis,
    WeightedPointSet,
    difference_lattice,
    disjointness_check,
    to_lattice_coords,
)
from .moments import poly_log_series
from .specpoly import spectral_polynomial

DEFAULT_WALK_CAP = 10**8


@dataclass(frozen=True)
class TorusBipartiteGraph:
    """Level-N quotient graph.  Vertices are lattice-coordinate tuples;
    edges run black -> white and carry the type (index of the point) and
    its weight."""

    N: int
    dimension: int
    points: tuple[tuple[tuple[int, ...], int], ...]
    pair_deltas: tuple[tuple[tuple[int, ...], int], ...]
    edges: tuple[tuple[tuple[int, ...], tuple[int, ...], int, int], ...]

    @property
    def black_count(self) -> int:
        return self.N**self.dimension

    @property
    def white_count(self) -> int:
        return self.N**self.dimension

    def adjacency(self) -> dict:
        """JSON-ready adjacency description for external visualization."""
        return {
            "N": self.N,
            "dimension": self.dimension,
            "black": [list(v) for v in _residues(self.dimension, self.N)],
            "white": [list(v) for v in _residues(self.dimension, self.N)],
            "edges": [
                {
                    "from": list(b),
                    "to": list(w),
                    "type": t,
                    "weight": c,
                }
                for b, w, t, c in self.edges
            ],
        }


@dataclass(frozen=True)
class WalkSum:
    """Based closed-walk weight total at half-length k, and the per-walk
    (rotation class) total, an exact rational."""

    k: int
    based_total: int

    @property
    def per_class(self) -> Fraction:
        return Fraction(self.based_total, self.k)


def _residues(n: int, N: int):
    return itertools.product(range(N), repeat=n)


def build_graph(
    ps: WeightedPointSet, basis: LatticeBasis, N: int
) -> TorusBipartiteGraph:
    """Quotient graph at level N; requires the point set to avoid its own
    difference lattice (otherwise black and white vertices collide)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if not disjointness_check(ps, basis):
        raise CosetViolation("point set meets its difference lattice")
    n = ps.dimension
    anchor = ps.points[0][0]
    # offsets of each point against the anchor, in lattice coordinates
    offsets = []
    for a, c in ps.points:
        rel = tuple(x - y for x, y in zip(a, anchor))
        offsets.append((to_lattice_coords(rel, basis), c))
    pair_deltas = []
    for (a, ca), (b, cb) in itertools.product(ps.points, repeat=2):
        diff = tuple(x - y for x, y in zip(a, b))
        pair_deltas.append((to_lattice_coords(diff, basis), ca * cb))
    edges = []
    for v in _residues(n, N):
        for t, (off, c) in enumerate(offsets):
            w = tuple((x + y) % N for x, y in zip(v, off))
            edges.append((v, w, t, c))
    return TorusBipartiteGraph(
        N, n, tuple(offsets), tuple(pair_deltas), tuple(edges)
    )


def based_walk_weight_sum(
    G: TorusBipartiteGraph, k: int, cap: int = DEFAULT_WALK_CAP
) -> int:
    """Total weight of based closed walks of length 2k, all start vertices.

    Literal enumeration over all k-sequences of (out-type, back-type)
    pairs; a sequence closes iff its folded displacement sum vanishes.
    Translation invariance contributes the factor of N^n start vertices.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    npairs = len(G.pair_deltas)
    if npairs**k > cap:
        raise ExplosionGuard(
            f"{npairs}**{k} type sequences exceed the cap {cap}"
        )
    N, n = G.N, G.dimension
    zero = (0,) * n
    total = 0
    for seq in itertools.product(G.pair_deltas, repeat=k):
        disp = zero
        weight = 1
        for delta, w in seq:
            disp = tuple((x + y) % N for x, y in zip(disp, delta))
            weight *= w
        if disp == zero:
            total += weight
    return total * N**n


def walk_series_check(
    ps: WeightedPointSet, N: int, z: int, K: int, cap: int = DEFAULT_WALK_CAP
) -> bool:
    """Closed walks reproduce the log expansion of the spectral polynomial.

    Left side: the formal log of p(z)/z^deg for the exact level-N
    polynomial, as a series in 1/z.  Right side: -(walk total)/k at each
    order k <= K.  Both sides exact rationals; z only gates the usual
    convergence region.
    """
    C = ps.total_weight
    if z <= C * C:
        raise ValueError(f"z must exceed the spectrum top {C * C}")
    G = build_graph(ps, difference_lattice(ps), N)
    p = spectral_polynomial(ps, N)
    logs = poly_log_series(p, K)
    for k in range(1, K + 1):
        walks = based_walk_weight_sum(G, k, cap)
        if logs[k - 1] != Fraction(-walks, k):
            return False
    return True
