"""Built-in example point sets used by the verification suite and the CLI."""

from .lattice import WeightedPointSet


def chebyshev_point_set() -> WeightedPointSet:
    """Two unit-weight points at -1 and 1 on the line; the associated
    spectral polynomials are shifted Chebyshev polynomials."""
    return WeightedPointSet(1, (((-1,), 1), ((1,), 1)))


def honeycomb_point_set() -> WeightedPointSet:
    """Three unit-weight points in the plane whose periodic bipartite graph
    is the honeycomb."""
    return WeightedPointSet(2, (((1, 0), 1), ((0, 1), 1), ((-1, -1), 1)))


BUILTIN_POINT_SETS = {
    "chebyshev": chebyshev_point_set,
    "honeycomb": honeycomb_point_set,
}


def builtin_point_set(name: str) -> WeightedPointSet:
    try:
        return BUILTIN_POINT_SETS[name]()
    except KeyError:
        raise ValueError(
            f"unknown example {name!r}; available: {sorted(BUILTIN_POINT_SETS)}"
        ) from None
