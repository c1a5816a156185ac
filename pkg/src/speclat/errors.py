"""Exception hierarchy shared by all speclat modules."""


class SpeclatError(Exception):
    """Base class for all errors raised by this package."""


class RankDeficient(SpeclatError):
    """The pairwise differences of the point set span a lattice of rank < n."""


class NotInLattice(SpeclatError):
    """A vector is not an integer combination of the given lattice basis."""


class CosetViolation(SpeclatError):
    """The point set intersects its own difference lattice, so the bipartite
    graph model is undefined."""


class IntegralityViolation(SpeclatError):
    """A quantity that is provably integral came out non-integral; this always
    indicates a bug, never bad input."""


class ResourceLimit(SpeclatError):
    """Base for configured-cap overruns (CLI exit code 3)."""


class SizeLimit(ResourceLimit):
    """A matrix or enumeration would exceed the configured size cap."""


class ExplosionGuard(ResourceLimit):
    """A brute-force walk enumeration would exceed the configured cap."""


class SingularLevel(SpeclatError):
    """A floating product hit a spectrum value exactly (log of ~0)."""


class SpectrumProximity(SpeclatError):
    """The evaluation point is within tolerance of an observed spectrum value."""


class ConfigError(SpeclatError):
    """Invalid CLI configuration (exit code 2)."""
