"""Sparse multivariate Laurent polynomials over Python integers.

Exponents are lattice coordinates (tuples of ints, negative allowed);
coefficients are arbitrary-precision integers.  The central object is the
squared-diffraction polynomial of a weighted point set: the sum of
c_a * c_b over all ordered point pairs, attached to the lattice coordinates
of a - b.  Folding exponents modulo N turns multiplication into convolution
on the N-fold torsion quotient, which is how all the finite spectra are
computed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .lattice import LatticeBasis, WeightedPointSet, to_lattice_coords

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class LaurentPoly:
    """Immutable sparse Laurent polynomial; zero coefficients never stored."""

    dimension: int
    terms: Mapping[Exponent, int]

    def __post_init__(self):
        clean = {}
        for e, c in self.terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != self.dimension:
                raise ValueError(f"exponent {e} has wrong dimension")
            c = int(c)
            if c:
                clean[e] = c
        object.__setattr__(self, "terms", clean)

    def coefficient(self, exponent) -> int:
        return self.terms.get(tuple(exponent), 0)

    def coefficient_sum(self) -> int:
        """Value at the all-ones point."""
        return sum(self.terms.values())

    def max_abs_exponent(self) -> int:
        return max((abs(x) for e in self.terms for x in e), default=0)

    def is_palindromic(self) -> bool:
        return all(
            self.terms.get(tuple(-x for x in e)) == c for e, c in self.terms.items()
        )

    def sorted_terms(self) -> list[tuple[Exponent, int]]:
        return sorted(self.terms.items())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.dimension == other.dimension
            and dict(self.terms) == dict(other.terms)
        )

    def __hash__(self):
        return hash((self.dimension, tuple(self.sorted_terms())))


def one(dimension: int) -> LaurentPoly:
    return LaurentPoly(dimension, {(0,) * dimension: 1})


def diffraction_polynomial(ps: WeightedPointSet, basis: LatticeBasis) -> LaurentPoly:
    """Squared diffraction amplitude of the point set, written on the basis.

    Term for each ordered pair (a, b): coefficient c_a * c_b at the lattice
    coordinates of a - b.  All coefficients are positive, the polynomial is
    palindromic, and its value at the all-ones point is total_weight**2.
    """
    terms: dict[Exponent, int] = {}
    for (a, ca), (b, cb) in itertools.product(ps.points, repeat=2):
        diff = tuple(x - y for x, y in zip(a, b))
        e = to_lattice_coords(diff, basis)
        terms[e] = terms.get(e, 0) + ca * cb
    return LaurentPoly(ps.dimension, terms)


def multiply(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact product."""
    if f.dimension != g.dimension:
        raise ValueError("dimension mismatch")
    out: dict[Exponent, int] = {}
    for ef, cf in f.terms.items():
        for eg, cg in g.terms.items():
            e = tuple(x + y for x, y in zip(ef, eg))
            out[e] = out.get(e, 0) + cf * cg
    return LaurentPoly(f.dimension, out)


def constant_term(f: LaurentPoly) -> int:
    return f.terms.get((0,) * f.dimension, 0)


def fold_mod_N(f: LaurentPoly, N: int) -> LaurentPoly:
    """Reduce exponents componentwise mod N, summing colliding coefficients."""
    if N < 1:
        raise ValueError("N must be >= 1")
    out: dict[Exponent, int] = {}
    for e, c in f.terms.items():
        r = tuple(x % N for x in e)
        out[r] = out.get(r, 0) + c
    return LaurentPoly(f.dimension, out)


def power(f: LaurentPoly, k: int, fold: int | None = None) -> LaurentPoly:
    """k-th power; with ``fold=N`` the result is folded mod N and the fold is
    applied between multiplications to bound intermediate sparsity."""
    if k < 0:
        raise ValueError("negative power of a Laurent polynomial not supported")
    if fold is None:
        result = one(f.dimension)
        square = f
        e = k
        while e:
            if e & 1:
                result = multiply(result, square)
            e >>= 1
            if e:
                square = multiply(square, square)
        return result
    if k == 0:
        return fold_mod_N(one(f.dimension), fold)
    dense = folded_power_dense(f, k, fold)
    return _sparse_from_dense(dense, f.dimension, fold)


# -- dense folded engine -----------------------------------------------------
#
# A polynomial folded mod N is an n-dimensional cyclic array of coefficients.
# Multiplying by a sparse polynomial is then a handful of np.roll shifts.
# With dtype=object the entries are Python ints, so this stays exact; a
# coefficient modulus small enough for int64 switches to machine integers.

# products stay below 2**30 and sums far from int64 overflow
_INT64_MOD_LIMIT = 32768


def _fold_setup(f: LaurentPoly, N: int, coeff_mod: int | None):
    kernel_poly = fold_mod_N(f, N)
    use_int64 = coeff_mod is not None and 1 < coeff_mod <= _INT64_MOD_LIMIT
    dtype = np.int64 if use_int64 else object
    kernel = [
        (e, c if coeff_mod is None else c % coeff_mod)
        for e, c in kernel_poly.sorted_terms()
    ]
    acc = np.zeros((N,) * f.dimension, dtype=dtype)
    for e, c in kernel:
        acc[e] = c
    return kernel, acc


def _sparse_from_dense(arr: np.ndarray, dimension: int, N: int) -> LaurentPoly:
    terms = {}
    for idx in itertools.product(range(N), repeat=dimension):
        c = int(arr[idx])
        if c:
            terms[idx] = c
    return LaurentPoly(dimension, terms)


def _roll_multiply(acc: np.ndarray, kernel, coeff_mod: int | None) -> np.ndarray:
    axes = tuple(range(acc.ndim))
    out = np.zeros_like(acc)
    for e, c in kernel:
        if c == 0:
            continue
        shifted = np.roll(acc, e, axis=axes)
        out += shifted if c == 1 else shifted * c
    if coeff_mod is not None:
        out %= coeff_mod
    return out


def folded_power_dense(
    f: LaurentPoly, k: int, N: int, coeff_mod: int | None = None
) -> np.ndarray:
    """Dense coefficient array of (f**k) folded mod N.

    Iterated multiplication by the folded kernel of f: cost is about
    k * N**n * (number of terms of f).  With ``coeff_mod`` all coefficients
    are reduced modulo it at every step (exact modular arithmetic, used for
    congruence checks where the full integers are not needed).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    kernel, acc = _fold_setup(f, N, coeff_mod)
    for _ in range(k - 1):
        acc = _roll_multiply(acc, kernel, coeff_mod)
    return acc


def folded_power_sweep(
    f: LaurentPoly, K: int, N: int, coeff_mod: int | None = None
) -> list[int]:
    """Constant-residue coefficients of f**k folded mod N, for k = 0..K."""
    origin = (0,) * f.dimension
    out = [1 if coeff_mod is None else 1 % coeff_mod]
    if K == 0:
        return out
    kernel, acc = _fold_setup(f, N, coeff_mod)
    out.append(int(acc[origin]))
    for _ in range(K - 1):
        acc = _roll_multiply(acc, kernel, coeff_mod)
        out.append(int(acc[origin]))
    return out
