"""Exact spectral polynomials of the torsion-level convolution operators.

For torsion level N the diffraction polynomial acts by convolution on the
N^n-dimensional group algebra of the quotient lattice; its matrix in the
residue basis is an integer circulant-like matrix whose eigenvalues are the
polynomial's values at the N-torsion characters.  The characteristic
polynomial of that matrix is therefore the monic integer polynomial with
one root per character, and it is computed exactly here:

* reduce the matrix modulo a batch of word-sized primes,
* compute each modular characteristic polynomial by Hessenberg reduction,
* reconstruct the integer coefficients by CRT against the a priori bound
  binom(m, j) * rho**j, where rho is the largest absolute row sum (for the
  convolution matrix rho equals the squared total weight, the top of the
  spectrum).

The reconstruction is certified: the prime product strictly exceeds twice
the bound, so the result does not depend on which primes were used.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import primes
from .errors import SingularLevel, SizeLimit
from .lattice import LatticeBasis, WeightedPointSet, difference_lattice
from .laurent import LaurentPoly, diffraction_polynomial, fold_mod_N

DEFAULT_SIZE_LIMIT = 10_000


@dataclass(frozen=True)
class IntPolynomial:
    """Dense univariate polynomial over Python integers, low degree first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coefficients, other.coefficients
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPolynomial(tuple(out))

    def __pow__(self, k: int) -> "IntPolynomial":
        result = IntPolynomial((1,))
        for _ in range(k):
            result = result * self
        return result

    @staticmethod
    def from_roots(roots: Sequence[int]) -> "IntPolynomial":
        p = IntPolynomial((1,))
        for r in roots:
            p = p * IntPolynomial((-r, 1))
        return p


def evaluate_at_integer(p: IntPolynomial, z: int) -> int:
    """Horner evaluation, exact."""
    acc = 0
    for c in reversed(p.coefficients):
        acc = acc * z + c
    return acc


def divides(p: IntPolynomial, q: IntPolynomial) -> bool:
    """True iff the monic polynomial p divides q in Z[z]."""
    if not p.is_monic:
        raise ValueError("divisor must be monic")
    d = p.degree
    rem = list(q.coefficients)
    if len(rem) < d + 1:
        return not any(rem)
    for i in range(len(rem) - 1, d - 1, -1):
        f = rem[i]
        if f:
            for j in range(d + 1):
                rem[i - d + j] -= f * p.coefficients[j]
    return not any(rem[:d])


def integer_root_multiplicity(p: IntPolynomial, r: int) -> int:
    """Largest m with (z - r)^m dividing p."""
    coeffs = list(p.coefficients)
    mult = 0
    while len(coeffs) >= 2:
        # synthetic division by (z - r)
        quot = [0] * (len(coeffs) - 1)
        acc = 0
        for i in range(len(coeffs) - 1, 0, -1):
            acc = acc * r + coeffs[i]
            quot[i - 1] = acc
        if acc * r + coeffs[0] != 0:
            break
        mult += 1
        coeffs = quot
    return mult


@dataclass(frozen=True)
class ConvolutionMatrix:
    """Matrix of multiplication by a folded polynomial on the quotient
    residues (lexicographic order).  Symmetric with constant row sum when
    the polynomial is palindromic with positive coefficients."""

    N: int
    dimension: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.size))


def convolution_matrix(
    folded: LaurentPoly, N: int, size_limit: int = DEFAULT_SIZE_LIMIT
) -> ConvolutionMatrix:
    """Entry (i, j) is the folded coefficient at residue rep_j - rep_i."""
    n = folded.dimension
    size = N**n
    if size > size_limit:
        raise SizeLimit(f"matrix size {size} exceeds cap {size_limit}")
    reps = list(itertools.product(range(N), repeat=n))
    coeffs = fold_mod_N(folded, N).terms
    rows = []
    for vi in reps:
        row = []
        for vj in reps:
            delta = tuple((x - y) % N for x, y in zip(vj, vi))
            row.append(coeffs.get(delta, 0))
        rows.append(tuple(row))
    return ConvolutionMatrix(N, n, tuple(rows))


# -- modular characteristic polynomial ----------------------------------------


def _charpoly_mod(rows: Sequence[Sequence[int]], p: int) -> list[int]:
    """Characteristic polynomial mod p via Hessenberg reduction."""
    m = len(rows)
    h = [[x % p for x in row] for row in rows]
    for k in range(m - 2):
        pivot = next((i for i in range(k + 1, m) if h[i][k]), None)
        if pivot is None:
            continue
        if pivot != k + 1:
            h[k + 1], h[pivot] = h[pivot], h[k + 1]
            for row in h:
                row[k + 1], row[pivot] = row[pivot], row[k + 1]
        inv = pow(h[k + 1][k], -1, p)
        for i in range(k + 2, m):
            f = h[i][k] * inv % p
            if f:
                hi, hk1 = h[i], h[k + 1]
                for j in range(k, m):
                    hi[j] = (hi[j] - f * hk1[j]) % p
                for row in h:
                    row[k + 1] = (row[k + 1] + f * row[i]) % p
    # characteristic polynomials of the leading principal blocks
    polys: list[list[int]] = [[1]]
    for k in range(1, m + 1):
        prev = polys[k - 1]
        cur = [0] + prev  # x * prev
        a = h[k - 1][k - 1]
        for i in range(k):
            cur[i] = (cur[i] - a * prev[i]) % p
        prod = 1
        for i in range(k - 2, -1, -1):
            prod = prod * h[i + 1][i] % p
            if prod == 0:
                break
            coef = h[i][k - 1] * prod % p
            if coef:
                pi = polys[i]
                for j in range(len(pi)):
                    cur[j] = (cur[j] - coef * pi[j]) % p
        polys.append(cur)
    return polys[m]


def _coefficient_bound(rows: Sequence[Sequence[int]]) -> int:
    """Bound on |coefficient j| of the characteristic polynomial: each is a
    sum of binom(m, j) principal minors, each at most rho**j in absolute
    value for rho the maximal absolute row sum."""
    m = len(rows)
    rho = max((sum(abs(x) for x in row) for row in rows), default=0)
    best = 1
    term = 1
    for j in range(1, m + 1):
        term = term * (m - j + 1) // j  # binom(m, j), exact when updated in order
        bound = term * rho**j
        if bound > best:
            best = bound
    return best


def charpoly_exact(matrix, prime_start: int = 2**62) -> IntPolynomial:
    """Exact monic characteristic polynomial of a square integer matrix.

    Accepts a ConvolutionMatrix or any sequence of integer rows.  Residues
    are computed modulo descending word-sized primes until their product
    exceeds twice the coefficient bound, then lifted symmetrically.
    """
    rows = matrix.rows if isinstance(matrix, ConvolutionMatrix) else matrix
    m = len(rows)
    if any(len(r) != m for r in rows):
        raise ValueError("matrix must be square")
    need = 2 * _coefficient_bound(rows) + 1
    residues: list[list[int]] = []
    used: list[int] = []
    product = 1
    for p in primes.primes_below(prime_start):
        residues.append(_charpoly_mod(rows, p))
        used.append(p)
        product *= p
        if product > need:
            break
    coeffs = []
    for j in range(m + 1):
        x, mod = 0, 1
        for res, p in zip(residues, used):
            # incremental CRT
            t = (res[j] - x) * pow(mod, -1, p) % p
            x += mod * t
            mod *= p
        if x > mod // 2:
            x -= mod
        coeffs.append(x)
    return IntPolynomial(tuple(coeffs))


def spectral_polynomial(
    ps: WeightedPointSet,
    N: int,
    basis: LatticeBasis | None = None,
    size_limit: int = DEFAULT_SIZE_LIMIT,
) -> IntPolynomial:
    """Monic integer polynomial of degree N^n whose roots are the values of
    the diffraction polynomial at all N-torsion characters."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if basis is None:
        basis = difference_lattice(ps)
    w = diffraction_polynomial(ps, basis)
    matrix = convolution_matrix(fold_mod_N(w, N), N, size_limit)
    return charpoly_exact(matrix)


# -- floating-point character evaluation ---------------------------------------


def character_values(f: LaurentPoly, N: int) -> np.ndarray:
    """Values of f at all N-torsion characters, as a real (N,)*n array.

    Uses one root-of-unity table per axis; the value at the trivial
    character (index all zeros) is the exact coefficient sum.  Only
    meaningful for palindromic f (real values); the real part is returned.
    """
    n = f.dimension
    table = np.exp(2j * np.pi * np.arange(N) / N)
    grids = np.indices((N,) * n)
    acc = np.zeros((N,) * n, dtype=complex)
    for e, c in f.sorted_terms():
        phase = np.zeros((N,) * n, dtype=np.int64)
        for j, ej in enumerate(e):
            phase += ej * grids[j]
        acc += c * table[phase % N]
    return acc.real


def spectral_log_value(
    ps: WeightedPointSet, N: int, z: complex, basis: LatticeBasis | None = None
) -> tuple[float, float]:
    """(log magnitude, argument) of the product of (z - value) over all
    N-torsion character values, in double precision.

    No size cap: the cost is N^n character evaluations, not a dense
    matrix.  Raises SingularLevel when a factor underflows to zero.
    """
    if basis is None:
        basis = difference_lattice(ps)
    w = diffraction_polynomial(ps, basis)
    values = character_values(w, N).ravel()
    diffs = complex(z) - values
    mags = np.abs(diffs)
    if mags.min() < 1e-300:
        raise SingularLevel(f"{z} is in or numerically touching the spectrum")
    logmag = float(np.log(mags).sum())
    arg = float(np.angle(diffs).sum())
    return logmag, arg
