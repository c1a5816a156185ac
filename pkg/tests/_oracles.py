"""Independent slow reference implementations used only by the test suite.

These stay deliberately separate from the package code paths they check.
"""

from fractions import Fraction


def berkowitz_charpoly(rows):
    """Division-free characteristic polynomial over Z (Berkowitz algorithm).

    Returns coefficients low degree first, monic.  O(m^4); fine for the
    matrix sizes the oracle is used on (<= 16).
    """
    m = len(rows)
    assert all(len(r) == m for r in rows)
    # vector of coefficients of the 1x1 leading block, highest degree first
    vec = [1, -rows[0][0]]
    for i in range(1, m):
        a = rows[i][i]
        row = rows[i][:i]
        col = [rows[j][i] for j in range(i)]
        block = [r[:i] for r in rows[:i]]
        # first column of the Toeplitz matrix: 1, -a, -(row.col),
        # -(row.block.col), -(row.block^2.col), ...
        first = [1, -a]
        cur = col
        for _ in range(i):
            first.append(-sum(x * y for x, y in zip(row, cur)))
            cur = [sum(block[r][c] * cur[c] for c in range(i)) for r in range(i)]
        new = [0] * (i + 2)
        for r in range(i + 2):
            for c in range(min(r + 1, i + 1)):
                new[r] += first[r - c] * vec[c]
        vec = new
    vec.reverse()
    return tuple(vec)


def charpoly_from_eigen_product(values, z):
    """prod(z - v) for a float check."""
    acc = 1.0
    for v in values:
        acc *= z - v
    return acc


def series_inverse(coeffs, K):
    """Reciprocal of a rational power series with nonzero constant term,
    truncated to K+1 coefficients."""
    c0 = Fraction(coeffs[0])
    inv = [1 / c0]
    for k in range(1, K + 1):
        s = Fraction(0)
        for j in range(1, min(k, len(coeffs) - 1) + 1):
            s += Fraction(coeffs[j]) * inv[k - j]
        inv.append(-s / c0)
    return inv


def series_multiply(a, b, K):
    out = [Fraction(0)] * (K + 1)
    for i, ai in enumerate(a[: K + 1]):
        if ai:
            for j, bj in enumerate(b[: K + 1 - i]):
                out[i + j] += Fraction(ai) * Fraction(bj)
    return out
