"""Independent reference computations used by the tests.

Nothing here touches the elimination kernels: determinants are Laplace
expansions, collocation entries come straight from the Bernstein definition
in exact rationals.
"""

from fractions import Fraction
from math import factorial


def cofactor_det(A):
    n = len(A)
    if n == 0:
        return 1
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    total = 0
    for c in range(n):
        if A[0][c] == 0:
            continue
        minor = [row[:c] + row[c + 1:] for row in A[1:]]
        total += (-1) ** c * A[0][c] * cofactor_det(minor)
    return total


def all_compositions(d):
    return [(i, j, k) for i in range(d + 1) for j in range(d + 1) for k in range(d + 1) if i + j + k == d]


def bernstein_value(d, j, point):
    coef = Fraction(factorial(d), factorial(j[0]) * factorial(j[1]) * factorial(j[2]))
    val = coef
    for x, e in zip(point, j):
        val *= Fraction(x) ** e  # Python: Fraction(0) ** 0 == 1
    return val


def collocation(d, members):
    """Rows = domain points i/d, columns = basis B_j, exact rationals."""
    return [[bernstein_value(d, j, [Fraction(c, d) for c in i]) for j in members] for i in members]


def bernstein_operator_eigenvalues(d):
    """Distinct eigenvalues d!/((d-k)! d^k), k = 1..d, with multiplicities.

    The collocation matrix at domain points is the matrix of the Bernstein
    operator on degree-d polynomials; its eigenvalue for homogeneous degree k
    has multiplicity k+1, and k = 0, 1 share the value 1.
    """
    out = [(Fraction(1), 3)]
    for k in range(2, d + 1):
        lam = Fraction(1)
        for m in range(k):
            lam *= Fraction(d - m, d)
        out.append((lam, k + 1))
    return out
