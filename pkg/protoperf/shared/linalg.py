from fractions import Fraction
from typing import List, Sequence

import numpy as np

from protoperf.typing import NDArray

RationalMatrix = List[List[Fraction]]


def moment_matrix(z: Sequence[Fraction], y: Sequence[Fraction], degree: int):
    """
    Exact normal equations of a polynomial least-squares problem

    Parameters
    ----------
    z : Sequence[Fraction]
        Abscissae
    y : Sequence[Fraction]
        Ordinates
    degree : int
        Polynomial degree

    Returns
    -------
    gram : list[list[Fraction]]
        (degree+1) by (degree+1) matrix with entries sum(z**(i+j))
    rhs : list[Fraction]
        degree+1 vector with entries sum(y * z**i)

    Notes
    -----
    Row ``i`` is the condition that the residuals are orthogonal to ``z**i``.
    Accumulation is exact so no cancellation is introduced when the
    abscissae span several orders of magnitude.
    """
    k = degree + 1
    power_sums = [Fraction(0)] * (2 * k - 1)
    rhs = [Fraction(0)] * k
    for zi, yi in zip(z, y):
        p = Fraction(1)
        for j in range(2 * k - 1):
            power_sums[j] += p
            if j < k:
                rhs[j] += p * yi
            p *= zi
    gram = [[power_sums[i + j] for j in range(k)] for i in range(k)]
    return gram, rhs


def solve_pivoted(a: RationalMatrix, b: Sequence[Fraction]) -> List[Fraction]:
    """
    Gaussian elimination with partial pivoting

    Parameters
    ----------
    a : list[list[Fraction]]
        Square, nonsingular system matrix
    b : Sequence[Fraction]
        Right-hand side

    Returns
    -------
    list[Fraction]
        Exact solution of ``a x = b``

    Raises
    ------
    ZeroDivisionError
        If ``a`` is singular
    """
    n = len(a)
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if m[piv][col] == 0:
            raise ZeroDivisionError("matrix is singular")
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
        pivot = m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / pivot
            if factor == 0:
                continue
            for c in range(col, n + 1):
                m[r][c] -= factor * m[col][c]
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = m[r][n]
        for c in range(r + 1, n):
            acc -= m[r][c] * x[c]
        x[r] = acc / m[r][r]
    return x


def condition_number(a: RationalMatrix) -> float:
    """
    2-norm condition number of a rational matrix evaluated in float64

    Parameters
    ----------
    a : list[list[Fraction]]
        Square matrix

    Returns
    -------
    float
        The condition number, ``inf`` if numerically singular
    """
    arr: NDArray = np.array([[float(v) for v in row] for row in a])
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = float(np.linalg.cond(arr))
    if not np.isfinite(cond):
        return float("inf")
    return cond
