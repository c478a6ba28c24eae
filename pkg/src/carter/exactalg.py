"""Exact dense linear algebra over the integers and rationals.

Matrices are immutable tuples of tuples, row-major.  Integer matrices keep
arbitrary-precision ``int`` entries; rational matrices keep ``Fraction``
entries (always in lowest terms by construction).  There is deliberately no
floating point anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Iterable, Sequence

IntVector = tuple[int, ...]
IntMatrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Q, ...], ...]


class SingularMatrixError(ValueError):
    """Raised when a matrix that must be invertible is singular."""


class OrderBoundExceeded(RuntimeError):
    """Raised when matrix_order does not find the order within the bound."""


def as_matrix(rows: Iterable[Sequence[int]]) -> IntMatrix:
    """Freeze a nested sequence into an IntMatrix, checking rectangularity."""
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("ragged rows")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> IntMatrix:
    return tuple((0,) * cols for _ in range(rows))


def transpose(m):
    return tuple(zip(*m)) if m else ()


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(m):
    return tuple(tuple(-x for x in row) for row in m)


def scalar_mul(c, m):
    return tuple(tuple(c * x for x in row) for row in m)


def mat_mul(a, b):
    """Exact matrix product; raises on inner-dimension mismatch."""
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)}x{len(a[0])} times {len(b)}x{len(b[0])}")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(m, v: Sequence) -> tuple:
    if m and len(m[0]) != len(v):
        raise ValueError("dimension mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def mat_pow(m, n: int):
    """m**n for square m and n >= 0 by binary exponentiation."""
    if n < 0:
        raise ValueError("negative power; invert first")
    result = identity(len(m))
    base = m
    while n:
        if n & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base) if n > 1 else base
        n >>= 1
    return result


def to_rational(m: IntMatrix) -> RatMatrix:
    return tuple(tuple(Q(x) for x in row) for row in m)


def is_integer_matrix(m) -> bool:
    return all(x == int(x) for row in m for x in row)


def to_integer(m) -> IntMatrix:
    if not is_integer_matrix(m):
        raise ValueError("non-integer entries")
    return tuple(tuple(int(x) for x in row) for row in m)


def rat_inverse(m) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination with rational pivots."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("not square")
    aug = [[Q(x) for x in row] + [Q(1) if i == j else Q(0) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def rank(m) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    if not m:
        return 0
    rows = [[int(x) if x == int(x) else x for x in row] for row in m]
    nr, nc = len(rows), len(rows[0])
    # Clear denominators row by row so Bareiss stays in integers.
    for i, row in enumerate(rows):
        if any(isinstance(x, Q) for x in row):
            den = 1
            for x in row:
                den = den * Q(x).denominator // _gcd(den, Q(x).denominator)
            rows[i] = [int(Q(x) * den) for x in row]
    r = 0
    prev = 1
    for col in range(nc):
        pivot = next((i for i in range(r, nr) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, nr):
            for j in range(col + 1, nc):
                rows[i][j] = (rows[r][col] * rows[i][j] - rows[i][col] * rows[r][j]) // prev
            rows[i][col] = 0
        prev = rows[r][col]
        r += 1
        if r == nr:
            break
    return r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def det(m) -> int:
    """Exact determinant of an integer matrix by Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    rows = [list(row) for row in m]
    sign = 1
    prev = 1
    for col in range(n - 1):
        pivot = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            sign = -sign
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                rows[i][j] = (rows[col][col] * rows[i][j] - rows[i][col] * rows[col][j]) // prev
            rows[i][col] = 0
        prev = rows[col][col]
    return sign * rows[n - 1][n - 1]


def char_poly(m: IntMatrix) -> tuple[int, ...]:
    """Coefficients (c_0, ..., c_n) of det(xI - m), c_n = 1, exact.

    Uses the Faddeev-LeVerrier recurrence; all divisions are exact.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("not square")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mm = to_rational(m)
    aux = to_rational(identity(n))
    for k in range(1, n + 1):
        aux = mat_mul(mm, aux)
        c = -Q(sum(aux[i][i] for i in range(n)), k)
        coeffs[n - k] = c
        if k < n:
            aux = tuple(tuple(aux[i][j] + (c if i == j else 0) for j in range(n))
                        for i in range(n))
    if any(c != int(c) for c in coeffs):
        raise AssertionError("characteristic polynomial of an integer matrix must be integral")
    return tuple(int(c) for c in coeffs)


def matrix_order(m: IntMatrix, bound: int = 1000) -> int:
    """Least n >= 1 with m**n = identity; OrderBoundExceeded past the bound."""
    n = len(m)
    eye = identity(n)
    acc = m
    for k in range(1, bound + 1):
        if acc == eye:
            return k
        acc = mat_mul(acc, m)
    raise OrderBoundExceeded(f"order exceeds bound {bound}")


def solve(m, rhs: Sequence) -> tuple[Q, ...]:
    """Solve m x = rhs exactly for square invertible m."""
    n = len(m)
    aug = [[Q(x) for x in row] + [Q(rhs[i])] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(aug[i][n] for i in range(n))


def poly_to_str(coeffs: Sequence[int], var: str = "x") -> str:
    """Render (c_0, ..., c_n) as a readable polynomial string."""
    terms = []
    for power in range(len(coeffs) - 1, -1, -1):
        c = coeffs[power]
        if c == 0:
            continue
        if power == 0:
            body = str(abs(c))
        else:
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            body = f"{mag}{var}" + (f"^{power}" if power > 1 else "")
        terms.append(("- " if c < 0 else "+ ") + body)
    if not terms:
        return "0"
    head = terms[0].replace("+ ", "").replace("- ", "-")
    return " ".join([head] + terms[1:])
