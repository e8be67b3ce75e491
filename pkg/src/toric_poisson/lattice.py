"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples of Python ints (or Fractions where noted),
so every value is hashable, immutable and arbitrary precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

IntMatrix = tuple[tuple[int, ...], ...]
RatVector = tuple[Fraction, ...]


class LatticeError(ValueError):
    pass


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def as_ratvector(entries: Iterable) -> RatVector:
    return tuple(Fraction(x) for x in entries)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> tuple:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``. Pivots of
    ``h`` are positive, entries above a pivot lie in ``[0, pivot)``, zero rows
    come last.
    """
    if not m or not m[0]:
        raise LatticeError("empty matrix")
    rows, cols = len(m), len(m[0])
    h = [list(map(int, row)) for row in m]
    u = [list(row) for row in identity(rows)]

    def combine(i: int, j: int, a: int, b: int, c: int, d: int) -> None:
        # (row_i, row_j) <- (a*row_i + b*row_j, c*row_i + d*row_j), ad - bc = 1
        for mat in (h, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [a * x + b * y for x, y in zip(ri, rj)]
            mat[j] = [c * x + d * y for x, y in zip(ri, rj)]

    r = 0
    for col in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            b = h[i][col]
            if b == 0:
                continue
            a = h[r][col]
            g, x, y = _ext_gcd(a, b)
            combine(r, i, x, y, -b // g, a // g)
        p = h[r][col]
        if p == 0:
            continue
        if p < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
            p = -p
        for i in range(r):
            q = h[i][col] // p
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return as_matrix(h), as_matrix(u)


def det(m: Sequence[Sequence]) -> Fraction | int:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise LatticeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        result *= p
        for i in range(col + 1, n):
            f = a[i][col] / p
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    out = sign * result
    return int(out) if out.denominator == 1 else out


def solve(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Solve ``a @ x = b`` exactly for square nonsingular ``a``; ``b`` is a matrix."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(x) for x in brow] for row, brow in zip(a, b)]
    k = len(b[0])
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            raise LatticeError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return tuple(tuple(row[n:n + k]) for row in aug)


def solve_vector(a: Sequence[Sequence], b: Sequence) -> RatVector:
    return tuple(row[0] for row in solve(a, [[x] for x in b]))


def inverse(a: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    return solve(a, identity(len(a)))


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    a = [[Fraction(x) for x in row] for row in m]
    rows, cols = len(a), len(a[0])
    r = 0
    for col in range(cols):
        piv = next((i for i in range(r, rows) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            f = a[i][col] / a[r][col]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def is_unimodular_basis(vectors: Sequence[Sequence[int]], n: int | None = None) -> bool:
    """True iff the given n integer vectors of length n have |det| = 1."""
    n = len(vectors) if n is None else n
    if len(vectors) != n or any(len(v) != n for v in vectors):
        raise LatticeError(f"expected {n} vectors of length {n}")
    return abs(det(vectors)) == 1


def is_partial_basis(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the vectors extend to a basis of the integer lattice.

    Equivalent to the gcd of all maximal minors being 1.
    """
    if not vectors:
        return True
    k, n = len(vectors), len(vectors[0])
    if k > n:
        return False
    cols = transpose(vectors)
    g = 0
    for idx in combinations(range(n), k):
        g = math.gcd(g, int(det([cols[i] for i in idx])))
        if g == 1:
            return True
    return False


def primitive_generator(direction: Sequence) -> tuple[int, ...]:
    """The primitive integer vector that is a positive multiple of ``direction``."""
    q = [Fraction(x) for x in direction]
    if all(x == 0 for x in q):
        raise LatticeError("zero vector has no primitive generator")
    lcm = 1
    for x in q:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in q]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints)


def integer_kernel_basis(p: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Basis of the saturated lattice ``ker(p) ∩ Z^d`` for a full-row-rank ``p``.

    The basis is returned as the rows of a Hermite normal form so that the
    answer is canonical.
    """
    n, d = len(p), len(p[0])
    if rank(p) != n:
        raise LatticeError("structure map is not of full row rank")
    if d == n:
        return ()
    h, u = hermite_normal_form(transpose(p))
    kernel = [u[i] for i in range(d) if not any(h[i])]
    canon, _ = hermite_normal_form(kernel)
    return tuple(row for row in canon if any(row))
