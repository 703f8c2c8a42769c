"""Small exact linear algebra over the scalar field.

Matrices are tuples of row tuples.  Everything here is Gauss-Jordan on
exact scalars; sizes are desk-scale (a few dozen at most).
"""
from __future__ import annotations

from typing import Sequence, Tuple

from .errors import DimensionMismatch, FormDegenerateError
from .scalars import ONE, ZERO, div, to_scalar

Matrix = Tuple[Tuple, ...]
Vector = Tuple


def as_matrix(rows, nrows=None, ncols=None) -> Matrix:
    m = tuple(tuple(to_scalar(x) for x in row) for row in rows)
    if nrows is not None and len(m) != nrows:
        raise DimensionMismatch(f"expected {nrows} rows, got {len(m)}")
    widths = {len(r) for r in m}
    if len(widths) > 1:
        raise DimensionMismatch("ragged matrix")
    if ncols is not None and m and len(m[0]) != ncols:
        raise DimensionMismatch(f"expected {ncols} columns, got {len(m[0])}")
    return m


def as_vector(xs, n=None) -> Vector:
    v = tuple(to_scalar(x) for x in xs)
    if n is not None and len(v) != n:
        raise DimensionMismatch(f"expected vector of length {n}, got {len(v)}")
    return v


def zeros(n, m=None) -> Matrix:
    m = n if m is None else m
    return tuple((ZERO,) * m for _ in range(n))


def identity(n) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def unit(n, i) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else a


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col) if x and y), ZERO) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), ZERO) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in a)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(matmul(a, b), matmul(b, a))


def is_zero(a) -> bool:
    if a and isinstance(a[0], tuple):
        return all(not x for row in a for x in row)
    return all(not x for x in a)


def is_symmetric(a: Matrix) -> bool:
    return a == transpose(a)


def rref(rows: Sequence[Sequence]):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != ONE:
            m[r] = [div(x, p) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def row_space_basis(vectors, n=None):
    """Canonical (RREF) basis of the span of ``vectors``."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    return rref(vectors)[0]


def nullspace(a: Matrix, ncols=None):
    """Basis of {x : a x = 0} as a list of vectors."""
    if not a:
        n = ncols or 0
        return [unit(n, i) for i in range(n)]
    n = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def det(a: Matrix):
    n = len(a)
    m = [list(r) for r in a]
    out = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        p = m[c][c]
        out = out * p
        for i in range(c + 1, n):
            if m[i][c]:
                f = div(m[i][c], p)
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + list(e) for row, e in zip(a, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise FormDegenerateError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def in_span(basis, v) -> bool:
    if is_zero(v):
        return True
    return rank(list(basis) + [tuple(v)]) == rank(basis)
