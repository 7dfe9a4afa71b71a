"""Dense matrices over RingElement: exact products, determinants, inverses.

Matrices are tuples of tuples of RingElement, all sharing the same n.  Used
by the bimodule model and by the matrix backend of the pseudocomplex engine.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import RingElement, exact_div


def mat_shape(m):
    return len(m), len(m[0]) if m else 0


def mat_zero(n, rows, cols):
    z = RingElement.zero(n)
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def mat_identity(n, size):
    one = RingElement.one(n)
    z = RingElement.zero(n)
    return tuple(
        tuple(one if r == c else z for c in range(size)) for r in range(size)
    )


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(a):
    return tuple(tuple(-x for x in ra) for ra in a)


def mat_scale(a, f):
    return tuple(tuple(x * f for x in ra) for ra in a)


def mat_mul(a, b):
    rows, mid = mat_shape(a)
    mid2, cols = mat_shape(b)
    if mid != mid2 or mid == 0:
        raise ValueError(f"shape mismatch {mat_shape(a)} x {mat_shape(b)}")
    n = a[0][0].n
    zero = RingElement.zero(n)
    out = []
    for r in range(rows):
        row = []
        for c in range(cols):
            acc = zero
            for k in range(mid):
                x = a[r][k]
                y = b[k][c]
                if not (x.is_zero() or y.is_zero()):
                    acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_transpose(a):
    rows, cols = mat_shape(a)
    return tuple(tuple(a[r][c] for r in range(rows)) for c in range(cols))


def mat_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def mat_eq(a, b):
    return mat_shape(a) == mat_shape(b) and all(
        x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb)
    )


def det_bareiss(a):
    """Fraction-free determinant; divisions are exact over the domain."""
    size, cols = mat_shape(a)
    if size != cols:
        raise ValueError("determinant of non-square matrix")
    if size == 0:
        return RingElement.one(0)
    n = a[0][0].n
    m = [list(row) for row in a]
    sign = 1
    prev = RingElement.one(n)
    for k in range(size - 1):
        if m[k][k].is_zero():
            pivot = next((r for r in range(k + 1, size) if not m[r][k].is_zero()), None)
            if pivot is None:
                return RingElement.zero(n)
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for r in range(k + 1, size):
            for c in range(k + 1, size):
                m[r][c] = exact_div(m[k][k] * m[r][c] - m[r][k] * m[k][c], prev)
            m[r][k] = RingElement.zero(n)
        prev = m[k][k]
    return m[size - 1][size - 1] * sign


def mat_constant_part(a):
    """Entry-wise constant (degree-0) coefficients, as Fractions."""
    return [[x.constant_coefficient() for x in row] for row in a]


def _rational_inverse(rows):
    size = len(rows)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(r == c)) for c in range(size)]
        for r, row in enumerate(rows)
    ]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col]), None)
        if pivot is None:
            raise ArithmeticError("constant part is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def mat_invert(a):
    """Exact inverse of a matrix invertible over the polynomial ring.

    Requires the determinant to be a unit (nonzero rational).  Splits off
    the constant part and expands the finite Neumann series of the strictly
    positive-degree remainder.
    """
    size, cols = mat_shape(a)
    if size != cols:
        raise ValueError("cannot invert non-square matrix")
    if size == 0:
        return a
    n = a[0][0].n
    const = _rational_inverse(mat_constant_part(a))
    b = tuple(
        tuple(RingElement.constant(n, x) for x in row) for row in const
    )
    p = mat_add(mat_mul(a, b), mat_neg(mat_identity(n, size)))
    inv = mat_identity(n, size)
    power = p
    guard = 0
    while not mat_is_zero(power):
        inv = mat_add(inv, mat_scale(power, Fraction((-1) ** (guard + 1))))
        power = mat_mul(power, p)
        guard += 1
        if guard > 4 * size + 64:
            raise ArithmeticError("matrix is not invertible over the ring")
    return mat_mul(b, inv)
